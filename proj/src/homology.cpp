#include "d4/homology.hpp"

#include <algorithm>
#include <set>

namespace d4 {

const IMat5& intersection_form() {
  static const IMat5 I0 = [] {
    IMat5 m;
    m << -2, 1, 1, 1, 1,
          1, -2, 0, 0, 0,
          1, 0, -2, 0, 0,
          1, 0, 0, -2, 0,
          1, 0, 0, 0, -2;
    return m;
  }();
  return I0;
}

IVec5 fiber_class() { return (IVec5() << 2, 1, 1, 1, 1).finished(); }

IVec5 basis_class(int i) { return IVec5::Unit(i); }

int coxeter_m(int i, int j) {
  if (i == j) return 1;
  return (i == 0 || j == 0) ? 3 : 2;
}

long long intersection(const IVec5& a, const IVec5& b) { return a.dot(intersection_form() * b); }

IMat5 dehn_twist_matrix(int i) {
  if (i < 0 || i > 4) throw Error(ErrorKind::IndexOutOfRange, "Dehn twist index must be in 0..4");
  IMat5 A = IMat5::Identity();
  A.row(i) += intersection_form().row(i);
  return A;
}

IMat5 word_to_auto(const std::vector<int>& word) {
  IMat5 A = IMat5::Identity();
  for (int i : word) A = A * dehn_twist_matrix(i);
  return A;
}

bool is_lattice_auto(const IMat5& A) {
  return A.transpose() * intersection_form() * A == intersection_form() && A * fiber_class() == fiber_class();
}

std::vector<IVec5> classes_of_square_minus2(int k_max) {
  std::set<std::vector<long long>> seen;
  auto add = [&](long long l0, const Eigen::Matrix<long long, 4, 1>& l) {
    seen.insert({l0, l(0), l(1), l(2), l(3)});
  };
  using L4 = Eigen::Matrix<long long, 4, 1>;
  for (long long k = -k_max; k <= k_max; ++k) {
    const L4 base = L4::Constant(k);
    for (int s : {-1, 1}) {
      add(2 * k + s, base);
      for (int i = 0; i < 4; ++i) {
        const L4 l = base + s * L4::Unit(i);
        add(2 * k, l);
        add(2 * k + s, l);
        for (int j = i + 1; j < 4; ++j) add(2 * k + s, base + s * (L4::Unit(i) + L4::Unit(j)));
      }
    }
  }
  std::vector<IVec5> out;
  for (const auto& v : seen) out.push_back(Eigen::Map<const IVec5>(v.data()));
  return out;
}

Q4 HatReduction::apply(const Q4& x) const { return A.transpose() * x + b; }

G4 HatReduction::apply_linear(const G4& z) const {
  G4 out = G4::Constant(GaussianRational(0));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) out(j) += GaussianRational(A(i, j)) * z(i);
  return out;
}

HatReduction hat_reduction(const IMat5& M) {
  HatReduction h;
  for (int j = 1; j <= 4; ++j) {
    h.b(j - 1) = Rational(M(0, j), 2);
    for (int i = 1; i <= 4; ++i) h.A(i - 1, j - 1) = Rational(M(i, j)) - Rational(M(0, j), 2);
  }
  return h;
}

}  // namespace d4
