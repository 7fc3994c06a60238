#include "d4/torelli.hpp"

#include <algorithm>

namespace d4 {

bool PeriodVector::fiber_relations_hold() const {
  GaussianRational zs = GaussianRational(2) * z(0);
  for (int j = 1; j <= 4; ++j) zs += z(j);
  return 2 * x(0) + x.tail<4>().sum() == 1 && zs.is_zero();
}

GaussianRational mass_M(Subset J, const G4& m) {
  GaussianRational s = 0;
  for (int j = 1; j <= 4; ++j) s += contains(J, j) ? m(j - 1) : -m(j - 1);
  return s;
}

PeriodVector periods_from_exterior(const Q4& x, const G4& z) {
  PeriodVector p;
  p.x.tail<4>() = x;
  p.x(0) = (1 - x.sum()) / 2;
  GaussianRational zs = 0;
  for (int j = 0; j < 4; ++j) {
    p.z(j + 1) = z(j);
    zs += z(j);
  }
  p.z(0) = GaussianRational(Rational(-1, 2)) * zs;
  return p;
}

PeriodVector torelli_chamber(const ParabolicData& data) {
  const ChamberLabel label = classify_chamber(data.alpha);
  if (!is_generic(data)) throw Error(ErrorKind::NonGeneric, "(alpha, m) lies on a genericity wall");
  Q4 x;
  G4 z;
  const Rational K0 = label.interior() ? Rational(0) : wall_K(label.I0, data.alpha);
  const GaussianRational M0 = label.interior() ? GaussianRational(0) : mass_M(label.I0, data.masses);
  for (int j = 0; j < 4; ++j) {
    const Subset J = label.set.subsets[j];
    x(j) = wall_K(J, data.alpha) - K0;
    z(j) = mass_M(J, data.masses) - M0;
  }
  PeriodVector p = periods_from_exterior(x, z);
  p.chamber = label;
  return p;
}

const Mat4<Rational>& parallel_matrix() {
  static const Mat4<Rational> M = [] {
    Mat4<Rational> m;
    m << -1, -1, -1, -1,
          1, 1, -1, -1,
          1, -1, 1, -1,
          1, -1, -1, 1;
    return m;
  }();
  return M;
}

namespace {

G4 times(const Mat4<Rational>& M, const G4& v) {
  G4 out = G4::Constant(GaussianRational(0));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r) += GaussianRational(M(r, c)) * v(c);
  return out;
}

}  // namespace

PeriodVector torelli_parallel(const ParabolicData& data) {
  return periods_from_exterior(parallel_matrix() * data.alpha + Q4::Unit(0),
                               times(parallel_matrix(), data.masses));
}

ParabolicData inverse_torelli(const PeriodVector& p) {
  if (!p.fiber_relations_hold())
    throw Error(ErrorKind::InconsistentFiberRelation, "2x0 + sum x = 1 and 2z0 + sum z = 0 must hold");
  const Mat4<Rational> Mt = parallel_matrix().transpose() / Rational(4);
  ParabolicData d;
  d.alpha = Mt * (p.x_ext() - Q4::Unit(0));
  d.masses = times(Mt, p.z_ext());
  return d;
}

ParabolicData inverse_torelli_chamber(const PeriodVector& p) {
  if (!p.chamber) return inverse_torelli(p);
  if (!p.fiber_relations_hold())
    throw Error(ErrorKind::InconsistentFiberRelation, "2x0 + sum x = 1 and 2z0 + sum z = 0 must hold");
  const ChamberLabel& label = *p.chamber;
  // x and z are affine in alpha and linear in m; recover the matrices by evaluation.
  auto periods_at = [&](const Q4& alpha, const Q4& m) {
    Q4 x, z;
    const Rational K0 = label.interior() ? Rational(0) : wall_K(label.I0, alpha);
    G4 mg;
    for (int j = 0; j < 4; ++j) mg(j) = GaussianRational(m(j));
    const Rational M0 = label.interior() ? Rational(0) : mass_M(label.I0, mg).re;
    for (int j = 0; j < 4; ++j) {
      x(j) = wall_K(label.set.subsets[j], alpha) - K0;
      z(j) = mass_M(label.set.subsets[j], mg).re - M0;
    }
    return std::pair{x, z};
  };
  const auto [c, unused] = periods_at(Q4::Zero(), Q4::Zero());
  ExactMatrix A(4, 4), B(4, 4);
  for (int k = 0; k < 4; ++k) {
    const auto [xk, zk] = periods_at(Q4::Unit(k), Q4::Unit(k));
    A.col(k) = xk - c;
    B.col(k) = zk;
  }
  ParabolicData d;
  d.alpha = exact_solve(A, p.x_ext() - c);
  ExactVector re(4), im(4);
  for (int j = 0; j < 4; ++j) {
    re(j) = p.z(j + 1).re;
    im(j) = p.z(j + 1).im;
  }
  const ExactVector mre = exact_solve(B, re), mim = exact_solve(B, im);
  for (int j = 0; j < 4; ++j) d.masses(j) = GaussianRational(mre(j), mim(j));
  if (!(classify_chamber(d.alpha) == label))
    throw Error(ErrorKind::OutOfCube, "preimage lies outside chamber " + label.name());
  return d;
}

std::string DomainWitness::name() const {
  std::string s = family + "{" + std::to_string(k);
  for (int i : indices) s += "," + std::to_string(i);
  return s + "}";
}

namespace {

// Some k with |k| <= bound and value == 2k+1 (odd) or value == k (!odd)?
std::optional<long long> match_k(const Rational& value, bool odd, const Integer& bound) {
  if (!is_integer(value)) return std::nullopt;
  Integer v = floor(value);
  if (odd) {
    if (boost::multiprecision::abs(v) % 2 != 1) return std::nullopt;
    v = (v - 1) / 2;
  }
  if (boost::multiprecision::abs(v) > bound) return std::nullopt;
  return v.convert_to<long long>();
}

}  // namespace

DomainCheck in_period_domain(const PeriodVector& p) {
  if (!p.fiber_relations_hold())
    throw Error(ErrorKind::InconsistentFiberRelation, "2x0 + sum x = 1 and 2z0 + sum z = 0 must hold");
  const Q4 x = p.x_ext();
  const G4 z = p.z_ext();
  const Rational sx = x.sum();
  GaussianRational sz = 0;
  for (int i = 0; i < 4; ++i) sz += z(i);
  Rational xmax = 0;
  for (int i = 0; i < 4; ++i) xmax = std::max(xmax, abs(x(i)));
  const Integer bound = -floor(-abs(sx)) + -floor(-2 * xmax) + 1;

  DomainCheck out;
  auto hit = [&](std::string family, long long k, std::vector<int> idx) {
    out.in_domain = false;
    out.witness = DomainWitness{std::move(family), k, std::move(idx)};
    return out;
  };
  if (sz.is_zero())
    if (auto k = match_k(sx, true, bound)) return hit("H_", *k, {});
  for (int i = 0; i < 4; ++i)
    if (z(i).is_zero())
      if (auto k = match_k(x(i), false, bound)) return hit("H_", *k, {i + 1});
  for (int i = 0; i < 4; ++i)
    if ((GaussianRational(2) * z(i) - sz).is_zero())
      if (auto k = match_k(2 * x(i) - sx, true, bound)) return hit("H'_", *k, {i + 1});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if ((GaussianRational(2) * (z(i) + z(j)) - sz).is_zero())
        if (auto k = match_k(2 * (x(i) + x(j)) - sx, true, bound)) return hit("H_", *k, {i + 1, j + 1});
  return out;
}

std::array<Subset, 4> spheres_by_puncture(const ChamberLabel& label) {
  const int i = label.distinguished;
  std::array<Subset, 4> out{};
  for (int p = 1; p <= 4; ++p) {
    const Subset pair = singleton(i) | singleton(p);
    for (Subset J : label.set.subsets) {
      const bool match = p == i ? (J == 0 || J == kFull) : (J == pair || J == complement(pair));
      if (match) out[p - 1] = J;
    }
  }
  return out;
}

Eigen::Matrix<int, 4, 4> intersection_table(const ChamberLabel& label) {
  Eigen::Matrix<int, 4, 4> t;
  const auto spheres = spheres_by_puncture(label);
  for (int p = 0; p < 4; ++p)
    for (int j = 1; j <= 4; ++j) {
      // coefficient of m_j in M_J - M_{I0}
      int coef = contains(spheres[p], j) ? 1 : -1;
      if (!label.interior()) coef -= contains(label.I0, j) ? 1 : -1;
      t(p, j - 1) = -coef;
    }
  return t;
}

Rational moment_value(Subset I, const Q4& alpha) { return -wall_K(I, alpha); }

MassScaling scale_masses(const ParabolicData& data, const GaussianRational& t) {
  ParabolicData scaled = data;
  for (int i = 0; i < 4; ++i) scaled.masses(i) = t * data.masses(i);
  MassScaling s;
  s.before = torelli_chamber(data);
  s.after = torelli_chamber(scaled);
  s.x_invariant = s.before.x == s.after.x;
  s.z_scaled = true;
  for (int j = 0; j < 5; ++j) s.z_scaled = s.z_scaled && s.after.z(j) == t * s.before.z(j);
  return s;
}

}  // namespace d4
