#include "d4/chambers.hpp"

#include <algorithm>

namespace d4 {

std::string subset_name(Subset s) {
  std::string out = "{";
  for (int i = 1; i <= 4; ++i) {
    if (!contains(s, i)) continue;
    if (out.size() > 1) out += ',';
    out += static_cast<char>('0' + i);
  }
  return out + "}";
}

std::string to_string(ChamberType t) {
  switch (t) {
    case ChamberType::A1: return "A1";
    case ChamberType::A2: return "A2";
    case ChamberType::B1: return "B1";
    case ChamberType::B2: return "B2";
    case ChamberType::E1: return "E1";
    case ChamberType::E2: return "E2";
  }
  return "?";
}

std::string ChamberLabel::name() const {
  return to_string(type) + "_" + std::to_string(distinguished);
}

Rational wall_K(Subset I, const Q4& alpha) {
  Rational k = 0;
  for (int i = 1; i <= 4; ++i) k += contains(I, i) ? alpha(i - 1) : Rational(-alpha(i - 1));
  // floor((|I^c| - |I|)/4) for |I| = 0..4
  static constexpr int shift[5] = {1, 0, 0, -1, -1};
  return k + shift[cardinality(I)];
}

Rational wall_L(int i, const Q4& alpha) {
  return alpha.sum() - 2 * alpha(i - 1);
}

namespace {

// The three pairs {i,j}, one per class of E \ {∅}, that contain (or avoid) i.
std::array<Subset, 3> pairs_through(int i, bool containing) {
  std::array<Subset, 3> out{};
  for (int k = 1; k < 4; ++k) {
    const Subset p = kE[k];
    out[k - 1] = contains(p, i) == containing ? p : complement(p);
  }
  return out;
}

EvenPartitionSet make_set(Subset first, const std::array<Subset, 3>& pairs) {
  EvenPartitionSet s;
  s.subsets = {first, pairs[0], pairs[1], pairs[2]};
  std::sort(s.subsets.begin(), s.subsets.end());
  return s;
}

}  // namespace

ChamberLabel interior_chamber(ChamberType type, int i) {
  ChamberLabel l;
  l.type = type;
  l.distinguished = i;
  switch (type) {
    case ChamberType::A1: l.set = make_set(0, pairs_through(i, false)); break;
    case ChamberType::A2: l.set = make_set(kFull, pairs_through(i, true)); break;
    case ChamberType::B1: l.set = make_set(0, pairs_through(i, true)); break;
    case ChamberType::B2: l.set = make_set(kFull, pairs_through(i, false)); break;
    default: throw Error(ErrorKind::IndexOutOfRange, "interior_chamber needs an interior type");
  }
  return l;
}

ChamberLabel exterior_chamber(Subset I0) {
  const int n = cardinality(I0);
  if (n != 1 && n != 3) throw Error(ErrorKind::IndexOutOfRange, "exterior I0 must be odd");
  const int i = __builtin_ctz(n == 1 ? I0 : complement(I0)) + 1;
  ChamberLabel l = interior_chamber(n == 1 ? ChamberType::B1 : ChamberType::B2, i);
  l.type = n == 1 ? ChamberType::E1 : ChamberType::E2;
  l.I0 = I0;
  return l;
}

std::vector<ChamberLabel> all_chambers() {
  std::vector<ChamberLabel> out;
  for (ChamberType t : {ChamberType::A1, ChamberType::A2, ChamberType::B1, ChamberType::B2})
    for (int i = 1; i <= 4; ++i) out.push_back(interior_chamber(t, i));
  for (int i = 1; i <= 4; ++i) out.push_back(exterior_chamber(singleton(i)));
  for (int i = 1; i <= 4; ++i) out.push_back(exterior_chamber(complement(singleton(i))));
  return out;
}

ChamberLabel classify_chamber(const Q4& alpha) {
  for (int i = 0; i < 4; ++i)
    if (alpha(i) <= 0 || alpha(i) >= Rational(1, 2))
      throw Error(ErrorKind::OutOfCube, "alpha must lie in (0,1/2)^4");
  for (int i = 1; i <= 4; ++i) {
    const Rational L = wall_L(i, alpha);
    if (L == 0 || L == 1) throw Error(ErrorKind::OnWall, "L_" + std::to_string(i) + " = " + format(L));
  }
  for (int i = 1; i <= 4; ++i) {
    const Rational L = wall_L(i, alpha);
    if (L < 0) return exterior_chamber(singleton(i));
    if (L > 1) return exterior_chamber(complement(singleton(i)));
  }
  EvenPartitionSet s;
  for (int k = 0; k < 4; ++k) {
    const Rational K = wall_K(kE[k], alpha);
    if (K == 0) throw Error(ErrorKind::OnWall, "K_" + subset_name(kE[k]) + " = 0");
    s.subsets[k] = K > 0 ? kE[k] : complement(kE[k]);
  }
  std::sort(s.subsets.begin(), s.subsets.end());
  for (ChamberType t : {ChamberType::A1, ChamberType::A2, ChamberType::B1, ChamberType::B2})
    for (int i = 1; i <= 4; ++i) {
      ChamberLabel l = interior_chamber(t, i);
      if (l.set == s) return l;
    }
  throw Error(ErrorKind::OnWall, "no chamber matches the even partition set");  // unreachable
}

std::vector<GenericityViolation> genericity_violations(const ParabolicData& data) {
  std::vector<GenericityViolation> out;
  for (unsigned bits = 0; bits < 16; ++bits) {
    Rational s = 0;
    GaussianRational mass = 0;
    std::array<int, 4> e{};
    for (int i = 0; i < 4; ++i) {
      e[i] = (bits >> i) & 1;
      s += e[i] == 1 ? Rational(1 - data.alpha(i)) : data.alpha(i);
      mass += e[i] == 1 ? -data.masses(i) : data.masses(i);
    }
    if (!mass.is_zero() || !is_integer(s)) continue;
    const Integer d = -floor(s);
    if (d >= -6 && d <= 6) out.push_back({d.convert_to<int>(), e});
  }
  return out;
}

bool is_generic(const ParabolicData& data) { return genericity_violations(data).empty(); }

bool in_R_tilde(const ParabolicData& data, bool full) {
  Rational amax = 0;
  for (int i = 0; i < 4; ++i) amax = std::max(amax, abs(data.alpha(i)));
  // H_{d,e} needs d = -sum(e_i + (-1)^{e_i} alpha_i), which is bounded by the range below.
  const Integer bound = 4 * std::max(Integer(1), Integer(-floor(-amax))) + 4;
  for (unsigned bits = 0; bits < 16; ++bits) {
    Rational s = 0;
    GaussianRational mass = 0;
    for (int i = 0; i < 4; ++i) {
      const bool e = (bits >> i) & 1;
      s += e ? Rational(1 - data.alpha(i)) : data.alpha(i);
      mass += e ? -data.masses(i) : data.masses(i);
    }
    if (mass.is_zero() && is_integer(s) && abs(s) <= Rational(bound)) return false;
  }
  bool some_two_alpha_integral = false;
  for (int i = 0; i < 4; ++i) {
    const bool integral = is_integer(2 * data.alpha(i));
    if (integral && data.masses(i).is_zero()) return false;
    some_two_alpha_integral = some_two_alpha_integral || integral;
  }
  if (full) return true;
  bool some_L_integral = false;
  for (int i = 1; i <= 4; ++i) some_L_integral = some_L_integral || is_integer(wall_L(i, data.alpha));
  return !(some_L_integral && some_two_alpha_integral);
}

Q4 cube_vertex(Subset J) {
  Q4 v;
  for (int i = 1; i <= 4; ++i) v(i - 1) = contains(J, i) ? Rational(1, 2) : Rational(0);
  return v;
}

std::vector<Q4> chamber_vertices(const ChamberLabel& label) {
  std::vector<Q4> out;
  out.push_back(label.interior() ? Q4::Constant(Rational(1, 4)) : cube_vertex(label.I0));
  for (Subset I : label.set.subsets) out.push_back(cube_vertex(I));
  return out;
}

Q4 centroid(const ChamberLabel& label) {
  Q4 c = Q4::Zero();
  for (const Q4& v : chamber_vertices(label)) c += v;
  return c / Rational(5);
}

bool adjacent(const ChamberLabel& a, const ChamberLabel& b) {
  const auto va = chamber_vertices(a), vb = chamber_vertices(b);
  int shared = 0;
  for (const Q4& x : va)
    shared += std::count(vb.begin(), vb.end(), x) > 0 ? 1 : 0;
  return shared == 4;
}

FixedPointData fixed_point_data(Subset I, const Q4& alpha) {
  FixedPointData f;
  const int n = cardinality(I);
  f.degDI = n;
  f.degL2 = -1 - n / 2;
  f.phi0_bundle_degree = n % 2;
  switch (n) {
    case 0: f.stability_value = wall_K(0, alpha); break;
    case 1: f.stability_value = -wall_L(__builtin_ctz(I) + 1, alpha); break;
    case 2: f.stability_value = wall_K(I, alpha); break;
    case 3: f.stability_value = wall_L(__builtin_ctz(complement(I)) + 1, alpha) - 1; break;
    default: f.stability_value = wall_K(kFull, alpha); break;
  }
  f.stable = f.stability_value > 0;
  return f;
}

}  // namespace d4
