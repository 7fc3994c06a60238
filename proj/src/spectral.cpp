#include "d4/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace d4 {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kIm(0.0, 1.0);

double eval_scale(const std::vector<cplx>& a, cplx z) {
  double s = 0, zk = 1;
  for (const cplx& c : a) {
    s += std::abs(c) * zk;
    zk *= std::abs(z);
  }
  return s;
}

double max_abs(const std::vector<cplx>& a) {
  double m = 0;
  for (const cplx& c : a) m = std::max(m, std::abs(c));
  return m;
}

cplx horner(const std::vector<cplx>& a, cplx z) {
  cplx r = 0;
  for (std::size_t k = a.size(); k-- > 0;) r = r * z + a[k];
  return r;
}

// Picks the square root of v closest to `near`.
cplx sqrt_near(cplx v, cplx near) {
  const cplx s = std::sqrt(v);
  return std::abs(s - near) <= std::abs(s + near) ? s : -s;
}

}  // namespace

ComplexPoly HitchinBase::g_poly() const { return ComplexPoly({0.0, p0, -(1.0 + p0), 1.0}); }

std::vector<cplx> HitchinBase::q_coeffs(cplx beta) const {
  return {f[0], f[1] + beta * p0, f[2] - beta * (1.0 + p0), f[3] + beta, f[4]};
}

HitchinBase build_base(cplx p, const std::array<cplx, 4>& m) {
  if (std::abs(p) < 1e-12 || std::abs(p - 1.0) < 1e-12)
    throw Error(ErrorKind::DegenerateP0, "p0 must differ from 0 and 1");
  HitchinBase b;
  b.p0 = p;
  b.masses = m;
  const cplx a = m[0] * m[0], c = m[1] * m[1], d = m[2] * m[2], e = m[3] * m[3];
  b.f[4] = e;
  b.f[3] = (-a + 2.0 * c - 4.0 * e - d - a * p - c * p - 4.0 * e * p + 2.0 * d * p) / 3.0;
  b.f[2] = (a + c + e + d + 5.0 * a * p - 4.0 * c * p + 5.0 * e * p - 4.0 * d * p + (a + c + e + d) * p * p) / 3.0;
  b.f[1] = -p / 3.0 * (4.0 * a + c + e - 2.0 * d + 4.0 * a * p - 2.0 * c * p + e * p + d * p);
  b.f[0] = a * p * p;
  return b;
}

// ---------------------------------------------------------------------------

double BetaDiscriminant::scale() const {
  double s = 0;
  for (int j = 0; j < 7; ++j) s = std::max(s, std::abs(c[j]) * std::pow(radius, j));
  return s;
}

double BetaDiscriminant::beta5_relative() const {
  const double s = scale();
  return s == 0 ? 0 : std::abs(c[5]) * std::pow(radius, 5) / s;
}

namespace {

BetaDiscriminant interpolate(const HitchinBase& base, double radius) {
  BetaDiscriminant d;
  d.radius = radius;
  std::array<cplx, 7> values;
  for (int k = 0; k < 7; ++k)
    values[k] = discriminant_nominal(base.q_coeffs(std::polar(radius, 2 * kPi * k / 7)));
  for (int j = 0; j < 7; ++j) {
    cplx s = 0;
    for (int k = 0; k < 7; ++k) s += values[k] * std::polar(1.0, -2 * kPi * j * k / 7);
    d.c[j] = s / (7.0 * std::pow(radius, j));
  }
  return d;
}

}  // namespace

BetaDiscriminant beta_discriminant(const HitchinBase& base) {
  BetaDiscriminant d = interpolate(base, 1.0);
  // Refit on the circle of the geometric-mean root modulus for balanced rounding.
  if (std::abs(d.c[6]) > 0 && std::abs(d.c[0]) > 1e-12 * d.scale()) {
    const double r = std::pow(std::abs(d.c[0]) / std::abs(d.c[6]), 1.0 / 6);
    if (std::isfinite(r) && r > 0) d = interpolate(base, r);
  }
  return d;
}

std::vector<cplx> singular_fibers(const HitchinBase& base) {
  const BetaDiscriminant d = beta_discriminant(base);
  const double s = d.scale();
  if (s == 0 || std::abs(d.c[6]) * std::pow(d.radius, 6) <= 1e-9 * s)
    throw Error(ErrorKind::DegenerateConfiguration, "beta-discriminant has degree below 6");
  // Roots of the rescaled polynomial in t = beta / radius; rounding-level coefficients are zeroed.
  std::vector<cplx> t(7);
  for (int j = 0; j < 7; ++j) {
    const cplx v = d.c[j] * std::pow(d.radius, j);
    t[j] = std::abs(v) <= 1e-12 * s ? cplx(0) : v;
  }
  std::vector<cplx> roots = poly_roots(ComplexPoly(t));
  for (cplx& r : roots) r *= d.radius;
  return roots;
}

bool in_B0_polynomial(const std::vector<cplx>& q, const std::array<cplx, 3>& punctures) {
  const double amax = max_abs(q);
  if (amax == 0) return false;
  std::vector<cplx> dq(q.size() - 1);
  for (std::size_t k = 1; k < q.size(); ++k) dq[k - 1] = static_cast<double>(k) * q[k];
  for (const cplx& p : punctures)
    if (std::abs(horner(q, p)) <= 1e-9 * eval_scale(q, p) && std::abs(horner(dq, p)) <= 1e-9 * eval_scale(dq, p))
      return false;
  if (std::abs(q[4]) <= 1e-9 * amax && std::abs(q[3]) <= 1e-9 * amax) return false;

  const ComplexPoly trimmed(q);
  const int deg = trimmed.degree();
  if (deg % 2 == 1) return true;
  if (deg == 0) return false;
  // Simple roots certify a non-square at once.
  if (std::abs(discriminant_z(trimmed)) > 1e-9 * std::pow(trimmed.max_abs_coeff(), 2 * deg - 2)) return true;
  const std::vector<cplx> r = poly_roots(trimmed);
  double rmax = 0;
  for (const cplx& x : r) rmax = std::max(rmax, std::abs(x));
  const double tol = 1e-6 * (1 + rmax);
  if (deg == 2) return std::abs(r[0] - r[1]) > tol;
  const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& pr : pairings)
    if (std::abs(r[pr[0]] - r[pr[1]]) <= tol && std::abs(r[pr[2]] - r[pr[3]]) <= tol) return false;
  return true;
}

bool in_B0(const HitchinBase& base, cplx beta) {
  return in_B0_polynomial(base.q_coeffs(beta), base.finite_punctures());
}

// ---------------------------------------------------------------------------

SpectralFiberPoint big_point(const HitchinBase& base, cplx beta, cplx u, int sheet) {
  SpectralFiberPoint pt{base, beta, Stratum::Big, u, 0};
  const cplx W = std::sqrt(horner(base.q_coeffs(beta), u)) * static_cast<double>(sheet >= 0 ? 1 : -1);
  pt.w = W - base.masses[3] * u * u;
  return pt;
}

SpectralFiberPoint extra_point(const HitchinBase& base, cplx beta) {
  return {base, beta, Stratum::Extra, 0, (base.f[3] + beta) / 2.0};
}

SpectralFiberPoint small_point(const HitchinBase& base, cplx beta) {
  return {base, beta, Stratum::Small, 0, 0};
}

double on_curve_residual(const SpectralFiberPoint& pt) {
  if (pt.stratum == Stratum::Small) return 0;
  if (pt.stratum == Stratum::Extra) {
    const cplx minf = pt.base.masses[3];
    if (std::abs(minf) < 1e-12) return std::numeric_limits<double>::infinity();
    return std::abs(pt.w - (pt.base.f[3] + pt.beta) / 2.0) / (1 + std::abs(pt.w));
  }
  const std::vector<cplx> q = pt.base.q_coeffs(pt.beta);
  const cplx W = pt.base.masses[3] * pt.u * pt.u + pt.w;
  return std::abs(horner(q, pt.u) - W * W) / std::max(1.0, eval_scale(q, pt.u));
}

Eigen::Matrix2cd RationalMatrix::operator()(cplx z) const {
  const cplx d = den(z);
  Eigen::Matrix2cd m;
  m << num[0](z) / d, num[1](z) / d, num[2](z) / d, num[3](z) / d;
  return m;
}

namespace {

cplx coeff(const ComplexPoly& p, int k) {
  return k >= 0 && k < static_cast<int>(p.c.size()) ? p.c[k] : cplx(0);
}

}  // namespace

Eigen::Matrix2cd RationalMatrix::residue(int puncture, cplx p0) const {
  Eigen::Matrix2cd r;
  if (puncture == 3) {
    // -lim z N~(z)/den(z); den is monic cubic and N~ has degree <= 2.
    r << coeff(num[0], 2), coeff(num[1], 2 + twist), coeff(num[2], 2 - twist), coeff(num[3], 2);
    return -r;
  }
  const cplx p = puncture == 0 ? cplx(0) : puncture == 1 ? cplx(1) : p0;
  const cplx dd = derivative(den)(p);
  r << num[0](p) / dd, num[1](p) / dd, num[2](p) / dd, num[3](p) / dd;
  return r;
}

RationalMatrix higgs_representative(const SpectralFiberPoint& pt) {
  if (!(on_curve_residual(pt) < 1e-8)) throw Error(ErrorKind::OffCurve, "point is not on the spectral curve");
  const HitchinBase& b = pt.base;
  const ComplexPoly q = b.q_poly(pt.beta);
  RationalMatrix m;
  m.den = b.g_poly();
  const cplx minf = b.masses[3];
  switch (pt.stratum) {
    case Stratum::Big: {
      const ComplexPoly a({pt.w, 0.0, minf});
      m.num = {cplx(-1.0) * a, divide_linear(q - a * a, pt.u), ComplexPoly({-pt.u, 1.0}), a};
      break;
    }
    case Stratum::Extra: {
      const ComplexPoly a({0.0, (b.f[3] + pt.beta) / (2.0 * minf), minf});
      m.num = {cplx(-1.0) * a, q - a * a, ComplexPoly({1.0}), a};
      break;
    }
    case Stratum::Small:
      m.num = {ComplexPoly(), q, ComplexPoly({1.0}), ComplexPoly()};
      m.twist = 2;
      break;
  }
  return m;
}

Eigen::Vector2cd Flag::vector() const {
  return at_infinity ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(value, 1.0);
}

std::array<Flag, 4> flags(const SpectralFiberPoint& pt) {
  const HitchinBase& b = pt.base;
  const cplx p0 = b.p0, m0 = b.masses[0], m1 = b.masses[1], mp = b.masses[2], minf = b.masses[3];
  const cplx beta = pt.beta;
  std::array<Flag, 4> out;
  auto finite = [](cplx v) { return Flag{false, v}; };
  const RationalMatrix phi = higgs_representative(pt);
  for (int p = 0; p < 4; ++p) {
    const Eigen::Matrix2cd r = phi.residue(p, p0);
    if (r.norm() < 1e-14 * (1 + std::abs(b.masses[p]) + r.norm()) && std::abs(b.masses[p]) < 1e-14)
      throw Error(ErrorKind::UndefinedFlag, "residue matrix vanishes");
  }
  switch (pt.stratum) {
    case Stratum::Small:
      out = {finite(m0 * p0), finite(m1 * (1.0 - p0)), finite(mp * p0 * (p0 - 1.0)), finite(-minf)};
      return out;
    case Stratum::Extra:
      out[0] = finite(m0 * p0);
      out[1] = finite(-(b.f[3] + 2.0 * minf * (minf + m1 * (p0 - 1.0)) + beta) / (2.0 * minf));
      // Eigenvalue m_p of the residue, as at the other punctures.
      out[2] = finite(-(b.f[3] * p0 - 2.0 * minf * mp * (p0 - 1.0) * p0 + p0 * (2.0 * minf * minf * p0 + beta)) /
                      (2.0 * minf));
      out[3] = Flag{true, 0};
      return out;
    case Stratum::Big:
      break;
  }
  const cplx u = pt.u, w = pt.w;
  const std::vector<cplx> q = b.q_coeffs(beta);
  const cplx W = minf * u * u + w;
  // Numerator and denominator of each affine flag coordinate.
  const std::array<cplx, 3> numer{-m0 * p0 + w, m1 * (p0 - 1.0) + minf + w,
                                  -mp * p0 * (p0 - 1.0) + minf * p0 * p0 + w};
  const std::array<cplx, 3> at{0.0, 1.0, p0};
  for (int p = 0; p < 3; ++p) {
    const double s = 1 + std::abs(w) + std::abs(minf) + std::abs(b.masses[p]);
    if (std::abs(u - at[p]) > 1e-12 * (1 + std::abs(at[p]))) {
      out[p] = finite(numer[p] / (u - at[p]));
    } else if (std::abs(numer[p]) > 1e-10 * s) {
      out[p] = Flag{true, 0};
    } else {
      // Polar section: d/du of the numerator along the curve, dw/du = q'(u)/(2W) - 2 m_inf u.
      std::vector<cplx> dq{q[1], 2.0 * q[2], 3.0 * q[3], 4.0 * q[4]};
      if (std::abs(W) < 1e-14 * s) throw Error(ErrorKind::UndefinedFlag, "branch point over a puncture");
      out[p] = finite(horner(dq, u) / (2.0 * W) - 2.0 * minf * u);
    }
  }
  out[3] = Flag{true, 0};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SheetTracker {
  const ComplexPoly& q;
  const std::vector<cplx>& branch;
  cplx z;
  cplx w;

  void move_to(cplx target) {
    for (int it = 0; it < 200000; ++it) {
      const double left = std::abs(target - z);
      if (left == 0) return;
      double d = std::numeric_limits<double>::infinity();
      for (const cplx& e : branch) d = std::min(d, std::abs(z - e));
      const double step = std::min(left, 0.2 * d);
      if (step < 1e-13 * (1 + std::abs(z))) throw Error(ErrorKind::BranchPointCollision, "path meets a branch point");
      z = step == left ? target : z + (target - z) / left * step;
      w = sqrt_near(q(z), w);
    }
    throw Error(ErrorKind::BranchPointCollision, "analytic continuation did not reach its target");
  }
};

// (1/2 pi i) times the loop integral of w~(z)/den(z) dz, counter-clockwise,
// starting on the sheet with w~(start) = w_start. `turns` is 2 around a branch point.
cplx loop_residue(const ComplexPoly& q, const ComplexPoly& den, cplx center, double radius, cplx w_start,
                  int turns) {
  const int n = 512 * turns;
  cplx sum = 0, w = w_start;
  for (int k = 0; k < n; ++k) {
    const cplx e = std::polar(1.0, 2 * kPi * turns * k / n);
    const cplx z = center + radius * e;
    w = k == 0 ? w_start : sqrt_near(q(z), w);
    sum += w / den(z) * kIm * radius * e;
  }
  return sum * (2 * kPi * turns / n) / (2 * kPi * kIm);
}

}  // namespace

Residues tautological_residues(const HitchinBase& base, cplx beta) {
  const ComplexPoly q = base.q_poly(beta);
  const ComplexPoly den = base.g_poly();
  Residues out{};
  if (q.max_abs_coeff() == 0) return out;  // q = 0: tau vanishes identically
  const std::vector<cplx> branch = poly_roots(q);
  const std::array<cplx, 3> punct = base.finite_punctures();
  double extent = 1;
  for (const cplx& e : branch) extent = std::max(extent, std::abs(e));
  for (const cplx& p : punct) extent = std::max(extent, std::abs(p));
  const cplx zb = 3 * extent;
  const cplx wb = std::sqrt(q(zb));

  for (int p = 0; p < 3; ++p) {
    const cplx c = punct[p];
    const bool on_branch = std::abs(q(c)) <= 1e-10 * std::max(1.0, eval_scale(q.c, c));
    double dist = std::numeric_limits<double>::infinity();
    for (const cplx& e : branch)
      if (!(on_branch && std::abs(e - c) < 1e-6 * (1 + std::abs(c)))) dist = std::min(dist, std::abs(e - c));
    for (int o = 0; o < 3; ++o)
      if (o != p) dist = std::min(dist, std::abs(punct[o] - c));
    if (dist < 1e-9) throw Error(ErrorKind::BranchPointCollision, "branch point too close to a puncture");
    const double r = 0.1 * dist;
    std::vector<cplx> avoid = branch;
    SheetTracker t{q, avoid, zb, wb};
    t.move_to(c + r);
    const cplx res = loop_residue(q, den, c, r, t.w, on_branch ? 2 : 1);
    out[p] = {res, on_branch ? res : -res};
  }
  // Infinity: minus the counter-clockwise integral over a circle enclosing everything.
  const bool inf_branch = q.degree() % 2 == 1;
  const double R = 2 * extent;
  SheetTracker t{q, branch, zb, wb};
  t.move_to(R);
  const cplx res = -loop_residue(q, den, 0.0, R, t.w, inf_branch ? 2 : 1);
  out[3] = {res, inf_branch ? res : -res};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct GaussLegendre {
  std::vector<double> x, w;
};

// Newton iteration on P_n; nodes ascending on [-1, 1].
const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.x[n - 1 - i] = x;
    g.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(g)).first->second;
}

struct SegmentSums {
  cplx half_omega, tau_form, sheet;
};

// z = m - h cos(theta), h = (b-a)/2, theta in [0, pi]; sqrt((z-a)(z-b)) = i h sin(theta).
SegmentSums segment_sums(cplx lead, const std::vector<cplx>& others, const ComplexPoly& den, cplx a, cplx b,
                         std::optional<cplx> hint, int n) {
  const GaussLegendre& g = gauss_legendre(n);
  const cplx m = 0.5 * (a + b), h = 0.5 * (b - a);
  auto R = [&](cplx z) {
    cplx r = lead;
    for (const cplx& e : others) r *= z - e;
    return r;
  };
  SegmentSums s{0, 0, 0};
  const cplx s0 = std::sqrt(R(a));
  cplx sr = hint ? (std::abs(s0 - *hint) <= std::abs(s0 + *hint) ? s0 : -s0) : s0;
  s.sheet = sr;
  for (int k = 0; k < n; ++k) {
    const double th = 0.5 * kPi * (g.x[k] + 1), wt = 0.5 * kPi * g.w[k];
    const cplx z = m - h * std::cos(th);
    sr = sqrt_near(R(z), sr);
    s.half_omega += wt / sr;
    s.tau_form += wt * std::sin(th) * std::sin(th) * sr / den(z);
  }
  s.half_omega *= -kIm;
  s.tau_form *= kIm * h * h;
  return s;
}

cplx nearest(const std::vector<cplx>& pts, cplx z, std::size_t* index = nullptr) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (std::abs(pts[k] - z) < std::abs(pts[best] - z)) best = k;
  if (index) *index = best;
  return pts[best];
}

}  // namespace

SegmentIntegral segment_integral(const HitchinBase& base, cplx beta, cplx a, cplx b, std::optional<cplx> sheet_hint) {
  const ComplexPoly q = base.q_poly(beta);
  if (q.degree() < 3) throw Error(ErrorKind::SingularFiber, "q has degree below 3");
  std::vector<cplx> roots = poly_roots(q);
  std::size_t ia, ib;
  const cplx ra = nearest(roots, a, &ia), rb = nearest(roots, b, &ib);
  if (ia == ib) throw Error(ErrorKind::BranchPointCoincidence, "segment endpoints coincide");
  std::vector<cplx> others;
  for (std::size_t k = 0; k < roots.size(); ++k)
    if (k != ia && k != ib) others.push_back(roots[k]);
  const ComplexPoly den = base.g_poly();
  SegmentSums prev = segment_sums(q.lead(), others, den, ra, rb, sheet_hint, 64);
  for (int n = 128; n <= 2048; n *= 2) {
    const SegmentSums cur = segment_sums(q.lead(), others, den, ra, rb, sheet_hint, n);
    const bool done = std::abs(cur.half_omega - prev.half_omega) <= 1e-13 * std::abs(cur.half_omega) &&
                      std::abs(cur.tau_form - prev.tau_form) <= 1e-13 * (std::abs(cur.tau_form) + 1e-300);
    prev = cur;
    if (done) return {cur.half_omega, cur.tau_form, cur.sheet, n};
  }
  return {prev.half_omega, prev.tau_form, prev.sheet, 2048};
}

EllipticPeriods elliptic_periods(const HitchinBase& base, cplx beta) {
  const ComplexPoly q = base.q_poly(beta);
  if (q.degree() < 3) throw Error(ErrorKind::SingularFiber, "q has degree below 3");
  std::vector<cplx> r = poly_roots(q);
  std::sort(r.begin(), r.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  // Relative to the pair's own size: one root runs off to infinity as m_inf -> 0.
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (std::abs(r[i] - r[j]) < 1e-7 * (1 + std::max(std::abs(r[i]), std::abs(r[j]))))
        throw Error(ErrorKind::SingularFiber, "repeated branch point");

  std::array<cplx, 2> cutA;
  std::vector<cplx> other;  // finite endpoints of the second cut
  if (r.size() == 4) {
    const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    int best = 0;
    double best_len = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const auto& p = pairings[k];
      const double len = std::abs(r[p[0]] - r[p[1]]) + std::abs(r[p[2]] - r[p[3]]);
      if (len < best_len * (1 - 1e-12)) {
        best = k;
        best_len = len;
      }
    }
    const auto& p = pairings[best];
    cutA = {r[p[0]], r[p[1]]};
    other = {r[p[2]], r[p[3]]};
  } else {
    // Cubic: the closest finite pair is a cut; the third point is joined to infinity.
    int bi = 0, bj = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(r[i] - r[j]) < std::abs(r[bi] - r[bj]) * (1 - 1e-12)) {
          bi = i;
          bj = j;
        }
    cutA = {r[bi], r[bj]};
    other = {r[3 - bi - bj]};
  }
  cplx from = cutA[1], to = other[0];
  for (const cplx& a : cutA)
    for (const cplx& c : other)
      if (std::abs(a - c) < std::abs(from - to) * (1 - 1e-12)) {
        from = a;
        to = c;
      }

  EllipticPeriods e;
  e.cut_A = cutA;
  e.path_B = {from, to};
  e.omega_A = 2.0 * segment_integral(base, beta, cutA[0], cutA[1]).half_omega;
  e.omega_B = 2.0 * segment_integral(base, beta, from, to).half_omega;
  e.tau = e.omega_B / e.omega_A;
  if (e.tau.imag() < 0) {
    e.omega_B = -e.omega_B;
    e.tau = -e.tau;
  }
  return e;
}

cplx reduce_tau(cplx tau) {
  for (int it = 0; it < 1000; ++it) {
    tau -= std::round(tau.real());
    if (std::norm(tau) >= 1 - 1e-14) return tau;
    tau = -1.0 / tau;
  }
  return tau;
}

TauAsymptotics tau_asymptotics(const HitchinBase& base, const std::vector<cplx>& betas) {
  TauAsymptotics out;
  const std::array<cplx, 3> punct = base.finite_punctures();
  double sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) sep = std::min(sep, std::abs(punct[i] - punct[j]));
  for (const cplx& beta : betas) {
    std::vector<cplx> c = base.q_coeffs(beta);
    for (cplx& x : c) x /= beta;
    const std::vector<cplx> roots = poly_roots(ComplexPoly(c));
    for (int p = 0; p < 3; ++p) {
      std::vector<double> d;
      for (const cplx& x : roots) d.push_back(std::abs(x - punct[p]));
      std::vector<double> sorted = d;
      std::sort(sorted.begin(), sorted.end());
      if (sorted[0] > 0.25 * sep || (sorted.size() > 1 && sorted[1] < 0.5 * sep))
        throw Error(ErrorKind::RootTrackingLost, "root near a puncture is not isolated");
      const std::size_t k = std::min_element(d.begin(), d.end()) - d.begin();
      out.shifts[p].push_back(roots[k] - punct[p]);
    }
  }
  // Least squares for beta * shift = c + d / beta.
  const Eigen::Index n = static_cast<Eigen::Index>(betas.size());
  Eigen::MatrixXcd A(n, 2);
  for (Eigen::Index k = 0; k < n; ++k) A.row(k) << 1.0, 1.0 / betas[k];
  const ComplexPoly g = base.g_poly();
  const ComplexPoly dg = derivative(g);
  for (int p = 0; p < 3; ++p) {
    Eigen::VectorXcd y(n);
    for (Eigen::Index k = 0; k < n; ++k) y(k) = betas[k] * out.shifts[p][k];
    out.fitted[p] = n > 0 ? cplx(A.colPivHouseholderQr().solve(y)(0)) : cplx(0);
    out.closed_form[p] = -base.f_poly()(punct[p]) / dg(punct[p]);
  }
  return out;
}

}  // namespace d4
