#pragma once

// Spectral curves (m_inf z^2 + w)^2 = f(z) + beta z(z-1)(z-p0) over the
// four-punctured sphere, in complex double precision.
// Punctures are indexed 0 -> z=0, 1 -> z=1, 2 -> z=p0, 3 -> z=inf, and
// masses are ordered (m0, m1, m_p0, m_inf) to match.

#include <array>
#include <optional>
#include <vector>

#include "d4/core.hpp"

namespace d4 {

struct HitchinBase {
  cplx p0;
  std::array<cplx, 4> masses{};
  std::array<cplx, 5> f{};  // f0..f4

  ComplexPoly f_poly() const { return ComplexPoly({f.begin(), f.end()}); }
  ComplexPoly g_poly() const;  // z(z-1)(z-p0)
  // f + beta g as five coefficients (nominal degree 4, untrimmed).
  std::vector<cplx> q_coeffs(cplx beta) const;
  ComplexPoly q_poly(cplx beta) const { return ComplexPoly(q_coeffs(beta)); }
  std::array<cplx, 3> finite_punctures() const { return {0.0, 1.0, p0}; }
};

// DegenerateP0 if p0 is (numerically) 0 or 1.
HitchinBase build_base(cplx p0, const std::array<cplx, 4>& masses);

// disc_z(f + beta g) = sum_j c_j beta^j, interpolated at 7 points on |beta| = radius.
struct BetaDiscriminant {
  std::array<cplx, 7> c{};
  double radius = 1;
  // max_j |c_j| radius^j: every term is comparable at |beta| = radius.
  double scale() const;
  double beta5_relative() const;  // |c5| radius^5 / scale()
};
BetaDiscriminant beta_discriminant(const HitchinBase& base);

// Six roots in beta with multiplicity; DegenerateConfiguration if the degree drops.
std::vector<cplx> singular_fibers(const HitchinBase& base);

// q of nominal degree 4 is not a perfect square and has no multiple zero at
// 0, 1, p0 (finite punctures given) or at infinity (a4 = a3 = 0).
bool in_B0_polynomial(const std::vector<cplx>& q, const std::array<cplx, 3>& punctures);
bool in_B0(const HitchinBase& base, cplx beta);

enum class Stratum { Big, Extra, Small };

struct SpectralFiberPoint {
  HitchinBase base;
  cplx beta = 0;
  Stratum stratum = Stratum::Big;
  cplx u = 0;  // Big only; Extra sits at u = infinity
  cplx w = 0;  // Big: affine w; Extra: (f3 + beta)/2
};

// Big-stratum point over u; sheet +1 takes w = sqrt(q(u)) - m_inf u^2 with the principal root.
SpectralFiberPoint big_point(const HitchinBase& base, cplx beta, cplx u, int sheet = 1);
SpectralFiberPoint extra_point(const HitchinBase& base, cplx beta);
SpectralFiberPoint small_point(const HitchinBase& base, cplx beta);

// |q(u) - (m_inf u^2 + w)^2| relative to max(1, sum |q_k||u|^k); 0 for Small.
double on_curve_residual(const SpectralFiberPoint& pt);

// phi = N(z) dz / den(z), N = [[a, b], [c, d]]. In the frame at infinity the
// off-diagonal entries become b z^-twist and c z^twist.
struct RationalMatrix {
  std::array<ComplexPoly, 4> num;  // a, b, c, d
  ComplexPoly den;
  int twist = 0;

  Eigen::Matrix2cd operator()(cplx z) const;
  // Residue of phi at puncture 0..3.
  Eigen::Matrix2cd residue(int puncture, cplx p0) const;
};
// OffCurve unless the on-curve residual is below 1e-8.
RationalMatrix higgs_representative(const SpectralFiberPoint& pt);

struct Flag {
  bool at_infinity = false;
  cplx value = 0;
  Eigen::Vector2cd vector() const;  // (value, 1) or (1, 0)
};
// Eigenlines of Res phi with eigenvalue m_p; L'Hopital limits on polar sections.
std::array<Flag, 4> flags(const SpectralFiberPoint& pt);

// res[p][s]: residue of (m_inf z^2 + w) dz / (z(z-1)(z-p0)) on sheet s (+, -) at puncture p.
using Residues = std::array<std::array<cplx, 2>, 4>;
Residues tautological_residues(const HitchinBase& base, cplx beta);

// Integrals over the segment [a, b] between two branch points a, b of q:
//   half_omega = int dz / sqrt(q),  tau_form = int sqrt(q) dz / (z(z-1)(z-p0)).
// The branch of sqrt(q)/sqrt((z-a)(z-b)) at z = a is the principal root, or
// the one closest to sheet_hint when given.
struct SegmentIntegral {
  cplx half_omega = 0;
  cplx tau_form = 0;
  cplx sheet = 0;  // branch value used at z = a
  int nodes = 0;
};
SegmentIntegral segment_integral(const HitchinBase& base, cplx beta, cplx a, cplx b,
                                 std::optional<cplx> sheet_hint = std::nullopt);

struct EllipticPeriods {
  cplx omega_A = 0;  // closed-cycle periods of dz / w~
  cplx omega_B = 0;
  cplx tau = 0;      // omega_B / omega_A, Im tau > 0
  std::array<cplx, 2> cut_A{};   // A encircles the segment cut_A
  std::array<cplx, 2> path_B{};  // B runs between the two cuts along path_B
};
// SingularFiber if the discriminant vanishes; BranchPointCoincidence if two
// branch points collide. A cubic q (m_inf = 0) has a branch point at infinity.
EllipticPeriods elliptic_periods(const HitchinBase& base, cplx beta);

// Standard reduction to |Re tau| <= 1/2, |tau| >= 1.
cplx reduce_tau(cplx tau);

struct TauAsymptotics {
  std::array<cplx, 3> fitted{};       // beta-coefficient of the root shift near 0, 1, p0
  std::array<cplx, 3> closed_form{};  // -f(p) / prod_{q != p}(p - q)
  std::array<std::vector<cplx>, 3> shifts;
};
// RootTrackingLost if the root near a puncture is not isolated.
TauAsymptotics tau_asymptotics(const HitchinBase& base, const std::vector<cplx>& betas);

}  // namespace d4
