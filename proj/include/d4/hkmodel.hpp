#pragma once

// Pointwise model of the (lambda1, lambda2, theta) family of hyperkaehler
// structures on tangent vectors (a, phi) of sl(2,C) x sl(2,C), with the
// hermitian form fixed to the identity so that adjoints are conjugate transposes.
//
// Conventions:
//   I(a, phi)       = (i a, i phi)
//   J(a, phi)       = (lambda2^-1/2 phi^*, -lambda2^1/2 a^*),  J_theta = e^{i theta} J
//   K_theta         = I J_theta
//   g(v, w)         = 2 lambda1 Re Tr(lambda2 a1 a2^* + phi1 phi2^*)
//   omega_S(v, w)   = g(S v, w)
//   Omega_theta     = -2 e^{-i theta} lambda1 lambda2^1/2 Tr(phi2 a1 - phi1 a2)
// The last one equals omega_{J_theta} + i omega_{K_theta}; it is -i times the
// expression carrying the extra factor i in the integral formula.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "d4/core.hpp"

namespace d4 {

struct HKParams {
  double lambda1 = 1;
  double lambda2 = 1;
  double theta = 0;
};

struct PointTangent {
  Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd phi = Eigen::Matrix2cd::Zero();
};

enum class Structure { I, J, K };

// J and K are the theta-rotated J_theta and K_theta.
PointTangent apply_structure(Structure s, const PointTangent& v, const HKParams& p);

struct Pairings {
  double g = 0;
  double omegaI = 0;
  cplx OmegaItheta = 0;
};
Pairings pairings(const PointTangent& v, const PointTangent& w, const HKParams& p);
// omega_S(v, w) = g(S v, w)
double kahler_form(Structure s, const PointTangent& v, const PointTangent& w, const HKParams& p);

// Coefficients of pi delta_p dzbar ^ dz in the complex and real moment maps:
//   M  = 2i e^{-i theta} lambda1 lambda2^1/2 [[-m, n], [0, m]]
//   mu = -lambda1 lambda2 diag(alpha - 1/2, 1/2 - alpha)
struct MomentResidues {
  Eigen::Matrix2cd M;
  Eigen::Matrix2cd mu;
};
MomentResidues moment_residues(const Rational& alpha, const GaussianRational& m, const GaussianRational& n,
                               const HKParams& p);

// Exact version for rational lambda1, lambda2: M = e^{-i theta} lambda2^1/2 M_unit.
struct ExactMomentResidues {
  Eigen::Matrix<GaussianRational, 2, 2> M_unit;
  Eigen::Matrix<Rational, 2, 2> mu;
};
ExactMomentResidues moment_residues_exact(const Rational& alpha, const GaussianRational& m,
                                          const GaussianRational& n, const Rational& lambda1,
                                          const Rational& lambda2);

// Randomized check of the quaternionic relations, compatibility of g with
// I, J_theta, K_theta, antisymmetry and Omega = omega_J + i omega_K.
// Deviations are relative to |v||w| times the metric scale. Parameters are
// drawn per trial (lambda log-uniform in [1/10, 10]) when `fixed` is empty.
struct HKCheckReport {
  int trials = 0;
  double tolerance = 0;
  std::vector<std::pair<std::string, double>> max_deviation;  // fixed order
  double min_g_ratio = 0;  // min g(v,v) / (|v|^2 scale); positive-definiteness
  bool pass() const;
};
HKCheckReport hk_check(const std::optional<HKParams>& fixed, int trials, std::uint64_t seed, double tol = 1e-10);

}  // namespace d4
