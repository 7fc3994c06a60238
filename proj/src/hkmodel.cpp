#include "d4/hkmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace d4 {

namespace {

const cplx kIm(0.0, 1.0);

PointTangent scaled(cplx s, const PointTangent& v) { return {s * v.a, s * v.phi}; }

// J_theta is antilinear: J_theta(c v) = conj(c) J_theta(v).
PointTangent apply_J(const PointTangent& v, const HKParams& p) {
  const double r = std::sqrt(p.lambda2);
  const cplx e = std::polar(1.0, p.theta);
  return {e / r * v.phi.adjoint(), -e * r * v.a.adjoint()};
}

}  // namespace

PointTangent apply_structure(Structure s, const PointTangent& v, const HKParams& p) {
  switch (s) {
    case Structure::I:
      return scaled(kIm, v);
    case Structure::J:
      return apply_J(v, p);
    case Structure::K:
      return scaled(kIm, apply_J(v, p));
  }
  return v;
}

namespace {

double metric(const PointTangent& v, const PointTangent& w, const HKParams& p) {
  return 2 * p.lambda1 * (p.lambda2 * (v.a * w.a.adjoint()).trace() + (v.phi * w.phi.adjoint()).trace()).real();
}

}  // namespace

double kahler_form(Structure s, const PointTangent& v, const PointTangent& w, const HKParams& p) {
  return metric(apply_structure(s, v, p), w, p);
}

Pairings pairings(const PointTangent& v, const PointTangent& w, const HKParams& p) {
  Pairings out;
  out.g = metric(v, w, p);
  out.omegaI = kahler_form(Structure::I, v, w, p);
  out.OmegaItheta = -2.0 * std::polar(1.0, -p.theta) * p.lambda1 * std::sqrt(p.lambda2) *
                    (w.phi * v.a - v.phi * w.a).trace();
  return out;
}

MomentResidues moment_residues(const Rational& alpha, const GaussianRational& m, const GaussianRational& n,
                               const HKParams& p) {
  const cplx mc = to_complex(m), nc = to_complex(n);
  const double a = to_double(alpha);
  MomentResidues r;
  r.M << -mc, nc, 0.0, mc;
  r.M *= 2.0 * kIm * std::polar(1.0, -p.theta) * p.lambda1 * std::sqrt(p.lambda2);
  r.mu << -p.lambda1 * p.lambda2 * (a - 0.5), 0.0, 0.0, -p.lambda1 * p.lambda2 * (0.5 - a);
  return r;
}

ExactMomentResidues moment_residues_exact(const Rational& alpha, const GaussianRational& m,
                                          const GaussianRational& n, const Rational& lambda1,
                                          const Rational& lambda2) {
  ExactMomentResidues r;
  const GaussianRational c = GaussianRational(0, 2) * GaussianRational(lambda1);
  r.M_unit << c * (GaussianRational(0) - m), c * n, GaussianRational(0), c * m;
  const Rational half(1, 2);
  r.mu << -lambda1 * lambda2 * (alpha - half), Rational(0), Rational(0), -lambda1 * lambda2 * (half - alpha);
  return r;
}

bool HKCheckReport::pass() const {
  if (!(min_g_ratio > 0)) return false;
  return std::all_of(max_deviation.begin(), max_deviation.end(),
                     [&](const auto& d) { return d.second <= tolerance; });
}

namespace {

double norm(const PointTangent& v) { return std::sqrt(v.a.squaredNorm() + v.phi.squaredNorm()); }

PointTangent minus(const PointTangent& v, const PointTangent& w) { return {v.a - w.a, v.phi - w.phi}; }

PointTangent random_tangent(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  PointTangent v;
  for (Eigen::Matrix2cd* m : {&v.a, &v.phi}) {
    for (int k = 0; k < 4; ++k) (*m)(k) = cplx(n(rng), n(rng));
    const cplx t = m->trace() / 2.0;
    (*m)(0, 0) -= t;
    (*m)(1, 1) -= t;
  }
  return v;
}

}  // namespace

HKCheckReport hk_check(const std::optional<HKParams>& fixed, int trials, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_lambda(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  HKCheckReport r;
  r.trials = trials;
  r.tolerance = tol;
  r.min_g_ratio = std::numeric_limits<double>::infinity();
  const char* names[] = {"I^2=-1", "J^2=-1", "K^2=-1", "IJ=K", "JK=I", "KI=J", "g(Iv,Iw)=g(v,w)",
                         "g(Jv,Jw)=g(v,w)", "g(Kv,Kw)=g(v,w)", "omega_I antisymmetric",
                         "Omega antisymmetric", "Omega=omega_J+i*omega_K"};
  for (const char* n : names) r.max_deviation.emplace_back(n, 0.0);
  const Structure I = Structure::I, J = Structure::J, K = Structure::K;
  for (int t = 0; t < trials; ++t) {
    HKParams p = fixed ? *fixed : HKParams{std::exp(log_lambda(rng)), std::exp(log_lambda(rng)), angle(rng)};
    const PointTangent v = random_tangent(rng), w = random_tangent(rng);
    auto S = [&](Structure s, const PointTangent& x) { return apply_structure(s, x, p); };
    const double scale = 2 * p.lambda1 * std::max(1.0, p.lambda2);
    const double nv = norm(v), nvw = nv * norm(w) * scale;
    const PointTangent neg{-v.a, -v.phi};
    const Pairings pvw = pairings(v, w, p), pwv = pairings(w, v, p);
    const double dev[] = {
        norm(minus(S(I, S(I, v)), neg)) / nv,
        norm(minus(S(J, S(J, v)), neg)) / nv,
        norm(minus(S(K, S(K, v)), neg)) / nv,
        norm(minus(S(I, S(J, v)), S(K, v))) / nv,
        norm(minus(S(J, S(K, v)), S(I, v))) / nv,
        norm(minus(S(K, S(I, v)), S(J, v))) / nv,
        std::abs(pairings(S(I, v), S(I, w), p).g - pvw.g) / nvw,
        std::abs(pairings(S(J, v), S(J, w), p).g - pvw.g) / nvw,
        std::abs(pairings(S(K, v), S(K, w), p).g - pvw.g) / nvw,
        std::abs(pvw.omegaI + pwv.omegaI) / nvw,
        std::abs(pvw.OmegaItheta + pwv.OmegaItheta) / nvw,
        std::abs(pvw.OmegaItheta - cplx(kahler_form(J, v, w, p), kahler_form(K, v, w, p))) / nvw,
    };
    for (std::size_t k = 0; k < r.max_deviation.size(); ++k)
      r.max_deviation[k].second = std::max(r.max_deviation[k].second, dev[k]);
    r.min_g_ratio = std::min(r.min_g_ratio, pairings(v, v, p).g / (nv * nv * scale));
  }
  return r;
}

}  // namespace d4
