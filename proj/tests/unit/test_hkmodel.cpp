#include <doctest.h>

#include <cmath>
#include <random>

#include "d4/hkmodel.hpp"

using namespace d4;

namespace {

const cplx kIm(0, 1);

Eigen::Matrix2cd random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix2cd m;
  m << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(0, 0);
  m(1, 1) = -m(0, 0);
  return m;
}

PointTangent random_tangent(std::mt19937_64& rng) { return {random_sl2(rng), random_sl2(rng)}; }

double dist(const PointTangent& v, const PointTangent& w) { return (v.a - w.a).norm() + (v.phi - w.phi).norm(); }

PointTangent scaled(const PointTangent& v, cplx s) { return {s * v.a, s * v.phi}; }

}  // namespace

TEST_CASE("complex structures square to minus one and compose quaternionically") {
  std::mt19937_64 rng(1);
  const HKParams p{0.7, 2.3, 0.4};
  for (int t = 0; t < 20; ++t) {
    const PointTangent v = random_tangent(rng);
    for (Structure s : {Structure::I, Structure::J, Structure::K})
      CHECK(dist(apply_structure(s, apply_structure(s, v, p), p), scaled(v, -1)) < 1e-12);
    CHECK(dist(apply_structure(Structure::I, apply_structure(Structure::J, v, p), p),
               apply_structure(Structure::K, v, p)) < 1e-12);
  }
}

TEST_CASE("rotating by a quarter turn takes J to K") {
  std::mt19937_64 rng(2);
  const HKParams p0{1.5, 0.6, 0.0}, p1{1.5, 0.6, M_PI / 2};
  for (int t = 0; t < 10; ++t) {
    const PointTangent v = random_tangent(rng);
    CHECK(dist(apply_structure(Structure::J, v, p1), apply_structure(Structure::K, v, p0)) < 1e-12);
  }
}

TEST_CASE("holomorphic symplectic form equals omega_J + i omega_K") {
  std::mt19937_64 rng(3);
  const HKParams p{2.0, 0.5, 1.1};
  for (int t = 0; t < 20; ++t) {
    const PointTangent v = random_tangent(rng), w = random_tangent(rng);
    const Pairings pr = pairings(v, w, p);
    const cplx expected(kahler_form(Structure::J, v, w, p), kahler_form(Structure::K, v, w, p));
    CHECK(std::abs(pr.OmegaItheta - expected) < 1e-10 * (1 + std::abs(expected)));
    CHECK(std::abs(pr.omegaI - kahler_form(Structure::I, v, w, p)) < 1e-12);
    // Closed form of the holomorphic symplectic form.
    const cplx direct = -2.0 * std::exp(-kIm * p.theta) * p.lambda1 * std::sqrt(p.lambda2) *
                        (w.phi * v.a - v.phi * w.a).trace();
    CHECK(std::abs(pr.OmegaItheta - direct) < 1e-10 * (1 + std::abs(direct)));
    CHECK(pairings(v, v, p).g > 0);
  }
}

TEST_CASE("randomized hyperkaehler check") {
  const HKCheckReport fixed = hk_check(HKParams{1.0, 1.0, 0.0}, 200, 7);
  CHECK(fixed.pass());
  CHECK(fixed.max_deviation.size() == 12);
  CHECK(fixed.min_g_ratio > 0);
  const HKCheckReport random = hk_check(std::nullopt, 200, 8);
  CHECK(random.pass());
  for (const auto& [name, dev] : random.max_deviation) CHECK_MESSAGE(dev <= 1e-10, name);
}

TEST_CASE("moment map residues") {
  const HKParams p{1.0, 1.0, 0.0};
  const MomentResidues r = moment_residues(Rational(1, 4), GaussianRational(0), GaussianRational(0), p);
  CHECK(std::abs(r.mu(0, 0) - 0.25) < 1e-15);
  CHECK(std::abs(r.mu(1, 1) + 0.25) < 1e-15);
  CHECK(r.M.norm() < 1e-15);

  const GaussianRational m(Rational(1, 3), 2), n(-1, Rational(1, 2));
  const MomentResidues a = moment_residues(Rational(1, 5), m, n, {1.3, 0.8, 0.7});
  const MomentResidues b = moment_residues(Rational(1, 5), m, n, {1.3, 0.8, 0.7 + M_PI});
  CHECK((a.M + b.M).norm() < 1e-12);
  CHECK((a.mu - b.mu).norm() < 1e-15);
  CHECK(std::abs(a.M(0, 0) + a.M(1, 1)) < 1e-12);
  CHECK(std::abs(a.M(1, 0)) == 0);
}

TEST_CASE("exact moment residues agree with the floating version") {
  const GaussianRational m(Rational(1, 3), 2), n(-1, Rational(1, 2));
  const Rational l1(3, 2), l2(4, 9);
  const ExactMomentResidues e = moment_residues_exact(Rational(1, 5), m, n, l1, l2);
  CHECK(e.M_unit(0, 0) == GaussianRational(0, 2 * l1) * -m);
  CHECK(e.M_unit(0, 1) == GaussianRational(0, 2 * l1) * n);
  CHECK(e.mu(0, 0) == -l1 * l2 * (Rational(1, 5) - Rational(1, 2)));
  const double theta = 0.9;
  const MomentResidues f = moment_residues(Rational(1, 5), m, n, {1.5, 4.0 / 9.0, theta});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const cplx unit(to_double(e.M_unit(r, c).re), to_double(e.M_unit(r, c).im));
      CHECK(std::abs(f.M(r, c) - std::exp(-kIm * theta) * (2.0 / 3.0) * unit) < 1e-12);
      CHECK(std::abs(f.mu(r, c) - to_double(e.mu(r, c))) < 1e-15);
    }
}
