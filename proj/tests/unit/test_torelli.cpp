#include <doctest.h>

#include <random>

#include "d4/coxeter.hpp"
#include "d4/homology.hpp"
#include "d4/torelli.hpp"

using namespace d4;

namespace {

const Q4 kB1(Rational(3, 10), Rational(1, 5), Rational(1, 5), Rational(1, 5));
const Q4 kE1(Rational(2, 5), Rational(1, 10), Rational(1, 10), Rational(1, 10));
const G4 kZero = G4::Constant(GaussianRational(0));

G4 random_masses(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  G4 m;
  for (int i = 0; i < 4; ++i) m(i) = GaussianRational(Rational(d(rng), 4), Rational(d(rng), 3));
  return m;
}

G4 times(const Mat4<Rational>& M, const G4& v) {
  G4 out = kZero;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r) += GaussianRational(M(r, c)) * v(c);
  return out;
}

// A generic point of a chamber: its centroid nudged by a small random offset.
Q4 point_in(const ChamberLabel& l, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  for (;;) {
    Q4 a = centroid(l);
    for (int i = 0; i < 4; ++i) a(i) += Rational(d(rng), 1000);
    try {
      if (classify_chamber(a) == l && is_generic({a, kZero})) return a;
    } catch (const Error&) {
    }
  }
}

// x0 by chamber type, computed straight from alpha.
Rational expected_x0(const ChamberLabel& l, const Q4& a) {
  const int i = l.distinguished - 1;
  const Rational others = a.sum() - a(i);
  switch (l.type) {
    case ChamberType::A1: return 2 * a(i);
    case ChamberType::A2: return 1 - 2 * a(i);
    case ChamberType::B1: return -a(i) + others;
    case ChamberType::B2: return 1 + a(i) - others;
    default: return wall_K(l.I0, a);
  }
}

int index_of(const ChamberLabel& l, Subset J) {
  for (int k = 0; k < 4; ++k)
    if (l.set.subsets[k] == J) return k;
  return -1;
}

}  // namespace

TEST_CASE("periods in the model chamber") {
  const PeriodVector p = torelli_chamber({kB1, kZero});
  Vec5<Rational> x;
  x << Rational(3, 10), Rational(1, 10), Rational(1, 10), Rational(1, 10), Rational(1, 10);
  CHECK(p.x == x);
  CHECK(p.z == Vec5<GaussianRational>::Constant(GaussianRational(0)));
  CHECK(p.basis_tag() == "B1_1");
  CHECK(p.fiber_relations_hold());

  const PeriodVector q = torelli_parallel({kB1, kZero});
  CHECK(q.x == p.x);
  CHECK(q.basis_tag() == "parallel(model)");
}

TEST_CASE("periods in an exterior chamber") {
  const PeriodVector p = torelli_chamber({kE1, kZero});
  CHECK(p.chamber->name() == "E1_1");
  CHECK(p.x(0) == Rational(1, 10));
  // The sphere of the empty set: K_∅ - K_{1} = 1 - 2 alpha_1.
  CHECK(p.x(1 + index_of(*p.chamber, 0)) == 1 - 2 * kE1(0));
  CHECK(p.fiber_relations_hold());
}

TEST_CASE("the sphere of the full set carries the total mass") {
  std::mt19937_64 rng(1);
  const ChamberLabel b2 = interior_chamber(ChamberType::B2, 4);
  const G4 m = random_masses(rng);
  const PeriodVector p = torelli_chamber({centroid(b2), m});
  const int k = index_of(b2, kFull);
  REQUIRE(k >= 0);
  CHECK(p.z(1 + k) == m(0) + m(1) + m(2) + m(3));
}

TEST_CASE("central periods match the closed form of each chamber type and are positive") {
  std::mt19937_64 rng(2);
  for (const ChamberLabel& l : all_chambers()) {
    for (int t = 0; t < 5; ++t) {
      const Q4 a = point_in(l, rng);
      const PeriodVector p = torelli_chamber({a, random_masses(rng)});
      CHECK(p.fiber_relations_hold());
      CHECK(p.x(0) == expected_x0(l, a));
      for (int j = 0; j < 5; ++j) CHECK(p.x(j) > 0);
    }
  }
}

TEST_CASE("parallel basis") {
  const Mat4<Rational>& M = parallel_matrix();
  CHECK(M * M.transpose() == Mat4<Rational>(4 * Mat4<Rational>::Identity()));
  ExactMatrix E = M;
  CHECK(exact_determinant<Rational>(E) == 16);

  const PeriodVector p = torelli_parallel({Q4::Zero(), kZero});
  CHECK(p.x(0) == 0);
  CHECK(p.x_ext() == Q4::Unit(0));
  CHECK_FALSE(in_period_domain(p).in_domain);
}

TEST_CASE("inverse of the parallel map") {
  const ParabolicData d = inverse_torelli(periods_from_exterior(Q4::Unit(0), kZero));
  CHECK(d.alpha == Q4::Zero());
  CHECK(d.masses == kZero);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-40, 40);
  for (int t = 0; t < 100; ++t) {
    ParabolicData in;
    for (int i = 0; i < 4; ++i) in.alpha(i) = Rational(u(rng), 17);
    in.masses = random_masses(rng);
    const ParabolicData out = inverse_torelli(torelli_parallel(in));
    CHECK(out.alpha == in.alpha);
    CHECK(out.masses == in.masses);
  }

  PeriodVector bad = periods_from_exterior(Q4::Unit(0), kZero);
  bad.x(0) += 1;
  CHECK_THROWS_WITH_AS(inverse_torelli(bad), doctest::Contains("InconsistentFiberRelation"), Error);
}

TEST_CASE("inverse of the chamber map") {
  std::mt19937_64 rng(4);
  for (const ChamberLabel& l : all_chambers()) {
    const ParabolicData in{point_in(l, rng), random_masses(rng)};
    const ParabolicData out = inverse_torelli_chamber(torelli_chamber(in));
    CHECK(out.alpha == in.alpha);
    CHECK(out.masses == in.masses);
  }
}

TEST_CASE("period domain examples") {
  CHECK(in_period_domain(torelli_chamber({kB1, kZero})).in_domain);

  Q4 x(0, Rational(1, 3), Rational(1, 5), Rational(1, 7));
  G4 z = kZero;
  z(1) = GaussianRational(1, 2);
  z(2) = GaussianRational(-1, 1);
  z(3) = GaussianRational(Rational(1, 2), 0);
  const DomainCheck c = in_period_domain(periods_from_exterior(x, z));
  CHECK_FALSE(c.in_domain);
  REQUIRE(c.witness);
  CHECK(c.witness->name() == "H_{0,1}");

  // S0 has zero periods when sum x = 1 and sum z = 0.
  const Q4 x0(Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8));
  G4 z0 = kZero;
  z0(0) = GaussianRational(1, 1);
  z0(1) = GaussianRational(-1, -1);
  const DomainCheck c0 = in_period_domain(periods_from_exterior(x0, z0));
  CHECK_FALSE(c0.in_domain);
  REQUIRE(c0.witness);
  CHECK(c0.witness->name() == "H_{0}");

  for (int i = 1; i <= 4; ++i) {
    Q4 xi(Rational(1, 3), Rational(1, 5), Rational(1, 7), Rational(1, 11));
    G4 zi = G4::Constant(GaussianRational(Rational(1, 3), 1));
    xi(i - 1) = 0;
    zi(i - 1) = 0;
    const DomainCheck ci = in_period_domain(periods_from_exterior(xi, zi));
    REQUIRE(ci.witness);
    CHECK(ci.witness->name() == "H_{0," + std::to_string(i) + "}");
  }
}

TEST_CASE("every -2 class plane lies outside the period domain") {
  // The class lambda has zero periods iff sum (l0 - 2 l_i) x_i = l0 and sum (l0 - 2 l_i) z_i = 0.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-30, 30);
  for (const IVec5& lam : classes_of_square_minus2(2)) {
    Q4 c;
    for (int i = 0; i < 4; ++i) c(i) = Rational(lam(0) - 2 * lam(i + 1));
    int pivot = 0;
    while (c(pivot) == 0) ++pivot;
    Q4 x;
    G4 z;
    for (int i = 0; i < 4; ++i) {
      x(i) = Rational(u(rng), 29);
      z(i) = GaussianRational(Rational(u(rng), 23), Rational(u(rng), 19));
    }
    Rational rx = Rational(lam(0));
    GaussianRational rz = 0;
    for (int i = 0; i < 4; ++i)
      if (i != pivot) {
        rx -= c(i) * x(i);
        rz -= GaussianRational(c(i)) * z(i);
      }
    x(pivot) = rx / c(pivot);
    z(pivot) = rz / GaussianRational(c(pivot));
    CHECK_FALSE(in_period_domain(periods_from_exterior(x, z)).in_domain);
  }
}

TEST_CASE("images of the full R tilde lie in the period domain") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(-60, 60);
  int tested = 0;
  for (int t = 0; t < 400; ++t) {
    ParabolicData d;
    for (int i = 0; i < 4; ++i) d.alpha(i) = Rational(u(rng), 47);
    d.masses = random_masses(rng);
    if (t % 3 == 0) d.masses = kZero;
    if (!in_R_tilde(d, true)) continue;
    ++tested;
    CHECK(in_period_domain(torelli_parallel(d)).in_domain);
  }
  CHECK(tested > 100);
}

TEST_CASE("intersection tables") {
  const ChamberLabel e24 = exterior_chamber(0b0111);
  CHECK(e24.name() == "E2_4");
  Eigen::Matrix<int, 4, 4> d = Eigen::Matrix<int, 4, 4>::Zero();
  d.diagonal() << 2, 2, 2, -2;
  CHECK(intersection_table(e24) == d);

  Eigen::Matrix<int, 4, 4> b2;
  b2 << 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1, 1, -1, -1, -1, -1;
  CHECK(intersection_table(interior_chamber(ChamberType::B2, 4)) == b2);

  for (const ChamberLabel& l : all_chambers()) {
    const auto t = intersection_table(l);
    for (int k = 0; k < 16; ++k) {
      if (l.interior())
        CHECK(std::abs(t(k)) == 1);
      else
        CHECK((t(k) == 0 || std::abs(t(k)) == 2));
    }
  }

  // The row of puncture p is minus the m-coefficients of z over that sphere.
  std::mt19937_64 rng(7);
  for (const ChamberLabel& l : all_chambers()) {
    const auto t = intersection_table(l);
    const auto spheres = spheres_by_puncture(l);
    for (int j = 0; j < 4; ++j) {
      G4 m = kZero;
      m(j) = 1;
      const PeriodVector p = torelli_chamber({point_in(l, rng), m});
      for (int q = 0; q < 4; ++q) CHECK(p.z(1 + index_of(l, spheres[q])) == GaussianRational(-t(q, j)));
    }
  }
}

TEST_CASE("equivariance of the parallel map") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(-40, 40), gen(0, 4);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> w(1 + t % 5);
    for (int& g : w) g = gen(rng);
    ParabolicData d;
    for (int i = 0; i < 4; ++i) d.alpha(i) = Rational(u(rng), 31);
    d.masses = random_masses(rng);
    const AffineIsometry g = word_action(w), R = target_word_action(w);
    const PeriodVector lhs = torelli_parallel({g.apply(d.alpha), apply_mass(mass_action(g), d.masses)});
    const PeriodVector rhs = torelli_parallel(d);
    CHECK(lhs.x_ext() == R.apply(rhs.x_ext()));
    CHECK(lhs.z_ext() == times(R.linear, rhs.z_ext()));

    // Change of basis by the lattice automorphism of the word is the inverse target action.
    const HatReduction h = hat_reduction(word_to_auto(w));
    CHECK(h.apply(rhs.x_ext()) == R.inverse().apply(rhs.x_ext()));
    CHECK(h.apply_linear(rhs.z_ext()) == times(R.inverse().linear, rhs.z_ext()));
  }
}

TEST_CASE("mass scaling rescales z and fixes x") {
  std::mt19937_64 rng(9);
  const ParabolicData d{kB1, random_masses(rng)};
  for (const GaussianRational& t :
       {GaussianRational(2), GaussianRational(0, 1), GaussianRational(Rational(3, 5), Rational(1, 5))}) {
    const MassScaling s = scale_masses(d, t);
    CHECK(s.x_invariant);
    CHECK(s.z_scaled);
  }
  G4 m = kZero;
  m(0) = 1;
  CHECK_THROWS_AS(scale_masses({Q4::Constant(Rational(1, 4)), m}, GaussianRational(0)), Error);
}

TEST_CASE("crossing an interior wall negates the crossing sphere") {
  std::mt19937_64 rng(10);
  const G4 m = random_masses(rng);
  int pairs = 0;
  for (const ChamberLabel& a : all_chambers())
    for (const ChamberLabel& b : all_chambers()) {
      if (!a.interior() || !b.interior() || a.set.subsets[0] != 0 || b.set.subsets[3] != kFull) continue;
      bool same = true;
      for (int k = 1; k < 4; ++k) same = same && a.set.subsets[k] == b.set.subsets[k - 1];
      if (!same) continue;
      ++pairs;
      const PeriodVector pa = torelli_chamber({centroid(a), m}), pb = torelli_chamber({centroid(b), m});
      CHECK(pb.z(4) == -pa.z(1));
      for (int k = 1; k < 4; ++k) CHECK(pb.z(k) == pa.z(k + 1));
    }
  CHECK(pairs > 0);
}

TEST_CASE("moment values") {
  CHECK(moment_value(0b0011, kB1) == Rational(-1, 10));
  CHECK(moment_value(0, kB1) == kB1.sum() - 1);
  // Exterior periods are differences of moment values.
  const PeriodVector p = torelli_chamber({kE1, kZero});
  for (int k = 0; k < 4; ++k)
    CHECK(p.x(1 + k) == moment_value(singleton(1), kE1) - moment_value(p.chamber->set.subsets[k], kE1));
}
