#include <doctest.h>

#include <map>
#include <random>

#include "d4/chambers.hpp"

using namespace d4;

namespace {

Q4 q4(Rational a, Rational b, Rational c, Rational d) { return Q4(a, b, c, d); }

const Q4 kB1 = q4(Rational(3, 10), Rational(1, 5), Rational(1, 5), Rational(1, 5));
const Q4 kE1 = q4(Rational(2, 5), Rational(1, 10), Rational(1, 10), Rational(1, 10));
const Q4 kCenter = Q4::Constant(Rational(1, 4));

Q4 random_alpha(std::mt19937_64& rng, int den) {
  std::uniform_int_distribution<int> d(1, den / 2 - 1);
  Q4 a;
  for (int i = 0; i < 4; ++i) a(i) = Rational(d(rng), den);
  return a;
}

// The twelve walls inside the open cube: K_e = 0 for e in E and L_i in {0, 1}.
bool on_some_wall(const Q4& a) {
  for (Subset e : kE)
    if (wall_K(e, a) == 0) return true;
  for (int i = 1; i <= 4; ++i)
    if (wall_L(i, a) == 0 || wall_L(i, a) == 1) return true;
  return false;
}

}  // namespace

TEST_CASE("wall functionals") {
  CHECK(wall_K(0b0011, kB1) == Rational(1, 10));
  CHECK(wall_K(0, kCenter) == 0);
  CHECK(wall_K(kFull, kB1) == kB1.sum() - 1);
  CHECK(wall_L(1, kB1) == Rational(3, 10));
  CHECK(wall_L(1, kE1) == Rational(-1, 10));
  CHECK(wall_L(1, Q4::Zero()) == 0);
}

TEST_CASE("wall identities on random rationals") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const Q4 a = random_alpha(rng, 97);
    for (Subset I = 0; I < 16; ++I)
      if (cardinality(I) % 2 == 0) CHECK(wall_K(complement(I), a) == -wall_K(I, a));
    for (int i = 1; i <= 4; ++i) {
      CHECK(wall_K(singleton(i), a) == -wall_L(i, a));
      CHECK(wall_K(complement(singleton(i)), a) == wall_L(i, a) - 1);
    }
  }
}

TEST_CASE("classify_chamber examples") {
  const ChamberLabel b1 = classify_chamber(kB1);
  CHECK(b1.type == ChamberType::B1);
  CHECK(b1.distinguished == 1);
  CHECK(b1.set.subsets == kE);
  CHECK(b1.name() == "B1_1");

  const ChamberLabel e1 = classify_chamber(kE1);
  CHECK(e1.type == ChamberType::E1);
  CHECK(e1.I0 == singleton(1));
  CHECK(e1.name() == "E1_1");

  CHECK_THROWS_WITH_AS(classify_chamber(kCenter), doctest::Contains("OnWall"), Error);
  CHECK_THROWS_AS(classify_chamber(q4(Rational(1, 2), Rational(1, 5), Rational(1, 5), Rational(1, 5))), Error);
}

TEST_CASE("chamber census: 24 labels whose centroids round-trip") {
  const auto all = all_chambers();
  REQUIRE(all.size() == 24);
  std::map<ChamberType, int> count;
  for (const ChamberLabel& l : all) {
    ++count[l.type];
    const Q4 c = centroid(l);
    CHECK(classify_chamber(c) == l);
  }
  for (ChamberType t : {ChamberType::A1, ChamberType::A2, ChamberType::B1, ChamberType::B2, ChamberType::E1,
                        ChamberType::E2})
    CHECK(count[t] == 4);
}

TEST_CASE("chamber vertices and adjacency") {
  const ChamberLabel b1 = interior_chamber(ChamberType::B1, 1);
  const std::vector<Q4> v = chamber_vertices(b1);
  const Rational h(1, 2);
  const std::vector<Q4> expected{kCenter, Q4::Zero(), q4(h, h, 0, 0), q4(h, 0, h, 0), q4(h, 0, 0, h)};
  CHECK(v == expected);

  const ChamberLabel e1 = exterior_chamber(singleton(1));
  std::vector<Q4> ve = expected;
  ve[0] = q4(h, 0, 0, 0);
  CHECK(chamber_vertices(e1) == ve);

  CHECK(adjacent(b1, e1));
  CHECK_FALSE(adjacent(b1, exterior_chamber(singleton(2))));
}

TEST_CASE("interior chambers differing by swapping the empty set for its complement are adjacent") {
  const auto all = all_chambers();
  int pairs = 0;
  for (const ChamberLabel& a : all)
    for (const ChamberLabel& b : all) {
      if (!a.interior() || !b.interior()) continue;
      if (a.set.subsets[0] != 0 || b.set.subsets[3] != kFull) continue;
      // I \ {∅} = I' \ {1234}
      bool same = true;
      for (int k = 1; k < 4; ++k) same = same && a.set.subsets[k] == b.set.subsets[k - 1];
      if (!same) continue;
      ++pairs;
      CHECK(adjacent(a, b));
    }
  CHECK(pairs > 0);
}

TEST_CASE("genericity examples") {
  CHECK_FALSE(is_generic({kCenter, G4::Constant(GaussianRational(0))}));
  CHECK(is_generic({kB1, G4::Constant(GaussianRational(0))}));
  G4 m = G4::Constant(GaussianRational(0));
  m(0) = 1;
  CHECK(is_generic({kCenter, m}));
}

TEST_CASE("m = 0 genericity fails exactly on the twelve walls") {
  std::mt19937_64 rng(4);
  int on_wall = 0;
  for (int t = 0; t < 2000; ++t) {
    const Q4 a = random_alpha(rng, 20);
    const bool wall = on_some_wall(a);
    on_wall += wall;
    CHECK(is_generic({a, G4::Constant(GaussianRational(0))}) == !wall);
  }
  CHECK(on_wall > 100);  // the sample exercises both branches
}

TEST_CASE("generic at m = 0 implies generic for every m") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 500; ++t) {
    const Q4 a = random_alpha(rng, 20);
    if (!is_generic({a, G4::Constant(GaussianRational(0))})) continue;
    G4 m;
    for (int i = 0; i < 4; ++i) m(i) = GaussianRational(d(rng), d(rng));
    CHECK(is_generic({a, m}));
  }
}

TEST_CASE("R tilde membership") {
  const G4 zero = G4::Constant(GaussianRational(0));
  CHECK(in_R_tilde({kB1, zero}, false));
  CHECK(in_R_tilde({kB1, zero}, true));
  const Q4 a = q4(Rational(1, 2), Rational(1, 10), Rational(1, 10), Rational(3, 10));
  const G4 ones = G4::Constant(GaussianRational(1));
  CHECK(in_R_tilde({a, ones}, true));
  CHECK_FALSE(in_R_tilde({a, ones}, false));
  G4 m = ones;
  m(0) = 0;
  CHECK_FALSE(in_R_tilde({a, m}, true));
}

TEST_CASE("fixed-point data") {
  const FixedPointData f12 = fixed_point_data(0b0011, kB1);
  CHECK(f12.degL2 == -2);
  CHECK(f12.stability_value == Rational(1, 10));
  CHECK(f12.stable);

  const FixedPointData f1 = fixed_point_data(singleton(1), kE1);
  CHECK(f1.stability_value == -wall_L(1, kE1));
  CHECK(f1.stability_value == Rational(1, 10));
  CHECK(f1.stable);
  CHECK(f1.phi0_bundle_degree == 1);

  const FixedPointData f0 = fixed_point_data(0, kCenter);
  CHECK(f0.stability_value == 0);
  CHECK_FALSE(f0.stable);
}

TEST_CASE("each chamber has exactly the stable fixed points of its even partition set") {
  // In an interior chamber the four stable even-type fixed points are the chamber's subsets.
  for (const ChamberLabel& l : all_chambers()) {
    if (!l.interior()) continue;
    const Q4 c = centroid(l);
    for (Subset I = 0; I < 16; ++I) {
      if (cardinality(I) % 2 == 1) continue;
      const bool member = std::count(l.set.subsets.begin(), l.set.subsets.end(), I) > 0;
      CHECK(fixed_point_data(I, c).stable == member);
    }
  }
}
