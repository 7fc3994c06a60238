#pragma once

// The affine D4 Coxeter group acting on weights alpha (model alcove Delta) and
// on reduced periods x (target simplex with vertices 0, e1..e4 in 4pi^2 units).

#include <array>
#include <string>
#include <vector>

#include "d4/core.hpp"

namespace d4 {

struct AffineIsometry {
  Mat4<Rational> linear = Mat4<Rational>::Identity();
  Q4 translation = Q4::Zero();
  std::vector<int> word;  // not necessarily reduced

  Q4 apply(const Q4& x) const { return linear * x + translation; }
  // (*this) o h; words concatenate.
  AffineIsometry compose(const AffineIsometry& h) const;
  AffineIsometry inverse() const;
  bool same_map(const AffineIsometry& o) const {
    return linear == o.linear && translation == o.translation;
  }
};

// Hyperplane {x : normal.x = offset}, oriented so that the opposite vertex is positive.
struct Face {
  Q4 normal;
  Rational offset;
  Rational value(const Q4& x) const { return normal.dot(x) - offset; }
};

const std::array<Q4, 5>& model_vertices();
const std::array<Q4, 5>& target_vertices();
const Face& model_face(int i);   // omits model vertex i
const Face& target_face(int i);  // omits target vertex i

const AffineIsometry& generator(int i);         // r_i, reflection in model face i
const AffineIsometry& target_generator(int i);  // R_i, reflection in target face i

// r_{w1} o r_{w2} o ... o r_{wn} (identity for the empty word).
AffineIsometry word_action(const std::vector<int>& word);
AffineIsometry target_word_action(const std::vector<int>& word);

Mat4<GaussianRational> mass_action(const AffineIsometry& g);
G4 apply_mass(const Mat4<GaussianRational>& M, const G4& m);

struct AlcoveWalk {
  AffineIsometry g;  // g.apply(alpha0) == alpha
  Q4 alpha0;         // in the closed model alcove
  bool on_wall = false;
};
// Reflects in the lowest-index violated face until none is violated.
AlcoveWalk alcove_walk(const Q4& alpha);

// Closure of {r0, r2, r3, r4}; 192 linear maps. Computed once.
const std::vector<AffineIsometry>& enumerate_W_fin();

// One of "12/34", "13/24", "14/23", "∅/1234", "odd" for the 16 cube vertices; NotAVertex otherwise.
std::string vertex_orbit(const Q4& v);

}  // namespace d4
