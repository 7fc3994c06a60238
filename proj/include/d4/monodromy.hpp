#pragma once

// SL(2,Z) monodromy factorizations for six I1 fibers and their Hurwitz moves.
// Factor indices are 1-based in the public interface.

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace d4 {

using SL2Z = Eigen::Matrix<long long, 2, 2>;
using IVec2 = Eigen::Matrix<long long, 2, 1>;

// Products and inverses throw Overflow instead of wrapping.
SL2Z multiply(const SL2Z& a, const SL2Z& b);
SL2Z inverse(const SL2Z& a);
const SL2Z& twist_A();  // [[1,1],[0,1]]
const SL2Z& twist_B();  // [[1,0],[-1,1]]

struct I1Check {
  bool is_I1 = false;
  IVec2 eigenvector = IVec2::Zero();  // primitive; sign fixed by the first nonzero entry > 0
};
// trace 2 and not the identity.
I1Check is_I1_twist(const SL2Z& m);

struct Factorization {
  std::vector<SL2Z> factors;
  // first * ... * last; this is the order that Hurwitz moves preserve.
  SL2Z product() const;
};

// direction 1: (A_i, A_{i+1}) -> (A_{i+1}, A_{i+1}^-1 A_i A_{i+1});
// direction 2 is its inverse. IndexOutOfRange unless 1 <= i < k.
Factorization hurwitz_move(const Factorization& f, int i, int direction);

// (B, A, B, A, B, A); product -Id.
Factorization canonical_factorization();

// Representative of the simultaneous-conjugation class: the first factor's
// eigenvector is moved to (1,0), then the residual freedom [[1,n],[0,1]] is
// used to bring the (1,1) entry of the first factor with c != 0 into [0, |c|).
struct ConjugationForm {
  Factorization form;
  SL2Z conjugator;  // form = P f P^-1 factorwise
};
ConjugationForm conjugation_form(const Factorization& f);
bool conjugate_equivalent(const Factorization& f, const Factorization& g);

struct HurwitzMove {
  int i = 1;
  int direction = 1;
};
struct Normalization {
  std::vector<HurwitzMove> moves;  // shortest
  Factorization normal;            // f with the moves replayed
  SL2Z conjugator;                 // conjugator * normal * conjugator^-1 = canonical
};
// Breadth-first search over conjugation classes. Parse if f is not six I1
// factors with product -Id; Exhausted if no class within max_depth (or in
// the whole reachable orbit) matches the canonical one.
Normalization normalize(const Factorization& f, int max_depth = 24);

// Compares primitive eigenvectors of factors i and j up to sign. With
// transport the eigenvector of factor j is first moved by the product of the
// factors strictly between them, in factor order. NotParabolic unless both are I1.
bool vanishing_cycle_match(const Factorization& f, int i, int j, bool transport = false);

}  // namespace d4
