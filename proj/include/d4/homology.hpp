#pragma once

// The rank-5 lattice spanned by the nilpotent-cone spheres S0..S4 with the
// affine D4 intersection form. Matrices act on coefficient column vectors.

#include <vector>

#include "d4/core.hpp"

namespace d4 {

using IVec5 = Eigen::Matrix<long long, 5, 1>;
using IMat5 = Eigen::Matrix<long long, 5, 5>;

const IMat5& intersection_form();
IVec5 fiber_class();  // (2,1,1,1,1), spans the kernel of the form
IVec5 basis_class(int i);

// Coxeter matrix of affine D4: node 0 is joined to each of 1..4.
int coxeter_m(int i, int j);

long long intersection(const IVec5& a, const IVec5& b);

// A_i c = c + I(c, S_i) S_i.
IMat5 dehn_twist_matrix(int i);
// Ordered product A_{w1} A_{w2} ... A_{wn}.
IMat5 word_to_auto(const std::vector<int>& word);
// A^T I0 A = I0 and A F = F.
bool is_lattice_auto(const IMat5& A);

// Classes of square -2 from the three families with |k| <= k_max, deduplicated
// and sorted lexicographically:
//   lambda = k(1,1,1,1),               lambda0 = 2k +- 1
//   lambda = k(1,1,1,1) + s e_i,       lambda0 in {2k, 2k + s}
//   lambda = k(1,1,1,1) + s(e_i + e_j), lambda0 = 2k + s        (s = +-1)
std::vector<IVec5> classes_of_square_minus2(int k_max);

// Affine action of a lattice automorphism on reduced periods (x1..x4), units of 4pi^2:
// x -> hatA^T x + hatB, z -> hatA^T z. It is a right action: (x.A).B = x.(AB).
struct HatReduction {
  Mat4<Rational> A;
  Q4 b;

  Q4 apply(const Q4& x) const;
  G4 apply_linear(const G4& z) const;
};
HatReduction hat_reduction(const IMat5& A);

}  // namespace d4
