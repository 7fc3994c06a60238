#pragma once

// Wall functionals and the 24 chambers of parabolic weights in (0,1/2)^4.
// Subsets of {1,2,3,4} are bitmasks: bit i-1 is set iff i is a member.

#include <array>
#include <string>
#include <vector>

#include "d4/core.hpp"

namespace d4 {

using Subset = unsigned;
inline constexpr Subset kFull = 0b1111;

inline int cardinality(Subset s) { return __builtin_popcount(s & kFull); }
inline Subset complement(Subset s) { return kFull & ~s; }
inline bool contains(Subset s, int i) { return (s >> (i - 1)) & 1u; }
inline Subset singleton(int i) { return 1u << (i - 1); }
std::string subset_name(Subset s);  // "{}" / "{1,2}"

// E = {∅, {1,2}, {1,3}, {1,4}}; each even subset is a member of E or a complement of one.
inline constexpr std::array<Subset, 4> kE{0b0000, 0b0011, 0b0101, 0b1001};

// One choice from each pair {e, e^c}, stored in ascending bitmask order.
struct EvenPartitionSet {
  std::array<Subset, 4> subsets{};
  friend bool operator==(const EvenPartitionSet&, const EvenPartitionSet&) = default;
};

enum class ChamberType { A1, A2, B1, B2, E1, E2 };
std::string to_string(ChamberType t);

struct ChamberLabel {
  ChamberType type{};
  int distinguished = 1;  // the index i in A1_i ... E2_i
  Subset I0 = 0;          // exterior only: {i} for E1, {j,k,l} for E2
  EvenPartitionSet set;

  bool interior() const { return type != ChamberType::E1 && type != ChamberType::E2; }
  std::string name() const;  // "B1_1", "E2_4"
  friend bool operator==(const ChamberLabel&, const ChamberLabel&) = default;
};

struct ParabolicData {
  Q4 alpha = Q4::Zero();
  G4 masses = G4::Constant(GaussianRational(0));
};

Rational wall_K(Subset I, const Q4& alpha);
Rational wall_L(int i, const Q4& alpha);

ChamberLabel interior_chamber(ChamberType type, int i);
ChamberLabel exterior_chamber(Subset I0);
std::vector<ChamberLabel> all_chambers();  // 16 interior then 8 exterior

// OutOfCube unless alpha in (0,1/2)^4; OnWall if a deciding functional hits its wall.
ChamberLabel classify_chamber(const Q4& alpha);

struct GenericityViolation {
  int d = 0;
  std::array<int, 4> e{};
};
std::vector<GenericityViolation> genericity_violations(const ParabolicData& data);
bool is_generic(const ParabolicData& data);
bool in_R_tilde(const ParabolicData& data, bool full);

Q4 cube_vertex(Subset J);
std::vector<Q4> chamber_vertices(const ChamberLabel& label);
Q4 centroid(const ChamberLabel& label);
bool adjacent(const ChamberLabel& a, const ChamberLabel& b);

struct FixedPointData {
  int degDI = 0;
  int degL2 = 0;
  Rational stability_value;
  bool stable = false;
  int phi0_bundle_degree = 0;
};
FixedPointData fixed_point_data(Subset I, const Q4& alpha);

}  // namespace d4
