#pragma once

// Periods of omega_I (units of 4pi^2) and Omega_I (units of 2pi) over the
// basis S0..S4 of the nilpotent cone, and their inverse.

#include <optional>
#include <string>
#include <vector>

#include "d4/chambers.hpp"

namespace d4 {

struct PeriodVector {
  Vec5<Rational> x = Vec5<Rational>::Zero();                        // 4pi^2 units
  Vec5<GaussianRational> z = Vec5<GaussianRational>::Constant(GaussianRational(0));  // 2pi units
  std::optional<ChamberLabel> chamber;  // basis: chamber spheres, else parallel (model) basis

  Q4 x_ext() const { return x.tail<4>(); }
  G4 z_ext() const { return z.tail<4>(); }
  // 2 x0 + sum x_j = 1 and 2 z0 + sum z_j = 0.
  bool fiber_relations_hold() const;
  std::string basis_tag() const { return chamber ? chamber->name() : "parallel(model)"; }
};

// M_J = sum_{j in J} m_j - sum_{j not in J} m_j.
GaussianRational mass_M(Subset J, const G4& m);

// Requires classify_chamber to succeed and is_generic; x_j = K_J (- K_{I0}), z_j = M_J (- M_{I0}).
PeriodVector torelli_chamber(const ParabolicData& data);

// Rows (-1,-1,-1,-1), (1,1,-1,-1), (1,-1,1,-1), (1,-1,-1,1); M M^T = 4 Id.
const Mat4<Rational>& parallel_matrix();
// x = M alpha + e1, z = M m.
PeriodVector torelli_parallel(const ParabolicData& data);
PeriodVector periods_from_exterior(const Q4& x, const G4& z);
// alpha = M^T (x - e1) / 4, m = M^T z / 4; InconsistentFiberRelation if the relations fail.
ParabolicData inverse_torelli(const PeriodVector& p);
// Inverse of torelli_chamber for the chamber recorded in p. The preimage must
// classify into that chamber, otherwise the error of classify_chamber (or
// OutOfCube for a different chamber) is thrown.
ParabolicData inverse_torelli_chamber(const PeriodVector& p);

// A plane of the complement description: "H_k", "H_k,i", "H'_k,i", "H_k,i1,i2".
struct DomainWitness {
  std::string family;
  long long k = 0;
  std::vector<int> indices;
  std::string name() const;
};
struct DomainCheck {
  bool in_domain = true;
  std::optional<DomainWitness> witness;
};
DomainCheck in_period_domain(const PeriodVector& p);

// Row p is the sphere attached to puncture p: with distinguished index i the
// member of {∅, 1234} for p = i, otherwise the member of the class of {i, p}.
std::array<Subset, 4> spheres_by_puncture(const ChamberLabel& label);
// I(S_p, Sigma_j) = -(coefficient of m_j in z over S_p).
Eigen::Matrix<int, 4, 4> intersection_table(const ChamberLabel& label);

// -K_I, units of 2pi.
Rational moment_value(Subset I, const Q4& alpha);

struct MassScaling {
  PeriodVector before;
  PeriodVector after;
  bool x_invariant = false;
  bool z_scaled = false;
};
// NonGeneric if either endpoint is non-generic.
MassScaling scale_masses(const ParabolicData& data, const GaussianRational& t);

}  // namespace d4
