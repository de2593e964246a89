#pragma once

#include <cstdint>
#include <string>

#include "djt/split/split.hpp"

namespace djt::testing {

/// Outcome of a randomized property sweep.
struct Sweep {
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
  void record(bool passed, const std::string& what) {
    ++instances;
    if (!passed && failures++ == 0) first_failure = what;
  }
  Sweep& operator+=(const Sweep& o) {
    if (failures == 0 && o.failures > 0) first_failure = o.first_failure;
    instances += o.instances;
    failures += o.failures;
    return *this;
  }
};

// Algebra kernel.
Sweep schouten_antisymmetry(int count, std::uint64_t seed);
Sweep schouten_jacobi(int count, std::uint64_t seed);
Sweep schouten_leibniz(int count, std::uint64_t seed);
Sweep schouten_matches_lie_bracket(int count, std::uint64_t seed);
Sweep dl_squared_zero(int count, std::uint64_t seed);
Sweep cartan_formula(int count, std::uint64_t seed);
Sweep cartan_commutator(int count, std::uint64_t seed);

}  // namespace djt::testing

namespace djt::testing {

/// Homogenization dictionary on a mixed corpus (random and known Jacobi pairs).
struct DictionarySweep {
  Sweep round_trip;
  Sweep equivalence;
  Sweep homogeneity;
  int jacobi_pairs = 0;
  int non_jacobi_pairs = 0;
};
DictionarySweep homogenization_dictionary(int count, std::uint64_t seed);

}  // namespace djt::testing

namespace djt::testing {

// Omni-Lie algebroid layer.
Sweep graph_isotropy(int points_per_fixture, std::uint64_t seed);
/// involutivity_check against jacobi_defect; counts both outcomes.
struct AgreementSweep {
  Sweep agreement;
  int jacobi = 0;
  int non_jacobi = 0;
};
AgreementSweep involutivity_agreement(int random_pairs, std::uint64_t seed);
Sweep dorfman_leibniz(int count, std::uint64_t seed, bool twisted);
Sweep dorfman_symmetric_part(int count, std::uint64_t seed);
Sweep bfield_pairing(int count, std::uint64_t seed);
Sweep bfield_group_law(int count, std::uint64_t seed);
Sweep bfield_closed_morphism(int count, std::uint64_t seed);

}  // namespace djt::testing

namespace djt::testing {

// Splitting models: assembled defect vanishes iff the transversal defect does.
struct SplitSweep {
  Sweep equivalence;
  int passing_inputs = 0;
  int failing_inputs = 0;
};
SplitSweep splitting_equivalence(SplitKind kind, int count, std::uint64_t seed);

/// Euler-like check: Euler passes, 2 Euler and quadratic fields fail, and
/// second-order perturbations leave the linearization unchanged.
Sweep euler_like_properties(int count, std::uint64_t seed);

}  // namespace djt::testing

namespace djt::testing {

// Moser deformations on random polynomial families sigma_t = d_L(t b1 + t^2 b2).
struct MoserSweep {
  Sweep identity;       // d/dt J_t = -J_t (d sigma/dt)-flat J_t, symbolically
  Sweep initial;        // J_0-sharp = J-sharp
  Sweep antisymmetry;   // J_t-sharp stays antisymmetric
};
MoserSweep moser_identities(int count, std::uint64_t seed);

}  // namespace djt::testing
