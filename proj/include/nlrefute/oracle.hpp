#pragma once

// Satisfiability by exhaustive model enumeration over the Herbrand base.
// Shares nothing with the resolution engine beyond the clause types.

#include <cstddef>
#include <vector>

#include "nlrefute/label.hpp"
#include "nlrefute/logic.hpp"

namespace nlrefute {

inline constexpr std::size_t kOracleAtomCap = 24;

struct OracleStats {
  std::size_t ground_atoms = 0;
  std::size_t largest_component = 0;
  std::size_t assignments_tried = 0;
};

// Grounds the clauses over their constants (a single dummy constant when
// there are none) and searches for a model. Ground atoms that never share a
// clause are enumerated independently; a component larger than atom_cap
// raises Error("oracle_overflow"). Function symbols raise
// Error("oracle_overflow") as well, since the universe would be infinite.
bool oracle_satisfiable(const std::vector<Clause>& clauses, OracleStats* stats = nullptr,
                        std::size_t atom_cap = kOracleAtomCap);

// True iff theory + negated_hypothesis has no model, False iff
// theory + hypothesis has no model, Unknown otherwise. The caller must pass
// a consistent theory; on an inconsistent one True is reported.
Label oracle_entail(const std::vector<Clause>& theory, const std::vector<Clause>& hypothesis,
                    const std::vector<Clause>& negated_hypothesis,
                    std::size_t atom_cap = kOracleAtomCap);

}  // namespace nlrefute
