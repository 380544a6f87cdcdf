#pragma once

#include <optional>
#include <vector>

#include "discocat/derivation.hpp"
#include "discocat/types.hpp"

namespace discocat {

// Backward cut-free proof search for the product-and-two-implications
// Lambek calculus with unit.  Returns a Derivation from the product of
// the antecedents to the succedent, or nullopt when the sequent is not
// derivable.  The search is exhaustive: every backward rule strictly
// reduces the connective count, so it terminates.
//
// Rule order is fixed (axiom, then right rules, then left rules scanning
// the antecedent left to right with the shortest argument segment first)
// and the first proof found is returned, so extracted terms are
// deterministic.
std::optional<Derivation> prove(const std::vector<LambekType>& antecedents,
                                const LambekType& succedent);

}  // namespace discocat
