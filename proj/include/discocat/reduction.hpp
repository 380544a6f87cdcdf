#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "discocat/types.hpp"

namespace discocat {

// A witness that a string of simple types reduces by cancellations only.
// Links are index pairs (i, j) with i < j; each link contracts a pair
// whose bases agree and whose adjoint orders differ by exactly one with
// the smaller order on the left (x . x^r <= 1 and x^l . x <= 1).  Links
// are pairwise disjoint and planar, and no link spans an unmatched index
// (a cup cannot cross the straight residual strings).
struct Reduction {
    std::vector<SimpleType> input;
    std::vector<std::pair<std::size_t, std::size_t>> links;  // sorted
    std::vector<std::size_t> residual_indices;               // input order

    PregroupType residual_type() const;
};

// True iff (a, b) may be cancelled when adjacent, a to the left of b.
bool contractible(const SimpleType& a, const SimpleType& b);

// Validates planarity, the contraction condition, disjointness and the
// residual bookkeeping of a candidate reduction.
bool is_valid_reduction(const Reduction& r);

// Grammaticality check: a reduction of `types` whose residual is exactly
// the plain `target`, or nullopt.  Searches contractions only, which is
// complete for deciding reducibility into a basic type.  When several
// reductions exist the one minimizing total link span is returned, ties
// broken lexicographically on the sorted link list.
std::optional<Reduction> reduce(const std::vector<SimpleType>& types,
                                const BasicType& target);

// All distinct reductions of `types` to `target`, in lexicographic order
// of their sorted link lists, truncated to `limit`.
std::vector<Reduction> enumerate_reductions(const std::vector<SimpleType>& types,
                                            const BasicType& target,
                                            std::size_t limit);

}  // namespace discocat
