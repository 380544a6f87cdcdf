#include "discocat/reduction.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace discocat {

namespace {

constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max();

using Links = std::vector<std::pair<std::size_t, std::size_t>>;

// Interval DP over well-nested matchings.  cost[i][j] is the minimal
// total link span needed to cancel the half-open interval [i, j)
// completely, or kInfeasible.  Every full cancellation links i to some
// partner k, with [i+1, k) and [k+1, j) cancelling independently.
struct IntervalDp {
    explicit IntervalDp(const std::vector<SimpleType>& types) : n(types.size()), types(types) {
        cost.assign(n + 1, std::vector<std::size_t>(n + 1, kInfeasible));
        for (std::size_t i = 0; i <= n; ++i) cost[i][i] = 0;
        for (std::size_t len = 2; len <= n; len += 2) {
            for (std::size_t i = 0; i + len <= n; ++i) {
                std::size_t j = i + len;
                std::size_t best = kInfeasible;
                for (std::size_t k = i + 1; k < j; k += 2) {
                    if (!contractible(types[i], types[k])) continue;
                    std::size_t inner = cost[i + 1][k];
                    std::size_t outer = cost[k + 1][j];
                    if (inner == kInfeasible || outer == kInfeasible) continue;
                    best = std::min(best, (k - i) + inner + outer);
                }
                cost[i][j] = best;
            }
        }
    }

    // Reconstructs the min-cost witness for [i, j), preferring the
    // smallest partner of i at every choice point; this yields the
    // lexicographically least sorted link list among min-cost witnesses.
    void witness(std::size_t i, std::size_t j, Links& out) const {
        if (i >= j) return;
        for (std::size_t k = i + 1; k < j; k += 2) {
            if (!contractible(types[i], types[k])) continue;
            std::size_t inner = cost[i + 1][k];
            std::size_t outer = cost[k + 1][j];
            if (inner == kInfeasible || outer == kInfeasible) continue;
            if ((k - i) + inner + outer == cost[i][j]) {
                out.emplace_back(i, k);
                witness(i + 1, k, out);
                witness(k + 1, j, out);
                return;
            }
        }
    }

    std::size_t n;
    const std::vector<SimpleType>& types;
    std::vector<std::vector<std::size_t>> cost;
};

Reduction make_reduction(const std::vector<SimpleType>& types, Links links) {
    std::sort(links.begin(), links.end());
    std::vector<bool> matched(types.size(), false);
    for (auto [a, b] : links) matched[a] = matched[b] = true;
    Reduction r;
    r.input = types;
    r.links = std::move(links);
    for (std::size_t i = 0; i < types.size(); ++i)
        if (!matched[i]) r.residual_indices.push_back(i);
    return r;
}

// Recursive enumeration of all well-nested full cancellations of [i, j),
// invoking `emit` with each link set accumulated in `acc`.
void enumerate_interval(const std::vector<SimpleType>& types, std::size_t i, std::size_t j,
                        Links& acc, const std::function<void()>& emit) {
    if (i >= j) {
        emit();
        return;
    }
    for (std::size_t k = i + 1; k < j; k += 2) {
        if (!contractible(types[i], types[k])) continue;
        acc.emplace_back(i, k);
        enumerate_interval(types, i + 1, k, acc, [&] {
            enumerate_interval(types, k + 1, j, acc, emit);
        });
        acc.pop_back();
    }
}

}  // namespace

PregroupType Reduction::residual_type() const {
    PregroupType t;
    for (std::size_t i : residual_indices) t.factors.push_back(input[i]);
    return t;
}

bool contractible(const SimpleType& a, const SimpleType& b) {
    return a.base == b.base && a.adjoint_order + 1 == b.adjoint_order;
}

bool is_valid_reduction(const Reduction& r) {
    const std::size_t n = r.input.size();
    std::vector<int> use(n, 0);
    for (auto [i, j] : r.links) {
        if (i >= j || j >= n) return false;
        if (!contractible(r.input[i], r.input[j])) return false;
        use[i]++;
        use[j]++;
    }
    for (std::size_t i : r.residual_indices) {
        if (i >= n) return false;
        use[i]++;
    }
    for (int u : use)
        if (u != 1) return false;
    if (!std::is_sorted(r.residual_indices.begin(), r.residual_indices.end())) return false;
    // No crossings, and no link spanning a residual index.
    for (auto [i, j] : r.links) {
        for (auto [k, l] : r.links)
            if (i < k && k < j && j < l) return false;
        for (std::size_t res : r.residual_indices)
            if (i < res && res < j) return false;
    }
    return true;
}

std::optional<Reduction> reduce(const std::vector<SimpleType>& types, const BasicType& target) {
    const std::size_t n = types.size();
    const SimpleType want{target, 0};
    IntervalDp dp(types);

    std::size_t best_cost = kInfeasible;
    std::optional<Reduction> best;
    for (std::size_t r = 0; r < n; ++r) {
        if (!(types[r] == want)) continue;
        std::size_t left = dp.cost[0][r];
        std::size_t right = dp.cost[r + 1][n];
        if (left == kInfeasible || right == kInfeasible) continue;
        std::size_t total = left + right;
        if (total > best_cost) continue;
        Links links;
        dp.witness(0, r, links);
        dp.witness(r + 1, n, links);
        Reduction cand = make_reduction(types, std::move(links));
        if (total < best_cost || !best || cand.links < best->links) {
            best_cost = total;
            best = std::move(cand);
        }
    }
    return best;
}

std::vector<Reduction> enumerate_reductions(const std::vector<SimpleType>& types,
                                            const BasicType& target, std::size_t limit) {
    const std::size_t n = types.size();
    const SimpleType want{target, 0};
    std::vector<Reduction> all;
    for (std::size_t r = 0; r < n; ++r) {
        if (!(types[r] == want)) continue;
        Links acc;
        enumerate_interval(types, 0, r, acc, [&] {
            enumerate_interval(types, r + 1, n, acc, [&] {
                all.push_back(make_reduction(types, acc));
            });
        });
    }
    std::sort(all.begin(), all.end(),
              [](const Reduction& a, const Reduction& b) { return a.links < b.links; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Reduction& a, const Reduction& b) { return a.links == b.links; }),
              all.end());
    if (all.size() > limit) all.resize(limit);
    return all;
}

}  // namespace discocat
