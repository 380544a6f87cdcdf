#include "discocat/prover.hpp"

#include <set>
#include <string>

namespace discocat {

namespace {

using Items = std::vector<LambekType>;

// Antecedent items are kept product- and unit-free; any type substituted
// into the list is re-flattened.
Items normalize_items(const Items& in) {
    Items out;
    for (const auto& t : in) {
        auto fs = t.factors();
        out.insert(out.end(), fs.begin(), fs.end());
    }
    return out;
}

std::string sequent_key(const Items& items, const LambekType& succ) {
    std::string key;
    for (const auto& t : items) {
        key += to_string(t);
        key += " , ";
    }
    key += "|- ";
    key += to_string(succ);
    return key;
}

class Search {
public:
    std::optional<Derivation> run(const Items& items, const LambekType& succ) {
        std::string key = sequent_key(items, succ);
        if (failed_.count(key)) return std::nullopt;
        auto result = attempt(items, succ);
        if (!result) failed_.insert(key);
        return result;
    }

private:
    std::optional<Derivation> attempt(const Items& items, const LambekType& succ) {
        // Axiom: a single matching item, or the empty antecedent against
        // the unit.
        if (items.size() == 1 && items[0] == succ) return Derivation::id(succ);
        if (items.empty() && succ.is_unit()) return Derivation::id(LambekType::unit());

        // Right rules.
        switch (succ.kind()) {
            case LambekType::Kind::LeftImpl: {
                Items premise;
                premise.push_back(succ.lhs());
                premise.insert(premise.end(), items.begin(), items.end());
                if (auto f = run(normalize_items(premise), succ.rhs()))
                    return items.empty() ? Derivation::name_l(*f)
                                         : Derivation::curry_l(*f, succ.lhs());
                break;
            }
            case LambekType::Kind::RightImpl: {
                Items premise = items;
                premise.push_back(succ.rhs());
                if (auto f = run(normalize_items(premise), succ.lhs()))
                    return items.empty() ? Derivation::name_r(*f)
                                         : Derivation::curry_r(*f, succ.rhs());
                break;
            }
            case LambekType::Kind::Product: {
                // Split on the last factor of the left-nested product.
                LambekType left = succ.lhs();
                LambekType right = succ.rhs();
                for (std::size_t m = 0; m <= items.size(); ++m) {
                    Items la(items.begin(), items.begin() + m);
                    Items ra(items.begin() + m, items.end());
                    auto f = run(la, left);
                    if (!f) continue;
                    auto g = run(ra, right);
                    if (!g) continue;
                    return Derivation::par(*f, *g);
                }
                break;
            }
            default:
                break;
        }

        // Left rules, scanning positions left to right; the argument
        // segment grows from empty.
        for (std::size_t i = 0; i < items.size(); ++i) {
            const LambekType& t = items[i];
            if (t.kind() == LambekType::Kind::LeftImpl) {
                // Gamma, Sigma, (a -o b), Delta |- succ
                //   from Sigma |- a  and  Gamma, b, Delta |- succ.
                for (std::size_t len = 0; len <= i; ++len) {
                    std::size_t j = i - len;
                    Items sigma(items.begin() + j, items.begin() + i);
                    auto g = run(sigma, t.lhs());
                    if (!g) continue;
                    Items rest(items.begin(), items.begin() + j);
                    rest.push_back(t.rhs());
                    rest.insert(rest.end(), items.begin() + i + 1, items.end());
                    auto h = run(normalize_items(rest), succ);
                    if (!h) continue;
                    Items gamma(items.begin(), items.begin() + j);
                    Items delta(items.begin() + i + 1, items.end());
                    Derivation core = Derivation::compose_simplified(
                        Derivation::ev_l(t.lhs(), t.rhs()),
                        Derivation::par_simplified(*g, Derivation::id(t)));
                    return assemble(*h, gamma, core, delta);
                }
            } else if (t.kind() == LambekType::Kind::RightImpl) {
                // Gamma, (a o- b), Sigma, Delta |- succ
                //   from Sigma |- b  and  Gamma, a, Delta |- succ.
                for (std::size_t len = 0; i + 1 + len <= items.size(); ++len) {
                    Items sigma(items.begin() + i + 1, items.begin() + i + 1 + len);
                    auto g = run(sigma, t.rhs());
                    if (!g) continue;
                    Items rest(items.begin(), items.begin() + i);
                    rest.push_back(t.lhs());
                    rest.insert(rest.end(), items.begin() + i + 1 + len, items.end());
                    auto h = run(normalize_items(rest), succ);
                    if (!h) continue;
                    Items gamma(items.begin(), items.begin() + i);
                    Items delta(items.begin() + i + 1 + len, items.end());
                    Derivation core = Derivation::compose_simplified(
                        Derivation::ev_r(t.lhs(), t.rhs()),
                        Derivation::par_simplified(Derivation::id(t), *g));
                    return assemble(*h, gamma, core, delta);
                }
            }
        }
        return std::nullopt;
    }

    static Derivation assemble(const Derivation& h, const Items& gamma, const Derivation& core,
                               const Items& delta) {
        Derivation mid = Derivation::par_simplified(
            Derivation::par_simplified(Derivation::id(product_of(gamma)), core),
            Derivation::id(product_of(delta)));
        return Derivation::compose_simplified(h, mid);
    }

    std::set<std::string> failed_;
};

}  // namespace

std::optional<Derivation> prove(const std::vector<LambekType>& antecedents,
                                const LambekType& succedent) {
    Search search;
    return search.run(normalize_items(antecedents), succedent);
}

}  // namespace discocat
