#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace discocat {

struct TypeError : std::runtime_error {
    explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

// A basic grammatical type drawn from the declared basic-type set of a
// grammar (e.g. n, s, j, sigma).
struct BasicType {
    std::string name;

    friend bool operator==(const BasicType&, const BasicType&) = default;
    friend auto operator<=>(const BasicType&, const BasicType&) = default;
};

// A simple pregroup type: a basic type decorated with an iterated adjoint.
// adjoint_order 0 is the plain type, -1 its left adjoint, +1 its right
// adjoint; orders beyond +-1 are iterated adjoints and remain distinct.
struct SimpleType {
    BasicType base;
    int adjoint_order = 0;

    friend bool operator==(const SimpleType&, const SimpleType&) = default;
    friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

// A pregroup type is a finite product of simple types; the empty list is
// the monoid unit.
struct PregroupType {
    std::vector<SimpleType> factors;

    bool is_unit() const { return factors.empty(); }
    std::size_t size() const { return factors.size(); }

    friend bool operator==(const PregroupType&, const PregroupType&) = default;
};

PregroupType concat(const PregroupType& a, const PregroupType& b);

// Reverses the factors and decrements every adjoint order: (p.q)^l = q^l.p^l.
PregroupType left_adjoint(const PregroupType& t);
// Reverses the factors and increments every adjoint order: (p.q)^r = q^r.p^r.
PregroupType right_adjoint(const PregroupType& t);

std::string to_string(const SimpleType& t);
std::string to_string(const PregroupType& t);

// Types of the Lambek monoid: basic types and the unit, closed under
// product and the two implications.  Values are immutable and cheaply
// copyable (shared nodes), so they can be passed around and sent between
// threads freely.
//
// Products are kept in a canonical left-nested form with units removed,
// which makes structural equality coincide with equality up to
// re-association.
class LambekType {
public:
    enum class Kind { Basic, Unit, Product, LeftImpl, RightImpl };

    static LambekType basic(std::string name);
    static LambekType unit();
    static LambekType product(const LambekType& a, const LambekType& b);
    // a -o b : consumes an `a` on its left, yields `b`.
    static LambekType left_impl(const LambekType& a, const LambekType& b);
    // a o- b : consumes a `b` on its right, yields `a`.
    static LambekType right_impl(const LambekType& a, const LambekType& b);

    Kind kind() const { return node_->kind; }
    bool is_unit() const { return kind() == Kind::Unit; }
    bool is_basic() const { return kind() == Kind::Basic; }
    bool is_impl() const {
        return kind() == Kind::LeftImpl || kind() == Kind::RightImpl;
    }

    const std::string& basic_name() const;
    LambekType lhs() const;  // Product/LeftImpl/RightImpl only
    LambekType rhs() const;

    // Flattened product factors; the unit yields an empty list and any
    // non-product type yields itself.
    std::vector<LambekType> factors() const;

    // Number of connectives (product and implication nodes).
    std::size_t connective_count() const;

    friend bool operator==(const LambekType& a, const LambekType& b);
    friend bool operator!=(const LambekType& a, const LambekType& b) {
        return !(a == b);
    }
    bool less_than(const LambekType& other) const;

private:
    struct Node {
        Kind kind;
        std::string name;                    // Basic
        std::shared_ptr<const Node> lhs, rhs;  // Product/impls
    };
    explicit LambekType(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}
    static bool node_equal(const Node* a, const Node* b);
    static int node_compare(const Node* a, const Node* b);
    std::shared_ptr<const Node> node_;
};

// Product over a list, left-nested; an empty list gives the unit.
LambekType product_of(const std::vector<LambekType>& ts);

std::string to_string(const LambekType& t);

// Translation into the pregroup adjoint form:
//   a -o b  ~>  T(a)^r . T(b)        a o- b  ~>  T(a) . T(b)^l
// It is a monoid homomorphism on products and sends the unit to the
// empty type.
PregroupType lambek_to_pregroup(const LambekType& t);

// --- Type syntax ------------------------------------------------------
//
// Shared surface syntax for both logics:
//     type   := term (('-o' | 'o-') term)?      (non-associative)
//     term   := factor ('.' factor)*
//     factor := atom ('^l' | '^r')*
//     atom   := IDENT | '1' | '(' type ')'
//
// Implications are only meaningful for Lambek types and adjoint suffixes
// only for pregroup types; parse_lambek_type rejects adjoints while
// parse_pregroup_type lowers implications through lambek_to_pregroup.

LambekType parse_lambek_type(const std::string& text);
PregroupType parse_pregroup_type(const std::string& text);

}  // namespace discocat
