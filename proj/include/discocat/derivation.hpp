#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "discocat/types.hpp"

namespace discocat {

struct DerivationError : std::runtime_error {
    explicit DerivationError(const std::string& what) : std::runtime_error(what) {}
};

// Morphism terms of the Lambek monoid, built from identities, the two
// evaluations, currying, names, composition and parallel product:
//
//   EvL(a,b)  : a . (a -o b) -> b
//   EvR(a,b)  : (a o- b) . b -> a
//   CurryL(f) : c -> a -o b        for f : a . c -> b
//   CurryR(f) : c -> a o- b        for f : c . b -> a
//   NameL(f)  : 1 -> a -o b        for f : a -> b
//   NameR(f)  : 1 -> b o- a        for f : a -> b
//
// Domains and codomains are cached on construction; the factory
// functions validate composability and throw DerivationError.
class Derivation {
public:
    enum class Kind { Id, EvL, EvR, CurryL, CurryR, NameL, NameR, Compose, Par };

    static Derivation id(const LambekType& t);
    static Derivation ev_l(const LambekType& a, const LambekType& b);
    static Derivation ev_r(const LambekType& a, const LambekType& b);
    // The curried type must match a prefix (resp. suffix) of f's domain
    // factors; the one-argument forms curry a single factor.
    static Derivation curry_l(const Derivation& f, const LambekType& a);
    static Derivation curry_r(const Derivation& f, const LambekType& b);
    static Derivation curry_l(const Derivation& f);
    static Derivation curry_r(const Derivation& f);
    static Derivation name_l(const Derivation& f);
    static Derivation name_r(const Derivation& f);
    // g after f; requires cod(f) == dom(g).
    static Derivation compose(const Derivation& g, const Derivation& f);
    static Derivation par(const Derivation& f, const Derivation& g);

    // Simplifying variants used by the prover so extracted terms stay in
    // the shapes a reader would write by hand: composing with an identity
    // vanishes and a parallel product of identities is an identity.
    static Derivation compose_simplified(const Derivation& g, const Derivation& f);
    static Derivation par_simplified(const Derivation& f, const Derivation& g);

    Kind kind() const { return node_->kind; }
    const LambekType& dom() const { return node_->dom; }
    const LambekType& cod() const { return node_->cod; }
    // EvL/EvR type parameters; CurryL needs `a` to recover the split.
    const LambekType& type_a() const;
    const LambekType& type_b() const;
    Derivation first() const;   // Compose: g,  Par: f,  unary: child
    Derivation second() const;  // Compose: f,  Par: g

    bool is_id() const { return kind() == Kind::Id; }

    friend bool operator==(const Derivation& a, const Derivation& b);

private:
    struct Node {
        Kind kind;
        LambekType dom = LambekType::unit();
        LambekType cod = LambekType::unit();
        LambekType a = LambekType::unit();
        LambekType b = LambekType::unit();
        std::shared_ptr<const Node> first, second;
    };
    explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Recomputes and re-verifies the typing of every sub-term, including all
// composition boundaries, and returns (domain, codomain).  Errors name
// the offending sub-term.
std::pair<LambekType, LambekType> check(const Derivation& d);

// S-expression text form, round-trippable:
//   (compose (evl "n" "s") (par (id "n") (evr "n -o s" "n")))
// Curry nodes record the introduced type: (curryl "n" f), (curryr "n" f).
std::string to_sexpr(const Derivation& d);
Derivation parse_sexpr(const std::string& text);

}  // namespace discocat
