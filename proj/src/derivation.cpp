#include "discocat/derivation.hpp"

#include <cctype>
#include <sstream>

namespace discocat {

namespace {

std::string type_mismatch(const std::string& context, const LambekType& want,
                          const LambekType& got) {
    return context + ": expected '" + to_string(want) + "', got '" + to_string(got) + "'";
}

}  // namespace

Derivation Derivation::id(const LambekType& t) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Id;
    n->dom = n->cod = t;
    return Derivation(std::move(n));
}

Derivation Derivation::ev_l(const LambekType& a, const LambekType& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::EvL;
    n->a = a;
    n->b = b;
    n->dom = LambekType::product(a, LambekType::left_impl(a, b));
    n->cod = b;
    return Derivation(std::move(n));
}

Derivation Derivation::ev_r(const LambekType& a, const LambekType& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::EvR;
    n->a = a;
    n->b = b;
    n->dom = LambekType::product(LambekType::right_impl(a, b), b);
    n->cod = a;
    return Derivation(std::move(n));
}

namespace {

// Splits the flattened factor list of `dom` around a prefix (or suffix)
// equal to `part`; throws when the factors do not line up.
std::vector<LambekType> strip_part(const LambekType& dom, const LambekType& part,
                                   bool from_front, const char* who) {
    auto factors = dom.factors();
    auto part_factors = part.factors();
    if (part_factors.size() > factors.size())
        throw DerivationError(std::string(who) + ": curried type exceeds the domain");
    std::size_t offset = from_front ? 0 : factors.size() - part_factors.size();
    for (std::size_t i = 0; i < part_factors.size(); ++i)
        if (!(factors[offset + i] == part_factors[i]))
            throw DerivationError(std::string(who) + ": curried type '" + to_string(part) +
                                  "' is not a " + (from_front ? "prefix" : "suffix") +
                                  " of the domain '" + to_string(dom) + "'");
    if (from_front)
        return std::vector<LambekType>(factors.begin() +
                                           static_cast<std::ptrdiff_t>(part_factors.size()),
                                       factors.end());
    return std::vector<LambekType>(factors.begin(),
                                   factors.end() -
                                       static_cast<std::ptrdiff_t>(part_factors.size()));
}

}  // namespace

Derivation Derivation::curry_l(const Derivation& f, const LambekType& a) {
    // f : a . c -> b gives curry_l(f) : c -> a -o b.
    auto rest = strip_part(f.dom(), a, true, "curry_l");
    auto n = std::make_shared<Node>();
    n->kind = Kind::CurryL;
    n->a = a;
    n->b = f.cod();
    n->dom = product_of(rest);
    n->cod = LambekType::left_impl(a, f.cod());
    n->first = f.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::curry_r(const Derivation& f, const LambekType& b) {
    // f : c . b -> a gives curry_r(f) : c -> a o- b.
    auto rest = strip_part(f.dom(), b, false, "curry_r");
    auto n = std::make_shared<Node>();
    n->kind = Kind::CurryR;
    n->a = f.cod();
    n->b = b;
    n->dom = product_of(rest);
    n->cod = LambekType::right_impl(f.cod(), b);
    n->first = f.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::curry_l(const Derivation& f) {
    auto factors = f.dom().factors();
    if (factors.empty())
        throw DerivationError("curry_l needs a non-unit domain: " + to_sexpr(f));
    return curry_l(f, factors.front());
}

Derivation Derivation::curry_r(const Derivation& f) {
    auto factors = f.dom().factors();
    if (factors.empty())
        throw DerivationError("curry_r needs a non-unit domain: " + to_sexpr(f));
    return curry_r(f, factors.back());
}

Derivation Derivation::name_l(const Derivation& f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::NameL;
    n->a = f.dom();
    n->b = f.cod();
    n->dom = LambekType::unit();
    n->cod = LambekType::left_impl(f.dom(), f.cod());
    n->first = f.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::name_r(const Derivation& f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::NameR;
    n->a = f.cod();
    n->b = f.dom();
    n->dom = LambekType::unit();
    n->cod = LambekType::right_impl(f.cod(), f.dom());
    n->first = f.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::compose(const Derivation& g, const Derivation& f) {
    if (!(f.cod() == g.dom()))
        throw DerivationError(type_mismatch("compose boundary in (compose " + to_sexpr(g) + " " +
                                                to_sexpr(f) + ")",
                                            g.dom(), f.cod()));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Compose;
    n->dom = f.dom();
    n->cod = g.cod();
    n->first = g.node_;
    n->second = f.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::par(const Derivation& f, const Derivation& g) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Par;
    n->dom = LambekType::product(f.dom(), g.dom());
    n->cod = LambekType::product(f.cod(), g.cod());
    n->first = f.node_;
    n->second = g.node_;
    return Derivation(std::move(n));
}

Derivation Derivation::compose_simplified(const Derivation& g, const Derivation& f) {
    if (f.is_id()) {
        if (!(f.cod() == g.dom()))
            throw DerivationError(type_mismatch("compose boundary", g.dom(), f.cod()));
        return g;
    }
    if (g.is_id()) {
        if (!(f.cod() == g.dom()))
            throw DerivationError(type_mismatch("compose boundary", g.dom(), f.cod()));
        return f;
    }
    return compose(g, f);
}

Derivation Derivation::par_simplified(const Derivation& f, const Derivation& g) {
    if (f.is_id() && f.dom().is_unit()) return g;
    if (g.is_id() && g.dom().is_unit()) return f;
    if (f.is_id() && g.is_id()) return id(LambekType::product(f.dom(), g.dom()));
    return par(f, g);
}

const LambekType& Derivation::type_a() const { return node_->a; }
const LambekType& Derivation::type_b() const { return node_->b; }

Derivation Derivation::first() const {
    if (!node_->first) throw DerivationError("no child term");
    return Derivation(node_->first);
}

Derivation Derivation::second() const {
    if (!node_->second) throw DerivationError("no second child term");
    return Derivation(node_->second);
}

bool operator==(const Derivation& a, const Derivation& b) {
    return to_sexpr(a) == to_sexpr(b);
}

std::pair<LambekType, LambekType> check(const Derivation& d) {
    switch (d.kind()) {
        case Derivation::Kind::Id:
            return {d.dom(), d.cod()};
        case Derivation::Kind::EvL: {
            LambekType dom = LambekType::product(
                d.type_a(), LambekType::left_impl(d.type_a(), d.type_b()));
            return {dom, d.type_b()};
        }
        case Derivation::Kind::EvR: {
            LambekType dom = LambekType::product(
                LambekType::right_impl(d.type_a(), d.type_b()), d.type_b());
            return {dom, d.type_a()};
        }
        case Derivation::Kind::CurryL: {
            auto [fd, fc] = check(d.first());
            auto rest = strip_part(fd, d.type_a(), true, "curry_l");
            return {product_of(rest), LambekType::left_impl(d.type_a(), fc)};
        }
        case Derivation::Kind::CurryR: {
            auto [fd, fc] = check(d.first());
            auto rest = strip_part(fd, d.type_b(), false, "curry_r");
            return {product_of(rest), LambekType::right_impl(fc, d.type_b())};
        }
        case Derivation::Kind::NameL: {
            auto [fd, fc] = check(d.first());
            return {LambekType::unit(), LambekType::left_impl(fd, fc)};
        }
        case Derivation::Kind::NameR: {
            auto [fd, fc] = check(d.first());
            return {LambekType::unit(), LambekType::right_impl(fc, fd)};
        }
        case Derivation::Kind::Compose: {
            auto [gd, gc] = check(d.first());
            auto [fd, fc] = check(d.second());
            if (!(fc == gd))
                throw DerivationError(type_mismatch("compose boundary in " + to_sexpr(d), gd, fc));
            return {fd, gc};
        }
        case Derivation::Kind::Par: {
            auto [fd, fc] = check(d.first());
            auto [gd, gc] = check(d.second());
            return {LambekType::product(fd, gd), LambekType::product(fc, gc)};
        }
    }
    throw DerivationError("unreachable derivation kind");
}

// --- S-expression form --------------------------------------------------

namespace {

void quote_type(const LambekType& t, std::string& out) {
    out += '"';
    out += to_string(t);
    out += '"';
}

void write_sexpr(const Derivation& d, std::string& out) {
    switch (d.kind()) {
        case Derivation::Kind::Id:
            out += "(id ";
            quote_type(d.dom(), out);
            out += ')';
            return;
        case Derivation::Kind::EvL:
        case Derivation::Kind::EvR:
            out += d.kind() == Derivation::Kind::EvL ? "(evl " : "(evr ";
            quote_type(d.type_a(), out);
            out += ' ';
            quote_type(d.type_b(), out);
            out += ')';
            return;
        case Derivation::Kind::CurryL:
        case Derivation::Kind::CurryR: {
            bool left = d.kind() == Derivation::Kind::CurryL;
            out += left ? "(curryl " : "(curryr ";
            quote_type(left ? d.type_a() : d.type_b(), out);
            out += ' ';
            write_sexpr(d.first(), out);
            out += ')';
            return;
        }
        case Derivation::Kind::NameL:
        case Derivation::Kind::NameR: {
            out += d.kind() == Derivation::Kind::NameL ? "(namel " : "(namer ";
            write_sexpr(d.first(), out);
            out += ')';
            return;
        }
        case Derivation::Kind::Compose:
        case Derivation::Kind::Par:
            out += d.kind() == Derivation::Kind::Compose ? "(compose " : "(par ";
            write_sexpr(d.first(), out);
            out += ' ';
            write_sexpr(d.second(), out);
            out += ')';
            return;
    }
}

struct SexprParser {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) pos++;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= src.size() || src[pos] != c)
            throw DerivationError(std::string("expected '") + c + "' at offset " +
                                  std::to_string(pos));
        pos++;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos]))))
            pos++;
        if (start == pos)
            throw DerivationError("expected symbol at offset " + std::to_string(pos));
        return src.substr(start, pos - start);
    }

    LambekType quoted_type() {
        skip_ws();
        if (pos >= src.size() || src[pos] != '"')
            throw DerivationError("expected quoted type at offset " + std::to_string(pos));
        std::size_t end = src.find('"', pos + 1);
        if (end == std::string::npos)
            throw DerivationError("unterminated type string at offset " + std::to_string(pos));
        std::string text = src.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        return parse_lambek_type(text);
    }

    Derivation term() {
        expect('(');
        std::string head = word();
        Derivation out = [&] {
            if (head == "id") return Derivation::id(quoted_type());
            if (head == "evl") {
                LambekType a = quoted_type();
                return Derivation::ev_l(a, quoted_type());
            }
            if (head == "evr") {
                LambekType a = quoted_type();
                return Derivation::ev_r(a, quoted_type());
            }
            if (head == "curryl") {
                LambekType a = quoted_type();
                return Derivation::curry_l(term(), a);
            }
            if (head == "curryr") {
                LambekType b = quoted_type();
                return Derivation::curry_r(term(), b);
            }
            if (head == "namel") return Derivation::name_l(term());
            if (head == "namer") return Derivation::name_r(term());
            if (head == "compose") {
                Derivation g = term();
                return Derivation::compose(g, term());
            }
            if (head == "par") {
                Derivation f = term();
                return Derivation::par(f, term());
            }
            throw DerivationError("unknown term head '" + head + "'");
        }();
        expect(')');
        return out;
    }
};

}  // namespace

std::string to_sexpr(const Derivation& d) {
    std::string out;
    write_sexpr(d, out);
    return out;
}

Derivation parse_sexpr(const std::string& text) {
    SexprParser p{text};
    Derivation d = p.term();
    p.skip_ws();
    if (p.pos != text.size())
        throw DerivationError("trailing input after term at offset " + std::to_string(p.pos));
    return d;
}

}  // namespace discocat
