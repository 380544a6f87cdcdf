#include "discocat/types.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace discocat {

PregroupType concat(const PregroupType& a, const PregroupType& b) {
    PregroupType out = a;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    return out;
}

PregroupType left_adjoint(const PregroupType& t) {
    PregroupType out;
    out.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
        out.factors.push_back({it->base, it->adjoint_order - 1});
    return out;
}

PregroupType right_adjoint(const PregroupType& t) {
    PregroupType out;
    out.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
        out.factors.push_back({it->base, it->adjoint_order + 1});
    return out;
}

std::string to_string(const SimpleType& t) {
    std::string s = t.base.name;
    if (t.adjoint_order != 0) {
        s += '^';
        s += std::string(static_cast<std::size_t>(std::abs(t.adjoint_order)),
                         t.adjoint_order < 0 ? 'l' : 'r');
    }
    return s;
}

std::string to_string(const PregroupType& t) {
    if (t.factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        if (i) s += " . ";
        s += to_string(t.factors[i]);
    }
    return s;
}

// --- LambekType --------------------------------------------------------

LambekType LambekType::basic(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Basic;
    node->name = std::move(name);
    return LambekType(std::move(node));
}

LambekType LambekType::unit() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Unit;
    return LambekType(std::move(node));
}

LambekType LambekType::product(const LambekType& a, const LambekType& b) {
    if (a.is_unit()) return b;
    if (b.is_unit()) return a;
    // Canonical left-nesting: fold b's factors onto a one by one.
    if (b.kind() == Kind::Product)
        return product(product(a, b.lhs()), b.rhs());
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->lhs = a.node_;
    node->rhs = b.node_;
    return LambekType(std::move(node));
}

LambekType LambekType::left_impl(const LambekType& a, const LambekType& b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::LeftImpl;
    node->lhs = a.node_;
    node->rhs = b.node_;
    return LambekType(std::move(node));
}

LambekType LambekType::right_impl(const LambekType& a, const LambekType& b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::RightImpl;
    node->lhs = a.node_;
    node->rhs = b.node_;
    return LambekType(std::move(node));
}

const std::string& LambekType::basic_name() const {
    if (kind() != Kind::Basic) throw TypeError("basic_name on non-basic type");
    return node_->name;
}

LambekType LambekType::lhs() const {
    if (!node_->lhs) throw TypeError("lhs on leaf type");
    return LambekType(node_->lhs);
}

LambekType LambekType::rhs() const {
    if (!node_->rhs) throw TypeError("rhs on leaf type");
    return LambekType(node_->rhs);
}

std::vector<LambekType> LambekType::factors() const {
    std::vector<LambekType> out;
    if (is_unit()) return out;
    if (kind() != Kind::Product) {
        out.push_back(*this);
        return out;
    }
    // Left-nested: walk down the lhs spine, then append rhs factors.
    std::vector<std::shared_ptr<const Node>> spine;
    std::shared_ptr<const Node> cur = node_;
    while (cur->kind == Kind::Product) {
        spine.push_back(cur);
        cur = cur->lhs;
    }
    out.push_back(LambekType(cur));
    for (auto it = spine.rbegin(); it != spine.rend(); ++it)
        out.push_back(LambekType((*it)->rhs));
    return out;
}

std::size_t LambekType::connective_count() const {
    switch (kind()) {
        case Kind::Basic:
        case Kind::Unit:
            return 0;
        default:
            return 1 + lhs().connective_count() + rhs().connective_count();
    }
}

bool LambekType::node_equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Basic: return a->name == b->name;
        case Kind::Unit: return true;
        default:
            return node_equal(a->lhs.get(), b->lhs.get()) &&
                   node_equal(a->rhs.get(), b->rhs.get());
    }
}

int LambekType::node_compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (a->kind != b->kind)
        return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
        case Kind::Basic: return a->name.compare(b->name);
        case Kind::Unit: return 0;
        default: {
            int c = node_compare(a->lhs.get(), b->lhs.get());
            if (c) return c;
            return node_compare(a->rhs.get(), b->rhs.get());
        }
    }
}

bool operator==(const LambekType& a, const LambekType& b) {
    return LambekType::node_equal(a.node_.get(), b.node_.get());
}

bool LambekType::less_than(const LambekType& other) const {
    return node_compare(node_.get(), other.node_.get()) < 0;
}

LambekType product_of(const std::vector<LambekType>& ts) {
    LambekType acc = LambekType::unit();
    for (const auto& t : ts) acc = LambekType::product(acc, t);
    return acc;
}

namespace {

bool needs_parens_in_product(const LambekType& t) { return t.is_impl(); }

bool needs_parens_in_impl(const LambekType& t) {
    return t.is_impl() || t.kind() == LambekType::Kind::Product;
}

void print_type(const LambekType& t, std::string& out) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
            out += t.basic_name();
            return;
        case LambekType::Kind::Unit:
            out += '1';
            return;
        case LambekType::Kind::Product: {
            auto fs = t.factors();
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (i) out += " . ";
                bool paren = needs_parens_in_product(fs[i]);
                if (paren) out += '(';
                print_type(fs[i], out);
                if (paren) out += ')';
            }
            return;
        }
        case LambekType::Kind::LeftImpl:
        case LambekType::Kind::RightImpl: {
            bool lp = needs_parens_in_impl(t.lhs());
            bool rp = needs_parens_in_impl(t.rhs());
            if (lp) out += '(';
            print_type(t.lhs(), out);
            if (lp) out += ')';
            out += t.kind() == LambekType::Kind::LeftImpl ? " -o " : " o- ";
            if (rp) out += '(';
            print_type(t.rhs(), out);
            if (rp) out += ')';
            return;
        }
    }
}

}  // namespace

std::string to_string(const LambekType& t) {
    std::string out;
    print_type(t, out);
    return out;
}

PregroupType lambek_to_pregroup(const LambekType& t) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
            return PregroupType{{SimpleType{BasicType{t.basic_name()}, 0}}};
        case LambekType::Kind::Unit:
            return PregroupType{};
        case LambekType::Kind::Product:
            return concat(lambek_to_pregroup(t.lhs()),
                          lambek_to_pregroup(t.rhs()));
        case LambekType::Kind::LeftImpl:
            return concat(right_adjoint(lambek_to_pregroup(t.lhs())),
                          lambek_to_pregroup(t.rhs()));
        case LambekType::Kind::RightImpl:
            return concat(lambek_to_pregroup(t.lhs()),
                          left_adjoint(lambek_to_pregroup(t.rhs())));
    }
    throw TypeError("unreachable type kind");
}

// --- Parser ------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Ident, Unit, Dot, LImpl, RImpl, AdjL, AdjR, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) pos_++;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", start};
            return;
        }
        char c = src_[pos_];
        if (c == '(') { pos_++; tok_ = {Token::Kind::LParen, "(", start}; return; }
        if (c == ')') { pos_++; tok_ = {Token::Kind::RParen, ")", start}; return; }
        if (c == '.') { pos_++; tok_ = {Token::Kind::Dot, ".", start}; return; }
        if (c == '1') { pos_++; tok_ = {Token::Kind::Unit, "1", start}; return; }
        if (c == '-') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == 'o') {
                pos_ += 2;
                tok_ = {Token::Kind::LImpl, "-o", start};
                return;
            }
            throw TypeError("stray '-' in type at offset " + std::to_string(start));
        }
        if (c == '^') {
            // Iterated adjoints write as a run of the same letter: ^ll, ^rr.
            if (pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'l' || src_[pos_ + 1] == 'r')) {
                char letter = src_[pos_ + 1];
                std::size_t end = pos_ + 1;
                while (end < src_.size() && src_[end] == letter) end++;
                std::string text = src_.substr(pos_, end - pos_);
                pos_ = end;
                tok_ = {letter == 'l' ? Token::Kind::AdjL : Token::Kind::AdjR, text, start};
                return;
            }
            throw TypeError("expected 'l' or 'r' after '^' at offset " + std::to_string(start));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                end++;
            std::string word = src_.substr(pos_, end - pos_);
            // The bare identifier "o" followed by '-' is the right
            // implication operator.
            if (word == "o" && end < src_.size() && src_[end] == '-') {
                pos_ = end + 1;
                tok_ = {Token::Kind::RImpl, "o-", start};
                return;
            }
            pos_ = end;
            tok_ = {Token::Kind::Ident, word, start};
            return;
        }
        throw TypeError(std::string("unexpected character '") + c + "' in type at offset " +
                        std::to_string(start));
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::End, "", 0};
};

// Ast lowers to LambekType (rejecting adjoints) or to PregroupType.
struct Ast {
    enum class Kind { Basic, Unit, Product, LImpl, RImpl, Adjoint };
    Kind kind;
    std::string name;
    int adjoint_delta = 0;  // -1 for ^l, +1 for ^r
    std::shared_ptr<Ast> lhs, rhs;
};

using AstPtr = std::shared_ptr<Ast>;

AstPtr make_ast(Ast::Kind k) {
    auto a = std::make_shared<Ast>();
    a->kind = k;
    return a;
}

AstPtr parse_type(Lexer& lx);

AstPtr parse_atom(Lexer& lx) {
    Token t = lx.take();
    switch (t.kind) {
        case Token::Kind::Ident: {
            auto a = make_ast(Ast::Kind::Basic);
            a->name = t.text;
            return a;
        }
        case Token::Kind::Unit:
            return make_ast(Ast::Kind::Unit);
        case Token::Kind::LParen: {
            AstPtr inner = parse_type(lx);
            Token close = lx.take();
            if (close.kind != Token::Kind::RParen)
                throw TypeError("expected ')' at offset " + std::to_string(close.pos));
            return inner;
        }
        default:
            throw TypeError("unexpected token '" + t.text + "' at offset " +
                            std::to_string(t.pos));
    }
}

AstPtr parse_factor(Lexer& lx) {
    AstPtr a = parse_atom(lx);
    while (lx.peek().kind == Token::Kind::AdjL || lx.peek().kind == Token::Kind::AdjR) {
        Token t = lx.take();
        int count = static_cast<int>(t.text.size()) - 1;  // letters after '^'
        auto adj = make_ast(Ast::Kind::Adjoint);
        adj->adjoint_delta = t.kind == Token::Kind::AdjL ? -count : count;
        adj->lhs = a;
        a = adj;
    }
    return a;
}

AstPtr parse_term(Lexer& lx) {
    AstPtr a = parse_factor(lx);
    while (lx.peek().kind == Token::Kind::Dot) {
        lx.take();
        auto prod = make_ast(Ast::Kind::Product);
        prod->lhs = a;
        prod->rhs = parse_factor(lx);
        a = prod;
    }
    return a;
}

AstPtr parse_type(Lexer& lx) {
    AstPtr a = parse_term(lx);
    auto k = lx.peek().kind;
    if (k == Token::Kind::LImpl || k == Token::Kind::RImpl) {
        Token t = lx.take();
        auto impl = make_ast(t.kind == Token::Kind::LImpl ? Ast::Kind::LImpl : Ast::Kind::RImpl);
        impl->lhs = a;
        impl->rhs = parse_term(lx);
        // Implications are non-associative: a second operator at this
        // level without parentheses is an error.
        auto k2 = lx.peek().kind;
        if (k2 == Token::Kind::LImpl || k2 == Token::Kind::RImpl)
            throw TypeError("implications are non-associative; parenthesize at offset " +
                            std::to_string(lx.peek().pos));
        return impl;
    }
    return a;
}

AstPtr parse_full(const std::string& text) {
    Lexer lx(text);
    AstPtr a = parse_type(lx);
    if (lx.peek().kind != Token::Kind::End)
        throw TypeError("trailing input in type at offset " + std::to_string(lx.peek().pos));
    return a;
}

LambekType lower_lambek(const Ast& a) {
    switch (a.kind) {
        case Ast::Kind::Basic: return LambekType::basic(a.name);
        case Ast::Kind::Unit: return LambekType::unit();
        case Ast::Kind::Product:
            return LambekType::product(lower_lambek(*a.lhs), lower_lambek(*a.rhs));
        case Ast::Kind::LImpl:
            return LambekType::left_impl(lower_lambek(*a.lhs), lower_lambek(*a.rhs));
        case Ast::Kind::RImpl:
            return LambekType::right_impl(lower_lambek(*a.lhs), lower_lambek(*a.rhs));
        case Ast::Kind::Adjoint:
            throw TypeError("adjoint suffix is not a Lambek type constructor");
    }
    throw TypeError("unreachable ast kind");
}

PregroupType lower_pregroup(const Ast& a) {
    switch (a.kind) {
        case Ast::Kind::Basic:
            return PregroupType{{SimpleType{BasicType{a.name}, 0}}};
        case Ast::Kind::Unit:
            return PregroupType{};
        case Ast::Kind::Product:
            return concat(lower_pregroup(*a.lhs), lower_pregroup(*a.rhs));
        case Ast::Kind::LImpl:
            return concat(right_adjoint(lower_pregroup(*a.lhs)), lower_pregroup(*a.rhs));
        case Ast::Kind::RImpl:
            return concat(lower_pregroup(*a.lhs), left_adjoint(lower_pregroup(*a.rhs)));
        case Ast::Kind::Adjoint: {
            PregroupType p = lower_pregroup(*a.lhs);
            for (int i = 0; i < std::abs(a.adjoint_delta); ++i)
                p = a.adjoint_delta < 0 ? left_adjoint(p) : right_adjoint(p);
            return p;
        }
    }
    throw TypeError("unreachable ast kind");
}

}  // namespace

LambekType parse_lambek_type(const std::string& text) {
    return lower_lambek(*parse_full(text));
}

PregroupType parse_pregroup_type(const std::string& text) {
    return lower_pregroup(*parse_full(text));
}

}  // namespace discocat
