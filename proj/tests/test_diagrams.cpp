#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "discocat/diagrams.hpp"
#include "discocat/lexicon.hpp"
#include "discocat/parsing.hpp"

using namespace discocat;

namespace {

std::string data_path(const std::string& name) {
    return std::string(DISCOCAT_SOURCE_DIR) + "/data/" + name;
}

std::string golden_path(const std::string& name) {
    return std::string(DISCOCAT_SOURCE_DIR) + "/tests/golden/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Rendered {
    std::string svg;
    DiagramStats stats;
};

Rendered cancellation_for(const std::string& sentence) {
    Grammar g = load_grammar(data_path("toy.json"));
    auto words = tokenize(sentence);
    auto parse = parse_sentence(words, g, Logic::Pregroup);
    REQUIRE(parse.has_value());
    std::vector<PregroupType> types;
    for (const auto& e : parse->entries) types.push_back(lambek_to_pregroup(e.type));
    std::string svg = render_cancellation(*parse->reduction, words, types);
    return {svg, svg_stats(svg)};
}

Rendered baez_for(const std::string& sentence) {
    Grammar g = load_grammar(data_path("toy.json"));
    auto words = tokenize(sentence);
    auto parse = parse_sentence(words, g, Logic::Lambek);
    REQUIRE(parse.has_value());
    std::string svg = render_baez_stay(*parse->derivation, words);
    return {svg, svg_stats(svg)};
}

std::size_t impl_nodes(const LambekType& t) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
        case LambekType::Kind::Unit:
            return 0;
        case LambekType::Kind::Product:
            return impl_nodes(t.lhs()) + impl_nodes(t.rhs());
        default:
            return 1 + impl_nodes(t.lhs()) + impl_nodes(t.rhs());
    }
}

// Expected clasp count: implication nodes in the domain plus, for each
// curry/name, the introduced implication and the re-exposed nodes of its
// antecedent.
std::size_t expected_clasps(const Derivation& d) {
    std::size_t count = 0;
    switch (d.kind()) {
        case Derivation::Kind::CurryL:
        case Derivation::Kind::NameL:
            count = 1 + impl_nodes(d.type_a()) + expected_clasps(d.first());
            break;
        case Derivation::Kind::CurryR:
        case Derivation::Kind::NameR:
            count = 1 + impl_nodes(d.type_b()) + expected_clasps(d.first());
            break;
        case Derivation::Kind::Compose:
        case Derivation::Kind::Par:
            count = expected_clasps(d.first()) + expected_clasps(d.second());
            break;
        default:
            break;
    }
    return count;
}

std::size_t count_ev_nodes(const Derivation& d) {
    switch (d.kind()) {
        case Derivation::Kind::EvL:
        case Derivation::Kind::EvR:
            return 1;
        case Derivation::Kind::Compose:
        case Derivation::Kind::Par:
            return count_ev_nodes(d.first()) + count_ev_nodes(d.second());
        case Derivation::Kind::CurryL:
        case Derivation::Kind::CurryR:
        case Derivation::Kind::NameL:
        case Derivation::Kind::NameR:
            return count_ev_nodes(d.first());
        default:
            return 0;
    }
}

}  // namespace

TEST_CASE("cancellation diagram for the transitive sentence") {
    auto r = cancellation_for("men kill dogs");
    CHECK(r.stats.cups == 2);
    CHECK(r.stats.nested_strings == 0);
    CHECK(r.stats.residuals == 1);
    // Deterministic bytes.
    CHECK(cancellation_for("men kill dogs").svg == r.svg);
}

TEST_CASE("cancellation cup counts for the worked sentences") {
    CHECK(cancellation_for("men kill dogs").stats.cups == 2);
    CHECK(cancellation_for("men kill cute dogs").stats.cups == 3);
    auto neg = cancellation_for("men do not kill dogs");
    CHECK(neg.stats.cups == 4);
    CHECK(neg.stats.nested_strings == 2);
}

TEST_CASE("every link draws exactly one string") {
    Grammar g = load_grammar(data_path("toy.json"));
    for (const char* sentence :
         {"men kill dogs", "men kill cute dogs", "men do not kill dogs", "cute dogs kill men"}) {
        auto words = tokenize(sentence);
        auto parse = parse_sentence(words, g, Logic::Pregroup);
        REQUIRE(parse.has_value());
        std::vector<PregroupType> types;
        for (const auto& e : parse->entries) types.push_back(lambek_to_pregroup(e.type));
        auto stats = svg_stats(render_cancellation(*parse->reduction, words, types));
        CHECK(stats.cups + stats.nested_strings == parse->reduction->links.size());
        CHECK(stats.residuals == parse->reduction->residual_indices.size());
    }
}

TEST_CASE("cancellation goldens are stable") {
    CHECK(cancellation_for("men kill dogs").svg == slurp(golden_path("men_kill_dogs.svg")));
    CHECK(cancellation_for("men kill cute dogs").svg ==
          slurp(golden_path("men_kill_cute_dogs.svg")));
    CHECK(cancellation_for("men do not kill dogs").svg ==
          slurp(golden_path("men_do_not_kill_dogs.svg")));
}

TEST_CASE("single residual renders as one straight line without cups") {
    Reduction r;
    r.input = parse_pregroup_type("s").factors;
    r.residual_indices = {0};
    std::string svg = render_cancellation(r, {"it"}, {parse_pregroup_type("s")});
    auto stats = svg_stats(svg);
    CHECK(stats.cups == 0);
    CHECK(stats.nested_strings == 0);
    CHECK(stats.residuals == 1);
}

TEST_CASE("misaligned words are rejected") {
    Grammar g = load_grammar(data_path("toy.json"));
    auto words = tokenize("men kill dogs");
    auto parse = parse_sentence(words, g, Logic::Pregroup);
    REQUIRE(parse.has_value());
    std::vector<PregroupType> wrong = {parse_pregroup_type("n"), parse_pregroup_type("n")};
    CHECK_THROWS_AS(render_cancellation(*parse->reduction, {"men", "kill"}, wrong),
                    DiagramError);
}

TEST_CASE("baez-stay diagram for the intransitive core") {
    Derivation d = Derivation::ev_l(parse_lambek_type("n"), parse_lambek_type("s"));
    std::string svg = render_baez_stay(d, {"men", "kill"});
    auto stats = svg_stats(svg);
    CHECK(stats.blobs == 1);
    CHECK(stats.cups == 1);
    CHECK(stats.clasps == 1);  // the verb's implication
    CHECK(stats.curry_blobs == 0);
    CHECK(render_baez_stay(d, {"men", "kill"}) == svg);
}

TEST_CASE("single identity wire") {
    Derivation d = Derivation::id(parse_lambek_type("s"));
    auto stats = svg_stats(render_baez_stay(d, {"it"}));
    CHECK(stats.wires == 1);
    CHECK(stats.blobs == 0);
    CHECK(stats.clasps == 0);
}

TEST_CASE("clasp and blob counts follow the term structure") {
    Grammar g = load_grammar(data_path("toy.json"));
    for (const char* sentence :
         {"men kill dogs", "men kill cute dogs", "men do not kill dogs"}) {
        auto words = tokenize(sentence);
        auto parse = parse_sentence(words, g, Logic::Lambek);
        REQUIRE(parse.has_value());
        const Derivation& d = *parse->derivation;
        auto stats = svg_stats(render_baez_stay(d, words));

        std::size_t domain_nodes = 0;
        for (const auto& e : parse->entries) domain_nodes += impl_nodes(e.type);
        CHECK(stats.clasps == domain_nodes + expected_clasps(d));
        CHECK(stats.blobs == count_ev_nodes(d));
    }
}

TEST_CASE("baez-stay goldens are stable") {
    CHECK(baez_for("men kill dogs").svg == slurp(golden_path("men_kill_dogs_baez.svg")));
    CHECK(baez_for("men do not kill dogs").svg ==
          slurp(golden_path("men_do_not_kill_dogs_baez.svg")));
}
