#include "doctest.h"

#include <random>

#include "discocat/evaluation.hpp"
#include "oracles.hpp"

using namespace discocat;

namespace {

std::string data_path(const std::string& name) {
    return std::string(DISCOCAT_SOURCE_DIR) + "/data/" + name;
}

}  // namespace

TEST_CASE("spearman on hand-checked inputs") {
    CHECK(spearman_rho({1, 2, 3}, {10, 20, 30}) == doctest::Approx(1.0));
    CHECK(spearman_rho({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman_rho({1, 2, 3, 4}, {2, 1, 4, 3}) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("spearman error cases") {
    CHECK_THROWS_AS(spearman_rho({1, 2}, {1, 2, 3}), EvalError);
    CHECK_THROWS_AS(spearman_rho({}, {}), EvalError);
    CHECK_THROWS_AS(spearman_rho({2, 2, 2}, {1, 2, 3}), EvalError);  // constant input
}

TEST_CASE("spearman matches the counting oracle, ties included") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> value(0, 6);  // small range forces ties
    std::uniform_int_distribution<int> length(2, 20);
    std::size_t checked = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = static_cast<std::size_t>(length(rng));
        std::vector<double> xs(n), ys(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = value(rng);
            ys[i] = value(rng) + 0.5 * value(rng);
        }
        try {
            double rho = spearman_rho(xs, ys);
            CHECK(rho == doctest::Approx(oracle::spearman(xs, ys)).epsilon(1e-12));
            checked++;
        } catch (const EvalError&) {
            // constant draw; the oracle would divide by zero too
        }
    }
    CHECK(checked > 900);
}

TEST_CASE("spearman is invariant under monotone transforms") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> dist(-5, 5);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<double> xs(12), ys(12);
        for (std::size_t i = 0; i < 12; ++i) {
            xs[i] = dist(rng);
            ys[i] = dist(rng);
        }
        double rho = spearman_rho(xs, ys);
        std::vector<double> tx = xs;
        for (double& v : tx) v = std::exp(0.3 * v) + 7.0;  // strictly monotone
        CHECK(spearman_rho(tx, ys) == doctest::Approx(rho).epsilon(1e-12));
        std::vector<double> reversed = ys;
        for (double& v : reversed) v = -v;
        CHECK(spearman_rho(xs, reversed) == doctest::Approx(-rho).epsilon(1e-12));
    }
}

TEST_CASE("identical sentences score 1 under every composer") {
    Grammar g = load_grammar(data_path("eval_grammar.json"));
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    VectorSpaceModel m = build_model(c, 8, 5, "tfidf");
    add_verb_tensors(m, load_triples(data_path("toy_triples.tsv")), "cat1");
    add_verb_tensors(m, load_triples(data_path("toy_triples.tsv")), "cat2");

    std::vector<SentencePair> same = {
        {tokenize("men kill dogs"), tokenize("men kill dogs"), 7.0, PairTag::High}};
    for (Composer comp : {Composer::Add, Composer::Multiply, Composer::Cat1, Composer::Cat2,
                          Composer::Baseline}) {
        auto scores = score_pairs(same, g, m, comp);
        REQUIRE(scores.size() == 1);
        REQUIRE(scores[0].ok);
        CHECK(scores[0].cosine == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("equal verb vectors give a perfect score") {
    Grammar g = load_grammar(data_path("eval_grammar.json"));
    VectorSpaceModel m;
    m.assignment = {{"n", "N"}, {"s", "S"}, {"j", "S"}, {"sigma", "N"}};
    m.spaces = {{"N", 3}};
    m.word_vectors["men"] = Tensor::from_data({3}, {1, 0.5, 2});
    m.word_vectors["dogs"] = Tensor::from_data({3}, {0.25, 1, 1});
    m.word_vectors["kill"] = Tensor::from_data({3}, {2, 1, 0.5});
    m.word_vectors["murder"] = m.word_vectors["kill"];  // synonyms by construction
    std::vector<DependencyTriple> triples = {{"men", "kill", "dogs"},
                                             {"men", "murder", "dogs"}};
    add_verb_tensors(m, triples, "cat1");
    add_verb_tensors(m, triples, "cat2");

    std::vector<SentencePair> pair = {
        {tokenize("men kill dogs"), tokenize("men murder dogs"), 7.0, PairTag::High}};
    for (Composer comp : {Composer::Add, Composer::Multiply, Composer::Cat1, Composer::Cat2,
                          Composer::Baseline}) {
        auto scores = score_pairs(pair, g, m, comp);
        REQUIRE(scores[0].ok);
        CHECK(scores[0].cosine == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pointwise composers ignore word order; categorical ones do not") {
    Grammar g = load_grammar(data_path("eval_grammar.json"));
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    VectorSpaceModel m = build_model(c, 8, 5, "tfidf");
    add_verb_tensors(m, load_triples(data_path("toy_triples.tsv")), "cat1");

    std::vector<SentencePair> swapped = {
        {tokenize("men kill dogs"), tokenize("dogs kill men"), 4.0, PairTag::None}};
    for (Composer comp : {Composer::Add, Composer::Multiply}) {
        auto scores = score_pairs(swapped, g, m, comp);
        REQUIRE(scores[0].ok);
        CHECK(scores[0].cosine == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto cat = score_pairs(swapped, g, m, Composer::Cat1);
    REQUIRE(cat[0].ok);
    CHECK(cat[0].cosine < 1.0 - 1e-6);
}

TEST_CASE("rows that fail to score are skipped with a warning") {
    Grammar g = load_grammar(data_path("eval_grammar.json"));
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    VectorSpaceModel m = build_model(c, 8, 5, "tfidf");
    // No verb tensors: every cat1 row must be skipped, not fatal.
    std::vector<SentencePair> rows = {
        {tokenize("men kill dogs"), tokenize("men murder dogs"), 6.0, PairTag::High},
        {tokenize("men kill dogs"), tokenize("men love dogs"), 1.0, PairTag::Low}};
    Report report = evaluate(rows, g, m, {Composer::Cat1, Composer::Add});
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].scored == 0);
    CHECK(report.rows[0].skipped == 2);
    CHECK(!report.rows[0].rho.has_value());
    CHECK(report.rows[1].scored == 2);
    CHECK(report.warnings.size() == 2);
}

TEST_CASE("report shapes: tags, rows, missing values") {
    Grammar g = load_grammar(data_path("eval_grammar.json"));
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    VectorSpaceModel m = build_model(c, 8, 5, "tfidf");

    std::vector<SentencePair> untagged = {
        {tokenize("men kill dogs"), tokenize("men murder dogs"), 6.0, PairTag::None},
        {tokenize("dogs eat meat"), tokenize("dogs devour meat"), 6.5, PairTag::None},
        {tokenize("men kill dogs"), tokenize("men eat food"), 2.0, PairTag::None}};
    Report report = evaluate(untagged, g, m, {Composer::Add, Composer::Multiply});
    REQUIRE(report.rows.size() == 2);
    CHECK(to_string(report.rows[0].composer) == "add");
    CHECK(to_string(report.rows[1].composer) == "multiply");
    for (const auto& row : report.rows) {
        CHECK(!row.high_mean.has_value());
        CHECK(!row.low_mean.has_value());
    }
    std::string text = report_to_text(report);
    CHECK(text.find("n/a") != std::string::npos);
    std::string json = report_to_json(report);
    CHECK(json.find("\"high\": null") != std::string::npos);
}
