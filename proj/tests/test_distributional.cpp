#include "doctest.h"

#include <cmath>
#include <random>

#include "discocat/distributional.hpp"
#include "oracles.hpp"

using namespace discocat;

namespace {

std::string data_path(const std::string& name) {
    return std::string(DISCOCAT_SOURCE_DIR) + "/data/" + name;
}

}  // namespace

TEST_CASE("basis selection by frequency with alphabetical ties") {
    Corpus c = corpus_from_text("a b a c a b\n");
    CHECK(build_basis(c, 2) == std::vector<std::string>{"a", "b"});
    CHECK(build_basis(c, 10) == std::vector<std::string>{"a", "b", "c"});

    Corpus ties = corpus_from_text("x y\ny x\nz z\n");
    // x, y and z all occur twice; alphabetical order breaks the tie.
    CHECK(build_basis(ties, 2) == std::vector<std::string>{"x", "y"});
    CHECK_THROWS_AS(build_basis(corpus_from_text(""), 3), ModelError);
}

TEST_CASE("bundled corpus basis, frozen after the first verified run") {
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    std::vector<std::string> expected = {"dogs", "men",  "children", "criminals", "cats",
                                         "police", "chase", "eat",     "food",      "like"};
    CHECK(build_basis(c, 10) == expected);
    // Cross-check the frozen list against a direct frequency count.
    std::map<std::string, std::size_t> freq;
    for (const auto& line : c.lines)
        for (const auto& tok : line) freq[tok]++;
    for (std::size_t i = 0; i + 1 < expected.size(); ++i) {
        auto a = freq[expected[i]], b = freq[expected[i + 1]];
        CHECK((a > b || (a == b && expected[i] < expected[i + 1])));
    }
}

TEST_CASE("windowed cooccurrence counts") {
    Corpus c = corpus_from_text("dogs eat food\n");
    auto counts = cooccurrence(c, {"food"}, 1);
    CHECK(counts.at("eat") == std::vector<double>{1});
    CHECK(counts.at("dogs") == std::vector<double>{0});

    // A window larger than the line sees every pair in it.
    auto wide = cooccurrence(c, {"dogs", "eat", "food"}, 10);
    CHECK(wide.at("food") == std::vector<double>{1, 1, 0});

    // Windows never cross line boundaries.
    Corpus two = corpus_from_text("a b\nc a\n");
    auto sep = cooccurrence(two, {"b"}, 5);
    CHECK(sep.at("c") == std::vector<double>{0});
    CHECK(sep.at("a") == std::vector<double>{1});
    CHECK(sep.count("zebra") == 0);
}

TEST_CASE("tfidf weighting") {
    // A basis word occurring in every line has idf log(1) = 0.
    Corpus c = corpus_from_text("dogs eat food\ncats eat food\n");
    auto counts = cooccurrence(c, {"food", "dogs"}, 5);
    auto weighted = tfidf(counts, c, {"food", "dogs"});
    CHECK(weighted.at("eat")[0] == 0.0);                                   // food: df = 2
    CHECK(weighted.at("eat")[1] == doctest::Approx(1.0 * std::log(2.0)));  // dogs: df = 1

    Corpus single = corpus_from_text("a b c\n");
    auto w1 = tfidf(cooccurrence(single, {"a", "b"}, 5), single, {"a", "b"});
    for (const auto& [word, vec] : w1)
        for (double v : vec) CHECK(v == 0.0);
}

TEST_CASE("cat1 verb tensors") {
    VectorSpaceModel m;
    m.basis = {"a", "b"};
    m.word_vectors["men"] = Tensor::basis(2, 0);
    m.word_vectors["dogs"] = Tensor::basis(2, 1);

    std::vector<DependencyTriple> one = {{"men", "kill", "dogs"}};
    Tensor t1 = verb_tensor_cat1("kill", one, m, 2);
    CHECK(t1 == tensor_product(Tensor::basis(2, 0), Tensor::basis(2, 1)));

    std::vector<DependencyTriple> twice = {{"men", "kill", "dogs"}, {"men", "kill", "dogs"}};
    Tensor t2 = verb_tensor_cat1("kill", twice, m, 2);
    CHECK(t2 == scale(t1, 2.0));

    // Linearity over concatenated triple lists.
    std::vector<DependencyTriple> other = {{"dogs", "kill", "men"}};
    std::vector<DependencyTriple> both = one;
    both.insert(both.end(), other.begin(), other.end());
    Tensor sum = add(verb_tensor_cat1("kill", one, m, 2), verb_tensor_cat1("kill", other, m, 2));
    CHECK(verb_tensor_cat1("kill", both, m, 2) == sum);

    // Intransitive occurrences sum subject vectors.
    std::vector<DependencyTriple> intr = {{"men", "sleep", std::nullopt},
                                          {"dogs", "sleep", std::nullopt}};
    CHECK(verb_tensor_cat1("sleep", intr, m, 1) == Tensor::from_data({2}, {1, 1}));

    CHECK_THROWS_AS(verb_tensor_cat1("eat", one, m, 2), ModelError);
}

TEST_CASE("cat2 verb tensors") {
    VectorSpaceModel m;
    m.basis = {"a", "b"};
    m.word_vectors["kill"] = Tensor::from_data({2}, {1, 0});
    CHECK(verb_tensor_cat2("kill", m, 1) == m.word_vectors["kill"]);
    CHECK(verb_tensor_cat2("kill", m, 2).data() == std::vector<double>{1, 0, 0, 0});

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1, 1);
    Tensor v = Tensor::zeros({3});
    for (auto& x : v.data()) x = dist(rng);
    m.word_vectors["devour"] = v;
    Tensor cube = verb_tensor_cat2("devour", m, 3);
    auto raw = oracle::raw_product(oracle::raw_product({v.shape(), v.data()},
                                                       {v.shape(), v.data()}),
                                   {v.shape(), v.data()});
    for (std::size_t i = 0; i < cube.size(); ++i)
        CHECK(cube.data()[i] == doctest::Approx(raw.data[i]).epsilon(1e-12));

    CHECK_THROWS_AS(verb_tensor_cat2("missing", m, 2), ModelError);
}

TEST_CASE("diagonal embedding") {
    Tensor t = Tensor::from_matrix({{1, 2}, {3, 4}});
    Tensor u = embed_diagonal(t);
    REQUIRE(u.shape() == std::vector<std::size_t>{2, 4, 2});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t s = 0; s < 4; ++s)
            for (std::size_t j = 0; j < 2; ++j) {
                double want = (s == i * 2 + j) ? t.at({i, j}) : 0.0;
                CHECK(u.at({i, s, j}) == want);
            }

    // Contracting with basis subject/object recovers the entries.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Tensor picked = contract(
                contract(tensor_product(Tensor::basis(2, i), tensor_product(u, Tensor::basis(2, j))),
                         0, 1),
                1, 2);
            REQUIRE(picked.shape() == std::vector<std::size_t>{4});
            CHECK(picked.data()[i * 2 + j] == t.at({i, j}));
            double total = 0;
            for (double v : picked.data()) total += std::abs(v);
            CHECK(total == std::abs(t.at({i, j})));
        }

    Tensor vec = Tensor::from_data({3}, {5, 6, 7});
    Tensor uv = embed_diagonal(vec);
    REQUIRE(uv.shape() == std::vector<std::size_t>{3, 3});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t a = 0; a < 3; ++a)
            CHECK(uv.at({i, a}) == (a == i ? vec.data()[i] : 0.0));

    CHECK(embed_diagonal(Tensor::zeros({2, 2})) == Tensor::zeros({2, 4, 2}));
    CHECK_THROWS_AS(embed_diagonal(t, {2, 3, 2}), ModelError);
}

TEST_CASE("model build is deterministic and round-trips through json") {
    Corpus c = load_corpus(data_path("toy_corpus.txt"));
    VectorSpaceModel m1 = build_model(c, 8, 5, "tfidf");
    VectorSpaceModel m2 = build_model(c, 8, 5, "tfidf");
    CHECK(save_model(m1) == save_model(m2));

    auto triples = load_triples(data_path("toy_triples.tsv"));
    add_verb_tensors(m1, triples, "cat1");
    add_verb_tensors(m1, triples, "cat2");
    std::string bytes = save_model(m1);
    VectorSpaceModel back = parse_model(bytes);
    CHECK(save_model(back) == bytes);
    CHECK(back.basis == m1.basis);
    CHECK(back.verb_tensors.size() == m1.verb_tensors.size());
}

TEST_CASE("triples parsing") {
    auto triples = triples_from_text("men\tkill\tdogs\ndogs\tsleep\t\n");
    REQUIRE(triples.size() == 2);
    CHECK(triples[0].object == "dogs");
    CHECK(!triples[1].object.has_value());
    CHECK_THROWS_AS(triples_from_text("onlyonecolumn\n"), ModelError);
}
