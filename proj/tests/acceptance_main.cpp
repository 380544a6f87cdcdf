// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure.  Run through ctest or directly.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "discocat/diagrams.hpp"
#include "discocat/evaluation.hpp"
#include "discocat/lexicon.hpp"
#include "discocat/parsing.hpp"
#include "discocat/semantics.hpp"
#include "oracles.hpp"

using namespace discocat;

namespace {

struct Failure : std::runtime_error {
    explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool cond, const std::string& message) {
    if (!cond) throw Failure(message);
}

std::string source_dir() { return DISCOCAT_SOURCE_DIR; }
std::string data_path(const std::string& name) { return source_dir() + "/data/" + name; }
std::string golden_path(const std::string& name) {
    return source_dir() + "/tests/golden/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Tensor random_tensor(std::mt19937& rng, std::vector<std::size_t> shape) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Tensor t = Tensor::zeros(std::move(shape));
    for (auto& v : t.data()) v = dist(rng);
    return t;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

VectorSpaceModel explicit_model(std::size_t n, std::size_t s,
                                std::map<std::string, Tensor> tensors) {
    VectorSpaceModel m;
    m.assignment = {{"n", "N"}, {"s", "S"}, {"j", "S"}, {"sigma", "N"}};
    m.spaces = {{"N", n}, {"S", s}};
    for (auto& [word, t] : tensors) {
        if (t.rank() == 1)
            m.word_vectors[word] = t;
        else
            m.word_tensors[word] = t;
    }
    return m;
}

// --- criterion 1 ------------------------------------------------------------

void criterion_parse_suite() {
    auto start = std::chrono::steady_clock::now();
    Grammar g = load_grammar(data_path("toy.json"));
    for (const char* sentence :
         {"men kill dogs", "men kill cute dogs", "men do not kill dogs"}) {
        auto words = tokenize(sentence);
        require(parse_sentence(words, g, Logic::Pregroup).has_value(),
                std::string(sentence) + " rejected by the pregroup logic");
        require(parse_sentence(words, g, Logic::Lambek).has_value(),
                std::string(sentence) + " rejected by the lambek logic");
    }
    for (const char* sentence : {"kill men dogs", "dogs cute kill men", "men do kill"}) {
        auto words = tokenize(sentence);
        require(!parse_sentence(words, g, Logic::Pregroup).has_value(),
                std::string(sentence) + " wrongly accepted by the pregroup logic");
        require(!parse_sentence(words, g, Logic::Lambek).has_value(),
                std::string(sentence) + " wrongly accepted by the lambek logic");
    }
    auto mkd = parse_sentence(tokenize("men kill dogs"), g, Logic::Pregroup);
    require(mkd && mkd->reduction.has_value(), "men kill dogs has no reduction");
    std::vector<std::pair<std::size_t, std::size_t>> links = {{0, 1}, {3, 4}};
    require(mkd->reduction->links == links, "men kill dogs linkage is not {(0,1),(3,4)}");

    auto elapsed = std::chrono::steady_clock::now() - start;
    double seconds = std::chrono::duration<double>(elapsed).count();
    require(seconds < 1.0, "parse suite took " + std::to_string(seconds) + "s (budget 1s)");
}

// --- criterion 2 ------------------------------------------------------------

void criterion_formula_reproduction() {
    Grammar g = load_grammar(data_path("toy.json"));
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + iter % 3, s = 2 + (iter / 3) % 3;  // N, S <= 4
        Tensor men = random_tensor(rng, {n});
        Tensor dogs = random_tensor(rng, {n});
        Tensor cute = random_tensor(rng, {n, n});
        Tensor kill = random_tensor(rng, {n, s, n});
        auto model = explicit_model(n, s, {{"men", men}, {"dogs", dogs}, {"cute", cute},
                                           {"kill", kill}});

        auto transitive = meaning(tokenize("men kill dogs"), g, model, Logic::Pregroup);
        auto expect = oracle::transitive_formula(men.data(), {kill.shape(), kill.data()},
                                                 dogs.data());
        require(max_abs_diff(transitive.vector.data(), expect) <= 1e-12,
                "transitive closed form mismatch");

        auto four = meaning(tokenize("men kill cute dogs"), g, model, Logic::Pregroup);
        auto expect4 = oracle::transitive_adjective_formula(
            men.data(), {kill.shape(), kill.data()}, {cute.shape(), cute.data()}, dogs.data());
        require(max_abs_diff(four.vector.data(), expect4) <= 1e-12,
                "double-sum closed form mismatch");

        // Adjective-noun phrase: reduce n . n^l . n to n and execute.
        std::vector<PregroupType> np_types = {parse_pregroup_type("n . n^l"),
                                              parse_pregroup_type("n")};
        std::vector<SimpleType> flat;
        for (const auto& wt : np_types)
            flat.insert(flat.end(), wt.factors.begin(), wt.factors.end());
        auto red = reduce(flat, BasicType{"n"});
        require(red.has_value(), "adjective-noun phrase does not reduce");
        SpaceAssignment sa = SpaceAssignment::standard(n, s);
        Tensor np = execute_plan(compile_pregroup(*red, np_types, sa), {cute, dogs});
        auto expect_np = oracle::adjective_formula({cute.shape(), cute.data()}, dogs.data());
        require(max_abs_diff(np.data(), expect_np) <= 1e-12,
                "adjective-noun closed form mismatch");
    }
}

// --- criterion 3 ------------------------------------------------------------

void criterion_path_agreement() {
    Grammar g = parse_grammar(R"({
      "basic_types": ["n", "s", "j", "sigma"],
      "designated": ["s"],
      "entries": [
        {"word": "men", "type": "n"},
        {"word": "dogs", "type": "n"},
        {"word": "cute", "type": "n o- n"},
        {"word": "sleep", "type": "n -o s"},
        {"word": "kill", "type": "(n -o s) o- n"}
      ]})");
    std::mt19937 rng(777);
    const char* sentences[] = {"men sleep", "men kill dogs", "men kill cute dogs"};
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t n = 2 + iter % 3, s = 2 + (iter / 3) % 3;
        auto model = explicit_model(n, s,
                                    {{"men", random_tensor(rng, {n})},
                                     {"dogs", random_tensor(rng, {n})},
                                     {"cute", random_tensor(rng, {n, n})},
                                     {"sleep", random_tensor(rng, {n, s})},
                                     {"kill", random_tensor(rng, {n, s, n})}});
        const char* sentence = sentences[iter % 3];
        auto a = meaning(tokenize(sentence), g, model, Logic::Pregroup);
        auto b = meaning(tokenize(sentence), g, model, Logic::Lambek);
        require(a.vector.shape() == b.vector.shape(),
                std::string(sentence) + ": paths disagree on the output space");
        require(max_abs_diff(a.vector.data(), b.vector.data()) <= 1e-12,
                std::string(sentence) + ": compact and monoidal vectors differ");
    }
}

// --- criterion 4 ------------------------------------------------------------

void criterion_negation() {
    Grammar g = load_grammar(data_path("toy.json"));
    VectorSpaceModel model = load_model(data_path("truth_model.json"));
    for (Logic logic : {Logic::Pregroup, Logic::Lambek}) {
        auto positive = meaning(tokenize("men kill dogs"), g, model, logic);
        auto negative = meaning(tokenize("men do not kill dogs"), g, model, logic);
        require(positive.vector.shape() == std::vector<std::size_t>{2} &&
                    negative.vector.shape() == std::vector<std::size_t>{2},
                "truth-theoretic sentences must live in the 2-dimensional sentence space");
        // Integer tensors: equality is exact.
        require(negative.vector.data()[0] == positive.vector.data()[1] &&
                    negative.vector.data()[1] == positive.vector.data()[0],
                to_string(logic) + ": negation is not the swap of the positive sentence");
    }
}

// --- criterion 5 ------------------------------------------------------------

void criterion_reducer_completeness() {
    std::mt19937 rng(424242);
    static const char* bases[] = {"n", "s"};
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> order(-2, 2);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<SimpleType> types;
        int k = len(rng);
        for (int i = 0; i < k; ++i)
            types.push_back({BasicType{bases[rng() % 2]}, order(rng)});
        BasicType target{iter % 2 ? "n" : "s"};
        bool dp = reduce(types, target).has_value();
        bool brute = oracle::rewrite_reducible(types, target);
        require(dp == brute, "reducer disagrees with brute force on sample " +
                                 std::to_string(iter));
    }
}

// --- criterion 6 ------------------------------------------------------------

void criterion_yanking() {
    std::mt19937 rng(31337);
    LambekType n = LambekType::basic("n");
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t dim = 2 + iter % 3;  // up to 4x4
        Tensor m = random_tensor(rng, {dim, dim});
        SpaceAssignment sa;
        sa.space_of = {{"n", "N"}};
        sa.dimension = {{"N", dim}};
        auto plan = compile_lambek(Derivation::ev_l(n, n), {n, LambekType::left_impl(n, n)}, sa);
        // Check the maps agree on every basis vector.
        for (std::size_t i = 0; i < dim; ++i) {
            Tensor e = Tensor::basis(dim, i);
            Tensor out = execute_plan(plan, {e, name_tensor(m)});
            Tensor direct = apply_matrix(e, 0, m);
            require(max_abs_diff(out.data(), direct.data()) <= 1e-12,
                    "yanking mismatch on basis vector " + std::to_string(i));
        }
    }
}

// --- criterion 7 ------------------------------------------------------------

void criterion_spearman() {
    double rho = spearman_rho({1, 2, 3, 4}, {2, 1, 4, 3});
    require(std::abs(rho - 0.6) <= 1e-12, "rho([1,2,3,4],[2,1,4,3]) != 0.6");

    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> len(2, 20);
    std::uniform_int_distribution<int> value(0, 5);  // ties guaranteed
    int compared = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t k = static_cast<std::size_t>(len(rng));
        std::vector<double> xs(k), ys(k);
        for (std::size_t i = 0; i < k; ++i) {
            xs[i] = value(rng) + 0.25 * value(rng);
            ys[i] = value(rng);
        }
        try {
            double got = spearman_rho(xs, ys);
            double want = oracle::spearman(xs, ys);
            require(std::abs(got - want) <= 1e-12,
                    "spearman mismatch on sample " + std::to_string(iter));
            compared++;
        } catch (const EvalError&) {
            // constant input: undefined for the oracle as well
        }
    }
    require(compared >= 900, "too few comparable spearman samples");
}

// --- criterion 8 ------------------------------------------------------------

int run_cli(const std::string& args) {
    std::string cmd = std::string(DISCOCAT_CLI_PATH) + " " + args;
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void criterion_pipeline() {
    auto start = std::chrono::steady_clock::now();
    std::string dir = "/tmp/discocat_acceptance";
    require(std::system(("mkdir -p " + dir).c_str()) == 0, "cannot create temp dir");
    std::string model = dir + "/model.json";
    require(run_cli("build-model --corpus " + data_path("toy_corpus.txt") +
                    " --basis-size 8 --window 5 --out " + model) == 0,
            "build-model failed");
    require(run_cli("build-verbs --model " + model + " --triples " +
                    data_path("toy_triples.tsv") + " --method cat1 --out " + model) == 0,
            "build-verbs cat1 failed");
    require(run_cli("build-verbs --model " + model + " --triples " +
                    data_path("toy_triples.tsv") + " --method cat2 --out " + model) == 0,
            "build-verbs cat2 failed");
    require(run_cli("eval --grammar " + data_path("eval_grammar.json") + " --model " + model +
                    " --dataset " + data_path("toy_pairs.tsv") + " --out " + dir +
                    "/report.json") == 0,
            "eval failed");
    require(run_cli("eval --grammar " + data_path("eval_grammar.json") + " --model " + model +
                    " --dataset " + data_path("toy_pairs.tsv") + " --pretty --out " + dir +
                    "/report.txt") == 0,
            "eval --pretty failed");

    require(slurp(dir + "/report.json") == slurp(golden_path("report.json")),
            "report.json differs from the committed golden");
    require(slurp(dir + "/report.txt") == slurp(golden_path("report.txt")),
            "report.txt differs from the committed golden");

    auto elapsed = std::chrono::steady_clock::now() - start;
    double seconds = std::chrono::duration<double>(elapsed).count();
    require(seconds < 5.0, "pipeline took " + std::to_string(seconds) + "s (budget 5s)");
}

// --- criterion 9 ------------------------------------------------------------

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        count++;
        pos += needle.size();
    }
    return count;
}

void criterion_diagram_goldens() {
    Grammar g = load_grammar(data_path("toy.json"));
    struct Expected {
        const char* sentence;
        const char* golden;
        std::size_t cups;
    };
    const Expected cases[] = {
        {"men kill dogs", "men_kill_dogs.svg", 2},
        {"men kill cute dogs", "men_kill_cute_dogs.svg", 3},
        {"men do not kill dogs", "men_do_not_kill_dogs.svg", 4},
    };
    for (const auto& c : cases) {
        auto words = tokenize(c.sentence);
        auto parse = parse_sentence(words, g, Logic::Pregroup);
        require(parse.has_value(), std::string(c.sentence) + " failed to parse");
        std::vector<PregroupType> types;
        for (const auto& e : parse->entries) types.push_back(lambek_to_pregroup(e.type));
        std::string svg = render_cancellation(*parse->reduction, words, types);
        require(count_occurrences(svg, "class=\"cup\"") == c.cups,
                std::string(c.sentence) + ": cup count is not " + std::to_string(c.cups));
        require(svg == slurp(golden_path(c.golden)),
                std::string(c.sentence) + ": svg differs from " + std::string(c.golden));
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 parse suite: worked sentences accepted, scrambles rejected, exact linkage, <1s",
         criterion_parse_suite},
        {"2 closed-form reproduction: transitive, adjective-noun and double-sum, <=1e-12",
         criterion_formula_reproduction},
        {"3 compact/monoidal agreement on 100 random positive sentences, <=1e-12",
         criterion_path_agreement},
        {"4 truth-theoretic negation equals the swapped positive sentence, exactly",
         criterion_negation},
        {"5 reducer matches brute-force planar matching on 1000 random strings",
         criterion_reducer_completeness},
        {"6 yanking: evaluation of a name equals the named map, 50 random matrices",
         criterion_yanking},
        {"7 spearman rho matches the rank oracle on 1000 samples; 0.6 spot value",
         criterion_spearman},
        {"8 end-to-end toy pipeline reproduces the committed report bytes, <5s",
         criterion_pipeline},
        {"9 cancellation diagram goldens with cup counts 2, 3, 4", criterion_diagram_goldens},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.run();
            std::printf("PASS criterion %s\n", criterion.label);
        } catch (const std::exception& e) {
            failures++;
            std::printf("FAIL criterion %s: %s\n", criterion.label, e.what());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
