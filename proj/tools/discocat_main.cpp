// Command-line front end: parse, diagram, build-model, build-verbs,
// meaning, eval.  Exit codes: 0 success, 1 negative linguistic result
// (ungrammatical sentence), 2 operational error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "discocat/diagrams.hpp"
#include "discocat/evaluation.hpp"
#include "discocat/lexicon.hpp"
#include "discocat/parsing.hpp"
#include "discocat/semantics.hpp"

namespace {

using discocat::Logic;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUngrammatical = 1;
constexpr int kExitError = 2;

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + out_path);
    out << content;
}

ordered_json tensor_json(const discocat::Tensor& t) {
    ordered_json j;
    j["shape"] = t.shape();
    j["data"] = t.data();
    return j;
}

std::string dump(const ordered_json& j, bool pretty) {
    return (pretty ? j.dump(2) : j.dump()) + "\n";
}

int cmd_parse(const std::string& grammar_path, const std::string& logic_name,
              const std::string& sentence, bool pretty, const std::string& out_path) {
    auto grammar = discocat::load_grammar(grammar_path);
    Logic logic = discocat::logic_from_string(logic_name);
    auto words = discocat::tokenize(sentence);
    auto parse = discocat::parse_sentence(words, grammar, logic);

    ordered_json j;
    j["sentence"] = words;
    j["logic"] = to_string(logic);
    j["grammatical"] = parse.has_value();
    if (!parse) {
        write_output(out_path, dump(j, pretty));
        std::cerr << "ungrammatical\n";
        return kExitUngrammatical;
    }
    j["target"] = parse->target.name;
    ordered_json types = ordered_json::array();
    for (const auto& e : parse->entries) types.push_back(to_string(e.type));
    j["types"] = types;
    if (parse->reduction) {
        ordered_json links = ordered_json::array();
        for (auto [a, b] : parse->reduction->links) links.push_back({a, b});
        j["links"] = links;
        ordered_json residual = ordered_json::array();
        for (auto i : parse->reduction->residual_indices) residual.push_back(i);
        j["residual"] = residual;
    }
    if (parse->derivation) j["derivation"] = to_sexpr(*parse->derivation);
    write_output(out_path, dump(j, pretty));
    return kExitOk;
}

int cmd_diagram(const std::string& grammar_path, const std::string& logic_name,
                const std::string& sentence, const std::string& out_path) {
    auto grammar = discocat::load_grammar(grammar_path);
    Logic logic = discocat::logic_from_string(logic_name);
    auto words = discocat::tokenize(sentence);
    auto parse = discocat::parse_sentence(words, grammar, logic);
    if (!parse) {
        std::cerr << "ungrammatical\n";
        return kExitUngrammatical;
    }
    std::string svg;
    if (logic == Logic::Pregroup) {
        std::vector<discocat::PregroupType> types;
        for (const auto& e : parse->entries) types.push_back(lambek_to_pregroup(e.type));
        svg = render_cancellation(*parse->reduction, words, types);
    } else {
        svg = render_baez_stay(*parse->derivation, words);
    }
    write_output(out_path, svg);
    return kExitOk;
}

int cmd_build_model(const std::string& corpus_path, std::size_t basis_size, std::size_t window,
                    const std::string& weighting, const std::string& out_path) {
    auto corpus = discocat::load_corpus(corpus_path);
    auto model = discocat::build_model(corpus, basis_size, window, weighting);
    write_output(out_path, save_model(model));
    return kExitOk;
}

int cmd_build_verbs(const std::string& model_path, const std::string& triples_path,
                    const std::string& method, const std::string& out_path) {
    auto model = discocat::load_model(model_path);
    auto triples = discocat::load_triples(triples_path);
    add_verb_tensors(model, triples, method);
    write_output(out_path.empty() ? model_path : out_path, save_model(model));
    return kExitOk;
}

int cmd_meaning(const std::string& grammar_path, const std::string& model_path,
                const std::string& logic_name, const std::string& sentence,
                const std::optional<std::string>& method, bool emit_plan, bool pretty,
                const std::string& out_path) {
    auto grammar = discocat::load_grammar(grammar_path);
    auto model = discocat::load_model(model_path);
    Logic logic = discocat::logic_from_string(logic_name);
    auto words = discocat::tokenize(sentence);
    auto result = discocat::meaning(words, grammar, model, logic, method);

    if (emit_plan) {
        ordered_json j;
        j["vector"] = tensor_json(result.vector);
        j["plan"] = ordered_json::parse(plan_to_json(result.plan));
        write_output(out_path, dump(j, pretty));
    } else {
        write_output(out_path, dump(tensor_json(result.vector), pretty));
    }
    return kExitOk;
}

int cmd_eval(const std::string& grammar_path, const std::string& model_path,
             const std::string& dataset_path, const std::string& composers_arg, bool pretty,
             const std::string& out_path) {
    auto grammar = discocat::load_grammar(grammar_path);
    auto model = discocat::load_model(model_path);
    auto dataset = discocat::load_pairs(dataset_path);

    std::vector<discocat::Composer> composers;
    std::string cur;
    for (char c : composers_arg + ",") {
        if (c == ',') {
            if (!cur.empty()) composers.push_back(discocat::composer_from_string(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (composers.empty()) throw discocat::EvalError("no composers selected");

    auto report = evaluate(dataset, grammar, model, composers);
    write_output(out_path, pretty ? report_to_text(report) : report_to_json(report));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compositional distributional semantics toolkit"};
    app.require_subcommand(1);

    std::string grammar_path, model_path, corpus_path, triples_path, dataset_path;
    std::string logic_name = "pregroup";
    std::string weighting = "tfidf";
    std::string method, composers = "add,multiply,cat1,cat2,baseline";
    std::string sentence, out_path;
    std::size_t basis_size = 2000, window = 5;
    bool pretty = false, emit_plan = false;

    auto* parse_cmd = app.add_subcommand("parse", "check grammaticality and dump the witness");
    parse_cmd->add_option("--grammar", grammar_path)->required();
    parse_cmd->add_option("--logic", logic_name)->check(CLI::IsMember({"pregroup", "lambek"}));
    parse_cmd->add_option("--out", out_path);
    parse_cmd->add_flag("--pretty", pretty);
    parse_cmd->add_option("sentence", sentence)->required();

    auto* diagram_cmd = app.add_subcommand("diagram", "render the parse as an SVG diagram");
    diagram_cmd->add_option("--grammar", grammar_path)->required();
    diagram_cmd->add_option("--logic", logic_name)->check(CLI::IsMember({"pregroup", "lambek"}));
    diagram_cmd->add_option("--out", out_path);
    diagram_cmd->add_option("sentence", sentence)->required();

    auto* build_model_cmd = app.add_subcommand("build-model", "build a vector space model");
    build_model_cmd->add_option("--corpus", corpus_path)->required();
    build_model_cmd->add_option("--basis-size", basis_size);
    build_model_cmd->add_option("--window", window);
    build_model_cmd->add_option("--weighting", weighting)
        ->check(CLI::IsMember({"tfidf", "raw"}));
    build_model_cmd->add_option("--out", out_path)->required();

    auto* build_verbs_cmd = app.add_subcommand("build-verbs", "add verb tensors to a model");
    build_verbs_cmd->add_option("--model", model_path)->required();
    build_verbs_cmd->add_option("--triples", triples_path)->required();
    build_verbs_cmd->add_option("--method", method)
        ->required()
        ->check(CLI::IsMember({"cat1", "cat2"}));
    build_verbs_cmd->add_option("--out", out_path);

    auto* meaning_cmd = app.add_subcommand("meaning", "compute a sentence vector");
    meaning_cmd->add_option("--grammar", grammar_path)->required();
    meaning_cmd->add_option("--model", model_path)->required();
    meaning_cmd->add_option("--logic", logic_name)->check(CLI::IsMember({"pregroup", "lambek"}));
    meaning_cmd->add_option("--method", method)->check(CLI::IsMember({"cat1", "cat2"}));
    meaning_cmd->add_flag("--emit-plan", emit_plan);
    meaning_cmd->add_flag("--pretty", pretty);
    meaning_cmd->add_option("--out", out_path);
    meaning_cmd->add_option("sentence", sentence)->required();

    auto* eval_cmd = app.add_subcommand("eval", "score a sentence-pair dataset");
    eval_cmd->add_option("--grammar", grammar_path)->required();
    eval_cmd->add_option("--model", model_path)->required();
    eval_cmd->add_option("--dataset", dataset_path)->required();
    eval_cmd->add_option("--composers", composers);
    eval_cmd->add_flag("--pretty", pretty);
    eval_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (parse_cmd->parsed())
            return cmd_parse(grammar_path, logic_name, sentence, pretty, out_path);
        if (diagram_cmd->parsed())
            return cmd_diagram(grammar_path, logic_name, sentence, out_path);
        if (build_model_cmd->parsed())
            return cmd_build_model(corpus_path, basis_size, window, weighting, out_path);
        if (build_verbs_cmd->parsed())
            return cmd_build_verbs(model_path, triples_path, method, out_path);
        if (meaning_cmd->parsed())
            return cmd_meaning(grammar_path, model_path, logic_name, sentence,
                               method.empty() ? std::nullopt
                                              : std::optional<std::string>(method),
                               emit_plan, pretty, out_path);
        if (eval_cmd->parsed())
            return cmd_eval(grammar_path, model_path, dataset_path, composers, pretty, out_path);
    } catch (const discocat::UngrammaticalError& e) {
        std::cerr << e.what() << "\n";
        return kExitUngrammatical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
