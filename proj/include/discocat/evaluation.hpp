#pragma once

#include <optional>
#include <string>
#include <vector>

#include "discocat/distributional.hpp"
#include "discocat/lexicon.hpp"
#include "discocat/semantics.hpp"

namespace discocat {

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

enum class PairTag { None, High, Low };

struct SentencePair {
    std::vector<std::string> sentence1;
    std::vector<std::string> sentence2;
    double human_score = 0.0;  // 1-7 scale
    PairTag tag = PairTag::None;
};

// TSV `sentence1<TAB>sentence2<TAB>human_score<TAB>tag` with tag one of
// HIGH, LOW or empty.
std::vector<SentencePair> load_pairs(const std::string& path);
std::vector<SentencePair> pairs_from_text(const std::string& text);

enum class Composer { Add, Multiply, Cat1, Cat2, Baseline };

std::string to_string(Composer c);
Composer composer_from_string(const std::string& name);

struct PairScore {
    double cosine = 0.0;
    bool ok = false;
    std::string note;  // reason when skipped
};

// One cosine per pair in dataset order.  add/multiply compose word
// vectors pointwise; cat1/cat2 run the full grammatical composition
// with constructed verb tensors; baseline compares the two verbs'
// context vectors directly.  Rows that fail (unparseable sentence,
// missing vector) come back with ok=false and a note instead of
// aborting the run.
std::vector<PairScore> score_pairs(const std::vector<SentencePair>& dataset,
                                   const Grammar& grammar, const VectorSpaceModel& model,
                                   Composer composer);

// Spearman's rank correlation: Pearson correlation of the rank vectors,
// ties receiving average ranks.  Throws EvalError on a length mismatch
// or when either input is constant (the coefficient is undefined).
double spearman_rho(const std::vector<double>& model_scores,
                    const std::vector<double>& human_scores);

struct ReportRow {
    Composer composer;
    std::optional<double> high_mean;  // absent when no HIGH rows scored
    std::optional<double> low_mean;
    std::optional<double> rho;        // absent when undefined
    std::string rho_note;
    std::size_t scored = 0;
    std::size_t skipped = 0;
};

struct Report {
    std::vector<ReportRow> rows;
    std::vector<std::string> warnings;  // per-row skip messages
};

Report evaluate(const std::vector<SentencePair>& dataset, const Grammar& grammar,
                const VectorSpaceModel& model, const std::vector<Composer>& composers);

std::string report_to_json(const Report& report);
std::string report_to_text(const Report& report);

}  // namespace discocat
