#include "discocat/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace discocat {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EvalError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

// First word carrying a lexicon entry whose type produces a designated
// (sentence-like) factor; used to pick the verb for the baseline and to
// sanity-check the cat composers.
std::optional<std::string> find_verb(const std::vector<std::string>& words,
                                     const Grammar& grammar) {
    std::set<std::string> designated(grammar.designated().begin(), grammar.designated().end());
    for (const auto& w : words) {
        for (const auto& entry : grammar.lookup(w)) {
            auto factors = lambek_to_pregroup(entry.type).factors;
            if (factors.size() < 2) continue;
            for (const auto& f : factors)
                if (designated.count(f.base.name)) return w;
        }
    }
    return std::nullopt;
}

std::optional<Tensor> pointwise_compose(const std::vector<std::string>& words,
                                        const VectorSpaceModel& model, bool multiply,
                                        std::string& note) {
    std::optional<Tensor> acc;
    for (const auto& w : words) {
        auto it = model.word_vectors.find(w);
        if (it == model.word_vectors.end()) {
            note = "missing word vector for '" + w + "'";
            return std::nullopt;
        }
        if (!acc)
            acc = it->second;
        else
            acc = multiply ? hadamard(*acc, it->second) : add(*acc, it->second);
    }
    return acc;
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) j++;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::vector<SentencePair> pairs_from_text(const std::string& text) {
    std::vector<SentencePair> pairs;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 3)
            throw EvalError("dataset line " + std::to_string(lineno) +
                            ": expected sentence1<TAB>sentence2<TAB>score<TAB>tag");
        SentencePair p;
        p.sentence1 = tokenize(cols[0]);
        p.sentence2 = tokenize(cols[1]);
        try {
            p.human_score = std::stod(cols[2]);
        } catch (const std::exception&) {
            throw EvalError("dataset line " + std::to_string(lineno) + ": bad human score '" +
                            cols[2] + "'");
        }
        if (cols.size() >= 4 && !cols[3].empty()) {
            if (cols[3] == "HIGH")
                p.tag = PairTag::High;
            else if (cols[3] == "LOW")
                p.tag = PairTag::Low;
            else
                throw EvalError("dataset line " + std::to_string(lineno) + ": bad tag '" +
                                cols[3] + "'");
        }
        pairs.push_back(std::move(p));
    }
    return pairs;
}

std::vector<SentencePair> load_pairs(const std::string& path) {
    return pairs_from_text(read_file(path));
}

std::string to_string(Composer c) {
    switch (c) {
        case Composer::Add: return "add";
        case Composer::Multiply: return "multiply";
        case Composer::Cat1: return "cat1";
        case Composer::Cat2: return "cat2";
        case Composer::Baseline: return "baseline";
    }
    return "?";
}

Composer composer_from_string(const std::string& name) {
    if (name == "add") return Composer::Add;
    if (name == "multiply") return Composer::Multiply;
    if (name == "cat1") return Composer::Cat1;
    if (name == "cat2") return Composer::Cat2;
    if (name == "baseline") return Composer::Baseline;
    throw EvalError("unknown composer '" + name + "'");
}

std::vector<PairScore> score_pairs(const std::vector<SentencePair>& dataset,
                                   const Grammar& grammar, const VectorSpaceModel& model,
                                   Composer composer) {
    std::vector<PairScore> scores;
    scores.reserve(dataset.size());
    for (const auto& pair : dataset) {
        PairScore score;
        try {
            switch (composer) {
                case Composer::Add:
                case Composer::Multiply: {
                    std::string note;
                    auto v1 = pointwise_compose(pair.sentence1, model,
                                                composer == Composer::Multiply, note);
                    auto v2 = pointwise_compose(pair.sentence2, model,
                                                composer == Composer::Multiply, note);
                    if (!v1 || !v2) {
                        score.note = note;
                        break;
                    }
                    auto c = cosine(*v1, *v2);
                    score.cosine = c.value;
                    score.ok = true;
                    if (c.zero_norm) score.note = "zero-norm sentence vector";
                    break;
                }
                case Composer::Baseline: {
                    auto verb1 = find_verb(pair.sentence1, grammar);
                    auto verb2 = find_verb(pair.sentence2, grammar);
                    if (!verb1 || !verb2) {
                        score.note = "no verb found for the baseline";
                        break;
                    }
                    auto it1 = model.word_vectors.find(*verb1);
                    auto it2 = model.word_vectors.find(*verb2);
                    if (it1 == model.word_vectors.end() || it2 == model.word_vectors.end()) {
                        score.note = "missing verb vector for the baseline";
                        break;
                    }
                    auto c = cosine(it1->second, it2->second);
                    score.cosine = c.value;
                    score.ok = true;
                    if (c.zero_norm) score.note = "zero-norm verb vector";
                    break;
                }
                case Composer::Cat1:
                case Composer::Cat2: {
                    std::string method = composer == Composer::Cat1 ? "cat1" : "cat2";
                    auto m1 = meaning(pair.sentence1, grammar, model, Logic::Pregroup, method);
                    auto m2 = meaning(pair.sentence2, grammar, model, Logic::Pregroup, method);
                    if (m1.vector.shape() != m2.vector.shape()) {
                        score.note = "sentence vectors live in different spaces";
                        break;
                    }
                    auto c = cosine(m1.vector, m2.vector);
                    score.cosine = c.value;
                    score.ok = true;
                    if (c.zero_norm) score.note = "zero-norm sentence vector";
                    break;
                }
            }
        } catch (const std::exception& e) {
            score.ok = false;
            score.note = e.what();
        }
        scores.push_back(std::move(score));
    }
    return scores;
}

double spearman_rho(const std::vector<double>& model_scores,
                    const std::vector<double>& human_scores) {
    if (model_scores.size() != human_scores.size())
        throw EvalError("spearman_rho: length mismatch " + std::to_string(model_scores.size()) +
                        " vs " + std::to_string(human_scores.size()));
    const std::size_t n = model_scores.size();
    if (n == 0) throw EvalError("spearman_rho: empty input");

    auto rx = average_ranks(model_scores);
    auto ry = average_ranks(human_scores);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw EvalError("spearman_rho: undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

Report evaluate(const std::vector<SentencePair>& dataset, const Grammar& grammar,
                const VectorSpaceModel& model, const std::vector<Composer>& composers) {
    Report report;
    for (Composer composer : composers) {
        auto scores = score_pairs(dataset, grammar, model, composer);
        ReportRow row;
        row.composer = composer;

        std::vector<double> model_scores, human_scores;
        double high_sum = 0.0, low_sum = 0.0;
        std::size_t high_n = 0, low_n = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (!scores[i].ok) {
                row.skipped++;
                report.warnings.push_back(to_string(composer) + ": skipped pair " +
                                          std::to_string(i + 1) + " (" + scores[i].note + "): " +
                                          join_words(dataset[i].sentence1) + " / " +
                                          join_words(dataset[i].sentence2));
                continue;
            }
            row.scored++;
            model_scores.push_back(scores[i].cosine);
            human_scores.push_back(dataset[i].human_score);
            if (dataset[i].tag == PairTag::High) {
                high_sum += scores[i].cosine;
                high_n++;
            } else if (dataset[i].tag == PairTag::Low) {
                low_sum += scores[i].cosine;
                low_n++;
            }
        }
        if (high_n) row.high_mean = high_sum / static_cast<double>(high_n);
        if (low_n) row.low_mean = low_sum / static_cast<double>(low_n);
        try {
            row.rho = spearman_rho(model_scores, human_scores);
        } catch (const EvalError& e) {
            row.rho_note = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string report_to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json jr;
        jr["composer"] = to_string(row.composer);
        jr["high"] = row.high_mean ? nlohmann::ordered_json(*row.high_mean)
                                   : nlohmann::ordered_json(nullptr);
        jr["low"] = row.low_mean ? nlohmann::ordered_json(*row.low_mean)
                                 : nlohmann::ordered_json(nullptr);
        jr["rho"] = row.rho ? nlohmann::ordered_json(*row.rho) : nlohmann::ordered_json(nullptr);
        if (!row.rho_note.empty()) jr["rho_error"] = row.rho_note;
        jr["scored"] = row.scored;
        jr["skipped"] = row.skipped;
        j["rows"].push_back(jr);
    }
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& report) {
    auto cell = [](std::optional<double> v) {
        char buf[32];
        if (!v) return std::string("n/a");
        std::snprintf(buf, sizeof(buf), "%.4f", *v);
        return std::string(buf);
    };
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %7s %8s\n", "model", "high", "low",
                  "rho", "scored", "skipped");
    out += line;
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %7zu %8zu\n",
                      to_string(row.composer).c_str(), cell(row.high_mean).c_str(),
                      cell(row.low_mean).c_str(), cell(row.rho).c_str(), row.scored,
                      row.skipped);
        out += line;
    }
    for (const auto& w : report.warnings) out += "warning: " + w + "\n";
    return out;
}

}  // namespace discocat
