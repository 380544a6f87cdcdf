#include "discocat/distributional.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace discocat {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

ordered_json tensor_json(const Tensor& t) {
    ordered_json j;
    j["shape"] = t.shape();
    j["data"] = t.data();
    return j;
}

Tensor tensor_from(const nlohmann::json& j) {
    return Tensor::from_data(j.at("shape").get<std::vector<std::size_t>>(),
                             j.at("data").get<std::vector<double>>());
}

Tensor matrix_from(const nlohmann::json& j) {
    return Tensor::from_matrix(j.get<std::vector<std::vector<double>>>());
}

ordered_json matrix_json(const Tensor& m) {
    ordered_json rows = ordered_json::array();
    std::size_t r = m.shape()[0], c = m.shape()[1];
    for (std::size_t i = 0; i < r; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < c; ++k) row.push_back(m.data()[i * c + k]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

Corpus corpus_from_text(const std::string& text) {
    Corpus corpus;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> tokens;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(lower(tok));
        if (!tokens.empty()) corpus.lines.push_back(std::move(tokens));
    }
    return corpus;
}

Corpus load_corpus(const std::string& path) { return corpus_from_text(read_file(path)); }

std::vector<DependencyTriple> triples_from_text(const std::string& text) {
    std::vector<DependencyTriple> out;
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
        if (cols.size() < 2 || cols[0].empty() || cols[1].empty())
            throw ModelError("triples line " + std::to_string(lineno) +
                             ": expected subject<TAB>verb<TAB>object");
        DependencyTriple t;
        t.subject = lower(cols[0]);
        t.verb = lower(cols[1]);
        if (cols.size() >= 3 && !cols[2].empty()) t.object = lower(cols[2]);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<DependencyTriple> load_triples(const std::string& path) {
    return triples_from_text(read_file(path));
}

std::vector<std::string> build_basis(const Corpus& corpus, std::size_t size) {
    if (size < 1) throw ModelError("basis size must be >= 1");
    std::map<std::string, std::size_t> freq;
    for (const auto& line : corpus.lines)
        for (const auto& tok : line) freq[tok]++;
    if (freq.empty()) throw ModelError("empty corpus");
    std::vector<std::pair<std::string, std::size_t>> items(freq.begin(), freq.end());
    // Most frequent first; alphabetical among equals (map order is
    // already alphabetical, stable_sort preserves it).
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> basis;
    for (const auto& [word, count] : items) {
        if (basis.size() == size) break;
        basis.push_back(word);
    }
    return basis;
}

std::map<std::string, std::vector<double>> cooccurrence(const Corpus& corpus,
                                                        const std::vector<std::string>& basis,
                                                        std::size_t window) {
    if (window < 1) throw ModelError("window must be >= 1");
    std::map<std::string, std::size_t> basis_index;
    for (std::size_t i = 0; i < basis.size(); ++i) basis_index[basis[i]] = i;

    std::map<std::string, std::vector<double>> counts;
    for (const auto& line : corpus.lines) {
        for (std::size_t t = 0; t < line.size(); ++t) {
            auto& vec = counts.try_emplace(line[t], basis.size(), 0.0).first->second;
            std::size_t lo = t > window ? t - window : 0;
            std::size_t hi = std::min(line.size(), t + window + 1);
            for (std::size_t u = lo; u < hi; ++u) {
                if (u == t) continue;
                auto it = basis_index.find(line[u]);
                if (it != basis_index.end()) vec[it->second] += 1.0;
            }
        }
    }
    return counts;
}

std::map<std::string, std::vector<double>> tfidf(
    const std::map<std::string, std::vector<double>>& counts, const Corpus& corpus,
    const std::vector<std::string>& basis) {
    const double docs = static_cast<double>(corpus.lines.size());
    std::vector<double> df(basis.size(), 0.0);
    std::map<std::string, std::size_t> basis_index;
    for (std::size_t i = 0; i < basis.size(); ++i) basis_index[basis[i]] = i;
    for (const auto& line : corpus.lines) {
        std::vector<bool> seen(basis.size(), false);
        for (const auto& tok : line) {
            auto it = basis_index.find(tok);
            if (it != basis_index.end() && !seen[it->second]) {
                seen[it->second] = true;
                df[it->second] += 1.0;
            }
        }
    }
    std::vector<double> idf(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        idf[i] = df[i] > 0.0 ? std::log(docs / df[i]) : 0.0;

    std::map<std::string, std::vector<double>> weighted;
    for (const auto& [word, vec] : counts) {
        std::vector<double> w(vec.size());
        for (std::size_t i = 0; i < vec.size(); ++i) w[i] = vec[i] * idf[i];
        weighted[word] = std::move(w);
    }
    return weighted;
}

VectorSpaceModel build_model(const Corpus& corpus, std::size_t basis_size, std::size_t window,
                             const std::string& weighting) {
    if (weighting != "tfidf" && weighting != "raw")
        throw ModelError("unknown weighting '" + weighting + "' (expected tfidf or raw)");
    VectorSpaceModel m;
    m.basis = build_basis(corpus, basis_size);
    m.window = window;
    m.weighting = weighting;
    auto counts = cooccurrence(corpus, m.basis, window);
    auto values = weighting == "tfidf" ? tfidf(counts, corpus, m.basis) : counts;
    for (auto& [word, vec] : values)
        m.word_vectors[word] = Tensor::from_data({m.basis.size()}, std::move(vec));
    m.spaces = {{"N", m.basis.size()}};
    m.assignment = {{"n", "N"}, {"s", "S"}, {"j", "S"}, {"sigma", "N"}};
    return m;
}

Tensor verb_tensor_cat1(const std::string& verb, const std::vector<DependencyTriple>& triples,
                        const VectorSpaceModel& model, std::size_t arity) {
    if (arity != 1 && arity != 2)
        throw ModelError("cat1 supports arity 1 or 2, got " + std::to_string(arity));
    auto vec_of = [&](const std::string& w) -> const Tensor& {
        auto it = model.word_vectors.find(w);
        if (it == model.word_vectors.end())
            throw ModelError("no context vector for '" + w + "'");
        return it->second;
    };
    std::optional<Tensor> sum;
    for (const auto& t : triples) {
        if (t.verb != verb) continue;
        if ((t.object.has_value() ? 2u : 1u) != arity) continue;
        Tensor term = arity == 1 ? vec_of(t.subject)
                                 : tensor_product(vec_of(t.subject), vec_of(*t.object));
        sum = sum ? add(*sum, term) : term;
    }
    if (!sum)
        throw ModelError("verb '" + verb + "' has no arity-" + std::to_string(arity) +
                         " occurrences in the triples");
    return *sum;
}

Tensor verb_tensor_cat2(const std::string& verb, const VectorSpaceModel& model,
                        std::size_t arity) {
    auto it = model.word_vectors.find(verb);
    if (it == model.word_vectors.end())
        throw ModelError("no context vector for verb '" + verb + "'");
    return kronecker_power(it->second, arity);
}

Tensor embed_diagonal(const Tensor& t) {
    const std::size_t k = t.rank();
    if (k < 1) throw ModelError("embed_diagonal needs a rank >= 1 relational tensor");
    const std::size_t n = t.shape()[0];
    for (std::size_t d : t.shape())
        if (d != n) throw ModelError("embed_diagonal: relational axes must share one dimension");

    std::size_t s_dim = 1;
    for (std::size_t i = 0; i < k; ++i) s_dim *= n;

    // Output axes: [subject-N, S, object-N, ...]; the first relational
    // axis couples with the leading N axis, the rest follow the S axis.
    std::vector<std::size_t> out_shape;
    out_shape.push_back(n);
    out_shape.push_back(s_dim);
    for (std::size_t i = 1; i < k; ++i) out_shape.push_back(n);
    Tensor out = Tensor::zeros(out_shape);

    std::vector<std::size_t> idx(k, 0);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        // idx enumerates the relational index (i, j, ...); the sentence
        // axis receives the row-major flattening of that same index.
        std::vector<std::size_t> out_idx;
        out_idx.push_back(idx[0]);
        out_idx.push_back(flat);
        for (std::size_t i = 1; i < k; ++i) out_idx.push_back(idx[i]);
        out.at(out_idx) = t.data()[flat];
        for (std::size_t i = k; i-- > 0;) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
    }
    return out;
}

Tensor embed_diagonal(const Tensor& t, const std::vector<std::size_t>& target_shape) {
    Tensor out = embed_diagonal(t);
    if (out.shape() != target_shape)
        throw ModelError("embed_diagonal: target shape does not match the relational tensor");
    return out;
}

void add_verb_tensors(VectorSpaceModel& model, const std::vector<DependencyTriple>& triples,
                      const std::string& method) {
    if (method != "cat1" && method != "cat2")
        throw ModelError("unknown verb method '" + method + "' (expected cat1 or cat2)");
    std::map<std::string, std::size_t> arities;
    for (const auto& t : triples) {
        std::size_t arity = t.object.has_value() ? 2 : 1;
        auto [it, fresh] = arities.try_emplace(t.verb, arity);
        if (!fresh) it->second = std::max(it->second, arity);
    }
    for (const auto& [verb, arity] : arities) {
        Tensor tensor = method == "cat1" ? verb_tensor_cat1(verb, triples, model, arity)
                                         : verb_tensor_cat2(verb, model, arity);
        model.verb_tensors[{verb, arity, method}] = std::move(tensor);
    }
}

// --- Model JSON ----------------------------------------------------------

VectorSpaceModel parse_model(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("model parse error: ") + e.what());
    }
    try {
        VectorSpaceModel m;
        if (j.contains("basis")) m.basis = j["basis"].get<std::vector<std::string>>();
        if (j.contains("vectors"))
            for (const auto& [word, arr] : j["vectors"].items())
                m.word_vectors[word] =
                    Tensor::from_data({arr.size()}, arr.get<std::vector<double>>());
        if (j.contains("tensors"))
            for (const auto& [word, jt] : j["tensors"].items())
                m.word_tensors[word] = tensor_from(jt);
        if (j.contains("verbs"))
            for (const auto& jv : j["verbs"]) {
                VerbKey key{jv.at("word").get<std::string>(),
                            jv.at("arity").get<std::size_t>(),
                            jv.at("method").get<std::string>()};
                m.verb_tensors[key] = tensor_from(jv.at("tensor"));
            }
        if (j.contains("morphisms"))
            for (const auto& [word, jm] : j["morphisms"].items()) {
                MorphismBinding b{matrix_from(jm.at("s_matrix")), std::nullopt};
                if (jm.contains("n_matrix")) b.n_matrix = matrix_from(jm["n_matrix"]);
                m.morphisms[word] = std::move(b);
            }
        const auto& meta = j.at("meta");
        m.window = meta.at("window").get<std::size_t>();
        m.weighting = meta.at("weighting").get<std::string>();
        m.assignment = meta.at("assignment").get<std::map<std::string, std::string>>();
        m.spaces = meta.at("spaces").get<std::map<std::string, std::size_t>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed model: ") + e.what());
    } catch (const TensorError& e) {
        throw ModelError(std::string("bad tensor in model: ") + e.what());
    }
}

VectorSpaceModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string save_model(const VectorSpaceModel& m) {
    ordered_json j;
    j["basis"] = m.basis;
    j["vectors"] = ordered_json::object();
    for (const auto& [word, t] : m.word_vectors) j["vectors"][word] = t.data();
    j["tensors"] = ordered_json::object();
    for (const auto& [word, t] : m.word_tensors) j["tensors"][word] = tensor_json(t);
    j["verbs"] = ordered_json::array();
    for (const auto& [key, t] : m.verb_tensors) {
        ordered_json jv;
        jv["word"] = key.word;
        jv["arity"] = key.arity;
        jv["method"] = key.method;
        jv["tensor"] = tensor_json(t);
        j["verbs"].push_back(jv);
    }
    j["morphisms"] = ordered_json::object();
    for (const auto& [word, b] : m.morphisms) {
        ordered_json jm;
        jm["s_matrix"] = matrix_json(b.s_matrix);
        if (b.n_matrix) jm["n_matrix"] = matrix_json(*b.n_matrix);
        j["morphisms"][word] = jm;
    }
    ordered_json meta;
    meta["window"] = m.window;
    meta["weighting"] = m.weighting;
    meta["assignment"] = m.assignment;
    meta["spaces"] = m.spaces;
    j["meta"] = meta;
    return j.dump(2) + "\n";
}

}  // namespace discocat
