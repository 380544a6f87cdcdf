#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "discocat/tensor.hpp"

namespace discocat {

struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// One sentence per line; tokens are whitespace-split and lowercased.
// Lines double as documents for the IDF statistics.
struct Corpus {
    std::vector<std::vector<std::string>> lines;
};

Corpus load_corpus(const std::string& path);
Corpus corpus_from_text(const std::string& text);

struct DependencyTriple {
    std::string subject;
    std::string verb;
    std::optional<std::string> object;  // absent for intransitive occurrences
};

// TSV `subject<TAB>verb<TAB>object`, object column empty for
// intransitive rows.
std::vector<DependencyTriple> load_triples(const std::string& path);
std::vector<DependencyTriple> triples_from_text(const std::string& text);

struct VerbKey {
    std::string word;
    std::size_t arity;
    std::string method;  // "cat1" or "cat2"

    friend auto operator<=>(const VerbKey&, const VerbKey&) = default;
};

// A word whose meaning is the name of a linear map (e.g. "do", "not").
// s_matrix acts on the sentence space; n_matrix optionally extends the
// map over the noun-indexed structure, which only the monoidal path
// honours (the compact path always applies the map to the sentence
// space alone).
struct MorphismBinding {
    Tensor s_matrix;
    std::optional<Tensor> n_matrix;
};

struct VectorSpaceModel {
    std::vector<std::string> basis;
    std::map<std::string, Tensor> word_vectors;  // rank 1, dim == |basis| for corpus models
    std::map<std::string, Tensor> word_tensors;  // explicit higher-rank bindings
    std::map<VerbKey, Tensor> verb_tensors;      // relational shape (N, NxN, ...)
    std::map<std::string, MorphismBinding> morphisms;

    std::size_t window = 5;
    std::string weighting = "tfidf";
    // Space assignment metadata: basic type -> space label -> dimension.
    std::map<std::string, std::string> assignment;  // e.g. {"n":"N","s":"S",...}
    std::map<std::string, std::size_t> spaces;      // e.g. {"N":2,"S":2}
};

VectorSpaceModel load_model(const std::string& path);
VectorSpaceModel parse_model(const std::string& json_text);
std::string save_model(const VectorSpaceModel& m);

// The `size` most frequent tokens of the corpus, ties broken
// alphabetically.  Throws on an empty corpus.
std::vector<std::string> build_basis(const Corpus& corpus, std::size_t size);

// Windowed co-occurrence counts: for every token, how often each basis
// word appears within k positions on either side, never crossing a
// line boundary.  Words absent from the corpus are absent from the map.
std::map<std::string, std::vector<double>> cooccurrence(const Corpus& corpus,
                                                        const std::vector<std::string>& basis,
                                                        std::size_t window);

// weight(w, b) = tf(w, b) * log(D / df(b)) with lines as documents and
// the raw window count as tf.
std::map<std::string, std::vector<double>> tfidf(
    const std::map<std::string, std::vector<double>>& counts, const Corpus& corpus,
    const std::vector<std::string>& basis);

// Full model build: basis, counts, weighting ("tfidf" or "raw"), and the
// standard space assignment with N = |basis|.
VectorSpaceModel build_model(const Corpus& corpus, std::size_t basis_size, std::size_t window,
                             const std::string& weighting);

// Argument-sum construction: sums subject vectors (arity 1) or
// subject (x) object dyads (arity 2) over the verb's occurrences.
// Throws when the verb never occurs at the arity.
Tensor verb_tensor_cat1(const std::string& verb, const std::vector<DependencyTriple>& triples,
                        const VectorSpaceModel& model, std::size_t arity);

// Kronecker-power construction from the verb's own context vector.
Tensor verb_tensor_cat2(const std::string& verb, const VectorSpaceModel& model,
                        std::size_t arity);

// Embeds a relational tensor (shape N^k) into the verb shape prescribed
// by the type assignment, coupling the argument axes with the
// sentence-space axes on the diagonal:
//   arity 1:  u[i, a]         = t[i]     iff a == i
//   arity 2:  u[i, (a,b), j]  = t[i, j]  iff a == i and b == j
// with the sentence space flattened row-major.  The optional target
// shape is validated when supplied.
Tensor embed_diagonal(const Tensor& t);
Tensor embed_diagonal(const Tensor& t, const std::vector<std::size_t>& target_shape);

// Adds verb tensors for every verb occurring in the triples file.
void add_verb_tensors(VectorSpaceModel& model, const std::vector<DependencyTriple>& triples,
                      const std::string& method);

}  // namespace discocat
