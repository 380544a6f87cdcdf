#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "discocat/derivation.hpp"
#include "discocat/distributional.hpp"
#include "discocat/parsing.hpp"
#include "discocat/reduction.hpp"
#include "discocat/tensor.hpp"
#include "discocat/types.hpp"

namespace discocat {

struct SemanticsError : std::runtime_error {
    explicit SemanticsError(const std::string& what) : std::runtime_error(what) {}
};

// A negative linguistic result, distinct from operational failures.
struct UngrammaticalError : SemanticsError {
    explicit UngrammaticalError(const std::string& what) : SemanticsError(what) {}
};

// Maps basic types onto vector-space dimensions through space labels,
// so aliased types (n and sigma to N, s and j to S) share dimensions.
struct SpaceAssignment {
    std::map<std::string, std::string> space_of;   // basic type -> space label
    std::map<std::string, std::size_t> dimension;  // space label -> dim

    static SpaceAssignment standard(std::size_t noun_dim, std::size_t sentence_dim);
    static SpaceAssignment from_model(const VectorSpaceModel& model);

    std::size_t dim_of(const std::string& basic_name) const;  // throws on unassigned
    const std::string& label_of(const std::string& basic_name) const;
};

// Vector-space shape of a type.  Word tensors are stored in the layout
// of the pregroup translation of their type, one axis per simple
// factor, so both semantic paths read the same data:
//   Q(1) = [] (scalar), Q(a . b) = Q(a) ++ Q(b),
//   Q(a -o b) = Q(a)^r ++ Q(b),  Q(a o- b) = Q(a) ++ Q(b)^l,
// where (-)^r/(-)^l reverse the factor order of a compound operand.
std::vector<std::size_t> quantise_type(const LambekType& t, const SpaceAssignment& sa);
std::vector<std::size_t> quantise_pregroup(const PregroupType& t, const SpaceAssignment& sa);

// The axis permutation from the in-order ("reading") layout of a Lambek
// type to the stored pregroup layout: entry k is the storage axis of
// in-order axis k.  Identity except inside implication arguments, whose
// factors the adjoint laws reverse.
std::vector<std::size_t> pregroup_axis_order(const LambekType& t);

// --- Contraction plans --------------------------------------------------

struct PlanStep {
    enum class Kind { LoadWord, TensorJoin, Contract, ApplyMatrix, LoadCap, Transpose };
    Kind kind;
    std::size_t slot = 0;                // LoadWord
    std::size_t axis_i = 0, axis_j = 0;  // Contract
    std::string matrix;                  // ApplyMatrix: named matrix
    std::size_t axis = 0;                // ApplyMatrix
    std::size_t dim = 0;                 // LoadCap
    std::vector<std::size_t> perm;       // Transpose
};

// An executable tensor program: a stack machine where LoadWord/LoadCap
// push, TensorJoin joins the two top tensors, and the remaining steps
// rewrite the top of the stack.  Executing a plan on tensors of the
// declared input shapes yields the declared output shape.
struct ContractionPlan {
    std::vector<PlanStep> steps;
    std::vector<std::vector<std::size_t>> input_shapes;  // per word slot
    std::vector<std::size_t> output_shape;
};

std::string plan_to_json(const ContractionPlan& plan);

Tensor execute_plan(const ContractionPlan& plan, const std::vector<Tensor>& words,
                    const std::map<std::string, Tensor>& matrices = {});

// Compiles a pregroup reduction over the given word types: every link
// becomes a Contract step between the corresponding word-tensor axes
// and residual axes become output axes in input order.
ContractionPlan compile_pregroup(const Reduction& r,
                                 const std::vector<PregroupType>& word_types,
                                 const SpaceAssignment& sa);

// Compiles a Lambek derivation whose domain is the product of the word
// types.  Evaluations contract argument axes against function axes;
// curry and name constructors cost nothing unless one of their
// introduced wire pairs survives to the output, in which case a cap
// (identity state) is materialized.
ContractionPlan compile_lambek(const Derivation& d, const std::vector<LambekType>& word_types,
                               const SpaceAssignment& sa);

// The name of a linear map m : Q(a) -> Q(b), i.e. the state in
// Q(a) (x) Q(b) whose evaluation against v yields m(v).  The rank-2
// overload takes m as [out, in] and returns the [in, out] state; the
// shaped overload reshapes to in_shape ++ out_shape.
Tensor name_tensor(const Tensor& m);
Tensor name_tensor(const Tensor& m, const std::vector<std::size_t>& in_shape,
                   const std::vector<std::size_t>& out_shape);

// --- Sentence meanings ----------------------------------------------------

struct MeaningResult {
    Tensor vector;
    SentenceParse parse;
    ContractionPlan plan;
    std::vector<std::string> words;
};

// Parses the sentence under the chosen logic, binds a tensor to every
// word (explicit tensors, morphism names, verb tensors when `method` is
// given, then plain word vectors), compiles and executes the plan.
// Word order is threaded through the slot list, so the symmetric tensor
// semantics never permutes user-visible word positions.
MeaningResult meaning(const std::vector<std::string>& words, const Grammar& grammar,
                      const VectorSpaceModel& model, Logic logic,
                      const std::optional<std::string>& method = std::nullopt);

// The tensor bound to one word for a given chosen type, as used by
// `meaning`; exposed for the evaluation harness.  `designated` names
// the sentence types, used to recognize verb slots when `method` asks
// for constructed verb tensors.
Tensor bind_word(const std::string& word, const LambekType& type,
                 const VectorSpaceModel& model, Logic logic, const SpaceAssignment& sa,
                 const std::optional<std::string>& method,
                 const std::vector<std::string>& designated);

// Number of noun-space argument slots of a verb-like type (factors not
// assigned to the sentence space); 0 when the type has no sentence-space
// factor at all.
std::size_t verb_arity(const LambekType& type, const SpaceAssignment& sa,
                       const std::vector<std::string>& designated);

}  // namespace discocat
