#pragma once

#include <optional>
#include <string>
#include <vector>

#include "discocat/derivation.hpp"
#include "discocat/lexicon.hpp"
#include "discocat/prover.hpp"
#include "discocat/reduction.hpp"
#include "discocat/types.hpp"

namespace discocat {

enum class Logic { Pregroup, Lambek };

std::string to_string(Logic logic);
Logic logic_from_string(const std::string& name);

// A successful grammaticality witness: the lexicon entries chosen for
// each word (alternatives are tried by backtracking in declaration
// order) plus the reduction or derivation for the chosen logic.
struct SentenceParse {
    std::vector<LexiconEntry> entries;
    BasicType target;
    std::optional<Reduction> reduction;    // pregroup logic
    std::optional<Derivation> derivation;  // lambek logic
};

// Lowercased whitespace tokenization, matching lexicon keys.
std::vector<std::string> tokenize(const std::string& sentence);

// Tries every combination of lexicon entries (leftmost word varying
// slowest) against every designated target type in declaration order;
// returns the first combination accepted by the chosen logic.
// Nullopt means ungrammatical.  Throws GrammarError when a word has no
// lexicon entry at all.
std::optional<SentenceParse> parse_sentence(const std::vector<std::string>& words,
                                            const Grammar& grammar, Logic logic);

}  // namespace discocat
