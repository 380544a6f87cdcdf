#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "discocat/types.hpp"

namespace discocat {

struct GrammarError : std::runtime_error {
    explicit GrammarError(const std::string& what) : std::runtime_error(what) {}
};

struct LexiconEntry {
    std::string word;
    LambekType type;
};

// A type dictionary over a declared basic-type set, plus the designated
// sentence types.  A word may carry several entries ("kill" is both a
// transitive verb and an infinitive); lookup preserves file order and
// parsers try the alternatives by backtracking.
//
// Immutable after load; safe to share across threads.
class Grammar {
public:
    Grammar(std::vector<std::string> basic_types,
            std::vector<std::string> designated,
            std::vector<LexiconEntry> entries);

    const std::vector<std::string>& basic_types() const { return basic_types_; }
    const std::vector<std::string>& designated() const { return designated_; }
    const std::vector<LexiconEntry>& entries() const { return entries_; }

    // All entries for the word in file order; empty if unknown.
    std::vector<LexiconEntry> lookup(const std::string& word) const;

    bool is_basic_type(const std::string& name) const;

private:
    std::vector<std::string> basic_types_;
    std::vector<std::string> designated_;
    std::vector<LexiconEntry> entries_;
    std::map<std::string, std::vector<std::size_t>> index_;
};

// Loads a grammar from its JSON form:
//   { "basic_types": ["n","s"], "designated": ["s"],
//     "entries": [{"word": "men", "type": "n"}, ...] }
// Throws GrammarError with line/column on malformed JSON, undeclared
// basic types, or duplicate identical entries.
Grammar load_grammar(const std::string& path);
Grammar parse_grammar(const std::string& json_text);

// Canonical byte rendering; load followed by save is the identity on
// canonically formatted files.
std::string save_grammar(const Grammar& g);

}  // namespace discocat
