#include "discocat/lexicon.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace discocat {

namespace {

using ordered_json = nlohmann::ordered_json;

void collect_basics(const LambekType& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
            out.insert(t.basic_name());
            return;
        case LambekType::Kind::Unit:
            return;
        default:
            collect_basics(t.lhs(), out);
            collect_basics(t.rhs(), out);
    }
}

// nlohmann reports byte offsets; grammar files are small enough to
// rescan for a line/column.
std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Grammar::Grammar(std::vector<std::string> basic_types,
                 std::vector<std::string> designated,
                 std::vector<LexiconEntry> entries)
    : basic_types_(std::move(basic_types)),
      designated_(std::move(designated)),
      entries_(std::move(entries)) {
    std::set<std::string> declared(basic_types_.begin(), basic_types_.end());
    if (designated_.empty())
        throw GrammarError("designated type set must be non-empty");
    for (const auto& d : designated_)
        if (!declared.count(d))
            throw GrammarError("designated type '" + d + "' is not a declared basic type");
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        std::set<std::string> used;
        collect_basics(entries_[i].type, used);
        for (const auto& b : used)
            if (!declared.count(b))
                throw GrammarError("entry for '" + entries_[i].word +
                                   "' uses undeclared basic type '" + b + "'");
        auto key = std::make_pair(entries_[i].word, to_string(entries_[i].type));
        if (!seen.insert(key).second)
            throw GrammarError("duplicate entry for '" + entries_[i].word + "' with type '" +
                               key.second + "'");
        index_[entries_[i].word].push_back(i);
    }
}

std::vector<LexiconEntry> Grammar::lookup(const std::string& word) const {
    std::vector<LexiconEntry> out;
    auto it = index_.find(word);
    if (it == index_.end()) return out;
    for (std::size_t i : it->second) out.push_back(entries_[i]);
    return out;
}

bool Grammar::is_basic_type(const std::string& name) const {
    for (const auto& b : basic_types_)
        if (b == name) return true;
    return false;
}

Grammar parse_grammar(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GrammarError("grammar parse error at " + line_col(json_text, e.byte) + ": " +
                           e.what());
    }
    try {
        std::vector<std::string> basics = j.at("basic_types").get<std::vector<std::string>>();
        std::vector<std::string> designated = j.at("designated").get<std::vector<std::string>>();
        std::vector<LexiconEntry> entries;
        for (const auto& e : j.at("entries")) {
            std::string word = e.at("word").get<std::string>();
            std::string type_text = e.at("type").get<std::string>();
            LambekType type = parse_lambek_type(type_text);
            entries.push_back({std::move(word), std::move(type)});
        }
        return Grammar(std::move(basics), std::move(designated), std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw GrammarError(std::string("malformed grammar: ") + e.what());
    } catch (const TypeError& e) {
        throw GrammarError(std::string("bad type in grammar: ") + e.what());
    }
}

Grammar load_grammar(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GrammarError("cannot open grammar file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_grammar(ss.str());
}

std::string save_grammar(const Grammar& g) {
    ordered_json j;
    j["basic_types"] = g.basic_types();
    j["designated"] = g.designated();
    j["entries"] = ordered_json::array();
    for (const auto& e : g.entries()) {
        ordered_json je;
        je["word"] = e.word;
        je["type"] = to_string(e.type);
        j["entries"].push_back(je);
    }
    return j.dump(2) + "\n";
}

}  // namespace discocat
