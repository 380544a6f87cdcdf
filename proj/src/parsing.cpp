#include "discocat/parsing.hpp"

#include <algorithm>
#include <cctype>

namespace discocat {

std::string to_string(Logic logic) {
    return logic == Logic::Pregroup ? "pregroup" : "lambek";
}

Logic logic_from_string(const std::string& name) {
    if (name == "pregroup") return Logic::Pregroup;
    if (name == "lambek") return Logic::Lambek;
    throw GrammarError("unknown logic '" + name + "' (expected pregroup or lambek)");
}

std::vector<std::string> tokenize(const std::string& sentence) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : sentence) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) words.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

std::optional<SentenceParse> parse_sentence(const std::vector<std::string>& words,
                                            const Grammar& grammar, Logic logic) {
    if (words.empty()) return std::nullopt;
    std::vector<std::vector<LexiconEntry>> options;
    for (const auto& w : words) {
        auto entries = grammar.lookup(w);
        if (entries.empty()) throw GrammarError("word '" + w + "' is not in the lexicon");
        options.push_back(std::move(entries));
    }

    // Odometer over entry combinations, leftmost word varying slowest.
    std::vector<std::size_t> pick(words.size(), 0);
    while (true) {
        std::vector<LexiconEntry> chosen;
        chosen.reserve(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) chosen.push_back(options[i][pick[i]]);

        for (const auto& target_name : grammar.designated()) {
            BasicType target{target_name};
            if (logic == Logic::Pregroup) {
                std::vector<SimpleType> flat;
                for (const auto& e : chosen) {
                    auto p = lambek_to_pregroup(e.type);
                    flat.insert(flat.end(), p.factors.begin(), p.factors.end());
                }
                if (auto r = reduce(flat, target))
                    return SentenceParse{chosen, target, std::move(r), std::nullopt};
            } else {
                std::vector<LambekType> types;
                for (const auto& e : chosen) types.push_back(e.type);
                if (auto d = prove(types, LambekType::basic(target_name)))
                    return SentenceParse{chosen, target, std::nullopt, std::move(d)};
            }
        }

        std::size_t k = words.size();
        while (k-- > 0) {
            if (++pick[k] < options[k].size()) break;
            pick[k] = 0;
            if (k == 0) return std::nullopt;
        }
    }
}

}  // namespace discocat
