#pragma once

#include "ctrlcheck/aut_io.hpp"
#include "ctrlcheck/corpus.hpp"

#include <string>

namespace test
{

inline ctrlcheck::Automaton aut(std::string_view text) { return ctrlcheck::parse_aut(text); }

inline ctrlcheck::CorpusEntry corpus_entry(const std::string& id)
{
    return ctrlcheck::load_entry(std::filesystem::path(CTRLCHECK_CORPUS_DIR) / id);
}

inline ctrlcheck::Word word(const ctrlcheck::Automaton& a, const std::vector<std::string>& names)
{
    return *ctrlcheck::resolve_word(a.alphabet(), names);
}

inline std::set<std::string> state_names(const ctrlcheck::Automaton& a, const std::vector<ctrlcheck::StateId>& qs)
{
    std::set<std::string> out;
    for (auto q : qs)
        out.insert(a.state_name(q));
    return out;
}

} // namespace test
