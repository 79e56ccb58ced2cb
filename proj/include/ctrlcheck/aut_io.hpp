#pragma once

#include "ctrlcheck/automaton.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ctrlcheck
{

/// Syntax or semantic error in an .aut file, tagged with its line number
/// (0 when the problem concerns the file as a whole).
class ParseError : public Error
{
public:
    ParseError(std::string origin, std::size_t line, const std::string& message);

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// .aut grammar, one item per line, '#' starts a comment:
//
//   automaton <name>              at most once
//   controllable <event>...       may repeat
//   uncontrollable <event>...     may repeat
//   initial <state>               exactly once
//   state <state>...              declares states, e.g. isolated ones
//   <source> <event> <target>     one transition
//
// Tokens are separated by whitespace. A state mentioned by a transition is
// declared implicitly; declaration order fixes state ids. The initial state
// must be declared by a `state` line or a transition. The first token of a
// transition line must not be one of the five keywords.

[[nodiscard]] AutomatonDescription parse_aut_description(std::string_view text, const std::string& origin = "<input>");
[[nodiscard]] Automaton parse_aut(std::string_view text, const std::string& origin = "<input>");
[[nodiscard]] Automaton load_aut(const std::filesystem::path& path);

[[nodiscard]] std::string write_aut(const Automaton& a);
void save_aut(const Automaton& a, const std::filesystem::path& path);

/// Graphviz rendering: controllable edges solid, uncontrollable dashed,
/// initial state marked by a dangling arrow.
[[nodiscard]] std::string to_dot(const Automaton& a);

} // namespace ctrlcheck
