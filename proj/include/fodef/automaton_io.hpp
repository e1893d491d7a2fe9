#pragma once
// JSON automaton format shared by the CLI and fixtures.
#include <string>
#include <variant>

#include "fodef/automata.hpp"
#include "fodef/twoway.hpp"

namespace fodef {

using AnyAutomaton = std::variant<Dfa, Nfa, TwoNfa>;

AnyAutomaton parse_automaton(const std::string& json_text);
AnyAutomaton load_automaton(const std::string& path);
std::string to_json(const Dfa& d);
std::string to_json(const Nfa& n);
std::string to_json(const TwoNfa& t);

}  // namespace fodef
