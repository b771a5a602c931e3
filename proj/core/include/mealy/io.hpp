#pragma once

#include <string>
#include <string_view>

#include "mealy/automaton.hpp"
#include "mealy/group.hpp"

namespace mealy {

// `.mealy` text format:
//   states: s1 s2 ...
//   alphabet: a1 a2 ...
//   sink: s            (optional)
//   partial: true      (optional, permits missing transitions)
//   q a -> p b         (one line per transition)
// '#' starts a comment.
Automaton parse_automaton(std::string_view text);
PartialAutomaton parse_partial_automaton(std::string_view text);
Automaton load_automaton(const std::string& path);
std::string read_file(const std::string& path);

std::string to_mealy_text(const Automaton& m);
std::string to_mealy_text(const PartialAutomaton& p);
std::string to_dot(const Automaton& m, const std::string& name = "M");
std::string to_dot(const LabeledDigraph& g, const std::string& name = "G");

// Words are whitespace- or comma-separated tokens. When every identifier is a
// single character the separators may be omitted ("aab^-1", "0120").
StateWord parse_state_word(const Automaton& m, std::string_view text);
LetterWord parse_letter_word(const Automaton& m, std::string_view text);
std::string format_state_word(const Automaton& m, const StateWord& u);
std::string format_letter_word(const Automaton& m, const LetterWord& v);

// `pre|period`, e.g. "01|2" or "|1".
Epw parse_epw(const Automaton& m, std::string_view text);
std::string format_epw(const Automaton& m, const Epw& xi);

}  // namespace mealy
