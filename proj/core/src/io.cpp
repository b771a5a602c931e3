#include "mealy/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mealy/error.hpp"

namespace mealy {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

PartialAutomaton parse_document(std::string_view text, bool allow_partial) {
  std::vector<std::string> states, alphabet;
  std::optional<std::string> sink_name;
  bool partial = false;
  std::size_t header_line = 0;
  struct Line {
    std::size_t no;
    std::vector<std::string> tok;
  };
  std::vector<Line> transitions;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      const std::string key(trim(line.substr(0, colon)));
      const auto values = split_ws(line.substr(colon + 1));
      if (key == "states") {
        if (!states.empty()) throw ParseError("duplicate 'states:' header", no);
        states = values;
        header_line = no;
      } else if (key == "alphabet") {
        if (!alphabet.empty()) throw ParseError("duplicate 'alphabet:' header", no);
        alphabet = values;
      } else if (key == "sink") {
        if (values.size() != 1) throw ParseError("'sink:' expects one state", no);
        sink_name = values[0];
      } else if (key == "partial") {
        if (values.size() != 1 || (values[0] != "true" && values[0] != "false"))
          throw ParseError("'partial:' expects true or false", no);
        partial = values[0] == "true";
      } else {
        throw ParseError("unknown header '" + key + "'", no);
      }
      continue;
    }
    auto tok = split_ws(line);
    if (tok.size() != 5 || tok[2] != "->") throw ParseError("expected 'state letter -> state letter'", no);
    transitions.push_back({no, std::move(tok)});
  }
  if (states.empty()) throw ParseError("missing 'states:' header");
  if (alphabet.empty()) throw ParseError("missing 'alphabet:' header");
  if (partial && !allow_partial) throw ParseError("partial automaton where a complete one is required", header_line);

  auto index_of = [](const std::vector<std::string>& v, const std::string& s) -> std::optional<std::uint32_t> {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - v.begin());
  };

  PartialAutomaton p;
  p.states = states;
  p.alphabet = alphabet;
  p.cells.assign(states.size() * alphabet.size(), std::nullopt);
  for (const auto& [line_no, tok] : transitions) {
    auto q = index_of(states, tok[0]);
    auto a = index_of(alphabet, tok[1]);
    auto t = index_of(states, tok[3]);
    auto b = index_of(alphabet, tok[4]);
    if (!q) throw ParseError("unknown state '" + tok[0] + "'", line_no);
    if (!a) throw ParseError("unknown letter '" + tok[1] + "'", line_no);
    if (!t) throw ParseError("unknown state '" + tok[3] + "'", line_no);
    if (!b) throw ParseError("unknown letter '" + tok[4] + "'", line_no);
    auto& cell = p.cells[*q * alphabet.size() + *a];
    if (cell) throw ParseError("duplicate transition for (" + tok[0] + "," + tok[1] + ")", line_no);
    cell = PartialAutomaton::Cell{*t, *b};
  }
  if (sink_name) {
    auto e = index_of(states, *sink_name);
    if (!e) throw ParseError("sink '" + *sink_name + "' is not a declared state");
    p.sink = e;
  }
  if (!partial) {
    std::string missing;
    for (std::size_t q = 0; q < states.size(); ++q)
      for (std::size_t a = 0; a < alphabet.size(); ++a)
        if (!p.cells[q * alphabet.size() + a])
          missing += (missing.empty() ? "" : ", ") + ("(" + states[q] + "," + alphabet[a] + ")");
    if (!missing.empty()) throw ParseError("incomplete automaton, missing transitions: " + missing);
  }
  if (p.sink) {
    for (LetterId a = 0; a < alphabet.size(); ++a) {
      const auto& c = p.at(*p.sink, a);
      if (c && (c->target != *p.sink || c->output != a))
        throw ParseError("declared sink '" + *sink_name + "' does not fix every letter with a self-loop");
    }
  }
  return p;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  auto p = parse_document(text, false);
  try {
    return to_complete(p);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

PartialAutomaton parse_partial_automaton(std::string_view text) { return parse_document(text, true); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Automaton load_automaton(const std::string& path) {
  try {
    return parse_automaton(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

}  // namespace

std::string to_mealy_text(const Automaton& m) { return to_mealy_text(to_partial(m)); }

std::string to_mealy_text(const PartialAutomaton& p) {
  std::string s = "states: " + join(p.states) + "\nalphabet: " + join(p.alphabet) + "\n";
  if (p.sink) s += "sink: " + p.states[*p.sink] + "\n";
  if (!p.complete()) s += "partial: true\n";
  for (StateId q = 0; q < p.states.size(); ++q)
    for (LetterId a = 0; a < p.alphabet.size(); ++a)
      if (const auto& c = p.at(q, a))
        s += p.states[q] + " " + p.alphabet[a] + " -> " + p.states[c->target] + " " + p.alphabet[c->output] + "\n";
  return s;
}

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Automaton& m, const std::string& name) {
  std::string s = "digraph " + dot_id(name) + " {\n  rankdir=LR;\n";
  for (StateId q = 0; q < m.state_count(); ++q) {
    s += "  " + dot_id(m.state_name(q));
    if (m.sink() && *m.sink() == q) s += " [shape=doublecircle]";
    s += ";\n";
  }
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < m.letter_count(); ++a)
      s += "  " + dot_id(m.state_name(q)) + " -> " + dot_id(m.state_name(m.next(q, a))) + " [label=" +
           dot_id(m.letter_name(a) + "|" + m.letter_name(m.out(q, a))) + "];\n";
  return s + "}\n";
}

std::string to_dot(const LabeledDigraph& g, const std::string& name) {
  std::string s = "digraph " + dot_id(name) + " {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    s += "  " + dot_id(g.vertices[v]);
    if (g.root && *g.root == v) s += " [shape=doublecircle]";
    s += ";\n";
  }
  for (const auto& e : g.edges)
    s += "  " + dot_id(g.vertices[e.source]) + " -> " + dot_id(g.vertices[e.target]) + " [label=" +
         dot_id(g.labels[e.label]) + "];\n";
  return s + "}\n";
}

namespace {

// Splits a word into identifier tokens, allowing concatenation when every
// candidate identifier is a single character.
std::vector<std::string> word_tokens(std::string_view text, const std::vector<std::string>& ids, bool signed_tokens) {
  text = trim(text);
  if (text.empty()) return {};
  const bool separated = text.find_first_of(" \t,") != std::string_view::npos;
  if (separated) return split_ws(text);
  const std::string whole(text);
  const std::string base = signed_tokens && whole.ends_with("^-1") ? whole.substr(0, whole.size() - 3) : whole;
  if (std::find(ids.begin(), ids.end(), base) != ids.end()) return {whole};
  const bool single = std::all_of(ids.begin(), ids.end(), [](const std::string& s) { return s.size() == 1; });
  if (!single) return {whole};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::string tok(1, text[i]);
    if (signed_tokens && text.substr(i + 1, 3) == "^-1") {
      tok += "^-1";
      i += 3;
    }
    out.push_back(tok);
  }
  return out;
}

}  // namespace

StateWord parse_state_word(const Automaton& m, std::string_view text) {
  StateWord u;
  for (const auto& tok : word_tokens(text, m.states(), true)) {
    if (auto q = m.find_state(tok)) {
      u.push_back({*q, false});
    } else if (tok.ends_with("^-1")) {
      u.push_back({m.state_id(tok.substr(0, tok.size() - 3)), true});
    } else {
      throw ParseError("unknown state '" + tok + "'");
    }
  }
  return u;
}

LetterWord parse_letter_word(const Automaton& m, std::string_view text) {
  LetterWord v;
  for (const auto& tok : word_tokens(text, m.alphabet(), false)) {
    auto a = m.find_letter(tok);
    if (!a) throw ParseError("unknown letter '" + tok + "'");
    v.push_back(*a);
  }
  return v;
}

std::string format_state_word(const Automaton& m, const StateWord& u) {
  std::string s;
  for (auto q : u) {
    if (!s.empty()) s += ' ';
    s += q.inverse ? inverse_name(m.state_name(q.base)) : m.state_name(q.base);
  }
  return s;
}

std::string format_letter_word(const Automaton& m, const LetterWord& v) {
  const bool single =
      std::all_of(m.alphabet().begin(), m.alphabet().end(), [](const std::string& s) { return s.size() == 1; });
  std::string s;
  for (auto a : v) {
    if (!s.empty() && !single) s += ' ';
    s += m.letter_name(a);
  }
  return s;
}

Epw parse_epw(const Automaton& m, std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("boundary point must have the form pre|period");
  auto pre = parse_letter_word(m, text.substr(0, bar));
  auto period = parse_letter_word(m, text.substr(bar + 1));
  if (period.empty()) throw ParseError("boundary point period must be nonempty");
  return Epw(std::move(pre), std::move(period));
}

std::string format_epw(const Automaton& m, const Epw& xi) {
  return format_letter_word(m, xi.preperiod()) + "|" + format_letter_word(m, xi.period());
}

}  // namespace mealy
