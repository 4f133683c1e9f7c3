#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "fta/automaton.hpp"
#include "fta/term.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(FTA_TEST_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const std::string kTexText = "f1(g(f1(x1,x2)),f2(g(f1(x3,f1(x4,x3))),g(f1(x2,x1))))";

inline const fta::Automaton& a_ex() {
  static const fta::Automaton aut = fta::parse_automaton(read_data("a_ex.fta"));
  return aut;
}

inline const fta::Term& t_ex() {
  static const fta::Term t = fta::parse_term(kTexText, a_ex().signature());
  return t;
}

inline fta::Term term(const std::string& text) { return fta::parse_term(text, a_ex().signature()); }

// x1..xn bound in order to the given constants.
inline fta::Assignment tuple(std::initializer_list<const char*> values) {
  fta::Assignment a;
  fta::VarIndex v = 1;
  for (const char* c : values) a.bind(v++, c);
  return a;
}

// A_ex with one rule line swapped out; used for defect tests.
inline std::string a_ex_text_replacing(const std::string& line, const std::string& replacement) {
  std::string text = read_data("a_ex.fta");
  const auto at = text.find(line);
  if (at == std::string::npos) return text;
  return text.replace(at, line.size(), replacement);
}

}  // namespace fixtures
