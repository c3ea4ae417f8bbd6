// Shared helpers for the unit tests.
#ifndef PROGRESSOR_TESTS_SUPPORT_HPP
#define PROGRESSOR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/formula.hpp"

namespace testing {

// Rigid predicates P, Q, S (unary), R, E (binary), B (nullary); fluents F,
// G (unary) and H (binary); constants a, b.
inline const prog::Vocabulary& vocab() {
  static const prog::Vocabulary v = [] {
    prog::Vocabulary v;
    v.rigids = {{"P", 1}, {"Q", 1}, {"S", 1}, {"R", 2}, {"E", 2}, {"B", 0}};
    v.fluents = {{"F", 1}, {"G", 1}, {"H", 2}};
    v.actions = {{"A", 1}};
    v.constants = {"a", "b"};
    return v;
  }();
  return v;
}

inline prog::Formula parse(const std::string& s) { return prog::parse_sentence(s, vocab()); }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline prog::BasicActionTheory corpus(const std::string& name) {
  return prog::parse_bat(slurp(std::string(CORPUS_DIR) + "/" + name));
}

struct CorpusEntry {
  std::string name;
  std::string text;
  prog::BasicActionTheory bat;
  std::string action;
  std::string expected;  // LE, NR or AC
};

// Reads `; action: ...` and `; class: ...` header lines.
inline std::string directive(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line, tag = "; " + key + ":";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) {
      std::string v = line.substr(tag.size());
      v.erase(0, v.find_first_not_of(' '));
      return v;
    }
  return "";
}

inline std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(CORPUS_DIR)) {
    if (e.path().extension() != ".bat") continue;
    CorpusEntry c;
    c.name = e.path().filename().string();
    c.text = slurp(e.path().string());
    c.bat = prog::parse_bat(c.text);
    c.action = directive(c.text, "action");
    c.expected = directive(c.text, "class");
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace testing

#endif
