#pragma once

// Corpus files are PD text whose comment lines may carry directives:
//   # twists 2 3 0     the tangle was built from this twist vector
//   # name 9 c         the strand through arc 9 is called c in reports

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptangle/diagram.hpp"
#include "ptangle/errors.hpp"

namespace ptangle {

struct CorpusEntry {
  Diagram diagram;
  std::optional<std::vector<int>> twists;
  std::map<ArcLabel, std::string> names;
};

inline CorpusEntry parse_corpus_entry(const std::string& text) {
  CorpusEntry e;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream in(line);
    std::string hash, key;
    if (!(in >> hash) || hash != "#" || !(in >> key)) continue;
    if (key == "twists") {
      std::vector<int> w;
      for (int x; in >> x;) w.push_back(x);
      if (w.empty()) throw ParseError(lineno, 1, "twists directive without entries");
      e.twists = std::move(w);
    } else if (key == "name") {
      ArcLabel a = 0;
      std::string n;
      if (!(in >> a >> n)) throw ParseError(lineno, 1, "name directive needs an arc and a name");
      e.names[a] = n;
    }
  }
  e.diagram = parse_diagram(text);
  return e;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline CorpusEntry load_corpus_entry(const std::string& path) { return parse_corpus_entry(read_file(path)); }

}  // namespace ptangle
