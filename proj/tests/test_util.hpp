#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptangle/diagram.hpp"

inline std::string corpus_path(const std::string& name) { return std::string(PTANGLE_CORPUS_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline ptangle::Diagram corpus(const std::string& name) { return ptangle::parse_diagram(read_text(corpus_path(name))); }

/// Every .pd file in the corpus, sorted by name.
inline std::vector<std::string> corpus_files() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(PTANGLE_CORPUS_DIR))
    if (e.path().extension() == ".pd") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}
