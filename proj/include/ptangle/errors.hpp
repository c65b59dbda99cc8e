#pragma once

#include <stdexcept>
#include <string>

namespace ptangle {

/// Raised by the PD reader on malformed text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class ValidationKind { arc_occurrence, planarity, orientation, structure };

inline const char* to_string(ValidationKind k) {
  switch (k) {
    case ValidationKind::arc_occurrence: return "arc-occurrence";
    case ValidationKind::planarity: return "planarity";
    case ValidationKind::orientation: return "orientation";
    case ValidationKind::structure: return "structure";
  }
  return "?";
}

/// A structurally well-formed record set that does not describe a planar diagram.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " violation: " + what), kind_(kind) {}

  ValidationKind kind() const noexcept { return kind_; }

 private:
  ValidationKind kind_;
};

/// A quandle table that fails one of the axioms; the failing triple is kept for reporting.
class QuandleAxiomError : public std::runtime_error {
 public:
  QuandleAxiomError(const std::string& axiom, int a, int b, int c)
      : std::runtime_error("quandle axiom '" + axiom + "' fails at (" + std::to_string(a) + ", " + std::to_string(b) +
                           ", " + std::to_string(c) + ")"),
        axiom_(axiom),
        a_(a),
        b_(b),
        c_(c) {}

  const std::string& axiom() const noexcept { return axiom_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int c() const noexcept { return c_; }

 private:
  std::string axiom_;
  int a_, b_, c_;
};

}  // namespace ptangle
