#pragma once

// Fox colorings (linear, mod N), determinants, and finite-quandle colorings.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "modular.hpp"

namespace ptangle {

using Pins = std::map<ArcLabel, Residue>;

struct FoxColoring {
  Residue modulus = 2;
  std::map<ArcLabel, Residue> colors;

  bool nontrivial() const {
    if (colors.empty()) return false;
    const Residue first = colors.begin()->second;
    for (const auto& [arc, c] : colors)
      if (c != first) return true;
    return false;
  }

  friend bool operator==(const FoxColoring&, const FoxColoring&) = default;
};

/// Every crossing satisfies under + under = 2 * over (mod N), and the two
/// labels of each over-strand agree. Throws std::invalid_argument when an arc
/// of `d` has no color.
inline bool verify_fox(const Diagram& d, const FoxColoring& c) {
  for (ArcLabel a : d.labels())
    if (!c.colors.count(a)) throw std::invalid_argument("arc " + std::to_string(a) + " has no color");
  const Residue N = c.modulus;
  auto col = [&](ArcLabel a) { return mod_reduce(c.colors.at(a), N); };
  for (const auto& x : d.crossings()) {
    if (col(x.slots[1]) != col(x.slots[3])) return false;
    if (mod_reduce(static_cast<__int128>(col(x.slots[0])) + col(x.slots[2]) - 2 * static_cast<__int128>(col(x.slots[1])), N) != 0)
      return false;
  }
  return true;
}

/// x -> u*x + v applied to every color.
inline FoxColoring affine_image(const FoxColoring& c, Residue u, Residue v) {
  FoxColoring out{c.modulus, {}};
  for (const auto& [arc, x] : c.colors)
    out.colors[arc] = mod_reduce(static_cast<__int128>(u) * x + v, c.modulus);
  return out;
}

struct FoxEnumeration {
  std::vector<FoxColoring> colorings;
  bool overflow = false;  // more solutions than the cap; `colorings` is then empty
};

inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

/// All Fox colorings mod N of a diagram subject to pinned colors, over strands.
class FoxSolutionSpace {
 public:
  FoxSolutionSpace(const Diagram& d, Residue modulus, const Pins& pins = {})
      : strands_(strands(d)), modulus_(modulus) {
    if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
    ModularSystem sys(strands_.size(), modulus);
    for (const auto& x : d.crossings()) {
      std::vector<Residue> row(strands_.size(), 0);
      row[strands_.of(x.slots[0])] += 1;
      row[strands_.of(x.slots[2])] += 1;
      row[strands_.of(x.slots[1])] -= 2;
      sys.add_equation(std::move(row), 0);
    }
    for (const auto& [arc, value] : pins) {
      if (!d.has_label(arc)) throw std::invalid_argument("pinned arc " + std::to_string(arc) + " not in diagram");
      std::vector<Residue> row(strands_.size(), 0);
      row[strands_.of(arc)] = 1;
      sys.add_equation(std::move(row), value);
    }
    solutions_ = sys.solve();
  }

  Residue modulus() const noexcept { return modulus_; }
  const StrandMap& strand_map() const noexcept { return strands_; }
  const AffineSolutionSet& solutions() const noexcept { return solutions_; }
  bool empty() const noexcept { return !solutions_.consistent; }
  std::uint64_t count() const { return solutions_.count(); }

  FoxColoring to_coloring(const std::vector<Residue>& strand_colors) const {
    FoxColoring c{modulus_, {}};
    for (std::size_t s = 0; s < strands_.size(); ++s)
      for (ArcLabel a : strands_.strands[s]) c.colors[a] = strand_colors[s];
    return c;
  }

  /// Some solution with two distinct colors, chosen deterministically.
  std::optional<FoxColoring> nontrivial() const {
    if (empty()) return std::nullopt;
    const auto& x0 = solutions_.particular;
    auto is_constant = [](const std::vector<Residue>& v) {
      return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
    };
    if (!is_constant(x0)) return to_coloring(x0);
    for (const auto& g : solutions_.generators) {
      if (is_constant(g)) continue;
      std::vector<Residue> x(x0.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_reduce(static_cast<__int128>(x0[i]) + g[i], modulus_);
      return to_coloring(x);
    }
    return std::nullopt;
  }

  FoxEnumeration enumerate(std::uint64_t cap = default_enumeration_cap) const {
    FoxEnumeration out;
    if (empty()) return out;
    std::uint64_t total = 0;
    try {
      total = count();
    } catch (const std::overflow_error&) {
      out.overflow = true;
      return out;
    }
    if (total > cap) {
      out.overflow = true;
      return out;
    }
    const auto& gens = solutions_.generators;
    const auto& orders = solutions_.orders;
    std::vector<Residue> k(gens.size(), 0);
    std::vector<Residue> x = solutions_.particular;
    out.colorings.reserve(total);
    for (std::uint64_t it = 0; it < total; ++it) {
      out.colorings.push_back(to_coloring(x));
      // mixed-radix increment, updating x incrementally
      for (std::size_t j = 0; j < gens.size(); ++j) {
        ++k[j];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_reduce(static_cast<__int128>(x[i]) + gens[j][i], modulus_);
        if (k[j] < orders[j]) break;
        k[j] = 0;  // x has wrapped around by orders[j] * gens[j] == 0
      }
    }
    return out;
  }

 private:
  StrandMap strands_;
  Residue modulus_;
  AffineSolutionSet solutions_;
};

inline FoxSolutionSpace fox_solution_space(const Diagram& d, Residue modulus, const Pins& pins = {}) {
  return FoxSolutionSpace(d, modulus, pins);
}

inline bool has_nontrivial_fox(const Diagram& d, Residue modulus) {
  return fox_solution_space(d, modulus).nontrivial().has_value();
}

// ---------------------------------------------------------------------------
// Determinants

using BigInt = boost::multiprecision::cpp_int;

/// Absolute determinant of a square integer matrix, by fraction-free elimination.
inline BigInt bareiss_abs_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  BigInt det = m[n - 1][n - 1] * sign;
  return det < 0 ? BigInt(-det) : det;
}

/// Fox crossing matrix: rows are crossings, columns strands; 2 on the over
/// strand and -1 on each under strand, summed where they coincide.
inline std::vector<std::vector<BigInt>> crossing_matrix(const Diagram& d, const StrandMap& sm) {
  std::vector<std::vector<BigInt>> m(d.crossing_count(), std::vector<BigInt>(sm.size(), 0));
  for (std::size_t i = 0; i < d.crossing_count(); ++i) {
    const auto& x = d.crossings()[i];
    m[i][sm.of(x.slots[1])] += 2;
    m[i][sm.of(x.slots[0])] -= 1;
    m[i][sm.of(x.slots[2])] -= 1;
  }
  return m;
}

/// Determinant of a closed diagram of any number of components: |first minor|
/// of the crossing matrix. Split diagrams (free circles, or a component with no
/// undercrossing) give 0; the crossing-free unknot gives 1.
inline std::uint64_t link_determinant(const Diagram& d) {
  if (!d.is_closed()) throw std::invalid_argument("determinant needs a closed diagram");
  const std::size_t n = d.crossing_count();
  if (n == 0) return d.circles().size() == 1 ? 1 : 0;
  if (!d.circles().empty()) return 0;
  const auto sm = strands(d);
  if (sm.size() != n) return 0;
  auto m = crossing_matrix(d, sm);
  m.pop_back();
  for (auto& row : m) row.pop_back();
  const BigInt det = bareiss_abs_determinant(std::move(m));
  if (det > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("determinant exceeds 64 bits");
  return det.convert_to<std::uint64_t>();
}

/// Knot determinant. Rejects links.
inline std::uint64_t determinant(const Diagram& d) {
  if (!d.is_closed()) throw std::invalid_argument("determinant needs a closed diagram");
  if (components(d).size() != 1) throw std::invalid_argument("determinant needs a 1-component diagram");
  return link_determinant(d);
}

// ---------------------------------------------------------------------------
// Quandles

/// Finite quandle given by its table a*b; validated on construction.
class Quandle {
 public:
  Quandle(int n, std::vector<int> table, std::string name = "custom")
      : n_(n), table_(std::move(table)), name_(std::move(name)) {
    if (n < 1) throw std::invalid_argument("quandle needs at least one element");
    if (table_.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("quandle table has wrong size");
    for (int v : table_)
      if (v < 0 || v >= n) throw std::invalid_argument("quandle table entry out of range");
    for (int a = 0; a < n; ++a)
      if (op(a, a) != a) throw QuandleAxiomError("idempotence", a, a, op(a, a));
    inverse_.assign(table_.size(), -1);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const int r = op(a, b);
        if (inverse_[r * n + b] != -1) throw QuandleAxiomError("right-invertibility", inverse_[r * n + b], a, b);
        inverse_[r * n + b] = a;
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (op(op(a, b), c) != op(op(a, c), op(b, c))) throw QuandleAxiomError("self-distributivity", a, b, c);
    involutory_ = true;
    for (int a = 0; a < n && involutory_; ++a)
      for (int b = 0; b < n; ++b)
        if (op(op(a, b), b) != a) {
          involutory_ = false;
          break;
        }
  }

  int size() const noexcept { return n_; }
  int op(int a, int b) const { return table_[a * n_ + b]; }
  /// a *̄ b, the unique x with x * b = a.
  int inv(int a, int b) const { return inverse_[a * n_ + b]; }
  bool involutory() const noexcept { return involutory_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<int>& table() const noexcept { return table_; }

 private:
  int n_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  bool involutory_ = true;
  std::string name_;
};

/// Z/n with a*b = 2b - a.
inline Quandle dihedral(int n) {
  if (n < 2) throw std::invalid_argument("dihedral quandle needs n >= 2");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = static_cast<int>(mod_reduce(2 * b - a, n));
  return Quandle(n, std::move(t), "dihedral(" + std::to_string(n) + ")");
}

inline Quandle trivial_quandle(int n) {
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = a;
  return Quandle(n, std::move(t), "trivial(" + std::to_string(n) + ")");
}

/// `Q n` followed by n rows of n entries of a*b.
inline Quandle parse_quandle(const std::string& text, std::string name = "file") {
  std::istringstream in(text);
  std::string tag;
  int n = 0;
  if (!(in >> tag) || tag != "Q") throw std::invalid_argument("quandle file must start with 'Q n'");
  if (!(in >> n) || n < 1) throw std::invalid_argument("bad quandle size");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (auto& v : t)
    if (!(in >> v)) throw std::invalid_argument("quandle table truncated");
  return Quandle(n, std::move(t), std::move(name));
}

struct QuandleColoring {
  std::map<ArcLabel, int> colors;

  bool nontrivial() const {
    if (colors.empty()) return false;
    const int first = colors.begin()->second;
    for (const auto& [arc, c] : colors)
      if (c != first) return true;
    return false;
  }
  friend bool operator==(const QuandleColoring&, const QuandleColoring&) = default;
};

struct QuandleColorings {
  std::vector<QuandleColoring> colorings;
  bool complete = true;  // false when the cap cut the search short
};

namespace detail {

/// Backtracking search over strand colors with propagation through crossings.
class QuandleSearch {
 public:
  QuandleSearch(const Diagram& d, const Quandle& q) : d_(d), q_(q), sm_(strands(d)) {
    if (!q.involutory() && !d.oriented())
      throw std::invalid_argument("orientation required: quandle " + q.name() + " is not involutory");
    for (std::size_t i = 0; i < d.crossing_count(); ++i) {
      const auto& x = d.crossings()[i];
      rel_.push_back({sm_.of(x.slots[0]), sm_.of(x.slots[1]), sm_.of(x.slots[2]), x.sign != Sign::negative});
    }
    touching_.resize(sm_.size());
    for (std::size_t i = 0; i < rel_.size(); ++i) {
      touching_[rel_[i].in].push_back(i);
      touching_[rel_[i].over].push_back(i);
      touching_[rel_[i].out].push_back(i);
    }
    value_.assign(sm_.size(), -1);
  }

  const StrandMap& strand_map() const { return sm_; }

  /// Assign and propagate; on conflict restores state and returns false.
  bool assign(int s, int v) {
    const std::size_t mark = trail_.size();
    if (!push(s, v)) {
      undo(mark);
      return false;
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  int value(int s) const { return value_[s]; }
  int first_unassigned() const {
    for (std::size_t s = 0; s < value_.size(); ++s)
      if (value_[s] < 0) return static_cast<int>(s);
    return -1;
  }

 private:
  struct Rel {
    int in, over, out;
    bool positive;
  };

  bool push(int s, int v) {
    std::vector<std::pair<int, int>> queue{{s, v}};
    while (!queue.empty()) {
      auto [t, val] = queue.back();
      queue.pop_back();
      if (value_[t] >= 0) {
        if (value_[t] != val) return false;
        continue;
      }
      value_[t] = val;
      trail_.push_back(t);
      for (std::size_t r : touching_[t]) {
        const Rel& x = rel_[r];
        const int a = value_[x.in], b = value_[x.over], c = value_[x.out];
        if (b < 0) continue;
        if (a >= 0) {
          const int want = x.positive ? q_.op(a, b) : q_.inv(a, b);
          if (c >= 0) {
            if (c != want) return false;
          } else {
            queue.emplace_back(x.out, want);
          }
        } else if (c >= 0) {
          queue.emplace_back(x.in, x.positive ? q_.inv(c, b) : q_.op(c, b));
        }
      }
    }
    return true;
  }

  const Diagram& d_;
  const Quandle& q_;
  StrandMap sm_;
  std::vector<Rel> rel_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<int> value_;
  std::vector<int> trail_;
};

}  // namespace detail

/// Every coloring of `d` by `q` respecting `pins`, up to `cap` of them.
inline QuandleColorings quandle_colorings(const Diagram& d, const Quandle& q, const std::map<ArcLabel, int>& pins = {},
                                          std::uint64_t cap = default_enumeration_cap) {
  detail::QuandleSearch search(d, q);
  const auto& sm = search.strand_map();
  QuandleColorings out;
  for (const auto& [arc, v] : pins) {
    if (!d.has_label(arc)) throw std::invalid_argument("pinned arc " + std::to_string(arc) + " not in diagram");
    if (v < 0 || v >= q.size()) throw std::invalid_argument("pinned color out of range");
    if (!search.assign(sm.of(arc), v)) return out;
  }

  std::function<bool()> rec = [&]() -> bool {
    const int s = search.first_unassigned();
    if (s < 0) {
      if (out.colorings.size() >= cap) {
        out.complete = false;
        return false;
      }
      QuandleColoring c;
      for (std::size_t i = 0; i < sm.size(); ++i)
        for (ArcLabel a : sm.strands[i]) c.colors[a] = search.value(static_cast<int>(i));
      out.colorings.push_back(std::move(c));
      return true;
    }
    for (int v = 0; v < q.size(); ++v) {
      const std::size_t m = search.mark();
      if (search.assign(s, v)) {
        const bool go_on = rec();
        search.undo(m);
        if (!go_on) return false;
      }
    }
    return true;
  };
  rec();
  return out;
}

/// Checks every crossing relation of a quandle coloring.
inline bool verify_quandle(const Diagram& d, const Quandle& q, const QuandleColoring& c) {
  if (!q.involutory() && !d.oriented()) throw std::invalid_argument("orientation required");
  for (ArcLabel a : d.labels())
    if (!c.colors.count(a)) throw std::invalid_argument("arc " + std::to_string(a) + " has no color");
  for (const auto& x : d.crossings()) {
    const int a = c.colors.at(x.slots[0]), b = c.colors.at(x.slots[1]), out = c.colors.at(x.slots[2]);
    if (b != c.colors.at(x.slots[3])) return false;
    const int want = x.sign == Sign::negative ? q.inv(a, b) : q.op(a, b);
    if (out != want) return false;
  }
  return true;
}

}  // namespace ptangle
