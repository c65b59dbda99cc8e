#pragma once

// Planar diagram (PD) codes for knots, links and 1- or 2-tangles.
//
// A crossing lists four arc labels counterclockwise, starting at the incoming
// under-strand: slots 0/2 are the under pair, slots 1/3 the over pair. Signed
// crossings (Xp/Xm) mark an oriented diagram; the over strand runs 3 -> 1 at a
// positive crossing and 1 -> 3 at a negative one.
//
// A tangle carries a boundary record listing its endpoints in NW, NE, SE, SW
// order. For face traversal the outside of the disc is collapsed to a single
// cap vertex whose counterclockwise rotation is exactly that order.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ptangle {

using ArcLabel = std::int64_t;

enum class Sign : std::int8_t { none = 0, positive = 1, negative = -1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign negate(Sign s) noexcept {
  return s == Sign::positive ? Sign::negative : s == Sign::negative ? Sign::positive : Sign::none;
}

struct Crossing {
  std::array<ArcLabel, 4> slots{};
  Sign sign = Sign::none;

  static constexpr bool is_over(int slot) noexcept { return (slot & 1) != 0; }

  /// Whether the strand through `slot` enters the crossing there. Needs a sign.
  bool incoming(int slot) const noexcept {
    switch (slot) {
      case 0: return true;
      case 2: return false;
      case 1: return sign == Sign::negative;
      default: return sign == Sign::positive;
    }
  }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Keeps the smaller root so that representatives are deterministic.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace detail

/// One corner of a face: the angle at `vertex` between slot `position` and the
/// next slot counterclockwise. `vertex` equals the crossing count for the
/// boundary cap of a tangle.
struct Corner {
  int vertex = 0;
  int position = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
};

struct Face {
  std::vector<Corner> corners;
  std::vector<int> darts;        // half-edges whose traversal has this face on the right
  std::vector<ArcLabel> arcs;    // sorted, unique
};

/// Validated, immutable planar diagram.
class Diagram {
 public:
  Diagram() { build(); }

  explicit Diagram(std::vector<Crossing> crossings, std::vector<ArcLabel> boundary = {},
                   std::vector<ArcLabel> circles = {})
      : crossings_(std::move(crossings)), boundary_(std::move(boundary)), circles_(std::move(circles)) {
    build();
  }

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const std::vector<ArcLabel>& boundary() const noexcept { return boundary_; }
  const std::vector<ArcLabel>& circles() const noexcept { return circles_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  bool oriented() const noexcept { return oriented_; }
  bool is_closed() const noexcept { return boundary_.empty(); }
  bool is_tangle() const noexcept { return !boundary_.empty(); }

  /// All arc labels, sorted.
  const std::vector<ArcLabel>& labels() const noexcept { return labels_; }
  bool has_label(ArcLabel a) const { return std::binary_search(labels_.begin(), labels_.end(), a); }
  ArcLabel max_label() const noexcept { return labels_.empty() ? 0 : labels_.back(); }

  // Half-edge view. Crossing c, slot s is half-edge 4c+s; boundary slot i is 4n+i.
  int vertex_count() const noexcept { return static_cast<int>(crossings_.size()) + (boundary_.empty() ? 0 : 1); }
  int cap_vertex() const noexcept { return static_cast<int>(crossings_.size()); }
  int degree(int v) const noexcept { return v < cap_vertex() ? 4 : static_cast<int>(boundary_.size()); }
  int half_edge_count() const noexcept { return static_cast<int>(half_label_.size()); }
  int half_edge(int v, int slot) const noexcept { return v < cap_vertex() ? 4 * v + slot : 4 * cap_vertex() + slot; }
  int vertex_of(int h) const noexcept { return h < 4 * cap_vertex() ? h / 4 : cap_vertex(); }
  int slot_of(int h) const noexcept { return h < 4 * cap_vertex() ? h % 4 : h - 4 * cap_vertex(); }
  ArcLabel label_at(int h) const { return half_label_[h]; }
  int mate(int h) const { return mate_[h]; }
  int next_ccw(int h) const noexcept {
    const int v = vertex_of(h);
    return half_edge(v, (slot_of(h) + 1) % degree(v));
  }
  /// Half-edges carrying `a`; empty for crossing-free circles.
  std::vector<int> half_edges_of(ArcLabel a) const {
    auto it = occurrences_.find(a);
    return it == occurrences_.end() ? std::vector<int>{} : it->second;
  }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  int face_of_dart(int h) const { return dart_face_[h]; }

 private:
  void build();
  void check_occurrences();
  void check_orientation();
  void trace_faces();

  std::vector<Crossing> crossings_;
  std::vector<ArcLabel> boundary_;
  std::vector<ArcLabel> circles_;
  bool oriented_ = false;

  std::vector<ArcLabel> labels_;
  std::vector<ArcLabel> half_label_;
  std::vector<int> mate_;
  std::map<ArcLabel, std::vector<int>> occurrences_;
  std::vector<Face> faces_;
  std::vector<int> dart_face_;
};

inline void Diagram::build() {
  if (!(boundary_.empty() || boundary_.size() == 2 || boundary_.size() == 4))
    throw ValidationError(ValidationKind::structure, "boundary must list 2 or 4 endpoints");

  std::size_t signed_count = 0;
  for (const auto& c : crossings_) {
    for (ArcLabel a : c.slots)
      if (a <= 0) throw ValidationError(ValidationKind::structure, "arc labels must be positive");
    if (c.sign != Sign::none) ++signed_count;
  }
  if (signed_count != 0 && signed_count != crossings_.size())
    throw ValidationError(ValidationKind::orientation, "signed and unsigned crossings mixed");
  oriented_ = !crossings_.empty() && signed_count == crossings_.size();

  half_label_.clear();
  for (const auto& c : crossings_)
    for (ArcLabel a : c.slots) half_label_.push_back(a);
  for (ArcLabel a : boundary_) {
    if (a <= 0) throw ValidationError(ValidationKind::structure, "arc labels must be positive");
    half_label_.push_back(a);
  }

  occurrences_.clear();
  for (int h = 0; h < static_cast<int>(half_label_.size()); ++h) occurrences_[half_label_[h]].push_back(h);

  check_occurrences();

  mate_.assign(half_label_.size(), -1);
  for (const auto& [label, hs] : occurrences_) {
    mate_[hs[0]] = hs[1];
    mate_[hs[1]] = hs[0];
  }

  std::set<ArcLabel> all;
  for (const auto& [label, hs] : occurrences_) all.insert(label);
  for (ArcLabel k : circles_) all.insert(k);
  labels_.assign(all.begin(), all.end());

  if (oriented_) check_orientation();
  trace_faces();
}

inline void Diagram::check_occurrences() {
  const int crossing_halves = 4 * static_cast<int>(crossings_.size());
  for (const auto& [label, hs] : occurrences_) {
    const auto in_crossings = std::count_if(hs.begin(), hs.end(), [&](int h) { return h < crossing_halves; });
    const auto in_boundary = static_cast<long>(hs.size()) - in_crossings;
    bool ok = false;
    if (boundary_.empty()) {
      ok = in_crossings == 2;
    } else {
      ok = (in_crossings == 2 && in_boundary == 0) || (in_crossings == 1 && in_boundary == 1) ||
           (in_crossings == 0 && in_boundary == 2);
    }
    if (!ok)
      throw ValidationError(ValidationKind::arc_occurrence,
                            "arc " + std::to_string(label) + " occurs " + std::to_string(in_crossings) +
                                " time(s) in crossings and " + std::to_string(in_boundary) + " time(s) in the boundary");
  }
  std::set<ArcLabel> seen;
  for (ArcLabel k : circles_) {
    if (k <= 0) throw ValidationError(ValidationKind::structure, "arc labels must be positive");
    if (occurrences_.count(k) || !seen.insert(k).second)
      throw ValidationError(ValidationKind::arc_occurrence, "circle label " + std::to_string(k) + " reused");
  }
}

inline void Diagram::check_orientation() {
  const int crossing_halves = 4 * static_cast<int>(crossings_.size());
  for (const auto& [label, hs] : occurrences_) {
    if (hs[0] >= crossing_halves || hs[1] >= crossing_halves) continue;
    const bool in0 = crossings_[hs[0] / 4].incoming(hs[0] % 4);
    const bool in1 = crossings_[hs[1] / 4].incoming(hs[1] % 4);
    if (in0 == in1)
      throw ValidationError(ValidationKind::orientation,
                            "arc " + std::to_string(label) + " is " + (in0 ? "incoming" : "outgoing") + " at both ends");
  }
}

inline void Diagram::trace_faces() {
  const int halves = static_cast<int>(half_label_.size());
  faces_.clear();
  dart_face_.assign(halves, -1);
  for (int start = 0; start < halves; ++start) {
    if (dart_face_[start] != -1) continue;
    Face f;
    const int id = static_cast<int>(faces_.size());
    int h = start;
    do {
      dart_face_[h] = id;
      const int v = vertex_of(h);
      f.corners.push_back({v, (slot_of(h) + degree(v) - 1) % degree(v)});
      f.darts.push_back(h);
      f.arcs.push_back(half_label_[h]);
      h = next_ccw(mate_[h]);
    } while (h != start);
    std::sort(f.arcs.begin(), f.arcs.end());
    f.arcs.erase(std::unique(f.arcs.begin(), f.arcs.end()), f.arcs.end());
    faces_.push_back(std::move(f));
  }

  // Euler characteristic per connected component of the capped graph.
  const int nv = vertex_count();
  if (nv > 0) {
    detail::UnionFind uf(nv);
    for (int h = 0; h < halves; ++h) uf.unite(vertex_of(h), vertex_of(mate_[h]));
    std::map<int, std::array<int, 3>> vef;
    for (int v = 0; v < nv; ++v) vef[uf.find(v)][0] += 1;
    for (int h = 0; h < halves; ++h)
      if (h < mate_[h]) vef[uf.find(vertex_of(h))][1] += 1;
    for (const auto& f : faces_) vef[uf.find(vertex_of(f.darts.front()))][2] += 1;
    for (const auto& [root, c] : vef) {
      const int chi = c[0] - c[1] + c[2];
      if (chi != 2)
        throw ValidationError(ValidationKind::planarity,
                              "V - E + F = " + std::to_string(c[0]) + " - " + std::to_string(c[1]) + " + " +
                                  std::to_string(c[2]) + " = " + std::to_string(chi) + ", expected 2");
    }
  }

  for (ArcLabel k : circles_) {
    for (int side = 0; side < 2; ++side) {
      Face f;
      f.arcs = {k};
      faces_.push_back(std::move(f));
    }
  }
}

// ---------------------------------------------------------------------------
// Text format

inline Diagram parse_diagram(std::string_view text) {
  std::vector<Crossing> crossings;
  std::vector<ArcLabel> boundary;
  std::vector<ArcLabel> circles;
  bool have_boundary = false;

  struct Token {
    std::string_view text;
    int column;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::vector<Token>> records(1);
    for (std::size_t i = 0; i < line.size();) {
      const char ch = line[i];
      if (ch == ';') {
        records.emplace_back();
        ++i;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
      } else {
        std::size_t j = i;
        while (j < line.size() && line[j] != ';' && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        records.back().push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
      }
    }

    for (const auto& rec : records) {
      if (rec.empty()) continue;
      const Token& key = rec.front();
      std::vector<ArcLabel> nums;
      for (std::size_t k = 1; k < rec.size(); ++k) {
        ArcLabel v = 0;
        const auto* b = rec[k].text.data();
        const auto* e = b + rec[k].text.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc{} || p != e) throw ParseError(line_no, rec[k].column, "expected an integer arc label");
        if (v <= 0) throw ParseError(line_no, rec[k].column, "arc labels must be positive");
        nums.push_back(v);
      }
      const int end_col = rec.back().column + static_cast<int>(rec.back().text.size());
      if (key.text == "X" || key.text == "Xp" || key.text == "Xm") {
        if (nums.size() != 4)
          throw ParseError(line_no, nums.size() < 4 ? end_col : rec[5].column,
                           "crossing needs 4 slots, got " + std::to_string(nums.size()));
        Crossing c;
        std::copy(nums.begin(), nums.end(), c.slots.begin());
        c.sign = key.text == "Xp" ? Sign::positive : key.text == "Xm" ? Sign::negative : Sign::none;
        crossings.push_back(c);
      } else if (key.text == "B") {
        if (have_boundary) throw ParseError(line_no, key.column, "duplicate boundary record");
        if (nums.size() != 2 && nums.size() != 4)
          throw ParseError(line_no, key.column, "boundary needs 2 or 4 endpoints, got " + std::to_string(nums.size()));
        boundary = nums;
        have_boundary = true;
      } else if (key.text == "O") {
        if (nums.size() != 1) throw ParseError(line_no, key.column, "circle record needs exactly one label");
        circles.push_back(nums[0]);
      } else {
        throw ParseError(line_no, key.column, "unknown record '" + std::string(key.text) + "'");
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return Diagram(std::move(crossings), std::move(boundary), std::move(circles));
}

inline std::string serialize(const Diagram& d) {
  std::ostringstream out;
  for (const auto& c : d.crossings()) {
    out << (c.sign == Sign::positive ? "Xp" : c.sign == Sign::negative ? "Xm" : "X");
    for (ArcLabel a : c.slots) out << ' ' << a;
    out << '\n';
  }
  for (ArcLabel k : d.circles()) out << "O " << k << '\n';
  if (d.is_tangle()) {
    out << 'B';
    for (ArcLabel a : d.boundary()) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Relabeling

inline Diagram relabeled(const Diagram& d, const std::function<ArcLabel(ArcLabel)>& f) {
  auto cs = d.crossings();
  for (auto& c : cs)
    for (auto& a : c.slots) a = f(a);
  auto bd = d.boundary();
  for (auto& a : bd) a = f(a);
  auto ci = d.circles();
  for (auto& a : ci) a = f(a);
  return Diagram(std::move(cs), std::move(bd), std::move(ci));
}

/// Shift every label by `offset`.
inline Diagram shifted(const Diagram& d, ArcLabel offset) {
  return relabeled(d, [offset](ArcLabel a) { return a + offset; });
}

/// Labels renumbered 1..k in order of first appearance (crossings, circles,
/// boundary). Unsigned crossings are first rotated to the smaller of their two
/// equivalent slot orders so that mirror images and author choices compare equal.
inline Diagram canonical_form(const Diagram& d) {
  auto cs = d.crossings();
  for (auto& c : cs) {
    if (c.sign != Sign::none) continue;
    std::array<ArcLabel, 4> r{c.slots[2], c.slots[3], c.slots[0], c.slots[1]};
    if (r < c.slots) c.slots = r;
  }
  std::map<ArcLabel, ArcLabel> order;
  auto see = [&](ArcLabel a) { order.emplace(a, static_cast<ArcLabel>(order.size()) + 1); };
  for (const auto& c : cs)
    for (ArcLabel a : c.slots) see(a);
  for (ArcLabel a : d.circles()) see(a);
  for (ArcLabel a : d.boundary()) see(a);
  for (auto& c : cs)
    for (auto& a : c.slots) a = order.at(a);
  auto bd = d.boundary();
  for (auto& a : bd) a = order.at(a);
  auto ci = d.circles();
  for (auto& a : ci) a = order.at(a);
  return Diagram(std::move(cs), std::move(bd), std::move(ci));
}

// ---------------------------------------------------------------------------
// Strands and components

/// Over-arcs: maximal pieces between undercrossings. Labels at slots 1 and 3 of
/// a crossing belong to the same strand.
struct StrandMap {
  std::vector<std::vector<ArcLabel>> strands;
  std::map<ArcLabel, int> index;

  int of(ArcLabel a) const { return index.at(a); }
  std::size_t size() const noexcept { return strands.size(); }
};

inline StrandMap strands(const Diagram& d) {
  const auto& labels = d.labels();
  auto pos = [&](ArcLabel a) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin());
  };
  detail::UnionFind uf(labels.size());
  for (const auto& c : d.crossings()) uf.unite(pos(c.slots[1]), pos(c.slots[3]));
  StrandMap m;
  std::map<int, int> root_to_strand;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int r = uf.find(static_cast<int>(i));
    auto [it, inserted] = root_to_strand.emplace(r, static_cast<int>(m.strands.size()));
    if (inserted) m.strands.emplace_back();
    m.strands[it->second].push_back(labels[i]);
    m.index[labels[i]] = it->second;
  }
  return m;
}

struct Component {
  std::vector<ArcLabel> arcs;
  bool open = false;  // ends on the tangle boundary
};

/// Link components (closed) and tangle strands (open), by following each strand
/// straight through every crossing.
inline std::vector<Component> components(const Diagram& d) {
  const auto& labels = d.labels();
  auto pos = [&](ArcLabel a) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin());
  };
  detail::UnionFind uf(labels.size());
  for (const auto& c : d.crossings()) {
    uf.unite(pos(c.slots[0]), pos(c.slots[2]));
    uf.unite(pos(c.slots[1]), pos(c.slots[3]));
  }
  std::set<ArcLabel> endpoints(d.boundary().begin(), d.boundary().end());
  std::vector<Component> out;
  std::map<int, int> root_to_comp;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int r = uf.find(static_cast<int>(i));
    auto [it, inserted] = root_to_comp.emplace(r, static_cast<int>(out.size()));
    if (inserted) out.emplace_back();
    out[it->second].arcs.push_back(labels[i]);
    if (endpoints.count(labels[i])) out[it->second].open = true;
  }
  return out;
}

inline std::size_t closed_component_count(const Diagram& d) {
  const auto comps = components(d);
  return static_cast<std::size_t>(std::count_if(comps.begin(), comps.end(), [](const auto& c) { return !c.open; }));
}

// ---------------------------------------------------------------------------
// Faces

/// Faces incident to `a`, by id, ascending.
inline std::vector<int> faces_of_arc(const Diagram& d, ArcLabel a) {
  std::vector<int> out;
  for (int h : d.half_edges_of(a)) out.push_back(d.face_of_dart(h));
  if (out.empty()) {
    // crossing-free circle: its two faces come after the traced ones
    const auto& ci = d.circles();
    const auto it = std::find(ci.begin(), ci.end(), a);
    if (it != ci.end()) {
      const int base = static_cast<int>(d.faces().size() - 2 * ci.size());
      const int k = static_cast<int>(it - ci.begin());
      out = {base + 2 * k, base + 2 * k + 1};
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True iff some face is incident to both arcs.
inline bool co_facial(const Diagram& d, ArcLabel a1, ArcLabel a2) {
  if (a1 == a2) throw std::invalid_argument("co_facial needs two distinct arcs");
  if (!d.has_label(a1)) throw std::invalid_argument("unknown arc " + std::to_string(a1));
  if (!d.has_label(a2)) throw std::invalid_argument("unknown arc " + std::to_string(a2));
  const auto f1 = faces_of_arc(d, a1);
  const auto f2 = faces_of_arc(d, a2);
  std::vector<int> both;
  std::set_intersection(f1.begin(), f1.end(), f2.begin(), f2.end(), std::back_inserter(both));
  return !both.empty();
}

/// Smallest face id shared by both arcs, or -1.
inline int shared_face(const Diagram& d, ArcLabel a1, ArcLabel a2) {
  const auto f1 = faces_of_arc(d, a1);
  const auto f2 = faces_of_arc(d, a2);
  std::vector<int> both;
  std::set_intersection(f1.begin(), f1.end(), f2.begin(), f2.end(), std::back_inserter(both));
  return both.empty() ? -1 : both.front();
}

/// A dart traversing `a` with face `f` on its right, or -1.
inline int dart_in_face(const Diagram& d, ArcLabel a, int f) {
  for (int h : d.half_edges_of(a))
    if (d.face_of_dart(h) == f) return h;
  return -1;
}

// ---------------------------------------------------------------------------
// Orientation

/// Direction of every half-edge: true where the strand enters the vertex.
/// Requires an oriented diagram.
inline std::vector<bool> incoming_half_edges(const Diagram& d) {
  std::vector<bool> in(d.half_edge_count(), false);
  const int n = static_cast<int>(d.crossing_count());
  for (int h = 0; h < 4 * n; ++h) in[h] = d.crossings()[h / 4].incoming(h % 4);
  for (int h = 4 * n; h < d.half_edge_count(); ++h) {
    const int m = d.mate(h);
    in[h] = m < 4 * n ? !in[m] : h > m;
  }
  return in;
}

inline Diagram unoriented(const Diagram& d) {
  auto cs = d.crossings();
  for (auto& c : cs) c.sign = Sign::none;
  return Diagram(std::move(cs), d.boundary(), d.circles());
}

/// Orient every component: closed components along the direction in which
/// their smallest label leaves its first half-edge, open strands away from the
/// lower-indexed endpoint. Crossings are rewritten to start at the incoming
/// under-strand and given signs.
inline Diagram oriented_copy(const Diagram& d) {
  if (d.oriented()) return d;
  const int halves = d.half_edge_count();
  const int n = static_cast<int>(d.crossing_count());
  std::vector<int> dir(halves, 0);  // +1 incoming, -1 outgoing

  auto walk = [&](int tail) {
    int t = tail;
    while (true) {
      if (dir[t] != 0) return;
      dir[t] = -1;
      const int head = d.mate(t);
      dir[head] = +1;
      const int v = d.vertex_of(head);
      if (v == d.cap_vertex()) return;
      t = d.half_edge(v, d.slot_of(head) ^ 2);
    }
  };
  for (int i = 0; i < static_cast<int>(d.boundary().size()); ++i) {
    const int h = 4 * n + i;
    if (dir[h] == 0) walk(h);
  }
  for (ArcLabel a : d.labels()) {
    const auto hs = d.half_edges_of(a);
    if (!hs.empty() && dir[hs[0]] == 0) walk(hs[0]);
  }

  std::vector<Crossing> cs = d.crossings();
  for (int c = 0; c < n; ++c) {
    auto& x = cs[c];
    if (dir[4 * c] != +1) x.slots = {x.slots[2], x.slots[3], x.slots[0], x.slots[1]};
    const int over_in_slot = dir[4 * c] == +1 ? (dir[4 * c + 3] == +1 ? 3 : 1) : (dir[4 * c + 1] == +1 ? 3 : 1);
    x.sign = over_in_slot == 3 ? Sign::positive : Sign::negative;
  }
  if (n == 0) return d;
  return Diagram(std::move(cs), d.boundary(), d.circles());
}

}  // namespace ptangle
