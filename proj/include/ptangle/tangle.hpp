#pragma once

// 1- and 2-tangles: closures, addition, mirror image, rotation, rational
// tangles from twist vectors, and inter-strand linking.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "colorings.hpp"
#include "diagram.hpp"

namespace ptangle {

class Tangle {
 public:
  explicit Tangle(Diagram d) : d_(std::move(d)) {
    if (!d_.is_tangle()) throw std::invalid_argument("a tangle needs a boundary record");
  }

  const Diagram& diagram() const noexcept { return d_; }
  bool is_two_tangle() const noexcept { return d_.boundary().size() == 4; }
  const std::vector<ArcLabel>& endpoints() const noexcept { return d_.boundary(); }
  ArcLabel nw() const { return d_.boundary().at(0); }
  ArcLabel ne() const { return d_.boundary().at(1); }
  ArcLabel se() const { return d_.boundary().at(2); }
  ArcLabel sw() const { return d_.boundary().at(3); }

 private:
  Diagram d_;
};

inline Tangle parse_tangle(std::string_view text) { return Tangle(parse_diagram(text)); }
inline std::string serialize(const Tangle& t) { return serialize(t.diagram()); }

inline void require_two_tangle(const Tangle& t) {
  if (!t.is_two_tangle()) throw std::invalid_argument("operation needs a 2-tangle");
}

enum class Closure { numerator, denominator };

inline const char* to_string(Closure c) { return c == Closure::numerator ? "N" : "D"; }

/// Which endpoint the NW strand ends at.
enum class Connectivity { nw_ne, nw_sw, nw_se };

inline Connectivity connectivity(const Tangle& t) {
  require_two_tangle(t);
  for (const auto& c : components(t.diagram())) {
    if (std::find(c.arcs.begin(), c.arcs.end(), t.nw()) == c.arcs.end()) continue;
    auto has = [&](ArcLabel a) { return std::find(c.arcs.begin(), c.arcs.end(), a) != c.arcs.end(); };
    if (has(t.ne())) return Connectivity::nw_ne;
    if (has(t.sw())) return Connectivity::nw_sw;
    return Connectivity::nw_se;
  }
  throw std::logic_error("NW endpoint has no strand");
}

namespace detail {

/// Join label classes and drop the boundary (or replace it). Classes that no
/// longer occur in any crossing or in the new boundary become circles.
inline Diagram join_labels(std::vector<Crossing> cs, std::vector<ArcLabel> circles,
                           const std::vector<std::pair<ArcLabel, ArcLabel>>& joins, std::vector<ArcLabel> boundary,
                           bool keep_signs = true) {
  std::map<ArcLabel, ArcLabel> parent;
  std::function<ArcLabel(ArcLabel)> find = [&](ArcLabel a) -> ArcLabel {
    auto it = parent.find(a);
    if (it == parent.end() || it->second == a) return a;
    return it->second = find(it->second);
  };
  std::set<ArcLabel> touched;
  for (auto [a, b] : joins) {
    touched.insert(a);
    touched.insert(b);
    a = find(a);
    b = find(b);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  for (auto& c : cs)
    for (auto& s : c.slots) s = find(s);
  for (auto& s : boundary) s = find(s);
  std::set<ArcLabel> used;
  for (const auto& c : cs) used.insert(c.slots.begin(), c.slots.end());
  used.insert(boundary.begin(), boundary.end());
  std::set<ArcLabel> roots;
  for (ArcLabel a : touched) roots.insert(find(a));
  for (ArcLabel r : roots)
    if (!used.count(r)) circles.push_back(r);
  if (!keep_signs)
    for (auto& c : cs) c.sign = Sign::none;
  return Diagram(std::move(cs), std::move(boundary), std::move(circles));
}

/// Orientation of joined strands may clash; then the result is unoriented.
inline Diagram join_labels_any_orientation(const std::vector<Crossing>& cs, const std::vector<ArcLabel>& circles,
                                           const std::vector<std::pair<ArcLabel, ArcLabel>>& joins,
                                           const std::vector<ArcLabel>& boundary) {
  const bool signed_input = !cs.empty() && cs.front().sign != Sign::none;
  bool mixed = false;
  for (const auto& c : cs) mixed = mixed || ((c.sign != Sign::none) != signed_input);
  if (signed_input && !mixed) {
    try {
      return join_labels(cs, circles, joins, boundary, true);
    } catch (const ValidationError& e) {
      if (e.kind() != ValidationKind::orientation) throw;
    }
  }
  return join_labels(cs, circles, joins, boundary, false);
}

}  // namespace detail

/// Close a 2-tangle: N joins NW-NE and SW-SE, D joins NW-SW and NE-SE.
inline Diagram closure(const Tangle& t, Closure which) {
  require_two_tangle(t);
  const auto& d = t.diagram();
  const std::vector<std::pair<ArcLabel, ArcLabel>> joins =
      which == Closure::numerator ? std::vector<std::pair<ArcLabel, ArcLabel>>{{t.nw(), t.ne()}, {t.sw(), t.se()}}
                                  : std::vector<std::pair<ArcLabel, ArcLabel>>{{t.nw(), t.sw()}, {t.ne(), t.se()}};
  return detail::join_labels_any_orientation(d.crossings(), d.circles(), joins, {});
}

inline Diagram numerator_closure(const Tangle& t) { return closure(t, Closure::numerator); }
inline Diagram denominator_closure(const Tangle& t) { return closure(t, Closure::denominator); }

/// Join the two ends of a 1-tangle.
inline Diagram close_one_tangle(const Tangle& t) {
  if (t.is_two_tangle()) throw std::invalid_argument("operation needs a 1-tangle");
  const auto& d = t.diagram();
  return detail::join_labels_any_orientation(d.crossings(), d.circles(), {{d.boundary()[0], d.boundary()[1]}}, {});
}

/// Planar juxtaposition: the east side of `a` is glued to the west side of `b`.
inline Tangle tangle_add(const Tangle& a, const Tangle& b) {
  require_two_tangle(a);
  require_two_tangle(b);
  const auto bs = shifted(b.diagram(), a.diagram().max_label());
  const Tangle bt(bs);
  auto cs = a.diagram().crossings();
  cs.insert(cs.end(), bs.crossings().begin(), bs.crossings().end());
  auto circles = a.diagram().circles();
  circles.insert(circles.end(), bs.circles().begin(), bs.circles().end());
  return Tangle(detail::join_labels_any_orientation(cs, circles, {{a.ne(), bt.nw()}, {a.se(), bt.sw()}},
                                                    {a.nw(), bt.ne(), bt.se(), a.sw()}));
}

/// Every crossing switched; signs negate.
inline Diagram mirror(const Diagram& d) {
  auto cs = d.crossings();
  for (auto& c : cs) {
    const auto s = c.slots;
    if (c.sign == Sign::positive) {
      c.slots = {s[3], s[0], s[1], s[2]};
      c.sign = Sign::negative;
    } else {
      c.slots = {s[1], s[2], s[3], s[0]};
      if (c.sign == Sign::negative) c.sign = Sign::positive;
    }
  }
  return Diagram(std::move(cs), d.boundary(), d.circles());
}

inline Tangle mirror(const Tangle& t) { return Tangle(mirror(t.diagram())); }

/// Quarter turn counterclockwise: the NE endpoint becomes NW.
inline Tangle rotate(const Tangle& t) {
  require_two_tangle(t);
  const auto& d = t.diagram();
  return Tangle(Diagram(d.crossings(), {t.ne(), t.se(), t.sw(), t.nw()}, d.circles()));
}

// ---------------------------------------------------------------------------
// Rational tangles

/// p/q in lowest terms with q >= 0; infinity is 1/0.
struct TangleFraction {
  long long p = 0;
  long long q = 1;

  static TangleFraction make(long long p, long long q) {
    if (p == 0 && q == 0) throw std::domain_error("0/0 is not a tangle fraction");
    const long long g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
    return {p, q};
  }
  bool infinite() const noexcept { return q == 0; }
  std::string str() const { return q == 0 ? "1/0" : std::to_string(p) + "/" + std::to_string(q); }
  friend bool operator==(const TangleFraction&, const TangleFraction&) = default;
};

/// w_n + 1/(w_{n-1} + ... + 1/w_1), evaluated projectively.
inline TangleFraction tangle_fraction(const std::vector<int>& twists) {
  if (twists.empty()) throw std::invalid_argument("twist vector is empty");
  long long p = twists[0], q = 1;
  for (std::size_t i = 1; i < twists.size(); ++i) {
    const long long np = twists[i] * p + q;
    q = p;
    p = np;
  }
  return TangleFraction::make(p, q);
}

/// Row of |n| crossings between two horizontal strands. Positive twists have
/// the over-strand rising from SW to NE.
inline Tangle integer_tangle(int n) {
  if (n == 0) return Tangle(parse_diagram("B 1 1 2 2"));
  ArcLabel tl = 1, bl = 2, next = 3;
  const ArcLabel nw = tl, sw = bl;
  std::vector<Crossing> cs;
  for (int i = 0; i < std::abs(n); ++i) {
    const ArcLabel tr = next++, br = next++;
    if (n > 0)
      cs.push_back({{tl, bl, br, tr}, Sign::none});
    else
      cs.push_back({{bl, br, tr, tl}, Sign::none});
    tl = tr;
    bl = br;
  }
  return Tangle(Diagram(std::move(cs), {nw, tl, bl, sw}));
}

/// Labels renumbered 1..k, crossings kept as they are.
inline Diagram compact_labels(const Diagram& d) {
  std::map<ArcLabel, ArcLabel> order;
  auto see = [&](ArcLabel a) { order.emplace(a, static_cast<ArcLabel>(order.size()) + 1); };
  for (ArcLabel a : d.boundary()) see(a);
  for (const auto& c : d.crossings())
    for (ArcLabel a : c.slots) see(a);
  for (ArcLabel a : d.circles()) see(a);
  return relabeled(d, [&](ArcLabel a) { return order.at(a); });
}

/// Standard alternating build: T_1 = [w_1], T_k = mirror(rotate(T_{k-1})) + [w_k].
inline Tangle rational_tangle(const std::vector<int>& twists) {
  if (twists.empty()) throw std::invalid_argument("twist vector is empty");
  Tangle t = integer_tangle(twists[0]);
  for (std::size_t i = 1; i < twists.size(); ++i) t = tangle_add(mirror(rotate(t)), integer_tangle(twists[i]));
  return Tangle(compact_labels(t.diagram()));
}

inline Tangle zero_tangle() { return integer_tangle(0); }
inline Tangle infinity_tangle() { return Tangle(parse_diagram("B 1 2 2 1")); }

/// The strand through `endpoint` on its own: the other strand and any closed
/// loops are erased, and the two ends are joined along the boundary. A
/// knotted result shows the tangle is not rational.
inline Diagram strand_knot(const Tangle& t, ArcLabel endpoint) {
  const auto& d = t.diagram();
  std::set<ArcLabel> keep;
  for (const auto& c : components(d))
    if (std::find(c.arcs.begin(), c.arcs.end(), endpoint) != c.arcs.end()) keep.insert(c.arcs.begin(), c.arcs.end());
  if (keep.empty()) throw std::invalid_argument("unknown endpoint " + std::to_string(endpoint));
  std::vector<Crossing> cs;
  std::vector<std::pair<ArcLabel, ArcLabel>> joins;
  for (const auto& x : d.crossings()) {
    const bool under = keep.count(x.slots[0]) > 0, over = keep.count(x.slots[1]) > 0;
    if (under && over)
      cs.push_back(x);
    else if (under)
      joins.push_back({x.slots[0], x.slots[2]});
    else if (over)
      joins.push_back({x.slots[1], x.slots[3]});
  }
  std::vector<ArcLabel> ends;
  for (ArcLabel e : d.boundary())
    if (keep.count(e)) ends.push_back(e);
  joins.push_back({ends.front(), ends.back()});
  for (auto& x : cs) x.sign = Sign::none;
  return detail::join_labels(std::move(cs), {}, joins, {}, false);
}

// ---------------------------------------------------------------------------
// Linking and hosts

/// Sum of signs of crossings between the two open strands, i.e. twice the
/// linking number, as an exact integer.
inline int linking_sum(const Tangle& t) {
  require_two_tangle(t);
  const auto& d = t.diagram();
  if (!d.oriented() && d.crossing_count() > 0) throw std::invalid_argument("linking_sum needs an oriented tangle");
  const auto comps = components(d);
  std::map<ArcLabel, int> comp;
  int open = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    open += comps[i].open ? 1 : 0;
    for (ArcLabel a : comps[i].arcs) comp[a] = comps[i].open ? static_cast<int>(i) : -1;
  }
  if (open != 2) throw std::logic_error("a 2-tangle must have exactly two open strands");
  int sum = 0;
  for (const auto& x : d.crossings()) {
    const int u = comp.at(x.slots[0]), o = comp.at(x.slots[1]);
    if (u >= 0 && o >= 0 && u != o) sum += to_int(x.sign);
  }
  return sum;
}

/// Closure of `t` placed next to `host`: any knot containing t looks like this
/// after an isotopy of the complement.
inline Diagram insert_into_host(const Tangle& t, const Tangle& host, Closure which) {
  return closure(tangle_add(t, host), which);
}

/// Splice a 1-tangle into another: the ends are joined crosswise.
inline Diagram insert_one_tangle(const Tangle& t, const Tangle& host) {
  if (t.is_two_tangle() || host.is_two_tangle()) throw std::invalid_argument("operation needs 1-tangles");
  const auto hs = shifted(host.diagram(), t.diagram().max_label());
  auto cs = t.diagram().crossings();
  cs.insert(cs.end(), hs.crossings().begin(), hs.crossings().end());
  auto circles = t.diagram().circles();
  circles.insert(circles.end(), hs.circles().begin(), hs.circles().end());
  return detail::join_labels_any_orientation(
      cs, circles, {{t.diagram().boundary()[1], hs.boundary()[0]}, {hs.boundary()[1], t.diagram().boundary()[0]}}, {});
}

}  // namespace ptangle
