#pragma once

// Persistence certificates: boundary-monochromatic colorings of tangles, the
// cut constructions that produce them from colored knots, certificate search
// and verification against random hosts, and obstruction reports.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "colorings.hpp"
#include "diagram.hpp"
#include "moves.hpp"
#include "tangle.hpp"

namespace ptangle {

enum class CertificateKind { fox, quandle };

/// A nontrivial coloring of a tangle that gives every endpoint the same color.
struct Certificate {
  CertificateKind kind = CertificateKind::fox;
  Residue modulus = 0;  // Fox modulus; for quandles the order
  std::optional<Quandle> quandle;
  std::map<ArcLabel, Residue> colors;
  Residue boundary_color = 0;
  std::pair<ArcLabel, ArcLabel> witness{0, 0};
  std::vector<MoveRecord> moves;

  std::string describe() const {
    if (kind == CertificateKind::fox) return "fox mod " + std::to_string(modulus);
    return "quandle " + (quandle ? quandle->name() : std::string("?"));
  }
};

namespace detail {

inline bool coloring_valid(const Diagram& d, const Certificate& c) {
  if (c.kind == CertificateKind::fox) return verify_fox(d, FoxColoring{c.modulus, c.colors});
  if (!c.quandle) return false;
  QuandleColoring q;
  for (auto [a, v] : c.colors) q.colors[a] = static_cast<int>(v);
  return verify_quandle(d, *c.quandle, q);
}

inline std::pair<ArcLabel, ArcLabel> find_witness(const Diagram& d, const std::map<ArcLabel, Residue>& colors,
                                                  Residue boundary_color) {
  const ArcLabel end = d.boundary().empty() ? d.labels().front() : d.boundary().front();
  for (ArcLabel a : d.labels())
    if (colors.at(a) != boundary_color) return {end, a};
  throw std::invalid_argument("coloring is trivial; the certificate would be vacuous");
}

inline Certificate make_certificate(const Diagram& t, CertificateKind kind, Residue modulus,
                                    std::optional<Quandle> q, std::map<ArcLabel, Residue> colors,
                                    std::vector<MoveRecord> moves = {}) {
  Certificate c;
  c.kind = kind;
  c.modulus = modulus;
  c.quandle = std::move(q);
  c.colors = std::move(colors);
  c.boundary_color = c.colors.at(t.boundary().front());
  c.witness = find_witness(t, c.colors, c.boundary_color);
  c.moves = std::move(moves);
  return c;
}

}  // namespace detail

/// Empty when `c` is a well-formed certificate for `t`, else the defect.
inline std::optional<std::string> certificate_defect(const Tangle& t, const Certificate& c) {
  const auto& d = t.diagram();
  for (ArcLabel a : d.labels())
    if (!c.colors.count(a)) return "arc " + std::to_string(a) + " has no color";
  for (ArcLabel e : t.endpoints())
    if (c.colors.at(e) != c.boundary_color) return "endpoint " + std::to_string(e) + " is not boundary-colored";
  if (!detail::coloring_valid(d, c)) return "coloring violates a crossing relation";
  const auto [w1, w2] = c.witness;
  if (!d.has_label(w1) || !d.has_label(w2)) return "witness arcs are not in the tangle";
  if (c.colors.at(w1) == c.colors.at(w2)) return "witness arcs have the same color";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cuts

struct CutResult {
  Tangle tangle;
  Certificate certificate;
  Diagram before_cut;  // the diagram (after any moves) that was cut open
};

namespace detail {

inline void require_closed_knot(const Diagram& d) {
  if (!d.is_closed()) throw std::invalid_argument("cut needs a closed diagram");
  if (closed_component_count(d) != 1) throw std::invalid_argument("cut needs a 1-component diagram");
}

inline int cut_dart(const Diagram& d, ArcLabel a, int face) {
  if (!d.has_label(a)) throw std::invalid_argument("unknown arc " + std::to_string(a));
  const auto hs = d.half_edges_of(a);
  if (hs.empty()) throw std::invalid_argument("arc " + std::to_string(a) + " has no crossing end");
  if (face < 0) return hs.front();
  const int h = dart_in_face(d, a, face);
  if (h < 0) throw std::invalid_argument("arc " + std::to_string(a) + " does not bound face " + std::to_string(face));
  return h;
}

template <class Colors>
Colors with_fresh(Colors colors, ArcLabel from, std::initializer_list<ArcLabel> fresh) {
  const auto v = colors.at(from);
  for (ArcLabel f : fresh) colors[f] = v;
  return colors;
}

}  // namespace detail

/// Open one arc of a knot: a 1-tangle whose two ends are the arc's pieces.
inline Tangle cut_arc_once(const Diagram& d, ArcLabel arc) {
  detail::require_closed_knot(d);
  if (!d.has_label(arc)) throw std::invalid_argument("unknown arc " + std::to_string(arc));
  if (d.crossing_count() == 0) return Tangle(Diagram({}, {arc, arc}, {}));
  const int h = detail::cut_dart(d, arc, -1);
  const ArcLabel fresh = d.max_label() + 1;
  detail::Parts p(d);
  p.set_label(d.mate(h), fresh);
  p.boundary = {fresh, arc};
  return Tangle(p.finish());
}

/// 1-tangle certificate: the cut arc's color on both ends.
inline CutResult cut_arc_once(const Diagram& d, const FoxColoring& c, ArcLabel arc) {
  if (!verify_fox(d, c) || !c.nontrivial()) throw std::invalid_argument("cut needs a valid nontrivial coloring");
  auto t = cut_arc_once(d, arc);
  auto colors = c.colors;
  for (ArcLabel a : t.diagram().labels())
    if (!colors.count(a)) colors[a] = c.colors.at(arc);
  auto cert = detail::make_certificate(t.diagram(), CertificateKind::fox, c.modulus, std::nullopt, std::move(colors));
  return {std::move(t), std::move(cert), d};
}

namespace detail {

/// Cut `arc` at two points on the side of face_of_dart(h). The middle piece
/// becomes a crossing-free strand with both ends on the boundary.
inline Diagram cut_twice(const Diagram& d, ArcLabel arc, ArcLabel& mid, ArcLabel& far) {
  const int h = cut_dart(d, arc, -1);
  far = d.max_label() + 1;
  mid = d.max_label() + 2;
  Parts p(d);
  p.set_label(d.mate(h), far);
  p.boundary = {far, mid, mid, arc};
  return p.finish();
}

/// Cut two arcs bounding face `f` once each; the boundary runs around the
/// band joining the cut points inside f.
inline Diagram cut_pair(const Diagram& d, ArcLabel a1, ArcLabel a2, int f, ArcLabel& f1, ArcLabel& f2) {
  const int h1 = cut_dart(d, a1, f), h2 = cut_dart(d, a2, f);
  f1 = d.max_label() + 1;
  f2 = d.max_label() + 2;
  Parts p(d);
  p.set_label(d.mate(h1), f1);
  p.set_label(d.mate(h2), f2);
  p.boundary = {f1, a1, f2, a2};
  return p.finish();
}

}  // namespace detail

/// Cut one arc at two points; all four ends carry the arc's color.
inline CutResult cut_arc_twice(const Diagram& d, const FoxColoring& c, ArcLabel arc) {
  detail::require_closed_knot(d);
  if (!verify_fox(d, c)) throw std::invalid_argument("coloring is not valid on the diagram");
  if (!c.nontrivial()) throw std::invalid_argument("coloring is trivial; the certificate would be vacuous");
  ArcLabel mid = 0, far = 0;
  Tangle t(detail::cut_twice(d, arc, mid, far));
  auto cert = detail::make_certificate(t.diagram(), CertificateKind::fox, c.modulus, std::nullopt,
                                       detail::with_fresh(c.colors, arc, {mid, far}));
  return {std::move(t), std::move(cert), d};
}

inline CutResult cut_arc_twice(const Diagram& d, const QuandleColoring& c, const Quandle& q, ArcLabel arc) {
  detail::require_closed_knot(d);
  if (!verify_quandle(d, q, c)) throw std::invalid_argument("coloring is not valid on the diagram");
  if (!c.nontrivial()) throw std::invalid_argument("coloring is trivial; the certificate would be vacuous");
  ArcLabel mid = 0, far = 0;
  Tangle t(detail::cut_twice(d, arc, mid, far));
  std::map<ArcLabel, Residue> colors(c.colors.begin(), c.colors.end());
  auto cert = detail::make_certificate(t.diagram(), CertificateKind::quandle, q.size(), q,
                                       detail::with_fresh(colors, arc, {mid, far}));
  return {std::move(t), std::move(cert), d};
}

/// Cut two same-colored arcs once each, first pushing a1 over obstructing
/// arcs until it shares a face with a2. The move trace is kept in the
/// certificate.
inline CutResult cut_two_arcs(const Diagram& d, const FoxColoring& c, ArcLabel a1, ArcLabel a2) {
  detail::require_closed_knot(d);
  if (a1 == a2) throw std::invalid_argument("cut needs two distinct arcs");
  if (!verify_fox(d, c)) throw std::invalid_argument("coloring is not valid on the diagram");
  if (!c.nontrivial()) throw std::invalid_argument("coloring is trivial; the certificate would be vacuous");
  if (c.colors.at(a1) != c.colors.at(a2)) throw std::invalid_argument("arcs have different colors");
  auto moved = r2_transport(d, c, a1, a2);
  const int f = shared_face(moved.diagram, moved.tip, a2);
  ArcLabel f1 = 0, f2 = 0;
  Tangle t(detail::cut_pair(moved.diagram, moved.tip, a2, f, f1, f2));
  auto colors = detail::with_fresh(moved.coloring.colors, moved.tip, {f1, f2});
  auto cert = detail::make_certificate(t.diagram(), CertificateKind::fox, c.modulus, std::nullopt, std::move(colors),
                                       std::move(moved.moves));
  return {std::move(t), std::move(cert), std::move(moved.diagram)};
}

inline CutResult cut_two_arcs(const Diagram& d, const QuandleColoring& c, const Quandle& q, ArcLabel a1, ArcLabel a2) {
  detail::require_closed_knot(d);
  if (a1 == a2) throw std::invalid_argument("cut needs two distinct arcs");
  if (!verify_quandle(d, q, c)) throw std::invalid_argument("coloring is not valid on the diagram");
  if (!c.nontrivial()) throw std::invalid_argument("coloring is trivial; the certificate would be vacuous");
  if (c.colors.at(a1) != c.colors.at(a2)) throw std::invalid_argument("arcs have different colors");
  auto moved = r2_transport(d, c, q, a1, a2);
  const int f = shared_face(moved.diagram, moved.tip, a2);
  ArcLabel f1 = 0, f2 = 0;
  Tangle t(detail::cut_pair(moved.diagram, moved.tip, a2, f, f1, f2));
  std::map<ArcLabel, Residue> colors(moved.coloring.colors.begin(), moved.coloring.colors.end());
  auto cert = detail::make_certificate(t.diagram(), CertificateKind::quandle, q.size(), q,
                                       detail::with_fresh(colors, moved.tip, {f1, f2}), std::move(moved.moves));
  return {std::move(t), std::move(cert), std::move(moved.diagram)};
}

/// Two labels on different strands with equal colors, lowest labels first.
inline std::optional<std::pair<ArcLabel, ArcLabel>> same_colored_pair(const Diagram& d, const FoxColoring& c) {
  const auto sm = strands(d);
  std::map<Residue, ArcLabel> first;
  for (ArcLabel a : d.labels()) {
    if (d.half_edges_of(a).empty()) continue;
    auto [it, fresh] = first.emplace(c.colors.at(a), a);
    if (!fresh && sm.of(it->second) != sm.of(a)) return std::pair{it->second, a};
  }
  return std::nullopt;
}

struct ColoredDiagram {
  Diagram diagram;
  FoxColoring coloring;
  std::pair<ArcLabel, ArcLabel> pair{0, 0};
  std::vector<MoveRecord> moves;
};

/// Make sure two distinct arcs share a color. When every arc has its own
/// color, an arc is passed under a differently colored neighbor: the pieces
/// before and after the pass get the same color back.
inline ColoredDiagram ensure_same_colored_pair(const Diagram& d, const FoxColoring& c) {
  if (auto p = same_colored_pair(d, c)) return {d, c, *p, {}};
  const auto& faces = d.faces();
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (ArcLabel m : faces[f].arcs)
      for (ArcLabel t : faces[f].arcs) {
        if (m == t || c.colors.at(m) == c.colors.at(t)) continue;
        if (d.half_edges_of(m).empty() || d.half_edges_of(t).empty()) continue;
        auto step = apply_r2(d, m, t, false, f);
        auto col = recolor_after_move(c, step.record, d, step.diagram);
        const ArcLabel m2 = step.record.fresh[1];
        return {std::move(step.diagram), std::move(col), {m, m2}, {step.record}};
      }
  throw std::invalid_argument("no two differently colored arcs share a face");
}

// ---------------------------------------------------------------------------
// Obstructions

/// gcd of the determinants of the two closures; gcd(0, x) = x.
inline std::uint64_t krebes_gcd(const Tangle& t) {
  require_two_tangle(t);
  return std::gcd(link_determinant(numerator_closure(t)), link_determinant(denominator_closure(t)));
}

inline std::vector<Residue> primes_up_to(Residue n) {
  std::vector<Residue> out;
  for (Residue p = 2; p <= n; ++p) {
    bool prime = true;
    for (Residue q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

inline std::vector<Residue> prime_divisors(std::uint64_t n) {
  std::vector<Residue> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(static_cast<Residue>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(static_cast<Residue>(n));
  return out;
}

inline constexpr Residue default_prime_bound = 97;

/// Prime divisors of the closure gcd when it is informative, else small primes.
inline std::vector<Residue> default_moduli(const Tangle& t) {
  const std::uint64_t g =
      t.is_two_tangle() ? krebes_gcd(t) : link_determinant(close_one_tangle(t));
  if (g > 1) return prime_divisors(g);
  return primes_up_to(default_prime_bound);
}

inline std::optional<Certificate> fox_certificate(const Tangle& t, Residue modulus) {
  Pins pins;
  for (ArcLabel e : t.endpoints()) pins[e] = 0;
  const auto space = fox_solution_space(t.diagram(), modulus, pins);
  const auto c = space.nontrivial();
  if (!c) return std::nullopt;
  return detail::make_certificate(t.diagram(), CertificateKind::fox, modulus, std::nullopt, c->colors);
}

inline std::optional<Certificate> quandle_certificate(const Tangle& t, const Quandle& q) {
  if (!q.involutory()) return std::nullopt;  // unoriented hosts need a*b*b = a
  for (int e = 0; e < q.size(); ++e) {
    std::map<ArcLabel, int> pins;
    for (ArcLabel a : t.endpoints()) pins[a] = e;
    const auto r = quandle_colorings(t.diagram(), q, pins, 2);
    for (const auto& c : r.colorings)
      if (c.nontrivial()) {
        std::map<ArcLabel, Residue> colors(c.colors.begin(), c.colors.end());
        return detail::make_certificate(t.diagram(), CertificateKind::quandle, q.size(), q, std::move(colors));
      }
  }
  return std::nullopt;
}

/// First certificate found, Fox moduli in increasing order, then quandles.
inline std::optional<Certificate> find_certificate(const Tangle& t, std::vector<Residue> moduli,
                                                   const std::vector<Quandle>& quandles = {}) {
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  for (Residue n : moduli)
    if (auto c = fox_certificate(t, n)) return c;
  for (const auto& q : quandles)
    if (auto c = quandle_certificate(t, q)) return c;
  return std::nullopt;
}

inline std::optional<Certificate> find_certificate(const Tangle& t) { return find_certificate(t, default_moduli(t)); }

// ---------------------------------------------------------------------------
// Symbolic propagation

/// Linear form over the rationals in the named unknowns.
using Rational = boost::rational<long long>;
using LinearForm = std::map<int, Rational>;

struct ClashWitness {
  int crossing = -1;
  std::string relation;  // the disagreeing crossing, "strand = forced value"
  std::string lhs;       // the unknown eliminated by the clash
  std::string rhs;       // what it equals
  std::string str() const { return lhs + " = " + rhs; }
};

struct Propagation {
  std::vector<std::string> names;     // per strand
  std::vector<std::string> unknowns;  // unknown i is called unknowns[i]; unknown 0 is the boundary color
  std::vector<LinearForm> values;     // per strand, after all clashes are resolved
  std::vector<ClashWitness> clashes;
  bool collapsed = false;  // every strand forced to the boundary color

  std::string format(const LinearForm& f) const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [v, k] : f) {
      if (k.numerator() == 0) continue;
      const bool neg = k.numerator() < 0;
      const auto a = neg ? -k : k;
      out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (a != Rational(1)) out << a.numerator() << (a.denominator() != 1 ? "/" + std::to_string(a.denominator()) : "");
      out << unknowns[v];
      first = false;
    }
    return first ? "0" : out.str();
  }
};

/// Color every endpoint with `a` and push Fox relations through the tangle:
/// at a crossing whose over-strand and one under-strand are known, the other
/// under-strand is forced. Stalls introduce a fresh unknown; a crossing whose
/// three strands are known but disagree forces an equation, which is
/// recorded and eliminated. `names` optionally fixes the letter of the strand
/// carrying a given arc.
inline Propagation propagate_boundary_color(const Tangle& t, const std::map<ArcLabel, std::string>& names = {}) {
  const auto& d = t.diagram();
  const auto sm = strands(d);
  const int ns = static_cast<int>(sm.size());
  Propagation P;
  P.names.assign(ns, "");
  P.values.assign(ns, {});
  std::vector<bool> known(ns, false);
  for (const auto& [arc, name] : names)
    if (d.has_label(arc)) P.names[sm.of(arc)] = name;
  P.unknowns.push_back("a");
  for (ArcLabel e : t.endpoints()) {
    const int s = sm.of(e);
    known[s] = true;
    P.values[s] = {{0, 1}};
    if (P.names[s].empty()) P.names[s] = "a";
  }
  std::set<std::string> used(P.names.begin(), P.names.end());
  char next = 'b';
  auto fresh_name = [&](int s) {
    if (!P.names[s].empty()) return;
    while (used.count(std::string(1, next))) ++next;
    P.names[s] = std::string(1, next++);
    used.insert(P.names[s]);
  };
  auto combine = [](const LinearForm& x, long long kx, const LinearForm& y, long long ky) {
    LinearForm r;
    for (const auto& [v, k] : x) r[v] += k * kx;
    for (const auto& [v, k] : y) r[v] += k * ky;
    for (auto it = r.begin(); it != r.end();) it = it->second.numerator() == 0 ? r.erase(it) : std::next(it);
    return r;
  };
  auto name_of_value = [&](const LinearForm& f, int skip) -> std::string {
    // prefer an interior strand over the boundary color
    std::string found;
    for (int s = 0; s < ns; ++s)
      if (s != skip && known[s] && P.values[s] == f && (found.empty() || found == P.unknowns[0])) found = P.names[s];
    return found.empty() ? P.format(f) : found;
  };
  auto eliminate = [&](const LinearForm& zero, ClashWitness& why) {
    // solve zero == 0 for its newest unknown and substitute
    int v = zero.rbegin()->first;
    const auto k = zero.rbegin()->second;
    LinearForm sub;
    for (const auto& [w, c] : zero)
      if (w != v) sub[w] = -c / k;
    why.lhs = P.unknowns[v];
    why.rhs = P.format(sub);
    for (int s = 0; s < ns; ++s) {
      if (!known[s] || !P.values[s].count(v)) continue;
      const auto c = P.values[s][v];
      P.values[s].erase(v);
      for (const auto& [w, cw] : sub) P.values[s][w] += c * cw;
      for (auto it = P.values[s].begin(); it != P.values[s].end();)
        it = it->second.numerator() == 0 ? P.values[s].erase(it) : std::next(it);
    }
  };

  const auto& cs = d.crossings();
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
      const int u = sm.of(cs[i].slots[0]), o = sm.of(cs[i].slots[1]), w = sm.of(cs[i].slots[2]);
      if (!known[o]) continue;
      if (known[u] && !known[w]) {
        P.values[w] = combine(P.values[o], 2, P.values[u], -1);
        known[w] = true;
        fresh_name(w);
        progress = true;
      } else if (known[w] && !known[u]) {
        P.values[u] = combine(P.values[o], 2, P.values[w], -1);
        known[u] = true;
        fresh_name(u);
        progress = true;
      } else if (known[u] && known[w]) {
        const auto forced = combine(P.values[o], 2, P.values[u], -1);
        const auto diff = combine(P.values[w], 1, forced, -1);
        if (diff.empty()) continue;
        ClashWitness why{i, P.names[w] + " = " + name_of_value(forced, w), "", ""};
        eliminate(diff, why);
        P.clashes.push_back(why);
        progress = true;
      }
      if (progress) break;
    }
    if (progress) continue;
    // stalled: give the first unknown strand at a crossing a fresh unknown
    for (const auto& x : cs)
      for (int slot : {1, 0, 2}) {
        const int s = sm.of(x.slots[slot]);
        if (known[s] || progress) continue;
        const int v = static_cast<int>(P.unknowns.size());
        fresh_name(s);
        P.unknowns.push_back(P.names[s]);
        P.values[s] = {{v, 1}};
        known[s] = true;
        progress = true;
      }
  }
  P.collapsed = true;
  for (int s = 0; s < ns; ++s)
    if (!known[s] || P.values[s] != LinearForm{{0, 1}}) P.collapsed = false;
  return P;
}

struct CertificateSearch {
  std::optional<Certificate> certificate;
  std::vector<Residue> moduli;
  std::vector<std::string> quandles;
  std::optional<std::uint64_t> krebes;  // 2-tangles only
  std::optional<Propagation> propagation;
  std::string reason;  // why nothing was found
};

/// find_certificate plus the evidence that explains a negative answer.
inline CertificateSearch search_certificate(const Tangle& t, std::vector<Residue> moduli = {},
                                            const std::vector<Quandle>& quandles = {},
                                            const std::map<ArcLabel, std::string>& names = {}) {
  CertificateSearch out;
  if (moduli.empty()) moduli = default_moduli(t);
  std::sort(moduli.begin(), moduli.end());
  out.moduli = moduli;
  for (const auto& q : quandles) out.quandles.push_back(q.name());
  if (t.is_two_tangle()) out.krebes = krebes_gcd(t);
  out.certificate = find_certificate(t, moduli, quandles);
  if (out.certificate) return out;
  std::vector<std::string> why;
  if (out.krebes && *out.krebes == 1) why.push_back("krebes gcd = 1");
  out.propagation = propagate_boundary_color(t, names);
  if (out.propagation->collapsed && !out.propagation->clashes.empty()) {
    const auto& w = out.propagation->clashes.front();
    why.push_back("inconsistency at crossing " + std::to_string(w.crossing) + " (" + w.relation + ")");
  }
  if (why.empty()) why.push_back("no certificate for the moduli and quandles tried");
  for (std::size_t i = 0; i < why.size(); ++i) out.reason += (i ? "; " : "") + why[i];
  return out;
}

// ---------------------------------------------------------------------------
// Verification against hosts

/// The certificate colors on the tangle part of `closure`, boundary color on
/// every host label (labels above `tangle_max`).
inline std::map<ArcLabel, Residue> extend_certificate(const Certificate& c, ArcLabel tangle_max, const Diagram& closure) {
  std::map<ArcLabel, Residue> out;
  for (ArcLabel a : closure.labels()) out[a] = a <= tangle_max ? c.colors.at(a) : c.boundary_color;
  return out;
}

struct HostCheck {
  std::string host;
  Closure closure = Closure::numerator;  // unused for 1-tangles
  int components = 1;
  bool checked = false;  // 1-component closures only
  bool passed = true;
};

struct VerificationReport {
  std::vector<HostCheck> checks;
  int hosts = 0;
  int hosts_passed = 0;
  int closures_checked = 0;
  bool passed = true;
  std::string counterexample;  // serialized failing closure
  bool vacuous() const { return closures_checked == 0; }
  std::string defect;          // certificate defect, if malformed
};

inline std::string twist_string(const std::vector<int>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

inline std::vector<int> random_twists(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 4), entry(-3, 3);
  std::vector<int> w(len(rng));
  for (int& x : w) x = entry(rng);
  return w;
}

namespace detail {

inline bool closure_colored(const Certificate& c, const Diagram& k, ArcLabel tangle_max) {
  Certificate ext = c;
  ext.colors = extend_certificate(c, tangle_max, k);
  if (!coloring_valid(k, ext)) return false;
  Residue first = ext.colors.begin()->second;
  for (const auto& [a, v] : ext.colors)
    if (v != first) return true;
  return false;
}

}  // namespace detail

/// Place `t` in the 0 and infinity hosts and in `trials` seeded random
/// rational hosts; every 1-component closure must carry the monochromatic
/// extension of `c` as a valid nontrivial coloring. Stops at the first
/// failure.
inline VerificationReport verify_certificate(const Tangle& t, const Certificate& c, int trials, std::uint64_t seed = 0) {
  VerificationReport rep;
  if (auto defect = certificate_defect(t, c)) {
    rep.passed = false;
    rep.defect = *defect;
    return rep;
  }
  std::mt19937_64 rng(seed);
  const ArcLabel tmax = t.diagram().max_label();
  auto run = [&](const std::string& name, const Diagram& k, Closure which) {
    HostCheck h{name, which, static_cast<int>(closed_component_count(k)), false, true};
    if (h.components == 1) {
      h.checked = true;
      h.passed = detail::closure_colored(c, k, tmax);
      ++rep.closures_checked;
    }
    rep.checks.push_back(h);
    if (!h.passed) {
      rep.passed = false;
      rep.counterexample = serialize(k);
    }
    return h.passed;
  };

  if (t.is_two_tangle()) {
    std::vector<std::pair<std::string, Tangle>> hosts{{"0", zero_tangle()}, {"1/0", infinity_tangle()}};
    for (int i = 0; i < trials; ++i) {
      auto w = random_twists(rng);
      hosts.emplace_back(twist_string(w), rational_tangle(w));
    }
    for (const auto& [name, host] : hosts) {
      ++rep.hosts;
      bool ok = true;
      for (Closure which : {Closure::numerator, Closure::denominator})
        ok = run(name, insert_into_host(t, host, which), which) && ok;
      if (!ok) break;
      ++rep.hosts_passed;
    }
  } else {
    std::vector<std::pair<std::string, Tangle>> hosts{{"trivial", Tangle(parse_diagram("B 1 1"))}};
    while (static_cast<int>(hosts.size()) < trials + 1) {
      auto w = random_twists(rng);
      const auto k = numerator_closure(rational_tangle(w));
      if (closed_component_count(k) != 1) continue;
      hosts.emplace_back("N" + twist_string(w), cut_arc_once(k, k.labels().front()));
    }
    for (const auto& [name, host] : hosts) {
      ++rep.hosts;
      if (!run(name, insert_one_tangle(t, host), Closure::numerator)) break;
      ++rep.hosts_passed;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// T + T*

struct TPlusTStar {
  std::vector<int> twists;
  TangleFraction fraction;
  Tangle tangle;
  std::optional<Certificate> certificate;
  bool closed_component = false;  // then no knot contains the tangle
  std::string reason;             // "cannot exist ...", "not found ...", or a degeneracy note
};

/// T + mirror(T) for the rational tangle T of `twists`.
inline TPlusTStar build_t_plus_tstar(const std::vector<int>& twists, std::vector<Residue> moduli = {}) {
  const auto f = tangle_fraction(twists);
  if (f.p == 0) throw std::invalid_argument("twist vector gives the zero tangle");
  if (f.infinite()) throw std::invalid_argument("twist vector gives the infinity tangle");
  const auto T = rational_tangle(twists);
  Tangle sum(compact_labels(tangle_add(T, mirror(T)).diagram()));
  if (moduli.empty()) moduli = default_moduli(sum);
  auto cert = find_certificate(sum, moduli);
  TPlusTStar out{twists, f, sum, cert, false, ""};
  for (const auto& c : components(sum.diagram())) out.closed_component = out.closed_component || !c.open;
  if (out.closed_component)
    out.reason = "T joins NE to SE, so T + T* contains a closed loop and lies in no knot";
  if (!cert) {
    if (f.q == 1)
      out.reason += std::string(out.reason.empty() ? "" : "; ") + "cannot exist: T is isotopic to the integer tangle [" + std::to_string(f.p) +
                   "], so T + T* is isotopic to the zero tangle";
    else if (!out.closed_component)
      out.reason = "not found for the moduli tried";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linking inflation

struct LinkingStage {
  int passes = 0;
  Diagram knot;  // oriented diagram before the cut
  FoxColoring coloring;
  ArcLabel cut1 = 0, cut2 = 0;
  Tangle tangle;
  Certificate certificate;
  int linking = 0;
};

namespace detail {

inline std::optional<LinkingStage> cut_stage(const Diagram& k, const FoxColoring& c, ArcLabel tip, int passes) {
  const Residue col = c.colors.at(tip);
  std::optional<LinkingStage> best;
  for (ArcLabel b : k.labels()) {
    if (b == tip || c.colors.at(b) != col || k.half_edges_of(b).empty() || !co_facial(k, tip, b)) continue;
    const int f = shared_face(k, tip, b);
    ArcLabel f1 = 0, f2 = 0;
    Tangle t(cut_pair(k, tip, b, f, f1, f2));
    if (!t.diagram().oriented()) continue;
    const int lk = linking_sum(t);
    if (best && std::abs(lk) <= std::abs(best->linking)) continue;
    auto cert = make_certificate(t.diagram(), CertificateKind::fox, c.modulus, std::nullopt,
                                 with_fresh(c.colors, tip, {f1, f2}));
    best = LinkingStage{passes, k, c, tip, b, std::move(t), std::move(cert), lk};
  }
  return best;
}

}  // namespace detail

/// Cut a same-colored pair, then repeatedly push the cut arc across a
/// neighbor (over it, or under a neighbor of its own color) so that each
/// pass adds an inter-strand crossing. Returns stages 0..passes; each pass
/// is chosen to make |linking_sum| as large as possible.
inline std::vector<LinkingStage> inflate_linking(const Diagram& knot, const FoxColoring& c, ArcLabel a1, ArcLabel a2,
                                                 int passes) {
  detail::require_closed_knot(knot);
  if (!knot.oriented()) throw std::invalid_argument("linking inflation needs an oriented diagram");
  if (c.colors.at(a1) != c.colors.at(a2)) throw std::invalid_argument("arcs have different colors");
  auto moved = r2_transport(knot, c, a1, a2);
  std::vector<LinkingStage> stages;
  auto first = detail::cut_stage(moved.diagram, moved.coloring, moved.tip, 0);
  if (!first) throw std::logic_error("transported arc has no same-colored neighbor");
  stages.push_back(std::move(*first));
  for (int k = 1; k <= passes; ++k) {
    const auto& prev = stages.back();
    const Diagram& d = prev.knot;
    const ArcLabel tip = prev.cut1;
    const Residue col = prev.coloring.colors.at(tip);
    std::optional<LinkingStage> best;
    const auto& faces = d.faces();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (dart_in_face(d, tip, f) < 0) continue;
      for (ArcLabel y : faces[f].arcs) {
        if (y == tip || d.half_edges_of(y).empty()) continue;
        for (bool over : {true, false}) {
          if (!over && prev.coloring.colors.at(y) != col) continue;
          MoveResult step;
          try {
            step = apply_r2(d, tip, y, over, f);
          } catch (const std::invalid_argument&) {
            continue;
          }
          const auto col2 = recolor_after_move(prev.coloring, step.record, d, step.diagram);
          auto cand = detail::cut_stage(step.diagram, col2, step.record.fresh[0], k);
          if (!cand || std::abs(cand->linking) <= std::abs(prev.linking)) continue;
          if (best && std::abs(cand->linking) <= std::abs(best->linking)) continue;
          best = std::move(cand);
        }
      }
    }
    if (!best) throw std::runtime_error("no R2 pass increases the linking sum at pass " + std::to_string(k));
    stages.push_back(std::move(*best));
  }
  return stages;
}

// ---------------------------------------------------------------------------
// Irreducibility evidence

/// A closure showing the tangle is not rational: N(T + [n]) (or the same
/// with T turned a quarter) has at least p^3 Fox colorings mod p, while every
/// closure of a rational tangle plus an integer tangle is a 2-bridge link
/// with at most p^2.
struct RationalityObstruction {
  Residue prime = 0;
  int twist = 0;
  bool rotated = false;
  std::uint64_t colorings = 0;

  std::string str() const {
    return std::string("N(") + (rotated ? "rot(T)" : "T") + " + [" + std::to_string(twist) + "]) has " +
           std::to_string(colorings) + " colorings mod " + std::to_string(prime);
  }
};

inline std::optional<RationalityObstruction> rationality_obstruction(const Tangle& t, int max_twist = 4,
                                                                      Residue max_prime = 13) {
  require_two_tangle(t);
  for (bool rotated : {false, true}) {
    const Tangle base = rotated ? rotate(t) : t;
    for (int n = -max_twist; n <= max_twist; ++n) {
      const auto k = numerator_closure(tangle_add(base, integer_tangle(n)));
      for (Residue p : primes_up_to(max_prime)) {
        const auto count = fox_solution_space(k, p).count();
        if (count >= static_cast<std::uint64_t>(p * p * p)) return RationalityObstruction{p, n, rotated, count};
      }
    }
  }
  return std::nullopt;
}

struct ClosureEvidence {
  int components = 0;
  std::uint64_t determinant = 0;
  std::vector<Residue> colorable_moduli;  // primes <= bound with a nontrivial coloring
  bool nontrivial = false;                // 1-component and provably knotted by colorings
};

struct IrreducibilityReport {
  std::optional<TangleFraction> fraction;  // set when built from a twist vector
  bool fraction_reducible_hint = false;
  bool zero_or_infinity = false;
  std::optional<RationalityObstruction> non_rational;
  ClosureEvidence numerator, denominator;
  std::uint64_t krebes = 0;
  std::string local_knots = "not checked";
  std::string verdict;
};

namespace detail {

inline ClosureEvidence closure_evidence(const Diagram& k, const std::vector<Quandle>& quandles) {
  ClosureEvidence e;
  e.components = closed_component_count(k);
  e.determinant = link_determinant(k);
  for (Residue p : primes_up_to(default_prime_bound))
    if (has_nontrivial_fox(k, p)) e.colorable_moduli.push_back(p);
  bool quandle_hit = false;
  for (const auto& q : quandles) {
    if (!q.involutory() && !k.oriented()) continue;
    for (const auto& c : quandle_colorings(k, q, {}, 1u << 16).colorings)
      if (c.nontrivial()) quandle_hit = true;
  }
  e.nontrivial = e.components == 1 && (e.determinant != 1 || quandle_hit);
  return e;
}

}  // namespace detail

/// Evidence toward irreducibility: closure components, determinants,
/// colorability and the closure gcd. Never a proof; local knots are not
/// examined.
inline IrreducibilityReport irreducibility_report(const Tangle& t, std::optional<std::vector<int>> twists = std::nullopt,
                                                  const std::vector<Quandle>& quandles = {}) {
  require_two_tangle(t);
  IrreducibilityReport r;
  if (twists) {
    r.fraction = tangle_fraction(*twists);
    r.fraction_reducible_hint = true;
  }
  const auto& d = t.diagram();
  const auto conn = connectivity(t);
  r.zero_or_infinity = d.crossing_count() == 0 && (conn == Connectivity::nw_ne || conn == Connectivity::nw_sw);
  r.numerator = detail::closure_evidence(numerator_closure(t), quandles);
  r.denominator = detail::closure_evidence(denominator_closure(t), quandles);
  r.krebes = krebes_gcd(t);
  if (!twists && !r.zero_or_infinity) r.non_rational = rationality_obstruction(t);
  if (r.zero_or_infinity) {
    r.verdict = "zero or infinity tangle: excluded";
  } else if (r.fraction_reducible_hint) {
    r.verdict = "rational by construction (fraction " + r.fraction->str() + "): reducible";
  } else {
    bool ok = true;
    for (const auto* e : {&r.numerator, &r.denominator})
      if (e->components == 1 && !e->nontrivial) ok = false;
    if (!ok)
      r.verdict = "a 1-component closure is not shown knotted";
    else if (r.non_rational)
      r.verdict = "consistent with irreducible (not rational; evidence only, local knots not checked)";
    else
      r.verdict = "consistent with irreducible (rationality undecided; evidence only, local knots not checked)";
  }
  return r;
}

}  // namespace ptangle
