#pragma once

// Reidemeister moves on PD diagrams, recoloring across a move, and R2 transport
// of an arc across faces.

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "colorings.hpp"
#include "diagram.hpp"

namespace ptangle {

enum class MoveKind { r1_plus, r1_minus, r2_plus, r2_minus, r3 };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::r1_plus: return "R1+";
    case MoveKind::r1_minus: return "R1-";
    case MoveKind::r2_plus: return "R2+";
    case MoveKind::r2_minus: return "R2-";
    case MoveKind::r3: return "R3";
  }
  return "?";
}

struct MoveRecord {
  MoveKind kind = MoveKind::r2_plus;
  int face = -1;                    // face of the diagram before the move, when the move has one
  std::vector<ArcLabel> arcs;       // R2+: mover, target; R1+: kinked arc; R3: triangle sides
  std::vector<int> crossings;       // crossings created (R1+, R2+), removed (R1-, R2-) or rewritten (R3)
  std::vector<ArcLabel> fresh;      // labels introduced by the move
  std::vector<ArcLabel> removed;    // labels that no longer occur
  std::vector<ArcLabel> recolored;  // reused labels whose color may change
  bool over = true;                 // R2+: mover passes over the target
  int variant = 0;                  // R1+: kink shape, 0..7
};

struct MoveResult {
  Diagram diagram;
  MoveRecord record;
};

namespace detail {

struct Parts {
  std::vector<Crossing> crossings;
  std::vector<ArcLabel> boundary;
  std::vector<ArcLabel> circles;

  explicit Parts(const Diagram& d) : crossings(d.crossings()), boundary(d.boundary()), circles(d.circles()) {}

  void set_label(int half_edge, ArcLabel a) {
    const int n4 = 4 * static_cast<int>(crossings.size());
    if (half_edge < n4)
      crossings[half_edge / 4].slots[half_edge % 4] = a;
    else
      boundary[half_edge - n4] = a;
  }

  /// Merge label classes (smallest label survives). A merged class that no
  /// longer occurs anywhere has closed up into a crossing-free circle.
  Diagram finish(const std::vector<std::pair<ArcLabel, ArcLabel>>& merges = {}) {
    if (!merges.empty()) {
      std::map<ArcLabel, ArcLabel> parent;
      std::function<ArcLabel(ArcLabel)> find = [&](ArcLabel a) -> ArcLabel {
        auto it = parent.find(a);
        if (it == parent.end() || it->second == a) return a;
        return it->second = find(it->second);
      };
      for (auto [a, b] : merges) {
        a = find(a);
        b = find(b);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        parent[b] = a;
      }
      std::set<ArcLabel> roots;
      for (const auto& [a, b] : merges) roots.insert(find(a));
      for (auto& c : crossings)
        for (auto& s : c.slots) s = find(s);
      for (auto& s : boundary) s = find(s);
      for (ArcLabel r : roots) {
        bool used = false;
        for (const auto& c : crossings)
          for (ArcLabel s : c.slots) used = used || s == r;
        for (ArcLabel s : boundary) used = used || s == r;
        if (!used) circles.push_back(r);
      }
    }
    return Diagram(std::move(crossings), std::move(boundary), std::move(circles));
  }
};

/// Build a crossing from labels listed counterclockwise. `over_odd` says the
/// over pair sits at list positions 1 and 3. With `incoming` the crossing is
/// rotated to start at the incoming under-strand and signed.
inline Crossing make_crossing(std::array<ArcLabel, 4> ccw, bool over_odd, const std::array<bool, 4>* incoming) {
  int k = over_odd ? 0 : 1;
  if (incoming && !(*incoming)[k]) k += 2;
  Crossing c;
  for (int i = 0; i < 4; ++i) c.slots[i] = ccw[(i + k) % 4];
  if (incoming) c.sign = (*incoming)[(3 + k) % 4] ? Sign::positive : Sign::negative;
  return c;
}

inline void erase_crossings(std::vector<Crossing>& cs, std::vector<int> idx) {
  std::sort(idx.rbegin(), idx.rend());
  for (int i : idx) cs.erase(cs.begin() + i);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// R2

/// Push a finger of `mover` across the face it shares with `target` and over
/// (or under) it. Both crossings are appended. The mover keeps its label on the
/// piece before the finger; the tip beyond the target is `fresh[0]`.
inline MoveResult apply_r2(const Diagram& d, ArcLabel mover, ArcLabel target, bool over = true, int face = -1) {
  if (mover == target) throw std::invalid_argument("R2 needs two distinct arcs");
  if (!d.has_label(mover) || !d.has_label(target)) throw std::invalid_argument("R2: unknown arc");
  if (d.half_edges_of(mover).empty() || d.half_edges_of(target).empty())
    throw std::invalid_argument("R2 on a crossing-free circle is not supported");
  if (face < 0) face = shared_face(d, mover, target);
  if (face < 0)
    throw std::invalid_argument("arcs " + std::to_string(mover) + " and " + std::to_string(target) + " are not co-facial");
  const int dT = dart_in_face(d, target, face);
  const int dM = dart_in_face(d, mover, face);
  if (dT < 0 || dM < 0) throw std::invalid_argument("arcs do not both bound face " + std::to_string(face));

  const ArcLabel base = d.max_label();
  const ArcLabel m1 = base + 1, m2 = base + 2, t1 = base + 3, t2 = base + 4;
  detail::Parts p(d);
  p.set_label(d.mate(dT), t2);
  p.set_label(d.mate(dM), m2);

  // The target runs P -> Q with the face on its right, the mover R -> S. The
  // finger crosses the target first near Q (crossing A), then near P (B).
  const std::array<ArcLabel, 4> a_ccw{t1, mover, t2, m1};
  const std::array<ArcLabel, 4> b_ccw{target, m2, t1, m1};
  if (d.oriented()) {
    const auto in = incoming_half_edges(d);
    const bool t_fwd = !in[dT];  // target leaves P
    const bool m_fwd = !in[dM];  // mover leaves R
    const std::array<bool, 4> a_in{t_fwd, m_fwd, !t_fwd, !m_fwd};
    const std::array<bool, 4> b_in{t_fwd, !m_fwd, !t_fwd, m_fwd};
    p.crossings.push_back(detail::make_crossing(a_ccw, over, &a_in));
    p.crossings.push_back(detail::make_crossing(b_ccw, over, &b_in));
  } else {
    p.crossings.push_back(detail::make_crossing(a_ccw, over, nullptr));
    p.crossings.push_back(detail::make_crossing(b_ccw, over, nullptr));
  }

  MoveRecord rec;
  rec.kind = MoveKind::r2_plus;
  rec.face = face;
  rec.arcs = {mover, target};
  const int n = static_cast<int>(d.crossing_count());
  rec.crossings = {n, n + 1};
  rec.fresh = {m1, m2, t1, t2};
  rec.over = over;
  return {p.finish(), rec};
}

/// R2 with the mover passing over the target.
inline MoveResult apply_r2_over(const Diagram& d, ArcLabel mover, ArcLabel target, int face = -1) {
  return apply_r2(d, mover, target, true, face);
}

/// Remove a bigon between crossings `c1` and `c2` whose one side is over at
/// both crossings and the other under at both. Outer pieces merge, keeping the
/// smaller label.
inline MoveResult apply_r2_minus(const Diagram& d, int c1, int c2) {
  const int n = static_cast<int>(d.crossing_count());
  if (c1 == c2 || c1 < 0 || c2 < 0 || c1 >= n || c2 >= n) throw std::invalid_argument("R2-: bad crossing indices");
  const Face* bigon = nullptr;
  int bigon_id = -1;
  for (std::size_t f = 0; f < d.faces().size(); ++f) {
    const auto& face = d.faces()[f];
    if (face.corners.size() != 2) continue;
    const int v0 = face.corners[0].vertex, v1 = face.corners[1].vertex;
    if ((v0 == c1 && v1 == c2) || (v0 == c2 && v1 == c1)) {
      bigon = &face;
      bigon_id = static_cast<int>(f);
      break;
    }
  }
  if (!bigon) throw std::invalid_argument("R2-: crossings do not bound a bigon");

  std::vector<std::pair<ArcLabel, ArcLabel>> merges;
  std::vector<ArcLabel> removed;
  for (int h : bigon->darts) {
    const int g = d.mate(h);
    const bool over_h = Crossing::is_over(d.slot_of(h));
    if (over_h != Crossing::is_over(d.slot_of(g))) throw std::invalid_argument("R2-: bigon is alternating");
    // outer pieces of the same strand: opposite slots at each end
    const ArcLabel outer_h = d.label_at(d.half_edge(d.vertex_of(h), d.slot_of(h) ^ 2));
    const ArcLabel outer_g = d.label_at(d.half_edge(d.vertex_of(g), d.slot_of(g) ^ 2));
    merges.emplace_back(outer_h, outer_g);
    removed.push_back(d.label_at(h));
  }
  if (Crossing::is_over(d.slot_of(bigon->darts[0])) == Crossing::is_over(d.slot_of(bigon->darts[1])))
    throw std::invalid_argument("R2-: both bigon sides on the same level");

  detail::Parts p(d);
  detail::erase_crossings(p.crossings, {c1, c2});
  MoveRecord rec;
  rec.kind = MoveKind::r2_minus;
  rec.face = bigon_id;
  rec.crossings = {std::min(c1, c2), std::max(c1, c2)};
  rec.removed = removed;
  for (const auto& [a, b] : merges)
    if (a != b) rec.removed.push_back(std::max(a, b));
  std::sort(rec.removed.begin(), rec.removed.end());
  return {p.finish(merges), rec};
}

// ---------------------------------------------------------------------------
// R1

/// Add a kink on `arc`. The loop occupies two adjacent slots of the new
/// crossing; `variant` (0..7) picks which pair and whether the arc enters
/// under or over. The arc keeps its label up to the kink.
inline MoveResult apply_r1_plus(const Diagram& d, ArcLabel arc, int variant = 0) {
  if (variant < 0 || variant > 7) throw std::invalid_argument("R1+: variant must be in 0..7");
  const auto hs = d.half_edges_of(arc);
  if (hs.empty()) throw std::invalid_argument("R1+: arc " + std::to_string(arc) + " has no crossing end");
  const ArcLabel k1 = d.max_label() + 1, k2 = d.max_label() + 2;
  detail::Parts p(d);
  const int h0 = hs[0];
  p.set_label(d.mate(h0), k2);

  // loop on list positions s, s+1; the arc enters opposite one of them
  const int s = variant / 2;
  const bool enter_opposite_first = variant % 2 == 0;
  std::array<ArcLabel, 4> ccw{};
  ccw[s] = k1;
  ccw[(s + 1) % 4] = k1;
  const int e_pos = enter_opposite_first ? (s + 2) % 4 : (s + 3) % 4;
  const int k2_pos = enter_opposite_first ? (s + 3) % 4 : (s + 2) % 4;
  ccw[e_pos] = arc;
  ccw[k2_pos] = k2;
  // strand: arc -> (e_pos) ... (e_pos + 2) -> loop -> (other loop slot) ... opposite -> k2
  if (d.oriented()) {
    const auto in = incoming_half_edges(d);
    const bool fwd = !in[h0];  // the strand leaves h0's vertex along `arc`
    std::array<bool, 4> incoming{};
    incoming[e_pos] = fwd;
    incoming[(e_pos + 2) % 4] = !fwd;
    incoming[(k2_pos + 2) % 4] = fwd;
    incoming[k2_pos] = !fwd;
    p.crossings.push_back(detail::make_crossing(ccw, true, &incoming));
  } else {
    p.crossings.push_back(detail::make_crossing(ccw, true, nullptr));
  }
  MoveRecord rec;
  rec.kind = MoveKind::r1_plus;
  rec.arcs = {arc};
  rec.crossings = {static_cast<int>(d.crossing_count())};
  rec.fresh = {k1, k2};
  rec.variant = variant;
  return {p.finish(), rec};
}

/// Remove crossing `c`, which must carry a loop (one label in two adjacent slots).
inline MoveResult apply_r1_minus(const Diagram& d, int c) {
  if (c < 0 || c >= static_cast<int>(d.crossing_count())) throw std::invalid_argument("R1-: bad crossing index");
  const auto& x = d.crossings()[c];
  int s = -1;
  for (int i = 0; i < 4; ++i)
    if (x.slots[i] == x.slots[(i + 1) % 4]) {
      s = i;
      break;
    }
  if (s < 0) throw std::invalid_argument("R1-: crossing " + std::to_string(c) + " has no loop");
  const ArcLabel loop = x.slots[s];
  const ArcLabel a = x.slots[(s + 2) % 4], b = x.slots[(s + 3) % 4];
  detail::Parts p(d);
  detail::erase_crossings(p.crossings, {c});
  MoveRecord rec;
  rec.kind = MoveKind::r1_minus;
  rec.crossings = {c};
  rec.removed = {loop};
  if (a != b) rec.removed.push_back(std::max(a, b));
  if (a == loop || b == loop) throw std::invalid_argument("R1-: crossing is a closed curl, not a kink");
  return {p.finish({{a, b}}), rec};
}

// ---------------------------------------------------------------------------
// R3

struct R3Site {
  int face = -1;
  int rotation = 0;  // which dart of the triangle is the sliding side
};

namespace detail {

inline bool r3_valid(const Diagram& d, int face, int r) {
  const auto& f = d.faces()[face];
  if (f.darts.size() != 3) return false;
  const int hS = f.darts[r % 3], hL1 = f.darts[(r + 1) % 3], hL2 = f.darts[(r + 2) % 3];
  const int cap = d.cap_vertex();
  const int c2 = d.vertex_of(hS), c1 = d.vertex_of(hL1), c3 = d.vertex_of(hL2);
  if (!d.is_closed() && (c1 == cap || c2 == cap || c3 == cap)) return false;
  if (c1 == c2 || c2 == c3 || c1 == c3) return false;
  return Crossing::is_over(d.slot_of(hS)) == Crossing::is_over(d.slot_of(d.mate(hS)));
}

}  // namespace detail

/// Triangle faces where R3 applies, each with its first valid sliding side.
inline std::vector<R3Site> r3_sites(const Diagram& d) {
  std::vector<R3Site> out;
  for (int f = 0; f < static_cast<int>(d.faces().size()); ++f)
    for (int r = 0; r < 3; ++r)
      if (detail::r3_valid(d, f, r)) {
        out.push_back({f, r});
        break;
      }
  return out;
}

/// Slide one side of a triangle face across the opposite crossing. Labels are
/// reused: the three triangle sides keep their labels on the new triangle.
inline MoveResult apply_r3(const Diagram& d, R3Site site) {
  if (site.face < 0 || site.face >= static_cast<int>(d.faces().size()) || !detail::r3_valid(d, site.face, site.rotation))
    throw std::invalid_argument("R3 does not apply at face " + std::to_string(site.face));
  const auto& f = d.faces()[site.face];
  const int hS = f.darts[site.rotation % 3], hL1 = f.darts[(site.rotation + 1) % 3],
            hL2 = f.darts[(site.rotation + 2) % 3];
  const int c2 = d.vertex_of(hS), c1 = d.vertex_of(hL1), c3 = d.vertex_of(hL2);
  const int p = d.slot_of(d.mate(hS)), q = d.slot_of(hS), r3 = d.slot_of(d.mate(hL1));
  auto at = [&](int v, int slot) { return d.half_edge(v, slot % 4); };
  auto lab = [&](int v, int slot) { return d.label_at(at(v, slot)); };

  // Around the triangle, S runs a -> b -> c crossing L2 at c2 then L1 at c1;
  // L1 and L2 run a -> b -> c through c3 and then S.
  const ArcLabel Sb = lab(c1, p), L1b = lab(c1, p + 1), Sc = lab(c1, p + 2), L1c = lab(c1, p + 3);
  const ArcLabel L2c = lab(c2, q + 1), Sa = lab(c2, q + 2), L2b = lab(c2, q + 3);
  const ArcLabel L1a = lab(c3, r3 + 2), L2a = lab(c3, r3 + 3);
  const bool s_over = Crossing::is_over(q);
  const bool l1_over = Crossing::is_over(r3);

  const std::array<ArcLabel, 4> n1{Sb, L1b, Sa, L1a};
  const std::array<ArcLabel, 4> n2{Sc, L2b, Sb, L2a};
  const std::array<ArcLabel, 4> n3{L1c, L2c, L1b, L2b};
  detail::Parts parts(d);
  if (d.oriented()) {
    const auto in = incoming_half_edges(d);
    const bool s_fwd = in[at(c2, q + 2)];     // Sa enters c2
    const bool l1_fwd = in[at(c3, r3 + 2)];   // L1a enters c3
    const bool l2_fwd = in[at(c3, r3 + 3)];   // L2a enters c3
    const std::array<bool, 4> i1{!s_fwd, !l1_fwd, s_fwd, l1_fwd};
    const std::array<bool, 4> i2{!s_fwd, !l2_fwd, s_fwd, l2_fwd};
    const std::array<bool, 4> i3{!l1_fwd, !l2_fwd, l1_fwd, l2_fwd};
    parts.crossings[c1] = detail::make_crossing(n1, !s_over, &i1);
    parts.crossings[c2] = detail::make_crossing(n2, !s_over, &i2);
    parts.crossings[c3] = detail::make_crossing(n3, !l1_over, &i3);
  } else {
    parts.crossings[c1] = detail::make_crossing(n1, !s_over, nullptr);
    parts.crossings[c2] = detail::make_crossing(n2, !s_over, nullptr);
    parts.crossings[c3] = detail::make_crossing(n3, !l1_over, nullptr);
  }
  MoveRecord rec;
  rec.kind = MoveKind::r3;
  rec.face = site.face;
  rec.arcs = {Sb, L1b, L2b};
  rec.crossings = {c1, c2, c3};
  rec.recolored = {Sb, L1b, L2b};
  return {parts.finish(), rec};
}

// ---------------------------------------------------------------------------
// Inverses

/// Undo a move on the diagram it produced.
inline MoveResult apply_inverse(const Diagram& after, const MoveRecord& m) {
  switch (m.kind) {
    case MoveKind::r2_plus: return apply_r2_minus(after, m.crossings[0], m.crossings[1]);
    case MoveKind::r1_plus: return apply_r1_minus(after, m.crossings[0]);
    case MoveKind::r3: {
      // the new triangle is the face bounded by the three reused side labels
      for (int f = 0; f < static_cast<int>(after.faces().size()); ++f) {
        const auto& face = after.faces()[f];
        if (face.darts.size() != 3) continue;
        std::vector<ArcLabel> sides;
        for (int h : face.darts) sides.push_back(after.label_at(h));
        std::sort(sides.begin(), sides.end());
        auto want = m.arcs;
        std::sort(want.begin(), want.end());
        if (sides != want) continue;
        for (int r = 0; r < 3; ++r)
          if (after.label_at(face.darts[r]) == m.arcs[0] && detail::r3_valid(after, f, r)) return apply_r3(after, {f, r});
      }
      throw std::invalid_argument("R3 inverse: triangle not found");
    }
    default: throw std::invalid_argument(std::string("no stored inverse for ") + to_string(m.kind));
  }
}

// ---------------------------------------------------------------------------
// Recoloring

namespace detail {

inline std::set<ArcLabel> move_site(const MoveRecord& m) {
  std::set<ArcLabel> s(m.fresh.begin(), m.fresh.end());
  s.insert(m.recolored.begin(), m.recolored.end());
  return s;
}

}  // namespace detail

/// The coloring of `after` that agrees with `c` away from the move site.
inline FoxColoring recolor_after_move(const FoxColoring& c, const MoveRecord& m, const Diagram& before,
                                      const Diagram& after) {
  (void)before;
  const auto site = detail::move_site(m);
  Pins pins;
  for (ArcLabel a : after.labels())
    if (!site.count(a)) {
      auto it = c.colors.find(a);
      if (it == c.colors.end()) throw std::invalid_argument("coloring misses arc " + std::to_string(a));
      pins[a] = it->second;
    }
  const auto space = fox_solution_space(after, c.modulus, pins);
  if (space.empty()) throw std::logic_error("coloring does not extend across the move");
  const auto& sol = space.solutions();
  auto out = space.to_coloring(sol.particular);
  for (std::size_t j = 0; j < sol.generators.size(); ++j)
    for (ArcLabel a : site)
      if (after.has_label(a) && sol.generators[j][space.strand_map().of(a)] != 0)
        throw std::logic_error("coloring extension across the move is not unique");
  return out;
}

inline QuandleColoring recolor_after_move(const QuandleColoring& c, const Quandle& q, const MoveRecord& m,
                                          const Diagram& before, const Diagram& after) {
  (void)before;
  const auto site = detail::move_site(m);
  std::map<ArcLabel, int> pins;
  for (ArcLabel a : after.labels())
    if (!site.count(a)) pins[a] = c.colors.at(a);
  const auto r = quandle_colorings(after, q, pins, 2);
  if (r.colorings.empty()) throw std::logic_error("coloring does not extend across the move");
  if (r.colorings.size() > 1) throw std::logic_error("coloring extension across the move is not unique");
  return r.colorings.front();
}

// ---------------------------------------------------------------------------
// R2 transport

template <class C>
struct TransportResult {
  Diagram diagram;
  C coloring;
  ArcLabel tip = 0;
  std::vector<MoveRecord> moves;
};

namespace detail {

/// Shortest face path from any face of `from` to any face of `to`, crossing
/// arcs other than `from`. Returns the first arc to cross and the face it is
/// crossed from; ties go to the smallest face ids.
inline std::pair<int, ArcLabel> first_hop(const Diagram& d, ArcLabel from, ArcLabel to) {
  const int nf = static_cast<int>(d.faces().size());
  std::vector<std::vector<std::pair<int, ArcLabel>>> adj(nf);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    const ArcLabel a = d.label_at(h);
    if (a == from) continue;
    const int f = d.face_of_dart(h), g = d.face_of_dart(d.mate(h));
    if (f != g) adj[f].push_back({g, a});
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  const auto targets = faces_of_arc(d, to);
  std::vector<int> dist(nf, -1), parent(nf, -1);
  std::vector<ArcLabel> via(nf, 0);
  std::deque<int> queue;
  for (int f : faces_of_arc(d, from)) {
    dist[f] = 0;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    if (std::binary_search(targets.begin(), targets.end(), f)) {
      int g = f;
      while (dist[g] > 1) g = parent[g];
      return {parent[g], via[g]};
    }
    for (const auto& [g, a] : adj[f])
      if (dist[g] < 0) {
        dist[g] = dist[f] + 1;
        parent[g] = f;
        via[g] = a;
        queue.push_back(g);
      }
  }
  throw std::invalid_argument("face graph is disconnected: arcs " + std::to_string(from) + " and " +
                              std::to_string(to) + " cannot be brought together");
}

template <class C, class Recolor>
TransportResult<C> transport(const Diagram& d, const C& c, ArcLabel source, ArcLabel dest, Recolor recolor) {
  if (!d.has_label(source) || !d.has_label(dest)) throw std::invalid_argument("transport: unknown arc");
  if (source == dest) throw std::invalid_argument("transport needs two distinct arcs");
  TransportResult<C> out{d, c, source, {}};
  while (!co_facial(out.diagram, out.tip, dest)) {
    const auto [face, arc] = first_hop(out.diagram, out.tip, dest);
    auto step = apply_r2_over(out.diagram, out.tip, arc, face);
    out.coloring = recolor(out.coloring, step.record, out.diagram, step.diagram);
    out.diagram = std::move(step.diagram);
    out.tip = step.record.fresh[0];
    out.moves.push_back(std::move(step.record));
  }
  return out;
}

}  // namespace detail

/// Push `source` over obstructing arcs until a piece of it shares a face with
/// `dest`. The returned tip keeps the color of `source`.
inline TransportResult<FoxColoring> r2_transport(const Diagram& d, const FoxColoring& c, ArcLabel source, ArcLabel dest) {
  return detail::transport(d, c, source, dest, [](const FoxColoring& col, const MoveRecord& m, const Diagram& b,
                                                  const Diagram& a) { return recolor_after_move(col, m, b, a); });
}

inline TransportResult<QuandleColoring> r2_transport(const Diagram& d, const QuandleColoring& c, const Quandle& q,
                                                     ArcLabel source, ArcLabel dest) {
  return detail::transport(d, c, source, dest,
                           [&q](const QuandleColoring& col, const MoveRecord& m, const Diagram& b, const Diagram& a) {
                             return recolor_after_move(col, q, m, b, a);
                           });
}

}  // namespace ptangle
