// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ptangle/corpus.hpp"
#include "ptangle/persistence.hpp"
#include "random_diagrams.hpp"
#include "test_util.hpp"

using namespace ptangle;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

FoxColoring first_coloring(const Diagram& d, Residue n) {
  auto c = fox_solution_space(d, n).nontrivial();
  if (!c) throw std::runtime_error("no nontrivial coloring mod " + std::to_string(n));
  return *c;
}

Tangle corpus_tangle(const std::string& name) { return Tangle(corpus(name)); }

std::string status(const VerificationReport& r) {
  std::ostringstream s;
  s << r.hosts_passed << "/" << r.hosts << " hosts, " << r.closures_checked << " knot closures";
  if (!r.defect.empty()) s << ", defect: " << r.defect;
  if (!r.passed && !r.counterexample.empty()) s << ", failing closure has " << parse_diagram(r.counterexample).crossing_count() << " crossings";
  return s.str();
}

// 1 ------------------------------------------------------------------------
Outcome coloring_counts() {
  Outcome o;
  int diagrams = 0, checks = 0;
  for (const auto& name : corpus_files()) {
    const auto d = corpus(name);
    if (d.crossing_count() > 8) continue;
    ++diagrams;
    for (int n = 2; n <= 7; ++n) {
      ++checks;
      const auto got = fox_solution_space(d, n).count();
      const auto want = oracle::brute_fox_count(d, n);
      o.check(got == want, name + " mod " + std::to_string(n) + ": " + std::to_string(got) + " vs brute force " +
                               std::to_string(want));
    }
  }
  o.detail = std::to_string(diagrams) + " corpus diagrams with at most 8 crossings, N = 2..7, " +
             std::to_string(checks) + " exact comparisons";
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome determinants() {
  Outcome o;
  const std::vector<std::pair<std::string, long long>> want{
      {"trefoil.pd", 3}, {"figure8.pd", 5}, {"knot-6_2.pd", 11}, {"knot-8_16.pd", 35}};
  std::string got;
  for (const auto& [name, det] : want) {
    const auto d = corpus(name);
    const auto lib = static_cast<long long>(determinant(d));
    const auto ref = oracle::knot_det(d);
    o.check(lib == det && ref == det, name + ": library " + std::to_string(lib) + ", minor oracle " +
                                          std::to_string(ref) + ", expected " + std::to_string(det));
    got += (got.empty() ? "" : ", ") + name.substr(0, name.size() - 3) + " " + std::to_string(lib);
  }
  o.check(determinant(corpus("knot-8_16.pd")) % 5 == 0 && has_nontrivial_fox(corpus("knot-8_16.pd"), 5),
          "8_16 has no nontrivial 5-coloring");
  o.check(determinant(corpus("knot-6_2.pd")) % 11 == 0 && has_nontrivial_fox(corpus("knot-6_2.pd"), 11),
          "6_2 has no nontrivial 11-coloring");
  o.detail = got + "; 5 | det(8_16), 11 | det(6_2)";
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome krebes_certificates() {
  Outcome o;
  std::string got;
  for (auto [name, p] : std::vector<std::pair<std::string, Residue>>{
           {"krebes.pd", 3}, {"krebes-family-5.pd", 5}, {"krebes-family-7.pd", 7}}) {
    const auto c = find_certificate(corpus_tangle(name));
    const bool ok = c && c->kind == CertificateKind::fox && c->modulus == p;
    o.check(ok, name + ": expected a Fox certificate mod " + std::to_string(p) + ", got " + (c ? c->describe() : "none"));
    got += (got.empty() ? "" : ", ") + name + " " + (c ? c->describe() : "none");
  }
  o.detail = got;
  return o;
}

// 4 ------------------------------------------------------------------------
struct Emitted {
  std::string source;
  Tangle tangle;
  Certificate certificate;
};

std::vector<Emitted> emitted_certificates() {
  std::vector<Emitted> out;
  for (const char* name : {"krebes.pd", "krebes-family-5.pd", "krebes-family-7.pd", "t-plus-tstar-7.pd"}) {
    const auto t = corpus_tangle(name);
    out.push_back({name, t, *find_certificate(t)});
  }
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-6_2.pd", "knot-8_16.pd"}) {
    const auto d = corpus(name);
    const auto c = first_coloring(d, prime_divisors(determinant(d)).front());
    for (ArcLabel a : d.labels()) {
      auto r = cut_arc_twice(d, c, a);
      out.push_back({std::string(name) + " cut twice at " + std::to_string(a), r.tangle, r.certificate});
    }
    auto once = cut_arc_once(d, c, d.labels().front());
    out.push_back({std::string(name) + " cut once", once.tangle, once.certificate});
  }
  {
    const auto d = corpus("trefoil.pd");
    const auto c = first_coloring(d, 3);
    auto r = cut_two_arcs(d, c, 4, 5);
    out.push_back({"trefoil.pd arcs 4, 5", r.tangle, r.certificate});
  }
  {
    const auto d = corpus("knot-8_16.pd");
    const auto c = first_coloring(d, 5);
    const auto sm = strands(d);
    for (ArcLabel a : d.labels())
      for (ArcLabel b : d.labels()) {
        if (a >= b || sm.of(a) == sm.of(b) || c.colors.at(a) != c.colors.at(b)) continue;
        auto r = cut_two_arcs(d, c, a, b);
        out.push_back({"knot-8_16.pd arcs " + std::to_string(a) + ", " + std::to_string(b), r.tangle, r.certificate});
      }
  }
  {
    const auto d = oriented_copy(corpus("knot-6_2.pd"));
    const auto cd = ensure_same_colored_pair(d, first_coloring(d, 11));
    for (auto& s : inflate_linking(cd.diagram, cd.coloring, cd.pair.first, cd.pair.second, 3))
      out.push_back({"knot-6_2.pd linking stage " + std::to_string(s.passes), s.tangle, s.certificate});
  }
  return out;
}

Outcome certificate_soundness() {
  Outcome o;
  const auto all = emitted_certificates();
  long closures = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto rep = verify_certificate(all[i].tangle, all[i].certificate, 100, i);
    closures += rep.closures_checked;
    o.check(rep.passed && !rep.vacuous(), all[i].source + ": " + status(rep));
  }
  o.detail = std::to_string(all.size()) + " certificates, 100 random rational hosts each plus 0 and 1/0, " +
             std::to_string(closures) + " knot closures colored";
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome cut_two_arcs_pipeline() {
  Outcome o;
  const auto d = corpus("trefoil.pd");
  const auto c = first_coloring(d, 3);
  o.check(c.colors.at(4) == c.colors.at(5), "arcs 4 and 5 differ in color");
  o.check(!co_facial(d, 4, 5), "arcs 4 and 5 already share a face");
  const auto r = cut_two_arcs(d, c, 4, 5);
  o.check(r.certificate.moves.size() >= 1, "no transport move was made");
  o.check(r.certificate.kind == CertificateKind::fox && r.certificate.modulus == 3, "certificate is not mod 3");
  const auto rep = verify_certificate(r.tangle, r.certificate, 100);
  o.check(rep.passed && !rep.vacuous(), "verification: " + status(rep));
  o.detail = "trefoil arcs 4, 5 (color " + std::to_string(c.colors.at(4)) + "), " +
             std::to_string(r.certificate.moves.size()) + " R2 move(s), " + r.certificate.describe() + ", " + status(rep);
  return o;
}

// 6 ------------------------------------------------------------------------
Outcome linking_inflation() {
  Outcome o;
  const auto d = oriented_copy(corpus("knot-6_2.pd"));
  const auto cd = ensure_same_colored_pair(d, first_coloring(d, 11));
  const auto stages = inflate_linking(cd.diagram, cd.coloring, cd.pair.first, cd.pair.second, 3);
  std::string seq;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& s = stages[k];
    seq += (seq.empty() ? "" : ", ") + std::to_string(s.linking);
    if (k == 0) continue;
    o.check(s.linking != 0, "k = " + std::to_string(k) + ": linking sum is 0");
    o.check(std::abs(s.linking) > std::abs(stages[k - 1].linking), "k = " + std::to_string(k) + ": |linking| did not grow");
    o.check(s.certificate.modulus == 11 && s.certificate.boundary_color == stages[0].certificate.boundary_color,
            "k = " + std::to_string(k) + ": mod-11 boundary color not preserved");
    o.check(!certificate_defect(s.tangle, s.certificate), "k = " + std::to_string(k) + ": certificate malformed");
  }
  o.detail = "6_2 mod 11, linking sums (half-units) for k = 0..3: " + seq;
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome negative_controls() {
  Outcome o;
  const auto e = load_corpus_entry(corpus_path("no-monochromatic-coloring.pd"));
  const Tangle clash(e.diagram);
  std::vector<Quandle> dihedrals;
  for (int n = 3; n <= 15; n += 2) dihedrals.push_back(dihedral(n));
  const auto s = search_certificate(clash, {}, dihedrals, e.names);
  o.check(!s.certificate, "clash tangle: a certificate was found");
  const bool witnessed = s.propagation && s.propagation->collapsed && !s.propagation->clashes.empty();
  o.check(witnessed, "clash tangle: no propagation clash");
  const std::string rel = witnessed ? s.propagation->clashes.front().relation : "";
  o.check(rel == "e = c", "clash tangle: first clash is '" + rel + "'");

  const auto t = corpus_tangle("closures-det5-det3.pd");
  const auto g = krebes_gcd(t);
  o.check(g == 1, "det5/det3 tangle: krebes gcd " + std::to_string(g));
  int found = 0;
  for (Residue p : primes_up_to(97)) found += fox_certificate(t, p) ? 1 : 0;
  o.check(found == 0, "det5/det3 tangle: " + std::to_string(found) + " primes give certificates");
  o.detail = "clash tangle: none, clash '" + rel + "' (" + s.reason + "); det5/det3 tangle: gcd " + std::to_string(g) +
             ", no Fox certificate for primes <= 97";
  return o;
}

// 8 ------------------------------------------------------------------------
Outcome reidemeister_invariance() {
  Outcome o;
  std::mt19937_64 rng(8);
  int diagrams = 0, moves = 0, transports = 0;
  auto same = [&](const Diagram& a, const Diagram& b, const std::string& what) {
    ++moves;
    for (int n = 2; n <= 7; ++n) {
      const auto x = fox_solution_space(a, n).count(), y = fox_solution_space(b, n).count();
      if (x != y) {
        o.check(false, what + " mod " + std::to_string(n) + ": " + std::to_string(x) + " -> " + std::to_string(y) +
                           "\n" + serialize(a));
        return;
      }
    }
  };
  for (int i = 0; i < 150; ++i) {
    const auto d = testgen::random_diagram(rng, 8);
    if (d.crossings().empty()) continue;
    ++diagrams;
    const ArcLabel a = d.crossings()[rng() % d.crossing_count()].slots[rng() % 4];
    const auto r1 = apply_r1_plus(d, a, static_cast<int>(rng() % 8));
    same(d, r1.diagram, "R1+");
    same(r1.diagram, apply_inverse(r1.diagram, r1.record).diagram, "R1-");
    std::vector<std::pair<int, std::pair<ArcLabel, ArcLabel>>> pairs;
    const auto& faces = d.faces();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      for (ArcLabel x : faces[f].arcs)
        for (ArcLabel y : faces[f].arcs)
          if (x != y && !d.half_edges_of(x).empty() && !d.half_edges_of(y).empty()) pairs.push_back({f, {x, y}});
    if (!pairs.empty()) {
      const auto& [f, p] = pairs[rng() % pairs.size()];
      for (bool over : {true, false}) {
        const auto r2 = apply_r2(d, p.first, p.second, over, f);
        same(d, r2.diagram, over ? "R2+ over" : "R2+ under");
        same(r2.diagram, apply_inverse(r2.diagram, r2.record).diagram, "R2-");
      }
    }
    for (const auto& site : r3_sites(d)) same(d, apply_r3(d, site).diagram, "R3");
    // transport between two random arcs of a knot keeps the determinant
    if (closed_component_count(d) == 1) {
      const auto& ls = d.labels();
      const ArcLabel x = ls[rng() % ls.size()];
      ArcLabel y = x;
      while (y == x) y = ls[rng() % ls.size()];
      if (!d.half_edges_of(x).empty() && !d.half_edges_of(y).empty()) {
        const auto c = *fox_solution_space(d, 2).enumerate().colorings.begin();
        const auto t = r2_transport(d, c, x, y);
        ++transports;
        o.check(determinant(t.diagram) == determinant(d), "r2_transport changed the determinant of\n" + serialize(d));
      }
    }
  }
  o.check(diagrams >= 100, "only " + std::to_string(diagrams) + " diagrams");
  o.detail = std::to_string(diagrams) + " random diagrams, " + std::to_string(moves) + " moves x N = 2..7, " +
             std::to_string(transports) + " transports";
  return o;
}

// 9 ------------------------------------------------------------------------
Outcome rational_calculus() {
  Outcome o;
  int vectors = 0;
  std::vector<int> w;
  std::function<void(int)> rec = [&](int len) {
    if (!w.empty()) {
      ++vectors;
      const auto f = tangle_fraction(w);
      const auto [p, q] = oracle::continued_fraction(w);
      const auto t = rational_tangle(w);
      const auto dn = static_cast<long long>(link_determinant(numerator_closure(t)));
      const auto dd = static_cast<long long>(link_determinant(denominator_closure(t)));
      const bool ok = f.p == p && f.q == q &&
                      ((dn == std::llabs(p) && dd == std::llabs(q)) || (dn == std::llabs(q) && dd == std::llabs(p)));
      if (!ok) {
        std::string s;
        for (int x : w) s += std::to_string(x) + " ";
        o.check(false, "twists " + s + ": fraction " + f.str() + ", dets " + std::to_string(dn) + ", " + std::to_string(dd));
      }
    }
    if (len == 4) return;
    for (int x = -3; x <= 3; ++x) {
      w.push_back(x);
      rec(len + 1);
      w.pop_back();
    }
  };
  rec(0);
  o.detail = std::to_string(vectors) + " twist vectors of length 1..4 over [-3, 3]";
  return o;
}

// 10 -----------------------------------------------------------------------
Outcome t_plus_tstar_sweep() {
  Outcome o;
  std::mt19937_64 rng(0);
  int certified = 0, sampled = 0;
  std::vector<std::string> lines;
  while (sampled < 20) {
    const auto w = random_twists(rng);
    const auto f = tangle_fraction(w);
    if (f.p == 0 || f.infinite()) continue;
    ++sampled;
    const auto r = build_t_plus_tstar(w);
    std::string what = twist_string(w) + " (" + f.str() + "): ";
    if (!r.certificate) {
      o.check(false, what + "no certificate, " + r.reason);
      continue;
    }
    const auto rep = verify_certificate(r.tangle, *r.certificate, 100, sampled);
    if (!rep.passed) {
      o.check(false, what + r.certificate->describe() + " fails verification, " + status(rep));
    } else if (rep.vacuous() || r.closed_component) {
      o.check(false, what + r.certificate->describe() + " is vacuous, " + r.reason);
    } else {
      ++certified;
    }
  }
  o.detail = std::to_string(certified) + "/20 random rational T give a verified certificate for T + T*";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"coloring counts match brute force", coloring_counts},
      {"determinants", determinants},
      {"krebes tangle and family certificates", krebes_certificates},
      {"certificate soundness on random hosts", certificate_soundness},
      {"cut two same-colored arcs after R2 transport", cut_two_arcs_pipeline},
      {"linking inflation keeps the mod-11 color", linking_inflation},
      {"negative controls", negative_controls},
      {"Reidemeister invariance", reidemeister_invariance},
      {"rational tangle closures", rational_calculus},
      {"T + T* for random rational T", t_plus_tstar_sweep},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "; "
              << o.detail << " [" << std::fixed << std::setprecision(1) << secs << "s]\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
