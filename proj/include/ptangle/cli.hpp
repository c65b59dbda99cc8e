#pragma once

// Command-line front end. run_cli returns the process exit code:
// 0 found, 1 not found, 2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptangle/corpus.hpp"
#include "ptangle/json.hpp"
#include "ptangle/persistence.hpp"

namespace ptangle {

namespace cli {

inline constexpr int exit_found = 0;
inline constexpr int exit_not_found = 1;
inline constexpr int exit_error = 2;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::string file;
  Residue modulus = 0;
  std::vector<std::string> quandle_specs;
  std::vector<Residue> moduli;
  bool count = false;
  std::uint64_t enumerate = 0;
  int verify = 0;
  ArcLabel arc = 0, arc2 = 0;
  std::string out_path;
  std::vector<int> rational, t_plus_tstar, twists;
  std::string closure;       // build: optional closure of the result
  std::string closure_type;  // closure subcommand
};

/// "dihedral:N" or the path of a `Q n` table file.
inline Quandle load_quandle(const std::string& spec) {
  if (spec.rfind("dihedral:", 0) == 0) return dihedral(std::stoi(spec.substr(9)));
  return parse_quandle(read_file(spec), spec);
}

inline std::string colors_text(const std::map<ArcLabel, Residue>& colors) {
  std::string s;
  for (const auto& [a, c] : colors) s += (s.empty() ? "" : " ") + std::to_string(a) + ":" + std::to_string(c);
  return s;
}

inline std::string pd_with_notes(const Diagram& d, const std::vector<std::string>& notes) {
  std::string s;
  for (const auto& n : notes) s += "# " + n + "\n";
  return s + serialize(d);
}

inline void write_out(const Options& o, const std::string& text) {
  if (o.out_path.empty()) return;
  std::ofstream f(o.out_path);
  if (!f) throw std::runtime_error("cannot write " + o.out_path);
  f << text;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline int cmd_color(const Options& o, std::ostream& out) {
  const auto d = load_corpus_entry(o.file).diagram;
  Json j;
  j["schema"] = json_schema;
  j["file"] = o.file;
  std::uint64_t count = 0;
  bool nontrivial = false;
  std::vector<std::map<ArcLabel, Residue>> listed;
  bool truncated = false;
  if (!o.quandle_specs.empty()) {
    const auto q = load_quandle(o.quandle_specs.front());
    j["quandle"] = q.name();
    const std::uint64_t cap = o.enumerate ? o.enumerate : default_enumeration_cap;
    const auto r = quandle_colorings(d, q, {}, cap);
    truncated = !r.complete;
    count = r.colorings.size();
    for (const auto& c : r.colorings) {
      nontrivial = nontrivial || c.nontrivial();
      if (o.enumerate) listed.emplace_back(c.colors.begin(), c.colors.end());
    }
  } else {
    if (o.modulus < 2) throw std::invalid_argument("color needs --mod N (N >= 2) or --quandle");
    j["modulus"] = o.modulus;
    const auto space = fox_solution_space(d, o.modulus);
    count = space.count();
    nontrivial = space.nontrivial().has_value();
    if (o.enumerate) {
      const auto e = space.enumerate(o.enumerate);
      truncated = e.overflow;
      for (const auto& c : e.colorings) listed.push_back(c.colors);
    }
  }
  j["count"] = count;
  j["count_complete"] = !truncated;
  j["nontrivial"] = nontrivial;
  if (o.enumerate) {
    j["colorings"] = Json::array();
    for (const auto& c : listed) j["colorings"].push_back(colors_json(c));
  }
  if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    out << count << (truncated ? "+" : "") << " colorings, nontrivial: " << yes_no(nontrivial) << "\n";
    for (const auto& c : listed) out << colors_text(c) << "\n";
    if (o.enumerate && truncated)
      out << (listed.empty() ? "(more than " + std::to_string(o.enumerate) + " colorings; none listed)"
                             : "(stopped after " + std::to_string(listed.size()) + ")")
          << "\n";
  }
  return nontrivial ? exit_found : exit_not_found;
}

inline int cmd_det(const Options& o, std::ostream& out) {
  const auto d = load_corpus_entry(o.file).diagram;
  Json j;
  j["schema"] = json_schema;
  j["file"] = o.file;
  std::string text;
  if (d.is_closed()) {
    const auto k = closed_component_count(d);
    const auto det = link_determinant(d);
    j["components"] = k;
    j["determinant"] = det;
    text = "determinant " + std::to_string(det) + " (" + std::to_string(k) + " component" + (k == 1 ? "" : "s") + ")";
  } else if (d.boundary().size() == 2) {
    const auto det = link_determinant(close_one_tangle(Tangle(d)));
    j["closure"] = "ends joined";
    j["determinant"] = det;
    text = "determinant of the closed 1-tangle " + std::to_string(det);
  } else {
    const Tangle t(d);
    for (Closure c : {Closure::numerator, Closure::denominator}) {
      const auto k = closure(t, c);
      const auto det = link_determinant(k);
      const auto comps = closed_component_count(k);
      j[std::string("closure_") + to_string(c)] = {{"components", comps}, {"determinant", det}};
      text += std::string(text.empty() ? "" : "\n") + to_string(c) + ": determinant " + std::to_string(det) + " (" +
              std::to_string(comps) + " component" + (comps == 1 ? "" : "s") + ")";
    }
  }
  out << (o.json ? j.dump(2) : text) << "\n";
  return exit_found;
}

inline std::string certificate_text(const Certificate& c) {
  std::string s = "certificate: " + c.describe() + ", boundary color " + std::to_string(c.boundary_color) +
                  ", witness arcs " + std::to_string(c.witness.first) + " and " + std::to_string(c.witness.second);
  if (!c.moves.empty()) s += ", " + std::to_string(c.moves.size()) + (c.moves.size() == 1 ? " move" : " moves");
  return s;
}

inline std::string report_text(const VerificationReport& r) {
  if (!r.defect.empty()) return "verification failed: " + r.defect;
  std::string s = "verification: " + std::to_string(r.hosts_passed) + "/" + std::to_string(r.hosts) + " hosts, " +
                  std::to_string(r.closures_checked) + " knot closures checked, " + (r.passed ? "passed" : "FAILED");
  if (r.vacuous()) s += " (vacuous: no host gives a knot)";
  return s;
}

inline int cmd_certify(const Options& o, std::ostream& out) {
  const auto e = load_corpus_entry(o.file);
  const Tangle t(e.diagram);
  std::vector<Quandle> qs;
  for (const auto& s : o.quandle_specs) qs.push_back(load_quandle(s));
  const auto s = search_certificate(t, o.moduli, qs, e.names);
  Json j;
  j["schema"] = json_schema;
  j["tangle"] = o.file;
  j["moduli"] = s.moduli;
  j["quandles"] = s.quandles;
  if (s.krebes) j["krebes_gcd"] = *s.krebes;
  std::optional<VerificationReport> rep;
  if (s.certificate && o.verify > 0) rep = verify_certificate(t, *s.certificate, o.verify, o.seed);
  if (s.certificate) {
    j["result"] = "found";
    j["certificate"] = to_json(*s.certificate, o.file);
    if (rep) j["verification"] = to_json(*rep);
  } else {
    j["result"] = "none";
    j["reason"] = s.reason;
    if (s.propagation) j["propagation"] = to_json(*s.propagation);
  }
  if (o.json) {
    out << j.dump(2) << "\n";
  } else if (s.certificate) {
    out << certificate_text(*s.certificate) << "\n";
    out << "colors: " << colors_text(s.certificate->colors) << "\n";
    if (rep) out << report_text(*rep) << "\n";
  } else {
    out << "none: " << s.reason << "\n";
  }
  if (!s.certificate || (rep && !rep->passed)) return exit_not_found;
  return exit_found;
}

/// Lowest coloring in label order among nontrivial ones with the two arcs
/// equal (a2 == 0: any nontrivial one).
inline std::optional<FoxColoring> pick_coloring(const Diagram& d, Residue n, ArcLabel a1, ArcLabel a2) {
  const auto space = fox_solution_space(d, n);
  const auto e = space.enumerate();
  std::optional<FoxColoring> best;
  auto key = [](const FoxColoring& c) {
    std::vector<Residue> v;
    for (const auto& [a, x] : c.colors) v.push_back(x);
    return v;
  };
  if (!e.overflow) {
    for (const auto& c : e.colorings) {
      if (!c.nontrivial() || (a2 && c.colors.at(a1) != c.colors.at(a2))) continue;
      if (!best || key(c) < key(*best)) best = c;
    }
    return best;
  }
  // too many to list: pin the arcs, which loses nothing by affine symmetry
  Pins pins{{a1, 0}};
  if (a2) pins[a2] = 0;
  return fox_solution_space(d, n, pins).nontrivial();
}

inline int cmd_cut(const Options& o, std::ostream& out) {
  const auto d = load_corpus_entry(o.file).diagram;
  if (o.modulus < 2) throw std::invalid_argument("cut needs --mod N (N >= 2)");
  for (ArcLabel a : {o.arc, o.arc2})
    if (a && !d.has_label(a)) throw std::invalid_argument("unknown arc " + std::to_string(a));
  const auto c = pick_coloring(d, o.modulus, o.arc, o.arc2);
  if (!c) {
    if (!fox_solution_space(d, o.modulus).nontrivial()) {
      out << "no nontrivial coloring mod " << o.modulus << "\n";
    } else {
      out << "arcs " << o.arc << " and " << o.arc2 << " have different colors under every nontrivial coloring mod "
          << o.modulus << "\n";
    }
    return exit_not_found;
  }
  const auto r = o.arc2 ? cut_two_arcs(d, *c, o.arc, o.arc2) : cut_arc_twice(d, *c, o.arc);
  const auto pd = pd_with_notes(r.tangle.diagram(), {"cut of " + o.file, r.certificate.describe()});
  write_out(o, pd);
  if (o.json) {
    Json j;
    j["schema"] = json_schema;
    j["input"] = o.file;
    j["coloring"] = colors_json(c->colors);
    j["tangle_pd"] = serialize(r.tangle.diagram());
    j["certificate"] = to_json(r.certificate, o.out_path);
    out << j.dump(2) << "\n";
  } else {
    out << pd;
    out << "# " << certificate_text(r.certificate) << "\n";
    out << "# colors: " << colors_text(r.certificate.colors) << "\n";
    for (const auto& m : r.certificate.moves) out << "# move: " << to_json(m).dump() << "\n";
  }
  return exit_found;
}

inline int cmd_build(const Options& o, std::ostream& out) {
  if (o.rational.empty() == o.t_plus_tstar.empty())
    throw std::invalid_argument("build needs exactly one of --rational and --t-plus-tstar");
  Json j;
  j["schema"] = json_schema;
  std::optional<TPlusTStar> tp;
  Tangle t = zero_tangle();
  if (!o.rational.empty()) {
    t = rational_tangle(o.rational);
    j["twists"] = o.rational;
    j["fraction"] = tangle_fraction(o.rational).str();
  } else {
    tp = build_t_plus_tstar(o.t_plus_tstar);
    t = tp->tangle;
    j["twists"] = o.t_plus_tstar;
    j["fraction"] = tp->fraction.str();
  }
  Diagram result = t.diagram();
  std::vector<std::string> notes;
  if (!o.rational.empty()) notes.push_back("rational tangle, fraction " + tangle_fraction(o.rational).str());
  if (tp) notes.push_back("T + T* for T of fraction " + tp->fraction.str());
  if (!o.closure.empty()) {
    const Closure which = o.closure == "N" ? Closure::numerator : Closure::denominator;
    result = closure(t, which);
    j["closure"] = o.closure;
    j["components"] = closed_component_count(result);
    j["determinant"] = link_determinant(result);
    notes.push_back(o.closure + " closure, determinant " + std::to_string(link_determinant(result)));
  }
  if (tp) {
    if (tp->certificate) {
      j["certificate"] = to_json(*tp->certificate, o.out_path);
      notes.push_back(certificate_text(*tp->certificate));
      if (!tp->reason.empty()) notes.push_back("vacuous: " + tp->reason);
    } else {
      notes.push_back("no certificate: " + tp->reason);
    }
    j["closed_component"] = tp->closed_component;
    if (!tp->reason.empty()) j["reason"] = tp->reason;
  }
  const auto pd = pd_with_notes(result, notes);
  j["pd"] = serialize(result);
  write_out(o, pd);
  out << (o.json ? j.dump(2) + "\n" : pd);
  return tp && !tp->certificate ? exit_not_found : exit_found;
}

inline int cmd_closure(const Options& o, std::ostream& out) {
  const auto d = load_corpus_entry(o.file).diagram;
  if (d.is_closed()) throw std::invalid_argument("closure needs a tangle");
  const Tangle t(d);
  Diagram k = d;
  if (t.is_two_tangle())
    k = closure(t, o.closure_type == "D" ? Closure::denominator : Closure::numerator);
  else
    k = close_one_tangle(t);
  write_out(o, serialize(k));
  if (o.json) {
    Json j;
    j["schema"] = json_schema;
    j["file"] = o.file;
    j["closure"] = t.is_two_tangle() ? (o.closure_type == "D" ? "D" : "N") : "ends joined";
    j["components"] = closed_component_count(k);
    j["pd"] = serialize(k);
    out << j.dump(2) << "\n";
  } else {
    out << serialize(k);
  }
  return exit_found;
}

inline int cmd_krebes(const Options& o, std::ostream& out) {
  const Tangle t(load_corpus_entry(o.file).diagram);
  const auto g = krebes_gcd(t);
  const auto dn = link_determinant(numerator_closure(t)), dd = link_determinant(denominator_closure(t));
  if (o.json) {
    Json j;
    j["schema"] = json_schema;
    j["file"] = o.file;
    j["det_N"] = dn;
    j["det_D"] = dd;
    j["krebes_gcd"] = g;
    j["prime_divisors"] = prime_divisors(g);
    out << j.dump(2) << "\n";
  } else {
    out << "det N = " << dn << ", det D = " << dd << ", gcd = " << g << "\n";
  }
  return exit_found;
}

inline int cmd_report(const Options& o, std::ostream& out) {
  const auto e = load_corpus_entry(o.file);
  std::optional<std::vector<int>> twists = e.twists;
  if (!o.twists.empty()) twists = o.twists;
  std::vector<Quandle> qs;
  for (const auto& s : o.quandle_specs) qs.push_back(load_quandle(s));
  const auto r = irreducibility_report(Tangle(e.diagram), twists, qs);
  if (o.json) {
    auto j = to_json(r);
    j["file"] = o.file;
    out << j.dump(2) << "\n";
    return exit_found;
  }
  auto closure_line = [&](const char* name, const ClosureEvidence& c) {
    out << name << ": " << c.components << " component" << (c.components == 1 ? "" : "s") << ", determinant "
        << c.determinant << ", nontrivial: " << yes_no(c.nontrivial);
    if (!c.colorable_moduli.empty()) {
      out << ", colorable mod";
      for (auto p : c.colorable_moduli) out << " " << p;
    }
    out << "\n";
  };
  if (r.fraction) out << "fraction " << r.fraction->str() << " (built from twists)\n";
  closure_line("N", r.numerator);
  closure_line("D", r.denominator);
  out << "krebes gcd: " << r.krebes << "\n";
  out << "rationality: " << (r.non_rational ? "not rational, " + r.non_rational->str() : std::string("undecided")) << "\n";
  out << "local knots: " << r.local_knots << "\n";
  out << "verdict: " << r.verdict << "\n";
  return exit_found;
}

}  // namespace cli

/// Parse `args` (without the program name) and run one subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  CLI::App app{"Persistent tangle certificates from Fox and quandle colorings", "ptangle"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--seed", o.seed, "seed for host sampling")->capture_default_str();

  auto file_arg = [&](CLI::App* s) { s->add_option("file", o.file, "PD file")->required()->check(CLI::ExistingFile); };
  auto out_opt = [&](CLI::App* s) { s->add_option("--out", o.out_path, "also write the PD result here"); };

  auto* color = app.add_subcommand("color", "count and list colorings");
  file_arg(color);
  auto* mod_opt = color->add_option("--mod", o.modulus, "Fox modulus");
  color->add_option("--quandle", o.quandle_specs, "quandle: dihedral:N or a table file")->excludes(mod_opt);
  color->add_flag("--count", o.count, "print the count (the default)");
  color->add_option("--enumerate", o.enumerate, "list colorings, at most this many");

  auto* det = app.add_subcommand("det", "determinant of a diagram or of a tangle's closures");
  file_arg(det);

  auto* certify = app.add_subcommand("certify", "search for a boundary-monochromatic certificate");
  file_arg(certify);
  certify->add_option("--mods", o.moduli, "Fox moduli, comma separated")->delimiter(',');
  certify->add_option("--quandles", o.quandle_specs, "quandles: dihedral:N or table files")->delimiter(',');
  certify->add_option("--verify", o.verify, "number of random rational hosts to verify against");

  auto* cut = app.add_subcommand("cut", "cut a colored knot into a certified tangle");
  file_arg(cut);
  cut->add_option("--arc", o.arc, "arc to cut")->required();
  cut->add_option("--arc2", o.arc2, "second arc; the two are cut once each");
  cut->add_option("--mod", o.modulus, "Fox modulus")->required();
  out_opt(cut);

  auto* build = app.add_subcommand("build", "rational tangles and T + T*");
  build->add_option("--rational", o.rational, "twist vector")->delimiter(',');
  build->add_option("--t-plus-tstar", o.t_plus_tstar, "twist vector of T")->delimiter(',');
  build->add_option("--closure", o.closure, "close the result")->check(CLI::IsMember({"N", "D"}));
  out_opt(build);

  auto* clo = app.add_subcommand("closure", "numerator or denominator closure of a tangle");
  file_arg(clo);
  clo->add_option("--type", o.closure_type, "N or D")->check(CLI::IsMember({"N", "D"}));
  out_opt(clo);

  auto* krebes = app.add_subcommand("krebes", "gcd of the closure determinants");
  file_arg(krebes);

  auto* report = app.add_subcommand("report", "irreducibility evidence");
  file_arg(report);
  report->add_option("--twists", o.twists, "twist vector the tangle was built from")->delimiter(',');
  report->add_option("--quandles", o.quandle_specs, "extra quandles for closure evidence")->delimiter(',');

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  std::vector<std::string> argv_store{"ptangle"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_error;
  }
  try {
    if (*color) return cmd_color(o, out);
    if (*det) return cmd_det(o, out);
    if (*certify) return cmd_certify(o, out);
    if (*cut) return cmd_cut(o, out);
    if (*build) return cmd_build(o, out);
    if (*clo) return cmd_closure(o, out);
    if (*krebes) return cmd_krebes(o, out);
    if (*report) return cmd_report(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

}  // namespace ptangle
