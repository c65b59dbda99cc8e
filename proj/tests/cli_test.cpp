#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ptangle/cli.hpp"
#include "test_util.hpp"

using namespace ptangle;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ptangle_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, ColorCounts) {
  auto r = run({"color", corpus_path("trefoil.pd"), "--mod", "3", "--count"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "9 colorings, nontrivial: yes\n");
  for (int n : {2, 5, 7}) {
    r = run({"color", corpus_path("unknot.pd"), "--mod", std::to_string(n)});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, std::to_string(n) + " colorings, nontrivial: no\n");
  }
  r = run({"color", corpus_path("knot-8_16.pd"), "--mod", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nontrivial: yes"), std::string::npos);
  r = run({"color", corpus_path("figure8.pd"), "--quandle", "dihedral:5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "25 colorings, nontrivial: yes\n");
}

TEST(Cli, ColorEnumerationListsEverySolution) {
  const auto r = run({"--json", "color", corpus_path("trefoil.pd"), "--mod", "3", "--enumerate", "100"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["count"], 9);
  EXPECT_EQ(j["colorings"].size(), 9u);
}

TEST(Cli, Determinants) {
  EXPECT_EQ(run({"det", corpus_path("knot-6_2.pd")}).out, "determinant 11 (1 component)\n");
  EXPECT_EQ(run({"det", corpus_path("hopf.pd")}).out, "determinant 2 (2 components)\n");
  const auto j = Json::parse(run({"det", corpus_path("closures-det5-det3.pd"), "--json"}).out);
  EXPECT_EQ(j["closure_N"]["determinant"], 5);
  EXPECT_EQ(j["closure_D"]["determinant"], 3);
}

TEST(Cli, CertifyKrebes) {
  const auto r = run({"certify", corpus_path("krebes.pd"), "--verify", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("certificate: fox mod 3", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("22/22 hosts"), std::string::npos) << r.out;
}

TEST(Cli, CertifyNegativeControls) {
  auto r = run({"certify", corpus_path("no-monochromatic-coloring.pd")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("inconsistency at crossing"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("(e = c)"), std::string::npos) << r.out;
  r = run({"certify", corpus_path("closures-det5-det3.pd")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "none: krebes gcd = 1\n");
}

TEST(Cli, CertificateJsonRoundTrips) {
  const auto r = run({"--json", "certify", corpus_path("krebes-family-5.pd")});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  const auto c = certificate_from_json(j["certificate"]);
  EXPECT_EQ(c.modulus, 5);
  EXPECT_EQ(to_json(c, corpus_path("krebes-family-5.pd")).dump(), j["certificate"].dump());
  const Tangle t(corpus("krebes-family-5.pd"));
  EXPECT_FALSE(certificate_defect(t, c));

  const auto qr = run({"--json", "certify", corpus_path("krebes.pd"), "--mods", "5", "--quandles", "dihedral:3"});
  ASSERT_EQ(qr.code, 0) << qr.out;
  const auto qc = certificate_from_json(Json::parse(qr.out)["certificate"]);
  EXPECT_EQ(qc.kind, CertificateKind::quandle);
  EXPECT_FALSE(certificate_defect(Tangle(corpus("krebes.pd")), qc));
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"--json", "--seed", "7", "certify", corpus_path("t-plus-tstar-7.pd"),
                                      "--verify", "30"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"--json", "--seed", "8", "certify", corpus_path("t-plus-tstar-7.pd"), "--verify", "30"});
  EXPECT_NE(a.out, c.out);  // different hosts
}

TEST(Cli, CutTwoArcsWritesCertifiedTangle) {
  const auto path = temp_path("cut.pd");
  const auto r = run({"--json", "cut", corpus_path("trefoil.pd"), "--arc", "4", "--arc2", "5", "--mod", "3", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  const Tangle t(parse_diagram(read_file(path)));
  const auto c = certificate_from_json(j["certificate"]);
  EXPECT_GE(c.moves.size(), 1u);
  EXPECT_EQ(c.modulus, 3);
  EXPECT_TRUE(verify_certificate(t, c, 30).passed);
  std::filesystem::remove(path);
}

TEST(Cli, CutSingleArc) {
  const auto r = run({"cut", corpus_path("trefoil.pd"), "--arc", "1", "--mod", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Tangle t(parse_diagram(r.out));
  EXPECT_EQ(t.diagram().crossing_count(), 3u);
  EXPECT_EQ(t.diagram().boundary().size(), 4u);
}

TEST(Cli, CutErrors) {
  auto r = run({"cut", corpus_path("trefoil.pd"), "--arc", "1", "--mod", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "no nontrivial coloring mod 5\n");
  r = run({"cut", corpus_path("trefoil.pd"), "--arc", "1", "--arc2", "4", "--mod", "3"});
  EXPECT_EQ(r.code, 1);
  r = run({"cut", corpus_path("trefoil.pd"), "--arc", "42", "--mod", "3"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, Build) {
  auto r = run({"build", "--rational", "3", "--closure", "N"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(determinant(parse_diagram(r.out)), 3u);
  r = run({"build", "--rational", "0", "--closure", "D"});
  EXPECT_EQ(determinant(parse_diagram(r.out)), 1u);
  r = run({"--json", "build", "--t-plus-tstar", "2,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["closed_component"], true);
  r = run({"build", "--t-plus-tstar", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("cannot exist"), std::string::npos);
  r = run({"build", "--t-plus-tstar", "2,3,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fox mod 7"), std::string::npos);
  EXPECT_EQ(run({"build", "--t-plus-tstar", "0"}).code, 2);
  EXPECT_EQ(run({"build"}).code, 2);
}

TEST(Cli, ClosureKrebesReport) {
  auto r = run({"closure", corpus_path("krebes.pd"), "--type", "D"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(determinant(parse_diagram(r.out)), 9u);
  r = run({"krebes", corpus_path("krebes.pd")});
  EXPECT_EQ(r.out, "det N = 6, det D = 9, gcd = 3\n");
  r = run({"report", corpus_path("closures-det5-det3.pd")});
  EXPECT_NE(r.out.find("verdict: consistent with irreducible"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("local knots: not checked"), std::string::npos);
  r = run({"--json", "report", corpus_path("t-plus-tstar-7.pd")});
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["fraction_reducible_hint"], true);  // the file records its twist vector
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"det", "/nonexistent.pd"}).code, 2);
  const auto bad = temp_path("bad.pd");
  {
    std::ofstream f(bad);
    f << "X 1 2 3\n";
  }
  const auto r = run({"det", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  std::filesystem::remove(bad);
  EXPECT_EQ(run({"color", corpus_path("trefoil.pd")}).code, 2);  // no modulus
}
