#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptangle/diagram.hpp"
#include "test_util.hpp"

using namespace ptangle;

namespace {

const char* kTrefoil = "X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3";

template <class F>
ValidationKind validation_kind(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ValidationError";
  return ValidationKind::structure;
}

}  // namespace

TEST(Parse, TrefoilFromOneLine) {
  const auto d = parse_diagram(kTrefoil);
  EXPECT_EQ(d.crossing_count(), 3u);
  EXPECT_TRUE(d.is_closed());
  EXPECT_FALSE(d.oriented());
  EXPECT_EQ(d.labels(), (std::vector<ArcLabel>{1, 2, 3, 4, 5, 6}));
}

TEST(Parse, TrivialOneTangle) {
  const auto d = parse_diagram("B 1 1");
  EXPECT_EQ(d.crossing_count(), 0u);
  EXPECT_EQ(d.boundary(), (std::vector<ArcLabel>{1, 1}));
  EXPECT_EQ(d.faces().size(), 2u);
}

TEST(Parse, ShortCrossingIsSyntaxError) {
  try {
    parse_diagram("X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 32);
  }
}

TEST(Parse, ErrorPositions) {
  try {
    parse_diagram("# comment\nX 1 2 3 4\nX 1 x 3 4");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(parse_diagram("Y 1 2"), ParseError);
  EXPECT_THROW(parse_diagram("X 0 1 1 0"), ParseError);
  EXPECT_THROW(parse_diagram("B 1 1 ; B 2 2"), ParseError);
  EXPECT_THROW(parse_diagram("B 1 2 3"), ParseError);
  EXPECT_THROW(parse_diagram("O 1 2"), ParseError);
}

TEST(Parse, ValidationKindsAreDistinct) {
  EXPECT_EQ(validation_kind([] { parse_diagram("X 1 2 3 4"); }), ValidationKind::arc_occurrence);
  EXPECT_EQ(validation_kind([] { parse_diagram("X 1 2 1 2"); }), ValidationKind::planarity);
  EXPECT_EQ(validation_kind([] { parse_diagram("Xp 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3"); }), ValidationKind::orientation);
  EXPECT_EQ(validation_kind([] { parse_diagram("O 1 ; O 1"); }), ValidationKind::arc_occurrence);
  EXPECT_EQ(validation_kind([] { parse_diagram("X 1 4 3 2 ; B 1 2"); }), ValidationKind::arc_occurrence);
}

TEST(Parse, OrientationMustBeConsistent) {
  EXPECT_NO_THROW(parse_diagram("Xm 1 2 2 1"));
  EXPECT_EQ(validation_kind([] { parse_diagram("Xp 1 2 2 1"); }), ValidationKind::orientation);
  EXPECT_NO_THROW(parse_diagram("Xp 1 3 2 4 ; Xp 3 1 4 2"));
  EXPECT_EQ(validation_kind([] { parse_diagram("Xp 1 3 2 4 ; Xm 3 1 4 2"); }), ValidationKind::orientation);
}

TEST(Parse, RoundTripIsByteIdentical) {
  for (const auto& name : corpus_files()) {
    const auto d = corpus(name);
    const auto text = serialize(d);
    EXPECT_EQ(serialize(parse_diagram(text)), text) << name;
  }
  const auto t = parse_diagram("X 1 4 3 2 ; B 1 2 3 4 ; O 7");
  EXPECT_EQ(serialize(t), "X 1 4 3 2\nO 7\nB 1 2 3 4\n");
}

TEST(Faces, EulerCountsOnKnots) {
  EXPECT_EQ(parse_diagram(kTrefoil).faces().size(), 5u);
  EXPECT_EQ(corpus("figure8.pd").faces().size(), 6u);
  EXPECT_EQ(corpus("unknot.pd").faces().size(), 2u);
  EXPECT_EQ(corpus("hopf.pd").faces().size(), 4u);
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-6_2.pd", "knot-8_16.pd", "hopf.pd"}) {
    const auto d = corpus(name);
    EXPECT_EQ(static_cast<int>(d.faces().size()), oracle::face_count(d)) << name;
    EXPECT_EQ(d.faces().size(), d.crossing_count() + 2) << name;
  }
}

TEST(Faces, CornersPartitionCrossingCorners) {
  const auto d = corpus("knot-8_16.pd");
  std::set<std::pair<int, int>> seen;
  std::size_t total = 0;
  for (const auto& f : d.faces())
    for (const auto& c : f.corners) {
      EXPECT_TRUE(seen.insert({c.vertex, c.position}).second);
      ++total;
    }
  EXPECT_EQ(total, 4 * d.crossing_count());
}

TEST(Faces, EveryArcHasTwoSides) {
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-6_2.pd", "knot-8_16.pd"}) {
    const auto d = corpus(name);
    std::map<ArcLabel, int> sides;
    for (const auto& f : d.faces())
      for (int h : f.darts) sides[d.label_at(h)] += 1;
    for (ArcLabel a : d.labels()) EXPECT_EQ(sides[a], 2) << name << " arc " << a;
  }
}

TEST(Faces, SingleCrossingTangle) {
  const auto t = parse_diagram("X 1 4 3 2 ; B 1 2 3 4");
  EXPECT_EQ(t.faces().size(), 4u);
  // Listing the same endpoints clockwise is not planar.
  EXPECT_THROW(parse_diagram("X 1 4 3 2 ; B 1 4 3 2"), ValidationError);
}

TEST(Components, Counts) {
  EXPECT_EQ(components(parse_diagram(kTrefoil)).size(), 1u);
  EXPECT_EQ(components(parse_diagram("O 1 ; O 2")).size(), 2u);
  EXPECT_EQ(components(corpus("hopf.pd")).size(), 2u);
  const auto t = parse_diagram("X 1 4 3 2 ; B 1 2 3 4");
  const auto cs = components(t);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(cs[0].open && cs[1].open);
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-6_2.pd", "knot-8_16.pd", "hopf.pd"}) {
    const auto d = corpus(name);
    EXPECT_EQ(static_cast<int>(components(d).size()), oracle::component_count(d)) << name;
  }
}

TEST(Components, InvariantUnderRelabeling) {
  std::mt19937 rng(7);
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-8_16.pd", "hopf.pd"}) {
    const auto d = corpus(name);
    std::vector<ArcLabel> image(d.labels().size());
    std::iota(image.begin(), image.end(), 100);
    std::shuffle(image.begin(), image.end(), rng);
    std::map<ArcLabel, ArcLabel> f;
    for (std::size_t i = 0; i < image.size(); ++i) f[d.labels()[i]] = image[i];
    const auto e = relabeled(d, [&](ArcLabel a) { return f.at(a); });
    const auto c1 = components(d);
    const auto c2 = components(e);
    ASSERT_EQ(c1.size(), c2.size());
    std::set<std::set<ArcLabel>> s1, s2;
    for (const auto& c : c1) {
      std::set<ArcLabel> m;
      for (ArcLabel a : c.arcs) m.insert(f.at(a));
      s1.insert(m);
    }
    for (const auto& c : c2) s2.insert(std::set<ArcLabel>(c.arcs.begin(), c.arcs.end()));
    EXPECT_EQ(s1, s2);
  }
}

TEST(CoFacial, MatchesIncidenceEnumeration) {
  const auto d = parse_diagram(kTrefoil);
  // Independent incidence: arcs meeting at a common crossing corner share a face.
  for (ArcLabel a : d.labels())
    for (ArcLabel b : d.labels()) {
      if (a == b) continue;
      bool share = false;
      for (const auto& f : d.faces())
        if (std::count(f.arcs.begin(), f.arcs.end(), a) && std::count(f.arcs.begin(), f.arcs.end(), b)) share = true;
      EXPECT_EQ(co_facial(d, a, b), share);
    }
  EXPECT_TRUE(co_facial(d, 2, 4));
  EXPECT_THROW(co_facial(d, 2, 2), std::invalid_argument);
  EXPECT_THROW(co_facial(d, 2, 99), std::invalid_argument);
}

TEST(CoFacial, HopfArcs) {
  // Components {1, 2} and {3, 4}. Each circle is split into an edge inside the
  // other circle and one outside; the four faces (lens, two lunes, outside)
  // each pair one edge of each component.
  const auto d = corpus("hopf.pd");
  EXPECT_FALSE(co_facial(d, 1, 2));
  EXPECT_FALSE(co_facial(d, 3, 4));
  for (ArcLabel a : {1, 2})
    for (ArcLabel b : {3, 4}) EXPECT_TRUE(co_facial(d, a, b));
}

TEST(Orientation, OrientedCopyIsConsistent) {
  for (const char* name : {"trefoil.pd", "figure8.pd", "knot-6_2.pd", "hopf.pd"}) {
    const auto d = oriented_copy(corpus(name));
    EXPECT_TRUE(d.oriented()) << name;
    // Re-validates through the constructor; the writhe of a signed diagram survives a round trip.
    EXPECT_EQ(serialize(parse_diagram(serialize(d))), serialize(d));
  }
  const auto t = oriented_copy(parse_diagram("X 1 4 3 2 ; B 1 2 3 4"));
  EXPECT_TRUE(t.oriented());
}

TEST(Canonical, IgnoresLabelChoice) {
  const auto a = parse_diagram(kTrefoil);
  const auto b = shifted(a, 10);
  EXPECT_EQ(serialize(canonical_form(a)), serialize(canonical_form(b)));
}
