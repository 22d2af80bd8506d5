#include <gtest/gtest.h>

#include "oracles.hpp"
#include "powcov/catalog.hpp"
#include "powcov/construct.hpp"
#include "powcov/core.hpp"
#include "powcov/lattice.hpp"

using namespace powcov;

namespace {

oracle::Set to_set(ElementSet const& s) {
  auto v = s.to_vector();
  return {v.begin(), v.end()};
}

Lattice lattice_of(char const* d) { return enumerate_subgroups(build_group(d)); }

std::size_t count_kind(FiniteGroup const& g, Lattice const& l, SmallKind kind) {
  std::size_t k = 0;
  for (auto const& s : l.subgroups) k += classify_small(g, s.elements).kind == kind;
  return k;
}

}  // namespace

TEST(Lattice, KnownCounts) {
  EXPECT_EQ(lattice_of("dihedral:8").subgroups.size(), 10u);
  EXPECT_EQ(lattice_of("quaternion:8").subgroups.size(), 6u);
  EXPECT_EQ(lattice_of("dihedral:16").subgroups.size(), 19u);
  for (char const* p : {"cyclic:2", "cyclic:3", "cyclic:5", "cyclic:7", "cyclic:11"}) {
    EXPECT_EQ(lattice_of(p).subgroups.size(), 2u) << p;
  }
}

TEST(Lattice, MatchesSubsetClosureOracleUpToOrder32) {
  for (auto const& spec : builtin_catalog(32)) {
    auto g = build_group(spec.descriptor);
    auto l = enumerate_subgroups(g);
    auto expected = oracle::subset_closure_lattice(g, oracle::ceil_log2(g.order()));
    std::set<oracle::Set> got;
    for (auto const& s : l.subgroups) got.insert(to_set(s.elements));
    ASSERT_EQ(got.size(), l.subgroups.size()) << spec.id << ": duplicates";
    ASSERT_EQ(got, expected) << spec.id;
  }
}

TEST(Lattice, FlagsMatchOraclePredicates) {
  for (auto const& spec : builtin_catalog(32)) {
    auto g = build_group(spec.descriptor);
    auto l = enumerate_subgroups(g);
    for (auto const& s : l.subgroups) {
      auto h = to_set(s.elements);
      ASSERT_EQ(s.order, h.size());
      ASSERT_EQ(s.is_abelian, oracle::commute_all(g, h)) << spec.id;
      ASSERT_EQ(s.is_normal, oracle::normal(g, h)) << spec.id;
      ASSERT_EQ(s.is_proper, h.size() < g.order());
      if (l.prime) {
        ASSERT_EQ(s.is_powerful, oracle::powerful(g, h)) << spec.id << " " << s.elements;
        ASSERT_EQ(s.is_powerfully_embedded, oracle::powerfully_embedded(g, h)) << spec.id << " " << s.elements;
      }
    }
  }
}

TEST(Lattice, SortedCanonicallyAndFindable) {
  auto l = lattice_of("semidihedral:32");
  for (std::size_t i = 1; i < l.subgroups.size(); ++i) {
    EXPECT_TRUE(canonical_less(l.subgroups[i - 1].elements, l.subgroups[i].elements));
  }
  for (std::size_t i = 0; i < l.subgroups.size(); ++i) EXPECT_EQ(l.find(l.subgroups[i].elements), i);
  EXPECT_EQ(l.find(ElementSet(32, {0, 1})), std::nullopt);
}

TEST(Lattice, RefusesAboveCap) {
  Caps caps;
  caps.lattice = 64;
  EXPECT_THROW(enumerate_subgroups(build_group("dihedral:128"), caps), CapError);
}

TEST(Maximal, DihedralHasThree) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto g = build_group(GroupDescriptor::dihedral(std::size_t{2} << n));
    auto l = enumerate_subgroups(g);
    auto m = maximal_subgroups(g, l);
    EXPECT_EQ(m.size(), 3u);
    for (auto const& s : m) EXPECT_EQ(s.order, g.order() / 2);
  }
}

TEST(Maximal, CyclicFourHasOne) {
  auto g = build_group("cyclic:4");
  auto m = maximal_subgroups(g, enumerate_subgroups(g));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].order, 2u);
}

TEST(Maximal, MatchesInclusionDefinition) {
  for (char const* d : {"quaternion:16", "product:(dihedral:8,cyclic:2)", "elementary:3^2", "product:(dihedral:8,cyclic:3)"}) {
    auto g = build_group(d);
    auto l = enumerate_subgroups(g);
    for (auto const& s : l.subgroups) {
      bool maximal = s.is_proper;
      for (auto const& t : l.subgroups) {
        if (t.is_proper && t.order > s.order && s.elements.is_subset_of(t.elements)) maximal = false;
      }
      EXPECT_EQ(s.is_maximal, maximal) << d << " " << s.elements;
    }
  }
}

TEST(Powerful, AbelianSubgroupsArePowerful) {
  for (auto const& spec : builtin_catalog(64)) {
    auto g = build_group(spec.descriptor);
    if (!is_p_group(g)) continue;
    for (auto const& s : enumerate_subgroups(g).subgroups) {
      if (s.is_abelian) {
        ASSERT_TRUE(s.is_powerful) << spec.id;
      }
    }
  }
}

TEST(Powerful, ModularGroupIsPowerful) {
  for (std::size_t m : {16u, 32u, 64u, 128u}) {
    auto g = build_group(GroupDescriptor::modular(m));
    EXPECT_TRUE(is_powerful(g, g.all())) << m;
    EXPECT_FALSE(g.is_abelian());
  }
}

TEST(Powerful, DihedralIsNotPowerful) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto g = build_group(GroupDescriptor::dihedral(std::size_t{2} << n));
    EXPECT_FALSE(is_powerful(g, g.all()));
    EXPECT_EQ(commutator_subgroup(g, g.all(), g.all()).count(), std::size_t{1} << (n - 1));
    EXPECT_EQ(power_subgroup(g, g.all(), 4).count(), std::size_t{1} << (n - 2));
  }
}

TEST(Powerful, OddPrimeUsesPthPowers) {
  auto g = build_group("elementary:3^2");
  EXPECT_TRUE(is_powerful(g, g.all()));
  EXPECT_THROW(is_powerful(build_group("cyclic:6"), build_group("cyclic:6").all()), InvalidGroup);
}

TEST(PowerfullyEmbedded, TrivialAndCenter) {
  for (char const* d : {"dihedral:16", "quaternion:16", "semidihedral:32", "product:(dihedral:8,cyclic:4)"}) {
    auto g = build_group(d);
    EXPECT_TRUE(is_powerfully_embedded(g, g.trivial()));
    EXPECT_TRUE(is_powerfully_embedded(g, center(g)));
  }
}

TEST(PowerfullyEmbedded, ImpliesPowerfulAndConverseFailsInD32) {
  auto g = build_group("dihedral:32");
  auto l = enumerate_subgroups(g);
  bool converse_fails = false;
  for (auto const& s : l.subgroups) {
    if (s.is_powerfully_embedded) {
      EXPECT_TRUE(s.is_powerful);
    }
    if (s.is_powerful && !s.is_powerfully_embedded) converse_fails = true;
  }
  EXPECT_TRUE(converse_fails);
  for (auto const& spec : builtin_catalog(64)) {
    auto h = build_group(spec.descriptor);
    if (!is_p_group(h)) continue;
    for (auto const& s : enumerate_subgroups(h).subgroups) {
      if (s.is_powerfully_embedded) {
        ASSERT_TRUE(s.is_powerful && s.is_normal) << spec.id;
      }
    }
  }
}

TEST(Flags, MaximalImpliesProper) {
  for (auto const& spec : builtin_catalog(64)) {
    auto l = enumerate_subgroups(build_group(spec.descriptor));
    for (auto const& s : l.subgroups) {
      if (s.is_maximal) {
        ASSERT_TRUE(s.is_proper);
      }
    }
  }
}

TEST(Dihedral, PowerfulSubgroupsAreCyclicOrKlein) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto g = build_group(GroupDescriptor::dihedral(std::size_t{2} << n));
    for (auto const& s : enumerate_subgroups(g).subgroups) {
      if (!s.is_powerful) continue;
      auto kind = classify_small(g, s.elements).kind;
      EXPECT_TRUE(kind == SmallKind::Cyclic || kind == SmallKind::Klein || kind == SmallKind::Trivial) << s.elements;
    }
  }
}

TEST(Dihedral, KleinCensusAndIntersections) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto g = build_group(GroupDescriptor::dihedral(std::size_t{2} << n));
    auto l = enumerate_subgroups(g);
    std::vector<ElementSet> kleins;
    for (auto const& s : l.subgroups) {
      if (classify_small(g, s.elements).kind == SmallKind::Klein) kleins.push_back(s.elements);
    }
    EXPECT_EQ(kleins.size(), std::size_t{1} << (n - 1)) << n;
    auto z = center(g);
    for (std::size_t i = 0; i < kleins.size(); ++i)
      for (std::size_t j = i + 1; j < kleins.size(); ++j) EXPECT_EQ(kleins[i] & kleins[j], z);
  }
}

TEST(ClassifySmall, Tags) {
  auto d = build_group("dihedral:16");
  EXPECT_EQ(classify_small(d, d.trivial()).kind, SmallKind::Trivial);
  auto rot = closure(d, ElementSet(16, {1}));
  EXPECT_EQ(classify_small(d, rot).kind, SmallKind::Cyclic);
  EXPECT_EQ(classify_small(d, rot).order, 8u);
  EXPECT_EQ(to_string(classify_small(d, rot)), "cyclic(8)");
  EXPECT_EQ(classify_small(d, d.all()).kind, SmallKind::Dihedral);
  auto q = build_group("quaternion:16");
  EXPECT_EQ(classify_small(q, q.all()).kind, SmallKind::QuaternionLike);
  auto e = build_group("elementary:2^3");
  EXPECT_EQ(classify_small(e, e.all()).kind, SmallKind::Other);
  auto v = build_group("dihedral:4");
  EXPECT_EQ(classify_small(v, v.all()).kind, SmallKind::Klein);
  auto dl = enumerate_subgroups(d);
  EXPECT_EQ(count_kind(d, dl, SmallKind::Dihedral), 3u);  // two D8 halves and D16 itself
}

// [G,G] lies in every normal N with abelian quotient.
TEST(Commutator, InsideEveryAbelianQuotientKernel) {
  for (char const* d : {"dihedral:16", "quaternion:16", "modular:32", "product:(dihedral:8,cyclic:2)"}) {
    auto g = build_group(d);
    auto derived = commutator_subgroup(g, g.all(), g.all());
    for (auto const& s : enumerate_subgroups(g).subgroups) {
      if (!s.is_normal) continue;
      if (quotient_group(g, s.elements).is_abelian()) {
        EXPECT_TRUE(derived.is_subset_of(s.elements)) << d;
      }
    }
  }
}
