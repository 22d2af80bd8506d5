#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "powcov/catalog.hpp"
#include "powcov/construct.hpp"
#include "powcov/core.hpp"

using namespace powcov;

namespace {

std::map<std::size_t, std::size_t> order_multiset(FiniteGroup const& g) {
  std::map<std::size_t, std::size_t> m;
  for (Element x = 0; x < g.order(); ++x) ++m[g.element_order(x)];
  return m;
}

oracle::Set to_set(ElementSet const& s) {
  auto v = s.to_vector();
  return {v.begin(), v.end()};
}

// Dihedral elements in the polygon numbering: rotation i is index i,
// reflection v -> i - v is index m + i.
Element rotation(std::size_t i) { return static_cast<Element>(i); }

}  // namespace

TEST(BuildGroup, Dihedral16) {
  auto g = build_group("dihedral:16");
  EXPECT_EQ(g.order(), 16u);
  EXPECT_EQ(g.descriptor(), "dihedral:16");
  EXPECT_FALSE(g.is_abelian());
}

TEST(BuildGroup, CyclicOneIsTrivial) {
  auto g = build_group("cyclic:1");
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inverse(0), 0u);
}

TEST(BuildGroup, Quaternion16MatchesMatrixPresentation) {
  auto g = build_group("quaternion:16");
  EXPECT_EQ(order_multiset(g), oracle::quaternion_matrix_orders(16));
  EXPECT_EQ(order_multiset(g)[2], 1u);
}

TEST(BuildGroup, QuaternionFamilyMatchesMatrixPresentation) {
  for (std::size_t m : {8u, 32u, 64u}) {
    EXPECT_EQ(order_multiset(build_group(GroupDescriptor::quaternion(m))), oracle::quaternion_matrix_orders(m)) << m;
  }
}

TEST(BuildGroup, DihedralFourIsKlein) {
  auto g = build_group("dihedral:4");
  EXPECT_TRUE(g.is_abelian());
  EXPECT_EQ(order_multiset(g), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}}));
}

TEST(BuildGroup, ModularAndSemidihedralOrderStatistics) {
  // M16: orders 1,2,2,2,4,4,4,4 plus eight of order 8; SD16: 1, 5x2, 6x4, 4x8.
  EXPECT_EQ(order_multiset(build_group("modular:16")), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}, {4, 4}, {8, 8}}));
  EXPECT_EQ(order_multiset(build_group("semidihedral:16")), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 5}, {4, 6}, {8, 4}}));
}

TEST(BuildGroup, ElementaryIsExponentP) {
  auto g = build_group("elementary:3^3");
  EXPECT_EQ(g.order(), 27u);
  EXPECT_TRUE(g.is_abelian());
  EXPECT_EQ(order_multiset(g)[3], 26u);
}

TEST(BuildGroup, ConstructionCap) {
  Caps caps;
  caps.construction = 64;
  EXPECT_THROW(build_group("dihedral:128", caps), CapError);
  EXPECT_NO_THROW(build_group("dihedral:64", caps));
}

// Latin square, identity, inverses, and orders re-checked independently on
// every built-in group.
TEST(GroupInvariants, EveryBuiltinGroup) {
  for (auto const& spec : builtin_catalog()) {
    auto g = build_group(spec.descriptor);
    std::size_t n = g.order();
    for (Element x = 0; x < n; ++x) {
      std::vector<bool> row(n), col(n);
      for (Element y = 0; y < n; ++y) {
        row[g.mul(x, y)] = true;
        col[g.mul(y, x)] = true;
      }
      ASSERT_EQ(std::count(row.begin(), row.end(), true), static_cast<long>(n)) << spec.id;
      ASSERT_EQ(std::count(col.begin(), col.end(), true), static_cast<long>(n)) << spec.id;
      ASSERT_EQ(g.mul(x, g.inverse(x)), g.identity());
      ASSERT_EQ(g.mul(g.identity(), x), x);
      ASSERT_EQ(g.pow(x, g.element_order(x)), g.identity());
      for (std::size_t k = 1; k < g.element_order(x); ++k) ASSERT_NE(g.pow(x, k), g.identity());
    }
  }
}

TEST(GroupInvariants, AssociativityOnSmallGroups) {
  for (auto const& spec : builtin_catalog(32)) {
    auto g = build_group(spec.descriptor);
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        for (Element c = 0; c < g.order(); ++c) ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << spec.id;
  }
}

TEST(FromTable, RejectsNonLatinSquare) {
  try {
    FiniteGroup::from_table(2, {0, 1, 1, 1}, "bad");
    FAIL();
  } catch (InvalidGroup const& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("row 1"), std::string::npos) << msg;
  }
}

TEST(FromTable, RejectsNonAssociativeLatinSquare) {
  // A Latin square with identity 0 that is not associative (order-5 loop).
  std::vector<Element> t = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  try {
    FiniteGroup::from_table(5, t, "loop");
    FAIL();
  } catch (InvalidGroup const& e) {
    EXPECT_NE(std::string(e.what()).find("associativ"), std::string::npos) << e.what();
  }
}

TEST(DirectProduct, KleinFromTwoC2) {
  auto k = direct_product(build_group("cyclic:2"), build_group("cyclic:2"));
  EXPECT_EQ(order_multiset(k), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}}));
}

TEST(DirectProduct, OrdersMultiplyAndComponentOrdersAreLcm) {
  std::vector<char const*> names = {"cyclic:4", "cyclic:2", "dihedral:8", "quaternion:8", "elementary:3^2", "cyclic:3"};
  for (auto a : names) {
    for (auto b : names) {
      auto g = build_group(a), h = build_group(b);
      auto gh = direct_product(g, h);
      ASSERT_EQ(gh.order(), g.order() * h.order());
      for (Element x = 0; x < g.order(); ++x) {
        for (Element y = 0; y < h.order(); ++y) {
          Element pair = static_cast<Element>(x * h.order() + y);
          ASSERT_EQ(gh.element_order(pair), std::lcm(g.element_order(x), h.element_order(y)));
        }
      }
    }
  }
}

TEST(DirectProduct, C4xC2HasElementOfOrder4) {
  auto g = build_group("product:(cyclic:4,cyclic:2)");
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.element_order(1 * 2 + 1), 4u);  // (z, tau)
  EXPECT_EQ(g.pow(1 * 2 + 1, 4), g.identity());
}

TEST(Closure, RotationGeneratesFourElements) {
  auto g = build_group("dihedral:8");
  auto c = closure(g, ElementSet(8, {rotation(1)}));
  EXPECT_EQ(c, ElementSet(8, {0, 1, 2, 3}));
  EXPECT_EQ(to_set(c), oracle::naive_closure(g, {rotation(1)}));
}

TEST(Closure, EmptyGivesIdentity) {
  for (char const* d : {"dihedral:8", "cyclic:5", "quaternion:16"}) {
    auto g = build_group(d);
    EXPECT_EQ(closure(g, ElementSet(g.order())), g.trivial());
  }
}

TEST(Closure, TwoReflectionsGenerateDihedral) {
  auto g = build_group("dihedral:8");
  EXPECT_EQ(closure(g, ElementSet(8, {4, 5})), g.all());
}

TEST(Closure, MatchesNaiveOracleOnRandomSubsets) {
  std::mt19937 rng(7);
  for (char const* d : {"dihedral:32", "semidihedral:32", "product:(quaternion:8,cyclic:4)", "elementary:3^3"}) {
    auto g = build_group(d);
    for (int t = 0; t < 40; ++t) {
      ElementSet s(g.order());
      oracle::Set o;
      for (int k = 0; k < 3; ++k) {
        Element x = static_cast<Element>(rng() % g.order());
        s.insert(x);
        o.insert(x);
      }
      ASSERT_EQ(to_set(closure(g, s)), oracle::naive_closure(g, o)) << d;
    }
  }
}

// For involutions g, h of a 2-group, <g, h> is dihedral of order 2 * order(gh).
TEST(Closure, InvolutionPairsGenerateDihedralOrKlein) {
  for (char const* d : {"dihedral:16", "semidihedral:32", "product:(dihedral:8,cyclic:2)", "dihedral:64", "elementary:2^3"}) {
    auto g = build_group(d);
    for (Element x = 0; x < g.order(); ++x) {
      if (g.element_order(x) != 2) continue;
      for (Element y = 0; y < g.order(); ++y) {
        if (g.element_order(y) != 2 || x == y) continue;
        ASSERT_EQ(closure(g, ElementSet(g.order(), {x, y})).count(), 2 * g.element_order(g.mul(x, y))) << d;
      }
    }
  }
}

TEST(Commutator, AbelianIsTrivial) {
  auto g = build_group("cyclic:4");
  EXPECT_EQ(commutator_subgroup(g, g.all(), g.all()), g.trivial());
}

TEST(Commutator, DihedralDerivedSubgroup) {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::size_t m = std::size_t{1} << n;
    auto g = build_group(GroupDescriptor::dihedral(2 * m));
    auto d = commutator_subgroup(g, g.all(), g.all());
    EXPECT_EQ(d.count(), m / 2);
    EXPECT_EQ(d, closure(g, ElementSet(g.order(), {rotation(2)})));
    EXPECT_EQ(to_set(d), oracle::commutators(g, to_set(g.all()), to_set(g.all())));
  }
}

TEST(Commutator, Quaternion8IsPlusMinusOne) {
  auto g = build_group("quaternion:8");
  auto d = commutator_subgroup(g, g.all(), g.all());
  EXPECT_EQ(d.count(), 2u);
  EXPECT_EQ(to_set(d), oracle::commutators(g, to_set(g.all()), to_set(g.all())));
}

TEST(Commutator, RejectsNonSubgroups) {
  auto g = build_group("dihedral:8");
  EXPECT_THROW(commutator_subgroup(g, ElementSet(8, {1}), g.all()), InvalidGroup);
}

TEST(PowerSubgroup, DihedralEightFourthPowersTrivial) {
  auto g = build_group("dihedral:8");
  EXPECT_EQ(power_subgroup(g, g.all(), 4), g.trivial());
  EXPECT_EQ(power_subgroup(g, g.all(), 2).count(), 2u);
}

TEST(PowerSubgroup, AlwaysNormal) {
  for (auto const& spec : builtin_catalog(64)) {
    auto g = build_group(spec.descriptor);
    for (std::size_t k = 1; k <= 8; ++k) {
      auto p = power_subgroup(g, g.all(), k);
      ASSERT_TRUE(is_normal(g, p)) << spec.id << " k=" << k;
      ASSERT_EQ(to_set(p), oracle::powers(g, to_set(g.all()), k));
    }
  }
}

TEST(Center, DihedralEight) {
  auto g = build_group("dihedral:8");
  EXPECT_EQ(center(g), ElementSet(8, {0, rotation(2)}));
}

TEST(Center, MatchesExhaustiveCommutation) {
  for (auto const& spec : builtin_catalog(64)) {
    auto g = build_group(spec.descriptor);
    ElementSet z(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      bool central = true;
      for (Element y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
      if (central) z.insert(x);
    }
    ASSERT_EQ(center(g), z) << spec.id;
  }
}

TEST(NormalClosure, ReflectionInD8GivesKlein) {
  auto g = build_group("dihedral:8");
  auto a = ElementSet(8, {0, 5});  // <a>, a: v -> 1 - v
  EXPECT_FALSE(is_normal(g, a));
  auto n = normal_closure(g, a);
  EXPECT_EQ(n.count(), 4u);
  EXPECT_TRUE(is_normal(g, n));
  // conjugate-and-close oracle
  oracle::Set conj;
  for (Element x = 0; x < 8; ++x) conj.insert(g.conjugate(5, x));
  EXPECT_EQ(to_set(n), oracle::naive_closure(g, conj));
  for (Element x : n.to_vector()) EXPECT_LE(g.element_order(x), 2u);
}

TEST(Quotient, ByWholeGroupIsTrivial) {
  auto g = build_group("quaternion:16");
  EXPECT_EQ(quotient_group(g, g.all()).order(), 1u);
}

TEST(Quotient, D16ByCenterIsDihedralEight) {
  auto g = build_group("dihedral:16");
  auto k = quotient_group(g, center(g));
  EXPECT_EQ(k.order(), 8u);
  EXPECT_EQ(order_multiset(k), order_multiset(build_group("dihedral:8")));
  // two involutions whose product has order 4 generate it
  bool found = false;
  for (Element x = 0; x < 8 && !found; ++x)
    for (Element y = 0; y < 8 && !found; ++y)
      found = k.element_order(x) == 2 && k.element_order(y) == 2 && closure(k, ElementSet(8, {x, y})) == k.all();
  EXPECT_TRUE(found);
}

TEST(Quotient, C4ByC2) {
  auto g = build_group("cyclic:4");
  auto k = quotient_group(g, ElementSet(4, {0, 2}));
  EXPECT_EQ(order_multiset(k), order_multiset(build_group("cyclic:2")));
}

TEST(Quotient, ProjectionIsHomomorphismForEveryNormalSubgroup) {
  for (char const* d : {"dihedral:16", "quaternion:16", "modular:16", "product:(dihedral:8,cyclic:2)"}) {
    auto g = build_group(d);
    // every normal subgroup via normal closures of single elements and pairs
    for (Element x = 0; x < g.order(); ++x) {
      auto n = normal_closure(g, closure(g, ElementSet(g.order(), {x})));
      auto k = quotient_group(g, n);
      ASSERT_EQ(k.order() * n.count(), g.order());
      auto proj = coset_map(g, n);
      for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) ASSERT_EQ(proj[g.mul(a, b)], k.mul(proj[a], proj[b]));
    }
  }
}

TEST(Quotient, RejectsNonNormal) {
  auto g = build_group("dihedral:8");
  EXPECT_THROW(quotient_group(g, ElementSet(8, {0, 4})), InvalidGroup);
}

TEST(Nilpotence, ClassAndCoclass) {
  EXPECT_EQ(nilpotence_class(build_group("cyclic:1")), 0u);
  EXPECT_EQ(nilpotence_class(build_group("cyclic:8")), 1u);
  for (std::size_t n = 2; n <= 6; ++n) {
    auto d = build_group(GroupDescriptor::dihedral(std::size_t{2} << n));
    EXPECT_EQ(nilpotence_class(d), n);
    EXPECT_EQ(coclass(d), 1);
  }
  EXPECT_EQ(coclass(build_group("modular:16")), 2);
  EXPECT_EQ(nilpotence_class(build_group("product:(dihedral:8,cyclic:3)")), 2u);
  EXPECT_THROW(coclass(build_group("product:(dihedral:8,cyclic:3)")), InvalidGroup);
}

TEST(Nilpotence, LowerCentralSeriesDescends) {
  auto g = build_group("dihedral:32");
  auto series = lower_central_series(g);
  ASSERT_GE(series.size(), 2u);
  EXPECT_EQ(series.front(), g.all());
  EXPECT_EQ(series.back(), g.trivial());
  for (std::size_t i = 1; i < series.size(); ++i) EXPECT_TRUE(series[i].is_subset_of(series[i - 1]));
}

TEST(PGroup, Detection) {
  EXPECT_EQ(is_p_group(build_group("dihedral:16")), 2u);
  EXPECT_EQ(is_p_group(build_group("elementary:3^4")), 3u);
  EXPECT_EQ(is_p_group(build_group("cyclic:12")), std::nullopt);
  EXPECT_EQ(prime_power_base(81), 3u);
  EXPECT_EQ(prime_power_base(1), std::nullopt);
}
