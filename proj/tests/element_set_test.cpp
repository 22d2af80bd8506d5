#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "powcov/element_set.hpp"
#include "powcov/error.hpp"

using powcov::Element;
using powcov::ElementSet;

TEST(ElementSet, InsertEraseContains) {
  ElementSet s(130);
  EXPECT_TRUE(s.empty());
  s.insert(0);
  s.insert(64);
  s.insert(129);
  EXPECT_EQ(s.count(), 3u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(63));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(s.count(), 2u);
  EXPECT_EQ(s.first(), 0u);
}

TEST(ElementSet, FullHasExactlyNBits) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 128u, 200u}) {
    auto f = ElementSet::full(n);
    EXPECT_EQ(f.count(), n);
    EXPECT_TRUE(f.contains(static_cast<Element>(n - 1)));
  }
}

TEST(ElementSet, PrintsSortedList) {
  std::ostringstream out;
  out << ElementSet(10, {7, 2, 0});
  EXPECT_EQ(out.str(), "{0,2,7}");
}

TEST(ElementSet, HexRoundTrip) {
  ElementSet s(150, {1, 5, 64, 149});
  auto back = ElementSet::from_hex(150, s.to_hex());
  EXPECT_EQ(back, s);
}

TEST(ElementSet, FromHexRejectsGarbage) {
  EXPECT_THROW(ElementSet::from_hex(10, "xyz"), powcov::Error);
  EXPECT_THROW(ElementSet::from_hex(10, "00000000000000000000000000000000"), powcov::Error);
}

TEST(ElementSet, CanonicalOrderIsBySizeThenLowestDifference) {
  ElementSet a(8, {0, 1}), b(8, {0, 2}), c(8, {0});
  EXPECT_TRUE(canonical_less(c, a));
  EXPECT_TRUE(canonical_less(a, b));
  EXPECT_FALSE(canonical_less(b, a));
  EXPECT_FALSE(canonical_less(a, a));
}

// Set algebra agrees with std::set on random inputs.
TEST(ElementSet, RandomAlgebraMatchesStdSet) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 200;
    std::set<Element> ra, rb;
    ElementSet a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 3 == 0) {
        ra.insert(static_cast<Element>(i));
        a.insert(static_cast<Element>(i));
      }
      if (rng() % 2 == 0) {
        rb.insert(static_cast<Element>(i));
        b.insert(static_cast<Element>(i));
      }
    }
    std::set<Element> u = ra, in, diff;
    u.insert(rb.begin(), rb.end());
    for (auto x : ra) (rb.count(x) ? in : diff).insert(x);
    EXPECT_EQ((a | b).to_vector(), std::vector<Element>(u.begin(), u.end()));
    EXPECT_EQ((a & b).to_vector(), std::vector<Element>(in.begin(), in.end()));
    EXPECT_EQ((a - b).to_vector(), std::vector<Element>(diff.begin(), diff.end()));
    EXPECT_EQ(a.is_subset_of(b), std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()));
    EXPECT_EQ(a.count(), ra.size());
    EXPECT_TRUE((a & b).is_subset_of(a | b));
    if (a == b) {
      EXPECT_EQ(a.hash(), b.hash());
    }
  }
}
