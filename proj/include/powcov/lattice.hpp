#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"

namespace powcov {

/// H is powerful as a group in its own right: [H,H] <= H^p for odd p,
/// [H,H] <= H^4 for p = 2.
inline bool is_powerful(FiniteGroup const& g, ElementSet const& h) {
  auto p = is_p_group(g);
  if (!p) throw InvalidGroup("powerful predicate needs a p-group, got order " + std::to_string(g.order()));
  ElementSet derived = commutator_subgroup(g, h, h);
  if (derived.count() == 1) return true;
  return derived.is_subset_of(power_subgroup(g, h, *p == 2 ? 4 : *p));
}

/// N is normal in G and [N,G] <= N^p for odd p, [N,G] <= N^4 for p = 2.
inline bool is_powerfully_embedded(FiniteGroup const& g, ElementSet const& n) {
  auto p = is_p_group(g);
  if (!p) throw InvalidGroup("powerfully-embedded predicate needs a p-group, got order " + std::to_string(g.order()));
  if (!is_normal(g, n)) return false;
  ElementSet mixed = commutator_subgroup(g, n, g.all());
  if (mixed.count() == 1) return true;
  return mixed.is_subset_of(power_subgroup(g, n, *p == 2 ? 4 : *p));
}

inline bool is_abelian_subgroup(FiniteGroup const& g, ElementSet const& h) {
  std::vector<Element> m = h.to_vector();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (g.mul(m[i], m[j]) != g.mul(m[j], m[i])) return false;
    }
  }
  return true;
}

struct Subgroup {
  ElementSet elements;
  std::size_t order = 0;
  bool is_abelian = false;
  bool is_powerful = false;
  bool is_powerfully_embedded = false;
  bool is_normal = false;
  bool is_maximal = false;
  bool is_proper = false;

  friend bool operator==(Subgroup const&, Subgroup const&) = default;
};

struct LatticeCounts {
  std::size_t total = 0, abelian = 0, powerful = 0, powerfully_embedded = 0, normal = 0, maximal = 0, proper = 0;
};

/// Every subgroup of one group, sorted by (order, sorted element list).
/// Powerful and powerfully-embedded flags are only meaningful when
/// `prime` is set; for other groups they are false.
struct Lattice {
  std::size_t group_order = 0;
  std::optional<std::size_t> prime;
  std::vector<Subgroup> subgroups;

  LatticeCounts counts() const {
    LatticeCounts c;
    for (auto const& s : subgroups) {
      ++c.total;
      c.abelian += s.is_abelian;
      c.powerful += s.is_powerful;
      c.powerfully_embedded += s.is_powerfully_embedded;
      c.normal += s.is_normal;
      c.maximal += s.is_maximal;
      c.proper += s.is_proper;
    }
    return c;
  }

  std::optional<std::size_t> find(ElementSet const& s) const {
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), s,
                               [](Subgroup const& a, ElementSet const& b) { return canonical_less(a.elements, b); });
    if (it != subgroups.end() && it->elements == s) return static_cast<std::size_t>(it - subgroups.begin());
    return std::nullopt;
  }

  friend bool operator==(Lattice const&, Lattice const&) = default;
};

namespace detail {

inline Subgroup make_subgroup(FiniteGroup const& g, ElementSet set, bool maximal, std::optional<std::size_t> prime) {
  Subgroup s;
  s.order = set.count();
  s.is_proper = s.order < g.order();
  s.is_maximal = maximal && s.is_proper;
  s.is_abelian = is_abelian_subgroup(g, set);
  s.is_normal = is_normal(g, set);
  if (prime) {
    s.is_powerful = s.is_abelian || is_powerful(g, set);
    s.is_powerfully_embedded = s.is_normal && is_powerfully_embedded(g, set);
  }
  s.elements = std::move(set);
  return s;
}

}  // namespace detail

/// All subgroups of G.  Seeds with the trivial subgroup and every cyclic
/// subgroup, then extends each known H by one element per right coset of H
/// outside H, until no new subgroup appears.  A proper H is maximal exactly
/// when every such extension is the whole group.
inline Lattice enumerate_subgroups(FiniteGroup const& g, Caps const& caps = Caps{}) {
  std::size_t n = g.order();
  if (n > caps.lattice) {
    throw CapError("order " + std::to_string(n) + " exceeds lattice cap " + std::to_string(caps.lattice));
  }
  struct Found {
    ElementSet set;
    std::vector<Element> gens;
    bool maximal = false;
  };
  std::vector<Found> found;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  auto add = [&](ElementSet set, std::vector<Element> gens) {
    if (index.emplace(set, found.size()).second) found.push_back({std::move(set), std::move(gens), false});
  };

  add(g.trivial(), {});
  for (Element x = 0; x < n; ++x) {
    std::vector<Element> gens{x};
    add(closure_of_generators(g, gens), gens);
  }

  ElementSet whole = g.all();
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].set == whole) continue;
    ElementSet covered = found[i].set;
    std::vector<Element> members = found[i].set.to_vector();
    std::vector<Element> gens = found[i].gens;
    bool every_extension_is_whole = true;
    for (Element x = 0; x < n; ++x) {
      if (covered.contains(x)) continue;
      for (Element h : members) covered.insert(g.mul(h, x));
      gens.push_back(x);
      ElementSet ext = closure_of_generators(g, gens);
      if (!(ext == whole)) every_extension_is_whole = false;
      add(std::move(ext), gens);
      gens.pop_back();
    }
    found[i].maximal = every_extension_is_whole;
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(found[a].set, found[b].set); });

  Lattice lattice;
  lattice.group_order = n;
  lattice.prime = is_p_group(g);
  lattice.subgroups.reserve(found.size());
  for (std::size_t idx : order) {
    lattice.subgroups.push_back(detail::make_subgroup(g, found[idx].set, found[idx].maximal, lattice.prime));
  }
  return lattice;
}

inline std::vector<Subgroup> maximal_subgroups(FiniteGroup const& g, Lattice const& lattice) {
  if (lattice.group_order != g.order()) throw InvalidGroup("lattice belongs to a different group");
  std::vector<Subgroup> out;
  for (auto const& s : lattice.subgroups) {
    if (s.is_maximal) out.push_back(s);
  }
  return out;
}

enum class SmallKind { Trivial, Cyclic, Klein, Dihedral, QuaternionLike, Other };

struct SmallType {
  SmallKind kind = SmallKind::Other;
  std::size_t order = 0;  // subgroup order

  friend bool operator==(SmallType const&, SmallType const&) = default;
};

inline std::string to_string(SmallType t) {
  switch (t.kind) {
    case SmallKind::Trivial: return "trivial";
    case SmallKind::Cyclic: return "cyclic(" + std::to_string(t.order) + ")";
    case SmallKind::Klein: return "klein";
    case SmallKind::Dihedral: return "dihedral(" + std::to_string(t.order) + ")";
    case SmallKind::QuaternionLike: return "quaternion-like(" + std::to_string(t.order) + ")";
    case SmallKind::Other: return "other(" + std::to_string(t.order) + ")";
  }
  return "other";
}

/// Order-statistics classification: cyclic iff some element has full order;
/// klein iff order 4 and exponent 2; dihedral iff two involutions s, t with
/// |H| = 2 ord(st) exist; quaternion-like iff nonabelian with a unique
/// involution.
inline SmallType classify_small(FiniteGroup const& g, ElementSet const& h) {
  std::size_t m = h.count();
  if (m == 1) return {SmallKind::Trivial, 1};
  std::vector<Element> members = h.to_vector();
  std::vector<Element> involutions;
  std::size_t exponent = 1;
  for (Element x : members) {
    std::size_t o = g.element_order(x);
    if (o == m) return {SmallKind::Cyclic, m};
    if (o == 2) involutions.push_back(x);
    exponent = std::lcm(exponent, o);
  }
  if (m == 4 && exponent == 2) return {SmallKind::Klein, 4};
  for (std::size_t i = 0; i < involutions.size(); ++i) {
    for (std::size_t j = i + 1; j < involutions.size(); ++j) {
      if (2 * g.element_order(g.mul(involutions[i], involutions[j])) == m) return {SmallKind::Dihedral, m};
    }
  }
  if (involutions.size() == 1 && !is_abelian_subgroup(g, h)) return {SmallKind::QuaternionLike, m};
  return {SmallKind::Other, m};
}

}  // namespace powcov
