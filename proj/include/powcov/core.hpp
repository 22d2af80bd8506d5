#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"

namespace powcov {

/// Subgroup generated by `gens`: breadth-first closure under right
/// multiplication.  Cost O(|result| * |gens|).
inline ElementSet closure_of_generators(FiniteGroup const& g, std::span<Element const> gens) {
  ElementSet out(g.order());
  std::vector<Element> queue{g.identity()};
  out.insert(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Element x = queue[head];
    for (Element s : gens) {
      Element y = g.mul(x, s);
      if (!out.contains(y)) {
        out.insert(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

/// A small generating set for the subgroup generated by `s`: members of `s`
/// are taken in index order and kept only when they enlarge the span.
inline std::vector<Element> reduced_generators(FiniteGroup const& g, ElementSet const& s) {
  std::vector<Element> gens;
  ElementSet span = g.trivial();
  s.for_each([&](Element x) {
    if (!span.contains(x)) {
      gens.push_back(x);
      span = closure_of_generators(g, gens);
    }
  });
  return gens;
}

/// Smallest subgroup containing `s` (the empty set yields {identity}).
inline ElementSet closure(FiniteGroup const& g, ElementSet const& s) {
  return closure_of_generators(g, reduced_generators(g, s));
}

inline bool is_subgroup(FiniteGroup const& g, ElementSet const& h) {
  if (h.universe_size() != g.order() || !h.contains(g.identity())) return false;
  bool closed = true;
  std::vector<Element> members = h.to_vector();
  for (Element a : members) {
    if (!h.contains(g.inverse(a))) return false;
  }
  for (std::size_t i = 0; i < members.size() && closed; ++i) {
    for (std::size_t j = 0; j < members.size() && closed; ++j) closed = h.contains(g.mul(members[i], members[j]));
  }
  return closed;
}

namespace detail {
inline void require_subgroup(FiniteGroup const& g, ElementSet const& h, char const* what) {
  if (h.universe_size() != g.order() || !(closure(g, h) == h)) throw InvalidGroup(std::string(what) + " is not a subgroup");
}
}  // namespace detail

/// <[h,k] : h in H, k in K>
inline ElementSet commutator_subgroup(FiniteGroup const& g, ElementSet const& h, ElementSet const& k) {
  detail::require_subgroup(g, h, "first argument");
  detail::require_subgroup(g, k, "second argument");
  ElementSet comms(g.order());
  std::vector<Element> ks = k.to_vector();
  h.for_each([&](Element x) {
    for (Element y : ks) comms.insert(g.commutator(x, y));
  });
  return closure(g, comms);
}

/// <x^k : x in H>
inline ElementSet power_subgroup(FiniteGroup const& g, ElementSet const& h, std::size_t k) {
  detail::require_subgroup(g, h, "argument");
  if (k == 0) throw InvalidGroup("power exponent must be positive");
  ElementSet powers(g.order());
  h.for_each([&](Element x) { powers.insert(g.pow(x, k)); });
  return closure(g, powers);
}

inline std::vector<Element> group_generators(FiniteGroup const& g) { return reduced_generators(g, g.all()); }

inline ElementSet center(FiniteGroup const& g) {
  auto gens = group_generators(g);
  ElementSet z(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element s : gens) {
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) z.insert(x);
  }
  return z;
}

inline bool is_normal(FiniteGroup const& g, ElementSet const& h) {
  detail::require_subgroup(g, h, "argument");
  auto gens = group_generators(g);
  bool normal = true;
  h.for_each([&](Element x) {
    for (Element s : gens) {
      if (!h.contains(g.conjugate(x, s))) normal = false;
    }
  });
  return normal;
}

/// Smallest normal subgroup containing H.
inline ElementSet normal_closure(FiniteGroup const& g, ElementSet const& h) {
  detail::require_subgroup(g, h, "argument");
  auto gens = group_generators(g);
  ElementSet n = h;
  for (;;) {
    ElementSet grown = n;
    n.for_each([&](Element x) {
      for (Element s : gens) grown.insert(g.conjugate(x, s));
    });
    grown = closure(g, grown);
    if (grown == n) return n;
    n = std::move(grown);
  }
}

/// Coset index of every element.  Coset 0 holds the identity; the others
/// are numbered by their smallest element index.
inline std::vector<Element> coset_map(FiniteGroup const& g, ElementSet const& n) {
  constexpr Element kUnassigned = ~Element{0};
  std::vector<Element> coset_of(g.order(), kUnassigned);
  std::vector<Element> members = n.to_vector();
  Element next = 0;
  auto assign = [&](Element rep) {
    for (Element m : members) coset_of[g.mul(rep, m)] = next;
    ++next;
  };
  assign(g.identity());
  for (Element x = 0; x < g.order(); ++x) {
    if (coset_of[x] == kUnassigned) assign(x);
  }
  return coset_of;
}

/// G/N with cosets numbered as in coset_map.  The projection is checked to
/// be a homomorphism on all pairs.
inline FiniteGroup quotient_group(FiniteGroup const& g, ElementSet const& n, Caps const& caps = Caps{}) {
  if (!is_normal(g, n)) throw InvalidGroup("quotient by a non-normal subgroup");
  std::vector<Element> coset_of = coset_map(g, n);
  std::size_t q = g.order() / n.count();
  std::vector<Element> reps(q, 0);
  std::vector<bool> seen(q, false);
  for (Element x = 0; x < g.order(); ++x) {
    if (!seen[coset_of[x]]) {
      seen[coset_of[x]] = true;
      reps[coset_of[x]] = x;
    }
  }
  std::vector<Element> table(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) table[a * q + b] = coset_of[g.mul(reps[a], reps[b])];
  }
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      if (coset_of[g.mul(x, y)] != table[static_cast<std::size_t>(coset_of[x]) * q + coset_of[y]]) {
        throw InvalidGroup("coset projection is not a homomorphism");
      }
    }
  }
  return FiniteGroup::from_table(q, std::move(table), "quotient:(" + g.descriptor() + ")/" + std::to_string(n.count()),
                                 caps.construction);
}

/// Lower central series G_0 = G, G_i = [G_{i-1}, G] until it stabilizes.
inline std::vector<ElementSet> lower_central_series(FiniteGroup const& g) {
  std::vector<ElementSet> series{g.all()};
  for (;;) {
    ElementSet next = commutator_subgroup(g, series.back(), g.all());
    if (next == series.back()) return series;
    series.push_back(std::move(next));
  }
}

/// Least i with G_i trivial; nullopt when G is not nilpotent.
inline std::optional<std::size_t> nilpotence_class(FiniteGroup const& g) {
  auto series = lower_central_series(g);
  if (series.back().count() != 1) return std::nullopt;
  return series.size() - 1;
}

/// p when |G| = p^a with a >= 1.
inline std::optional<std::size_t> prime_power_base(std::size_t n) {
  if (n < 2) return std::nullopt;
  std::size_t p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  if (n != 1) return std::nullopt;
  return p;
}

inline std::optional<std::size_t> is_p_group(FiniteGroup const& g) { return prime_power_base(g.order()); }

inline std::size_t log_base(std::size_t n, std::size_t p) {
  std::size_t a = 0;
  while (n > 1) {
    n /= p;
    ++a;
  }
  return a;
}

/// log_p |G| minus the nilpotence class.
inline long coclass(FiniteGroup const& g) {
  auto p = is_p_group(g);
  if (!p) throw InvalidGroup("coclass is defined only for nontrivial p-groups");
  auto cls = nilpotence_class(g);
  return static_cast<long>(log_base(g.order(), *p)) - static_cast<long>(*cls);
}

}  // namespace powcov
