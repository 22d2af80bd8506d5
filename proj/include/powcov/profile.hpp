#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cache.hpp"
#include "core.hpp"
#include "cover.hpp"
#include "lattice.hpp"

namespace powcov {

inline constexpr std::array<FamilySelector, 4> kAllFamilies = {FamilySelector::All, FamilySelector::Abelian,
                                                                FamilySelector::Powerful,
                                                                FamilySelector::PowerfullyEmbedded};

inline std::size_t family_slot(FamilySelector f) { return static_cast<std::size_t>(f); }

/// One covering number as reported: not requested, not applicable (the
/// family needs a p-group), infeasible, or a value.
struct SigmaCell {
  enum class State { NotRequested, NotApplicable, Infeasible, Value };
  State state = State::NotRequested;
  std::size_t value = 0;
  std::vector<std::size_t> witness_orders;  // orders of the witness subgroups

  bool finite() const noexcept { return state == State::Value; }

  std::string text() const {
    switch (state) {
      case State::NotRequested: return "-";
      case State::NotApplicable: return "NA";
      case State::Infeasible: return "INF";
      case State::Value: return std::to_string(value);
    }
    return "?";
  }
};

inline SigmaCell to_cell(CoverResult const& r) {
  SigmaCell c;
  if (!r.optimal()) {
    c.state = SigmaCell::State::Infeasible;
    return c;
  }
  c.state = SigmaCell::State::Value;
  c.value = r.size;
  for (auto const& w : r.witness_sets) c.witness_orders.push_back(w.count());
  return c;
}

/// "8+4+4+4+4": witness subgroup orders, largest first.
inline std::string witness_summary(SigmaCell const& c) {
  if (!c.finite()) return c.text();
  auto orders = c.witness_orders;
  std::sort(orders.rbegin(), orders.rend());
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) out += (i == 0 ? "" : "+") + std::to_string(orders[i]);
  return out;
}

inline SigmaCell sigma_cell(FiniteGroup const& g, Lattice const& lattice, FamilySelector family) {
  if (needs_p_group(family) && !lattice.prime) return {SigmaCell::State::NotApplicable, 0, {}};
  return to_cell(covering_number(g, lattice, family));
}

/// Lattice from the cache when one is given, else freshly enumerated.
inline Lattice obtain_lattice(FiniteGroup const& g, LatticeCache const* cache, Caps const& caps) {
  if (cache != nullptr) return cache->get_or_compute(g.descriptor(), g, caps).lattice;
  return enumerate_subgroups(g, caps);
}

inline bool is_cyclic_subgroup(FiniteGroup const& g, ElementSet const& h) {
  std::size_t m = h.count();
  bool cyclic = false;
  h.for_each([&](Element x) { cyclic = cyclic || g.element_order(x) == m; });
  return cyclic;
}

/// A subgroup whose powerful covering number exceeds that of the group.
struct MonotonicityHit {
  std::size_t lattice_index = 0;
  std::size_t subgroup_order = 0;
  std::size_t subgroup_sigma_p = 0;
  std::size_t group_sigma_p = 0;
};

/// Searches the proper noncyclic nonabelian subgroups H of G for
/// sigma_P(H) > sigma_P(G).  Abelian H are skipped: their every subgroup is
/// abelian, so sigma_P(H) = sigma(H) = p + 1 <= sigma(G) <= sigma_P(G).
/// Powerful is intrinsic, so sigma_P(H) is solved on G's own lattice.
inline std::vector<MonotonicityHit> monotonicity_hits(FiniteGroup const& g, Lattice const& lattice, std::size_t sigma_p) {
  std::vector<MonotonicityHit> hits;
  if (!lattice.prime) return hits;
  for (std::size_t i = 0; i < lattice.subgroups.size(); ++i) {
    auto const& s = lattice.subgroups[i];
    if (!s.is_proper || s.is_abelian || is_cyclic_subgroup(g, s.elements)) continue;
    CoverResult r = solve_exact(build_instance_within(lattice, s.elements, FamilySelector::Powerful));
    if (r.optimal() && r.size > sigma_p) hits.push_back({i, s.order, r.size, sigma_p});
  }
  return hits;
}

}  // namespace powcov
