#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"
#include "lattice.hpp"

namespace powcov {

enum class FamilySelector { All, Abelian, Powerful, PowerfullyEmbedded };

inline std::string to_string(FamilySelector f) {
  switch (f) {
    case FamilySelector::All: return "all";
    case FamilySelector::Abelian: return "abelian";
    case FamilySelector::Powerful: return "powerful";
    case FamilySelector::PowerfullyEmbedded: return "pe";
  }
  return "?";
}

/// Symbol used in reports: sigma, sigma_A, sigma_P, sigma_PE.
inline std::string sigma_symbol(FamilySelector f) {
  switch (f) {
    case FamilySelector::All: return "sigma";
    case FamilySelector::Abelian: return "sigma_A";
    case FamilySelector::Powerful: return "sigma_P";
    case FamilySelector::PowerfullyEmbedded: return "sigma_PE";
  }
  return "sigma";
}

inline std::optional<FamilySelector> parse_family(std::string const& s) {
  if (s == "all") return FamilySelector::All;
  if (s == "abelian") return FamilySelector::Abelian;
  if (s == "powerful") return FamilySelector::Powerful;
  if (s == "pe" || s == "powerfully-embedded") return FamilySelector::PowerfullyEmbedded;
  return std::nullopt;
}

inline bool needs_p_group(FamilySelector f) {
  return f == FamilySelector::Powerful || f == FamilySelector::PowerfullyEmbedded;
}

inline bool in_family(Subgroup const& s, FamilySelector f) {
  switch (f) {
    case FamilySelector::All: return true;
    case FamilySelector::Abelian: return s.is_abelian;
    case FamilySelector::Powerful: return s.is_powerful;
    case FamilySelector::PowerfullyEmbedded: return s.is_powerfully_embedded;
  }
  return false;
}

/// Set-cover formulation.  Candidates are proper family members that are
/// not contained in another candidate; `provenance[i]` is the lattice index
/// of candidate i.
struct CoverInstance {
  ElementSet universe;
  std::vector<ElementSet> candidates;
  std::vector<std::size_t> provenance;
};

enum class CoverStatus { Optimal, Infeasible };

struct CoverResult {
  CoverStatus status = CoverStatus::Infeasible;
  std::size_t size = 0;
  std::vector<std::size_t> witness;          // candidate indices
  std::vector<ElementSet> witness_sets;      // the witness subgroups themselves
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};

  bool optimal() const noexcept { return status == CoverStatus::Optimal; }
};

/// Keeps candidates not contained in any other candidate.  Input order is
/// preserved among survivors.
inline std::vector<std::size_t> undominated(std::vector<ElementSet> const& sets) {
  std::vector<std::size_t> by_size(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return sets[a].count() > sets[b].count(); });
  // A set is dominated iff it lies inside some kept set: containment is
  // transitive and every larger set is either kept or inside a kept one.
  std::vector<std::size_t> kept;
  for (std::size_t i : by_size) {
    bool dominated = false;
    for (std::size_t k : kept) {
      if (sets[i].is_subset_of(sets[k])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

/// Instance for covering `target` (a member of the lattice, by default the
/// whole group) by lattice members strictly inside it.  Powerful and
/// Abelian are intrinsic, so a sublattice query answers the same question
/// for the subgroup; PowerfullyEmbedded is relative to G and is only
/// meaningful for the whole group.
inline CoverInstance build_instance_within(Lattice const& lattice, ElementSet const& target, FamilySelector family) {
  if (needs_p_group(family) && !lattice.prime) {
    throw InvalidGroup("family '" + to_string(family) + "' needs a p-group");
  }
  std::vector<ElementSet> sets;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < lattice.subgroups.size(); ++i) {
    auto const& s = lattice.subgroups[i];
    if (s.order >= target.count() || !in_family(s, family) || !s.elements.is_subset_of(target)) continue;
    sets.push_back(s.elements);
    origin.push_back(i);
  }
  CoverInstance inst;
  inst.universe = target;
  for (std::size_t i : undominated(sets)) {
    inst.candidates.push_back(sets[i]);
    inst.provenance.push_back(origin[i]);
  }
  return inst;
}

inline CoverInstance build_instance(FiniteGroup const& g, Lattice const& lattice, FamilySelector family) {
  if (lattice.group_order != g.order()) throw InvalidGroup("lattice belongs to a different group");
  return build_instance_within(lattice, g.all(), family);
}

struct GreedyCover {
  std::size_t size = 0;
  std::vector<std::size_t> witness;
};

/// Largest uncovered gain first, ties to the lower index.  nullopt iff the
/// candidates do not cover the universe.
inline std::optional<GreedyCover> solve_greedy(CoverInstance const& inst) {
  ElementSet uncovered = inst.universe;
  GreedyCover out;
  while (!uncovered.empty()) {
    std::size_t best = inst.candidates.size(), best_gain = 0;
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
      std::size_t gain = (inst.candidates[i] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best_gain == 0) return std::nullopt;
    out.witness.push_back(best);
    uncovered -= inst.candidates[best];
  }
  out.size = out.witness.size();
  return out;
}

namespace detail {

/// Depth-first branch and bound over fixed-width word vectors.
class ExactCoverSearch {
 public:
  explicit ExactCoverSearch(CoverInstance const& inst) : inst_(inst) {
    words_ = inst.universe.words().size();
    for (auto const& c : inst.candidates) {
      cand_words_.insert(cand_words_.end(), c.words().begin(), c.words().end());
      cand_size_.push_back(c.count());
    }
    std::size_t n = inst.universe.universe_size();
    containing_.assign(n, {});
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
      inst.candidates[i].for_each([&](Element e) { containing_[e].push_back(i); });
    }
    // Children: descending candidate size, then ascending index.
    for (auto& list : containing_) {
      std::stable_sort(list.begin(), list.end(),
                       [&](std::size_t a, std::size_t b) { return cand_size_[a] > cand_size_[b]; });
    }
  }

  void run(std::size_t bound, std::vector<std::size_t> incumbent) {
    best_size_ = bound;
    best_ = std::move(incumbent);
    std::vector<ElementSet::Word> uncovered(inst_.universe.words().begin(), inst_.universe.words().end());
    chosen_.clear();
    dfs(uncovered);
  }

  std::size_t best_size() const { return best_size_; }
  std::vector<std::size_t> const& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  using Word = ElementSet::Word;

  Word const* cand(std::size_t i) const { return cand_words_.data() + i * words_; }

  void dfs(std::vector<Word> const& uncovered) {
    ++nodes_;
    std::size_t remaining = 0;
    for (Word w : uncovered) remaining += static_cast<std::size_t>(std::popcount(w));
    if (remaining == 0) {
      if (chosen_.size() < best_size_) {
        best_size_ = chosen_.size();
        best_ = chosen_;
      }
      return;
    }
    if (chosen_.size() + 1 >= best_size_) return;

    std::size_t max_gain = 0;
    for (std::size_t i = 0; i < cand_size_.size(); ++i) {
      std::size_t gain = 0;
      Word const* c = cand(i);
      for (std::size_t w = 0; w < words_; ++w) gain += static_cast<std::size_t>(std::popcount(c[w] & uncovered[w]));
      max_gain = std::max(max_gain, gain);
    }
    if (max_gain == 0) return;
    std::size_t lower = (remaining + max_gain - 1) / max_gain;
    if (chosen_.size() + lower >= best_size_) return;

    // Branch on the uncovered element lying in the fewest candidates.
    std::size_t pivot = 0, pivot_count = SIZE_MAX;
    for (std::size_t w = 0; w < words_; ++w) {
      Word bits = uncovered[w];
      while (bits != 0) {
        std::size_t e = w * ElementSet::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (containing_[e].size() < pivot_count) {
          pivot_count = containing_[e].size();
          pivot = e;
        }
      }
    }
    std::vector<Word> next(words_);
    for (std::size_t c : containing_[pivot]) {
      Word const* cw = cand(c);
      for (std::size_t w = 0; w < words_; ++w) next[w] = uncovered[w] & ~cw[w];
      chosen_.push_back(c);
      dfs(next);
      chosen_.pop_back();
      if (chosen_.size() + 1 >= best_size_) return;
    }
  }

  CoverInstance const& inst_;
  std::size_t words_ = 0;
  std::vector<Word> cand_words_;
  std::vector<std::size_t> cand_size_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::size_t best_size_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Minimum set cover.  Branches on the uncovered element contained in the
/// fewest candidates; children by descending size then ascending index.
/// Prunes by the incumbent (seeded one above the greedy size, so the
/// reported witness is the first optimum in search order) and by
/// ceil(uncovered / max gain).
inline CoverResult solve_exact(CoverInstance const& inst) {
  auto start = std::chrono::steady_clock::now();
  CoverResult result;
  ElementSet reach(inst.universe.universe_size());
  for (auto const& c : inst.candidates) reach |= c;
  if (!inst.universe.is_subset_of(reach)) {
    result.status = CoverStatus::Infeasible;
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
  }
  auto greedy = solve_greedy(inst);
  detail::ExactCoverSearch search(inst);
  search.run(greedy->size + 1, greedy->witness);
  result.status = CoverStatus::Optimal;
  result.size = search.best_size();
  result.witness = search.best();
  result.nodes_explored = search.nodes();
  for (std::size_t i : result.witness) result.witness_sets.push_back(inst.candidates[i]);
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

inline CoverResult covering_number(FiniteGroup const& g, Lattice const& lattice, FamilySelector family) {
  return solve_exact(build_instance(g, lattice, family));
}

inline CoverResult covering_number(FiniteGroup const& g, FamilySelector family, Caps const& caps = Caps{}) {
  if (needs_p_group(family) && !is_p_group(g)) {
    throw InvalidGroup("family '" + to_string(family) + "' needs a p-group, got order " + std::to_string(g.order()));
  }
  Lattice lattice = enumerate_subgroups(g, caps);
  return covering_number(g, lattice, family);
}

/// Independent of the solver and the lattice: re-derives subgroup closure,
/// properness, and the family predicate from the Cayley table.
inline bool verify_witness(FiniteGroup const& g, FamilySelector family, std::vector<ElementSet> const& witness) {
  if (needs_p_group(family) && !is_p_group(g)) return false;
  ElementSet uni(g.order());
  for (auto const& h : witness) {
    if (h.universe_size() != g.order() || !is_subgroup(g, h) || h.count() == g.order()) return false;
    switch (family) {
      case FamilySelector::All: break;
      case FamilySelector::Abelian:
        if (!is_abelian_subgroup(g, h)) return false;
        break;
      case FamilySelector::Powerful:
        if (!is_powerful(g, h)) return false;
        break;
      case FamilySelector::PowerfullyEmbedded:
        if (!is_powerfully_embedded(g, h)) return false;
        break;
    }
    uni |= h;
  }
  return uni == g.all();
}

}  // namespace powcov
