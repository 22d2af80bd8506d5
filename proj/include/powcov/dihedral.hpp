#pragma once

// Table-free arithmetic in the dihedral group of order 2^{n+1}, the
// symmetries of the regular 2^n-gon.  With a the reflection across the line
// at angle pi/2^n and b the reflection across the x-axis, ab is the rotation
// by 2pi/2^n and every element is uniquely (ab)^j a^k, 0 <= j < 2^n,
// k in {0, 1}.
//
// Three published statements about this group are off and are corrected
// here, each pinned by a regression test against Cayley-table brute force:
//  * rotation order is 2^n / gcd(j, 2^n), not 2^{n-1} / gcd(j, 2^{n-1});
//  * <(ab)^s a, (ab)^t a> is a Klein four-group iff s = t + 2^{n-1} (mod 2^n),
//    not iff s + t = 2^{n-1};
//  * the Klein members of the minimal powerful cover are
//    <(ab)^r a, (ab)^{r + 2^{n-1}} a> for 0 <= r < 2^{n-1}.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "construct.hpp"
#include "error.hpp"
#include "group.hpp"

namespace powcov::dihedral {

struct Element {
  std::size_t n = 2;  // group order is 2^{n+1}
  std::size_t j = 0;  // rotation exponent mod 2^n
  std::size_t k = 0;  // 1 for reflections

  std::size_t modulus() const noexcept { return std::size_t{1} << n; }
  /// Position in the normal-form enumeration: j + k 2^n.
  std::size_t index() const noexcept { return j + k * modulus(); }

  friend bool operator==(Element const&, Element const&) = default;
  friend auto operator<=>(Element const&, Element const&) = default;
};

inline Element make(std::size_t n, long j, std::size_t k) {
  auto m = static_cast<long>(std::size_t{1} << n);
  long r = ((j % m) + m) % m;
  return {n, static_cast<std::size_t>(r), k & 1U};
}

inline Element identity(std::size_t n) { return {n, 0, 0}; }
inline Element half_turn(std::size_t n) { return {n, std::size_t{1} << (n - 1), 0}; }

/// (j1,k1)(j2,k2) = (j1 + (-1)^{k1} j2, k1 xor k2), from a (ab)^j = (ab)^{-j} a.
inline Element nf_multiply(Element x, Element y) {
  if (x.n != y.n) throw InvalidGroup("normal-form elements from different dihedral groups");
  std::size_t m = x.modulus();
  std::size_t j = x.k == 0 ? (x.j + y.j) % m : (x.j + m - y.j) % m;
  return {x.n, j, x.k ^ y.k};
}

inline Element nf_inverse(Element x) { return x.k == 1 ? x : make(x.n, -static_cast<long>(x.j), 0); }

/// Reflections have order 2; the rotation (ab)^j has order 2^n / gcd(j, 2^n).
inline std::size_t nf_order(Element x) {
  if (x.k == 1) return 2;
  return x.modulus() / std::gcd(x.j, x.modulus());
}

inline std::vector<Element> all_elements(std::size_t n) {
  std::vector<Element> out;
  std::size_t m = std::size_t{1} << n;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t j = 0; j < m; ++j) out.push_back({n, j, k});
  }
  return out;
}

enum class NFLabel { RotationCyclic, Klein, Other };

struct NFSubgroup {
  std::size_t n = 2;
  std::vector<Element> members;  // sorted
  NFLabel label = NFLabel::Other;
  std::size_t parameter = 0;     // order d for RotationCyclic, r for Klein

  bool contains(Element x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool is_closed() const {
    for (auto const& a : members) {
      for (auto const& b : members) {
        if (!contains(nf_multiply(a, b))) return false;
      }
    }
    return true;
  }
};

inline NFSubgroup rotation_subgroup(std::size_t n) {
  NFSubgroup h{n, {}, NFLabel::RotationCyclic, std::size_t{1} << n};
  for (std::size_t j = 0; j < (std::size_t{1} << n); ++j) h.members.push_back({n, j, 0});
  return h;
}

/// klein(r) = {e, (ab)^r a, (ab)^{r + 2^{n-1}} a, (ab)^{2^{n-1}}}
inline NFSubgroup klein_subgroup(std::size_t n, std::size_t r) {
  std::size_t half = std::size_t{1} << (n - 1);
  NFSubgroup h{n, {identity(n), half_turn(n), make(n, static_cast<long>(r), 1), make(n, static_cast<long>(r + half), 1)},
               NFLabel::Klein, r % half};
  std::sort(h.members.begin(), h.members.end());
  return h;
}

/// The 2^{n-1} Klein four-subgroups, klein(r) for 0 <= r < 2^{n-1}.
inline std::vector<NFSubgroup> klein_subgroups_nf(std::size_t n) {
  if (n < 2) throw InvalidGroup("klein census needs n >= 2");
  std::vector<NFSubgroup> out;
  for (std::size_t r = 0; r < (std::size_t{1} << (n - 1)); ++r) out.push_back(klein_subgroup(n, r));
  return out;
}

/// <ab> together with every Klein four-subgroup: 2^{n-1} + 1 abelian
/// subgroups whose union is the whole group.
inline std::vector<NFSubgroup> explicit_powerful_cover(std::size_t n) {
  if (n < 2) throw InvalidGroup("explicit cover needs n >= 2");
  std::vector<NFSubgroup> out{rotation_subgroup(n)};
  for (auto& h : klein_subgroups_nf(n)) out.push_back(std::move(h));
  return out;
}

struct CountingBound {
  std::size_t members = 0;          // q
  std::size_t bound = 0;            // 2^n + 2(q - 1)
  std::size_t group_order = 0;      // 2^{n+1}
  std::size_t union_size = 0;
  std::size_t max_contribution = 0; // most reflections any non-rotation member adds
  bool consistent = false;          // every member adds <= 2 and union_size <= bound
  bool can_cover = false;           // bound >= group order, i.e. q >= 2^{n-1} + 1
};

/// The counting argument behind the lower bound: a cover contains <ab>, and
/// each further powerful member is C2 or a Klein group, adding at most two
/// reflections.  So q members reach at most 2^n + 2(q - 1) elements.
inline CountingBound counting_bound_check(std::size_t n, std::vector<NFSubgroup> const& cover) {
  NFSubgroup rot = rotation_subgroup(n);
  bool has_rotations = std::any_of(cover.begin(), cover.end(), [&](NFSubgroup const& h) { return h.members == rot.members; });
  if (!has_rotations) throw InvalidGroup("cover does not contain the rotation subgroup <ab>");
  CountingBound out;
  out.members = cover.size();
  out.group_order = std::size_t{1} << (n + 1);
  out.bound = (std::size_t{1} << n) + 2 * (cover.size() - 1);
  std::vector<bool> seen(out.group_order, false);
  for (auto const& h : cover) {
    std::size_t reflections = 0;
    for (auto const& x : h.members) {
      seen[x.index()] = true;
      reflections += x.k;
    }
    if (h.members != rot.members) out.max_contribution = std::max(out.max_contribution, reflections);
  }
  out.union_size = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  out.consistent = out.max_contribution <= 2 && out.union_size <= out.bound;
  out.can_cover = out.bound >= out.group_order;
  return out;
}

/// Index map phi from the normal-form enumeration into the Cayley group
/// built for dihedral:2^{n+1}, phi((ab)^j a^k) = phi(ab)^j phi(a)^k, checked
/// to be a bijective homomorphism on all pairs.
inline std::vector<powcov::Element> nf_embed(std::size_t n, FiniteGroup const& cayley) {
  std::size_t m = std::size_t{1} << n;
  if (n < 2 || cayley.order() != 2 * m) throw InvalidGroup("nf_embed: Cayley group has the wrong order");
  // Cayley index m + i is the reflection v -> i - v of the m-gon.
  auto a = static_cast<powcov::Element>(m + 1);  // v -> 1 - v
  auto b = static_cast<powcov::Element>(m);      // v -> -v
  powcov::Element ab = cayley.mul(a, b);
  std::vector<powcov::Element> phi(2 * m);
  for (auto const& x : all_elements(n)) {
    powcov::Element img = cayley.pow(ab, x.j);
    if (x.k == 1) img = cayley.mul(img, a);
    phi[x.index()] = img;
  }
  std::vector<bool> hit(2 * m, false);
  for (auto img : phi) {
    if (hit[img]) throw Error("nf_embed: normal form is not injective");
    hit[img] = true;
  }
  auto elems = all_elements(n);
  for (auto const& x : elems) {
    for (auto const& y : elems) {
      if (phi[nf_multiply(x, y).index()] != cayley.mul(phi[x.index()], phi[y.index()])) {
        throw Error("nf_embed: normal-form product disagrees with the Cayley table");
      }
    }
  }
  return phi;
}

inline std::vector<powcov::Element> nf_embed(std::size_t n) {
  return nf_embed(n, build_group(GroupDescriptor::dihedral(std::size_t{1} << (n + 1))));
}

inline ElementSet image(NFSubgroup const& h, std::vector<powcov::Element> const& phi) {
  ElementSet out(phi.size());
  for (auto const& x : h.members) out.insert(phi[x.index()]);
  return out;
}

}  // namespace powcov::dihedral
