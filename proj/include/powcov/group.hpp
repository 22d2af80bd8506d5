#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"

namespace powcov {

/// A finite group given by its Cayley table.  Immutable once constructed;
/// every constructor path goes through `FiniteGroup::from_table`, which
/// validates the group axioms.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Validates a row-major table (table[i*n + j] = index of g_i g_j).
  /// Associativity is checked exhaustively when n <= `assoc_check_limit`.
  static FiniteGroup from_table(std::size_t n, std::vector<Element> table, std::string descriptor,
                                std::size_t assoc_check_limit = Caps::kHardCeiling) {
    if (n == 0) throw InvalidGroup("group order must be positive");
    if (table.size() != n * n) {
      throw InvalidGroup("table has " + std::to_string(table.size()) + " entries, expected " + std::to_string(n * n));
    }
    FiniteGroup g;
    g.n_ = n;
    g.table_ = std::move(table);
    g.descriptor_ = std::move(descriptor);
    g.check_latin_square();
    g.find_identity();
    if (n <= assoc_check_limit) g.check_associativity();
    g.compute_inverses_and_orders();
    return g;
  }

  std::size_t order() const noexcept { return n_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inverse(Element a) const noexcept { return inverses_[a]; }
  std::size_t element_order(Element a) const noexcept { return orders_[a]; }
  std::span<Element const> table() const noexcept { return table_; }
  std::span<std::size_t const> element_orders() const noexcept { return orders_; }
  std::string const& descriptor() const noexcept { return descriptor_; }

  Element pow(Element a, std::size_t k) const noexcept {
    Element result = identity_;
    Element base = a;
    while (k > 0) {
      if (k & 1U) result = mul(result, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return result;
  }

  /// x^-1 y^-1 x y
  Element commutator(Element x, Element y) const noexcept { return mul(mul(inverse(x), inverse(y)), mul(x, y)); }

  /// g^-1 x g
  Element conjugate(Element x, Element g) const noexcept { return mul(mul(inverse(g), x), g); }

  ElementSet all() const { return ElementSet::full(n_); }
  ElementSet trivial() const { return ElementSet(n_, {identity_}); }

  bool is_abelian() const noexcept {
    for (Element i = 0; i < n_; ++i) {
      for (Element j = i + 1; j < n_; ++j) {
        if (mul(i, j) != mul(j, i)) return false;
      }
    }
    return true;
  }

  friend bool operator==(FiniteGroup const& a, FiniteGroup const& b) noexcept {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  void check_latin_square() const {
    std::vector<std::uint32_t> seen(n_, 0);
    std::uint32_t stamp = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      ++stamp;
      for (std::size_t c = 0; c < n_; ++c) {
        Element v = table_[r * n_ + c];
        if (v >= n_) {
          throw InvalidGroup("table entry out of range at row " + std::to_string(r) + ", column " + std::to_string(c));
        }
        if (seen[v] == stamp) {
          throw InvalidGroup("not a Latin square: row " + std::to_string(r) + " repeats " + std::to_string(v) +
                             " at column " + std::to_string(c));
        }
        seen[v] = stamp;
      }
    }
    for (std::size_t c = 0; c < n_; ++c) {
      ++stamp;
      for (std::size_t r = 0; r < n_; ++r) {
        Element v = table_[r * n_ + c];
        if (seen[v] == stamp) {
          throw InvalidGroup("not a Latin square: column " + std::to_string(c) + " repeats " + std::to_string(v) +
                             " at row " + std::to_string(r));
        }
        seen[v] = stamp;
      }
    }
  }

  void find_identity() {
    for (Element e = 0; e < n_; ++e) {
      bool ok = true;
      for (Element i = 0; i < n_ && ok; ++i) ok = mul(e, i) == i && mul(i, e) == i;
      if (ok) {
        identity_ = e;
        return;
      }
    }
    throw InvalidGroup("table has no two-sided identity");
  }

  void check_associativity() const {
    for (Element a = 0; a < n_; ++a) {
      for (Element b = 0; b < n_; ++b) {
        Element ab = mul(a, b);
        for (Element c = 0; c < n_; ++c) {
          if (mul(ab, c) != mul(a, mul(b, c))) {
            throw InvalidGroup("associativity fails for (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                               std::to_string(c) + ")");
          }
        }
      }
    }
  }

  void compute_inverses_and_orders() {
    inverses_.assign(n_, 0);
    for (Element a = 0; a < n_; ++a) {
      for (Element b = 0; b < n_; ++b) {
        if (mul(a, b) == identity_) {
          inverses_[a] = b;
          break;
        }
      }
    }
    orders_.assign(n_, 1);
    for (Element a = 0; a < n_; ++a) {
      std::size_t k = 1;
      for (Element x = a; x != identity_; x = mul(x, a)) ++k;
      orders_[a] = k;
    }
  }

  std::size_t n_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
  std::vector<std::size_t> orders_;
  std::string descriptor_;
};

}  // namespace powcov
