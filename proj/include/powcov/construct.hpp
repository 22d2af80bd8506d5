#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "descriptor.hpp"
#include "error.hpp"
#include "group.hpp"
#include "io.hpp"

namespace powcov {

namespace detail {

inline void require_within_cap(std::size_t order, Caps const& caps, std::string const& what) {
  if (order > caps.construction) {
    throw CapError(what + " has order " + std::to_string(order) + ", exceeding construction cap " +
                   std::to_string(caps.construction));
  }
}

inline FiniteGroup group_from_rule(std::size_t n, std::function<Element(Element, Element)> const& rule,
                                   std::string descriptor, Caps const& caps) {
  std::vector<Element> table(n * n);
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) table[static_cast<std::size_t>(i) * n + j] = rule(i, j);
  }
  return FiniteGroup::from_table(n, std::move(table), std::move(descriptor), caps.construction);
}

/// Index j + k*h encodes x^j y^k for a metacyclic 2-group with |x| = h.
struct Metacyclic {
  std::size_t h;
  std::size_t twist;     // y x y^-1 = x^twist
  std::size_t y_square;  // y^2 = x^y_square

  Element operator()(Element a, Element b) const {
    std::size_t j1 = a % h, k1 = a / h, j2 = b % h, k2 = b / h;
    std::size_t j = k1 == 0 ? j1 + j2 : j1 + (j2 * twist) % h;
    std::size_t k = k1 + k2;
    if (k == 2) {
      j += y_square;
      k = 0;
    }
    return static_cast<Element>((j % h) + k * h);
  }
};

/// Symmetries of the regular m-gon as vertex permutations.  Element i
/// (0 <= i < m) is the rotation r^i : v -> v + i; element m + i is the
/// reflection r^i s, where s : v -> -v.  Products compose as functions
/// (right factor acts first).
inline FiniteGroup polygon_symmetries(std::size_t m, std::string descriptor, Caps const& caps) {
  std::vector<Permutation> perms;
  perms.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    Permutation p(m);
    for (std::size_t v = 0; v < m; ++v) p[v] = static_cast<std::uint32_t>((v + i) % m);
    perms.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < m; ++i) {
    Permutation p(m);
    for (std::size_t v = 0; v < m; ++v) p[v] = static_cast<std::uint32_t>((m - v + i) % m);
    perms.push_back(std::move(p));
  }
  std::map<Permutation, Element> index;
  for (std::size_t e = 0; e < perms.size(); ++e) index.emplace(perms[e], static_cast<Element>(e));
  return group_from_rule(
      2 * m,
      [&](Element a, Element b) {
        Permutation out(m);
        for (std::size_t v = 0; v < m; ++v) out[v] = perms[a][perms[b][v]];
        return index.at(out);
      },
      std::move(descriptor), caps);
}

}  // namespace detail

/// Componentwise product; (g, h) has index g*|H| + h.
inline FiniteGroup direct_product(FiniteGroup const& g, FiniteGroup const& h, Caps const& caps = Caps{}) {
  std::size_t n = g.order() * h.order();
  detail::require_within_cap(n, caps, "direct product");
  std::size_t m = h.order();
  return detail::group_from_rule(
      n,
      [&](Element a, Element b) {
        return static_cast<Element>(g.mul(a / m, b / m) * m + h.mul(a % m, b % m));
      },
      "product:(" + g.descriptor() + "," + h.descriptor() + ")", caps);
}

/// Builds the group a descriptor names.  Canonical numbering:
///  - cyclic:M        z^i -> i
///  - dihedral:M      rotations r^i -> i, reflections r^i s -> M/2 + i
///                    (dihedral:4 is C2 x C2, numbered as a direct product)
///  - quaternion:M    x^j y^k -> j + k M/2, with y^2 = x^{M/4}, y x y^-1 = x^-1
///  - semidihedral:M  x^j y^k, y^2 = 1, y x y^-1 = x^{M/4 - 1}
///  - modular:M       z^j t^k, t^2 = 1, t z t^-1 = z^{M/4 + 1}
///  - elementary:P^K  base-P digits of the index are the coordinates
inline FiniteGroup build_group(GroupDescriptor const& d, Caps const& caps = Caps{}) {
  std::string label = d.to_string();
  switch (d.kind) {
    case GroupKind::Cyclic: {
      std::size_t m = d.order;
      if (m == 0) throw InvalidGroup("cyclic order must be positive");
      detail::require_within_cap(m, caps, label);
      return detail::group_from_rule(m, [m](Element a, Element b) { return static_cast<Element>((a + b) % m); }, label, caps);
    }
    case GroupKind::Dihedral: {
      if (!detail::is_power_of_two(d.order) || d.order < 4) throw InvalidGroup(label + ": order must be a power of 2 >= 4");
      detail::require_within_cap(d.order, caps, label);
      if (d.order == 4) {
        FiniteGroup c2 = build_group(GroupDescriptor::cyclic(2), caps);
        FiniteGroup klein = direct_product(c2, c2, caps);
        return FiniteGroup::from_table(4, std::vector<Element>(klein.table().begin(), klein.table().end()), label);
      }
      return detail::polygon_symmetries(d.order / 2, label, caps);
    }
    case GroupKind::Quaternion:
    case GroupKind::Semidihedral:
    case GroupKind::Modular: {
      std::size_t min_order = d.kind == GroupKind::Quaternion ? 8 : 16;
      if (!detail::is_power_of_two(d.order) || d.order < min_order) {
        throw InvalidGroup(label + ": order must be a power of 2 >= " + std::to_string(min_order));
      }
      detail::require_within_cap(d.order, caps, label);
      std::size_t h = d.order / 2;
      detail::Metacyclic rule{h, 0, 0};
      if (d.kind == GroupKind::Quaternion) rule = {h, h - 1, h / 2};
      if (d.kind == GroupKind::Semidihedral) rule = {h, h / 2 - 1, 0};
      if (d.kind == GroupKind::Modular) rule = {h, h / 2 + 1, 0};
      return detail::group_from_rule(d.order, rule, label, caps);
    }
    case GroupKind::ElementaryAbelian: {
      if (!detail::is_prime(d.prime) || d.exponent == 0) throw InvalidGroup(label + ": needs prime base and positive exponent");
      std::size_t n = 1;
      for (std::size_t i = 0; i < d.exponent; ++i) {
        n *= d.prime;
        detail::require_within_cap(n, caps, label);
      }
      std::size_t p = d.prime;
      return detail::group_from_rule(
          n,
          [p](Element a, Element b) {
            std::size_t out = 0, place = 1;
            while (a > 0 || b > 0) {
              out += ((a % p + b % p) % p) * place;
              a /= static_cast<Element>(p);
              b /= static_cast<Element>(p);
              place *= p;
            }
            return static_cast<Element>(out);
          },
          label, caps);
    }
    case GroupKind::DirectProduct: {
      if (d.factors.size() != 2) throw InvalidGroup("product descriptor needs two factors");
      if (d.order != 0) detail::require_within_cap(d.order, caps, label);
      FiniteGroup a = build_group(d.factors[0], caps);
      FiniteGroup b = build_group(d.factors[1], caps);
      FiniteGroup prod = direct_product(a, b, caps);
      return FiniteGroup::from_table(prod.order(), std::vector<Element>(prod.table().begin(), prod.table().end()), label, 0);
    }
    case GroupKind::File:
      return load_group_file(d.path, caps);
  }
  throw InvalidGroup("unhandled descriptor kind");
}

inline FiniteGroup build_group(std::string_view text, Caps const& caps = Caps{}) {
  return build_group(parse_descriptor(text), caps);
}

}  // namespace powcov
