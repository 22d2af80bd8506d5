#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace powcov {

enum class GroupKind { Cyclic, Dihedral, Quaternion, Semidihedral, Modular, ElementaryAbelian, DirectProduct, File };

/// Names a group construction.  Every family is indexed by its TOTAL order:
/// dihedral:16 is the symmetry group of the regular 8-gon (16 elements).
struct GroupDescriptor {
  GroupKind kind = GroupKind::Cyclic;
  std::size_t order = 1;         // total order for the single-parameter families
  std::size_t prime = 0;         // elementary:P^K
  std::size_t exponent = 0;      // elementary:P^K
  std::vector<GroupDescriptor> factors;  // direct product
  std::string path;              // file

  static GroupDescriptor cyclic(std::size_t m) { return {GroupKind::Cyclic, m, 0, 0, {}, {}}; }
  static GroupDescriptor dihedral(std::size_t m) { return {GroupKind::Dihedral, m, 0, 0, {}, {}}; }
  static GroupDescriptor quaternion(std::size_t m) { return {GroupKind::Quaternion, m, 0, 0, {}, {}}; }
  static GroupDescriptor semidihedral(std::size_t m) { return {GroupKind::Semidihedral, m, 0, 0, {}, {}}; }
  static GroupDescriptor modular(std::size_t m) { return {GroupKind::Modular, m, 0, 0, {}, {}}; }
  static GroupDescriptor elementary(std::size_t p, std::size_t k) {
    std::size_t m = 1;
    for (std::size_t i = 0; i < k; ++i) m *= p;
    return {GroupKind::ElementaryAbelian, m, p, k, {}, {}};
  }
  static GroupDescriptor product(GroupDescriptor a, GroupDescriptor b) {
    std::size_t m = (a.order == 0 || b.order == 0) ? 0 : a.order * b.order;
    return {GroupKind::DirectProduct, m, 0, 0, {std::move(a), std::move(b)}, {}};
  }
  static GroupDescriptor file(std::string p) { return {GroupKind::File, 0, 0, 0, {}, std::move(p)}; }

  /// Canonical text form; parse_descriptor(to_string()) reproduces *this.
  std::string to_string() const {
    switch (kind) {
      case GroupKind::Cyclic: return "cyclic:" + std::to_string(order);
      case GroupKind::Dihedral: return "dihedral:" + std::to_string(order);
      case GroupKind::Quaternion: return "quaternion:" + std::to_string(order);
      case GroupKind::Semidihedral: return "semidihedral:" + std::to_string(order);
      case GroupKind::Modular: return "modular:" + std::to_string(order);
      case GroupKind::ElementaryAbelian: return "elementary:" + std::to_string(prime) + "^" + std::to_string(exponent);
      case GroupKind::DirectProduct: return "product:(" + factors[0].to_string() + "," + factors[1].to_string() + ")";
      case GroupKind::File: return "file:" + path;
    }
    return {};
  }

  friend bool operator==(GroupDescriptor const&, GroupDescriptor const&) = default;
};

namespace detail {

inline bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  GroupDescriptor parse() {
    GroupDescriptor d = parse_one();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters in descriptor", pos_);
    return d;
  }

 private:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 40;

  // Blanks are allowed around every token except inside a number.
  GroupDescriptor parse_one() {
    skip_space();
    std::size_t start = pos_;
    std::string kind;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0) kind += text_[pos_++];
    expect(':');
    if (kind == "file") {
      // Inside product:(...) a path ends at the next ',' or ')'.
      std::size_t end = depth_ == 0 ? text_.size() : text_.find_first_of(",)", pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string path(trim(text_.substr(pos_, end - pos_)));
      if (path.empty()) throw ParseError("file descriptor needs a path", pos_);
      pos_ = end;
      return GroupDescriptor::file(path);
    }
    if (kind == "product") {
      expect('(');
      ++depth_;
      GroupDescriptor a = parse_one();
      expect(',');
      GroupDescriptor b = parse_one();
      expect(')');
      --depth_;
      return GroupDescriptor::product(std::move(a), std::move(b));
    }
    if (kind == "elementary") {
      std::size_t p_pos = pos_;
      std::size_t p = parse_int();
      expect('^');
      std::size_t k = parse_int();
      if (!is_prime(p)) throw ParseError("elementary base " + std::to_string(p) + " is not prime", p_pos);
      if (k == 0) throw ParseError("elementary exponent must be positive", p_pos);
      std::size_t m = 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (m > kMaxOrder / p) throw ParseError("elementary order overflows", p_pos);
        m *= p;
      }
      return GroupDescriptor::elementary(p, k);
    }
    std::size_t m_pos = pos_;
    if (kind == "cyclic") {
      std::size_t m = parse_int();
      if (m == 0) throw ParseError("cyclic order must be positive", m_pos);
      return GroupDescriptor::cyclic(m);
    }
    if (kind == "dihedral" || kind == "quaternion" || kind == "semidihedral" || kind == "modular") {
      std::size_t m = parse_int();
      std::size_t min_order = kind == "dihedral" ? 4 : kind == "quaternion" ? 8 : 16;
      if (!is_power_of_two(m) || m < min_order) {
        throw ParseError(kind + " order must be a power of 2 >= " + std::to_string(min_order) + ", got " +
                             std::to_string(m),
                         m_pos);
      }
      if (kind == "dihedral") return GroupDescriptor::dihedral(m);
      if (kind == "quaternion") return GroupDescriptor::quaternion(m);
      if (kind == "semidihedral") return GroupDescriptor::semidihedral(m);
      return GroupDescriptor::modular(m);
    }
    throw ParseError("unknown group kind '" + kind + "'", start);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
    return s;
  }

  std::size_t parse_int() {
    skip_space();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > kMaxOrder) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an integer", start);
    return v;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace detail

/// Grammar: cyclic:M | dihedral:M | quaternion:M | semidihedral:M | modular:M
///        | elementary:P^K | product:(D1,D2) | file:PATH
inline GroupDescriptor parse_descriptor(std::string_view text) { return detail::DescriptorParser(text).parse(); }

}  // namespace powcov
