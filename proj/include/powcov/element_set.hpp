#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace powcov {

using Element = std::uint32_t;

/// Fixed-width bit vector over the element indices 0..n-1 of one group.
class ElementSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ElementSet() = default;
  explicit ElementSet(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}
  ElementSet(std::size_t n, std::initializer_list<Element> elems) : ElementSet(n) {
    for (Element e : elems) insert(e);
  }

  static ElementSet full(std::size_t n) {
    ElementSet s(n);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  template <typename Range>
  static ElementSet from_range(std::size_t n, Range const& elems) {
    ElementSet s(n);
    for (auto e : elems) s.insert(static_cast<Element>(e));
    return s;
  }

  std::size_t universe_size() const noexcept { return n_; }
  std::vector<Word> const& words() const noexcept { return words_; }

  bool contains(Element e) const noexcept {
    return e < n_ && ((words_[e / kWordBits] >> (e % kWordBits)) & 1U) != 0;
  }
  void insert(Element e) {
    if (e >= n_) throw InvalidGroup("element " + std::to_string(e) + " outside universe of size " + std::to_string(n_));
    words_[e / kWordBits] |= Word{1} << (e % kWordBits);
  }
  void erase(Element e) noexcept {
    if (e < n_) words_[e / kWordBits] &= ~(Word{1} << (e % kWordBits));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool is_subset_of(ElementSet const& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  ElementSet& operator|=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  ElementSet& operator-=(ElementSet const& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, ElementSet const& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, ElementSet const& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, ElementSet const& b) { return a -= b; }

  friend bool operator==(ElementSet const& a, ElementSet const& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  /// Order by cardinality, then lexicographically by sorted element list.
  friend bool canonical_less(ElementSet const& a, ElementSet const& b) noexcept {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      Word diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        Word low = diff & (~diff + 1);
        return (a.words_[i] & low) != 0;
      }
    }
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w != 0) {
        auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<Element>(i * kWordBits + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> to_vector() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  /// Lowest member, or universe_size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return n_;
  }

  /// Lowercase hex of the words, least significant word first.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(words_.size() * 16);
    for (Word w : words_) {
      for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(w >> shift) & 0xF]);
    }
    return out;
  }

  static ElementSet from_hex(std::size_t n, std::string const& hex) {
    ElementSet s(n);
    if (hex.size() != s.words_.size() * 16) throw InvalidGroup("bad element-set hex length");
    for (std::size_t i = 0; i < s.words_.size(); ++i) {
      Word w = 0;
      for (std::size_t k = 0; k < 16; ++k) {
        char c = hex[i * 16 + k];
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else throw InvalidGroup("bad element-set hex digit");
        w = (w << 4) | v;
      }
      s.words_[i] = w;
    }
    ElementSet trimmed = s;
    trimmed.trim();
    if (!(trimmed == s)) throw InvalidGroup("element-set hex has bits beyond the universe");
    return s;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ n_;
    for (Word w : words_) {
      h ^= w;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  friend std::ostream& operator<<(std::ostream& os, ElementSet const& s) {
    os << '{';
    bool first = true;
    s.for_each([&](Element e) {
      if (!first) os << ',';
      os << e;
      first = false;
    });
    return os << '}';
  }

 private:
  void trim() noexcept {
    if (n_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (n_ % kWordBits)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

struct ElementSetHash {
  std::size_t operator()(ElementSet const& s) const noexcept { return s.hash(); }
};

}  // namespace powcov
