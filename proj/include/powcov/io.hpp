#pragma once

// Text formats for groups.
//
// Cayley file:
//   format: powcov-cayley
//   version: 1
//   order: N
//   names: e a b ...          (optional, N tokens)
//   table:
//   N rows of N 0-based indices, separated by whitespace or commas
//
// Permutation-generator file:
//   format: powcov-perm
//   version: 1
//   degree: D
//   generators:
//   one permutation of 0..D-1 per line, in image notation
//
// '#' starts a comment; blank lines are ignored.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace powcov {

inline constexpr int kCayleyFormatVersion = 1;
inline constexpr int kPermFormatVersion = 1;

namespace detail {

inline std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_tokens(std::string const& line) {
  std::string norm = line;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::istringstream in(norm);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::size_t to_index(std::string const& tok, std::string const& where) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidGroup(where + ": '" + tok + "' is not a nonnegative integer");
  }
  return static_cast<std::size_t>(std::stoull(tok));
}

/// Header fields up to the block keyword, then the raw block lines.
struct TextDocument {
  std::map<std::string, std::string> fields;
  std::vector<std::string> block;
};

inline TextDocument read_document(std::istream& in, std::string const& block_key) {
  TextDocument doc;
  bool in_block = false;
  for (std::string raw; std::getline(in, raw);) {
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    if (in_block) {
      doc.block.push_back(line);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InvalidGroup("expected 'key: value', got '" + line + "'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == block_key) {
      in_block = true;
      if (!value.empty()) doc.block.push_back(value);
      continue;
    }
    doc.fields[key] = value;
  }
  if (!in_block) throw InvalidGroup("missing '" + block_key + ":' section");
  return doc;
}

inline void check_header(TextDocument const& doc, std::string const& format, int version) {
  auto f = doc.fields.find("format");
  if (f == doc.fields.end() || f->second != format) throw InvalidGroup("expected 'format: " + format + "'");
  auto v = doc.fields.find("version");
  if (v == doc.fields.end()) throw InvalidGroup("missing mandatory 'version' field");
  if (v->second != std::to_string(version)) {
    throw InvalidGroup("unsupported " + format + " version " + v->second + " (expected " + std::to_string(version) + ")");
  }
}

}  // namespace detail

struct CayleyDocument {
  FiniteGroup group;
  std::vector<std::string> names;
};

inline CayleyDocument read_cayley(std::istream& in, std::string const& descriptor, Caps const& caps = Caps{}) {
  auto doc = detail::read_document(in, "table");
  detail::check_header(doc, "powcov-cayley", kCayleyFormatVersion);
  auto it = doc.fields.find("order");
  if (it == doc.fields.end()) throw InvalidGroup("missing 'order' field");
  std::size_t n = detail::to_index(it->second, "order");
  if (n == 0) throw InvalidGroup("order must be positive");
  if (n > caps.construction) {
    throw CapError("order " + std::to_string(n) + " exceeds construction cap " + std::to_string(caps.construction));
  }
  CayleyDocument out;
  if (auto nm = doc.fields.find("names"); nm != doc.fields.end()) {
    out.names = detail::split_tokens(nm->second);
    if (out.names.size() != n) throw InvalidGroup("names lists " + std::to_string(out.names.size()) + " entries, expected " + std::to_string(n));
  }
  if (doc.block.size() != n) {
    throw InvalidGroup("table has " + std::to_string(doc.block.size()) + " rows, expected " + std::to_string(n));
  }
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    auto toks = detail::split_tokens(doc.block[r]);
    if (toks.size() != n) {
      throw InvalidGroup("row " + std::to_string(r) + " has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t v = detail::to_index(toks[c], "row " + std::to_string(r));
      if (v >= n) throw InvalidGroup("entry " + std::to_string(v) + " out of range at row " + std::to_string(r) + ", column " + std::to_string(c));
      table.push_back(static_cast<Element>(v));
    }
  }
  out.group = FiniteGroup::from_table(n, std::move(table), descriptor, caps.construction);
  return out;
}

inline void write_cayley(std::ostream& out, FiniteGroup const& g, std::vector<std::string> const& names = {}) {
  out << "format: powcov-cayley\n";
  out << "version: " << kCayleyFormatVersion << "\n";
  if (!g.descriptor().empty()) out << "# descriptor: " << g.descriptor() << "\n";
  out << "order: " << g.order() << "\n";
  if (!names.empty()) {
    out << "names:";
    for (auto const& nm : names) out << ' ' << nm;
    out << "\n";
  }
  out << "table:\n";
  for (Element r = 0; r < g.order(); ++r) {
    for (Element c = 0; c < g.order(); ++c) out << (c == 0 ? "" : " ") << g.mul(r, c);
    out << "\n";
  }
}

inline FiniteGroup load_cayley_file(std::filesystem::path const& path, Caps const& caps = Caps{}) {
  std::ifstream in(path);
  if (!in) throw InvalidGroup("cannot open " + path.string());
  return read_cayley(in, "file:" + path.string(), caps).group;
}

inline void save_cayley_file(FiniteGroup const& g, std::filesystem::path const& path) {
  std::ofstream out(path);
  if (!out) throw InvalidGroup("cannot write " + path.string());
  write_cayley(out, g);
  if (!out) throw InvalidGroup("write failed for " + path.string());
}

using Permutation = std::vector<std::uint32_t>;

/// Closes `generators` under composition.  Element 0 is the identity;
/// the rest are numbered in breadth-first discovery order.  The product
/// g*h applies h first, then g.
inline FiniteGroup group_from_permutations(std::size_t degree, std::vector<Permutation> const& generators,
                                           std::string descriptor, Caps const& caps = Caps{}) {
  for (auto const& p : generators) {
    if (p.size() != degree) throw InvalidGroup("generator has wrong degree");
    std::vector<bool> hit(degree, false);
    for (auto v : p) {
      if (v >= degree || hit[v]) throw InvalidGroup("generator is not a permutation of 0.." + std::to_string(degree == 0 ? 0 : degree - 1));
      hit[v] = true;
    }
  }
  auto compose = [&](Permutation const& g, Permutation const& h) {
    Permutation out(degree);
    for (std::size_t i = 0; i < degree; ++i) out[i] = g[h[i]];
    return out;
  };
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);

  std::vector<Permutation> elems{id};
  std::map<Permutation, Element> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (auto const& gen : generators) {
      Permutation next = compose(elems[head], gen);
      if (index.emplace(next, static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > caps.construction) {
          throw CapError("permutation group closure exceeds construction cap " + std::to_string(caps.construction));
        }
      }
    }
  }
  std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(compose(elems[i], elems[j]));
  }
  return FiniteGroup::from_table(n, std::move(table), std::move(descriptor), caps.construction);
}

inline FiniteGroup read_permutation_generators(std::istream& in, std::string descriptor, Caps const& caps = Caps{}) {
  auto doc = detail::read_document(in, "generators");
  detail::check_header(doc, "powcov-perm", kPermFormatVersion);
  auto it = doc.fields.find("degree");
  if (it == doc.fields.end()) throw InvalidGroup("missing 'degree' field");
  std::size_t degree = detail::to_index(it->second, "degree");
  std::vector<Permutation> gens;
  for (auto const& line : doc.block) {
    Permutation p;
    for (auto const& tok : detail::split_tokens(line)) p.push_back(static_cast<std::uint32_t>(detail::to_index(tok, "generator")));
    if (p.size() != degree) throw InvalidGroup("generator '" + line + "' does not have " + std::to_string(degree) + " entries");
    gens.push_back(std::move(p));
  }
  return group_from_permutations(degree, gens, std::move(descriptor), caps);
}

inline FiniteGroup load_permutation_generators(std::filesystem::path const& path, Caps const& caps = Caps{}) {
  std::ifstream in(path);
  if (!in) throw InvalidGroup("cannot open " + path.string());
  return read_permutation_generators(in, "file:" + path.string(), caps);
}

enum class FileFormat { Cayley, Permutation };

/// Reads the `format:` field without parsing the rest.
inline FileFormat sniff_format(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGroup("cannot open " + path.string());
  for (std::string raw; std::getline(in, raw);) {
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("format:", 0) == 0) {
      std::string v = detail::trim(line.substr(7));
      if (v == "powcov-cayley") return FileFormat::Cayley;
      if (v == "powcov-perm") return FileFormat::Permutation;
      throw InvalidGroup("unknown format '" + v + "' in " + path.string());
    }
  }
  throw InvalidGroup("no 'format:' field in " + path.string());
}

inline FiniteGroup load_group_file(std::filesystem::path const& path, Caps const& caps = Caps{}) {
  return sniff_format(path) == FileFormat::Cayley ? load_cayley_file(path, caps) : load_permutation_generators(path, caps);
}

}  // namespace powcov
