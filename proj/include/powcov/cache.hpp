#pragma once

// Content-addressed store of enumerated lattices.  One text file per
// (descriptor, Cayley table) pair, named by a 64-bit FNV-1a key:
//
//   format: powcov-lattice
//   version: 1
//   descriptor: dihedral:16
//   order: 16
//   table-digest: <16 hex>
//   prime: 2 | none
//   subgroups: 19
//   <element-set hex> <flags: abelian powerful pe normal maximal proper>
//   ...
//   checksum: <16 hex over every preceding byte>
//
// Writes go to a temporary file that is renamed into place.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>

#include <unistd.h>

#include "error.hpp"
#include "group.hpp"
#include "lattice.hpp"

namespace powcov {

inline constexpr int kLatticeFormatVersion = 1;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

inline std::uint64_t table_digest(FiniteGroup const& g) {
  std::uint64_t h = fnv1a64(std::to_string(g.order()));
  for (Element e : g.table()) {
    char bytes[4] = {static_cast<char>(e & 0xFF), static_cast<char>((e >> 8) & 0xFF), static_cast<char>((e >> 16) & 0xFF),
                     static_cast<char>((e >> 24) & 0xFF)};
    h = fnv1a64(std::string_view(bytes, 4), h);
  }
  return h;
}

inline std::string serialize_lattice(Lattice const& lattice, std::string const& descriptor, FiniteGroup const& g) {
  std::ostringstream out;
  out << "format: powcov-lattice\n";
  out << "version: " << kLatticeFormatVersion << "\n";
  out << "descriptor: " << descriptor << "\n";
  out << "order: " << lattice.group_order << "\n";
  out << "table-digest: " << hex64(table_digest(g)) << "\n";
  out << "prime: " << (lattice.prime ? std::to_string(*lattice.prime) : "none") << "\n";
  out << "subgroups: " << lattice.subgroups.size() << "\n";
  for (auto const& s : lattice.subgroups) {
    out << s.elements.to_hex() << ' ' << s.is_abelian << s.is_powerful << s.is_powerfully_embedded << s.is_normal
        << s.is_maximal << s.is_proper << "\n";
  }
  std::string body = out.str();
  return body + "checksum: " + hex64(fnv1a64(body)) + "\n";
}

/// nullopt when the text is not a valid entry for this descriptor and table.
inline std::optional<Lattice> deserialize_lattice(std::string const& text, std::string const& descriptor,
                                                  FiniteGroup const& g) {
  auto tail = text.rfind("checksum: ");
  if (tail == std::string::npos) return std::nullopt;
  std::string body = text.substr(0, tail);
  if (text.substr(tail) != "checksum: " + hex64(fnv1a64(body)) + "\n") return std::nullopt;

  std::istringstream in(body);
  auto field = [&](std::string const& key) -> std::optional<std::string> {
    std::string line;
    if (!std::getline(in, line) || line.rfind(key + ": ", 0) != 0) return std::nullopt;
    return line.substr(key.size() + 2);
  };
  if (field("format") != "powcov-lattice") return std::nullopt;
  if (field("version") != std::to_string(kLatticeFormatVersion)) return std::nullopt;
  if (field("descriptor") != descriptor) return std::nullopt;
  if (field("order") != std::to_string(g.order())) return std::nullopt;
  if (field("table-digest") != hex64(table_digest(g))) return std::nullopt;
  auto prime = field("prime");
  auto count = field("subgroups");
  if (!prime || !count) return std::nullopt;

  Lattice lattice;
  lattice.group_order = g.order();
  lattice.prime = is_p_group(g);
  if (*prime != (lattice.prime ? std::to_string(*lattice.prime) : "none")) return std::nullopt;
  std::size_t m = 0;
  try {
    m = std::stoull(*count);
  } catch (std::exception const&) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::string hex, flags;
    if (!(in >> hex >> flags) || flags.size() != 6 || flags.find_first_not_of("01") != std::string::npos) return std::nullopt;
    Subgroup s;
    try {
      s.elements = ElementSet::from_hex(g.order(), hex);
    } catch (Error const&) {
      return std::nullopt;
    }
    s.order = s.elements.count();
    s.is_abelian = flags[0] == '1';
    s.is_powerful = flags[1] == '1';
    s.is_powerfully_embedded = flags[2] == '1';
    s.is_normal = flags[3] == '1';
    s.is_maximal = flags[4] == '1';
    s.is_proper = flags[5] == '1';
    lattice.subgroups.push_back(std::move(s));
  }
  std::string rest;
  if (in >> rest) return std::nullopt;
  return lattice;
}

class LatticeCache {
 public:
  explicit LatticeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $POWCOV_CACHE_DIR, else $XDG_CACHE_HOME/powcov, else ~/.cache/powcov.
  static std::filesystem::path default_dir() {
    if (char const* d = std::getenv("POWCOV_CACHE_DIR"); d != nullptr && *d != '\0') return d;
    if (char const* x = std::getenv("XDG_CACHE_HOME"); x != nullptr && *x != '\0') return std::filesystem::path(x) / "powcov";
    if (char const* h = std::getenv("HOME"); h != nullptr && *h != '\0') return std::filesystem::path(h) / ".cache" / "powcov";
    return std::filesystem::temp_directory_path() / "powcov-cache";
  }

  std::filesystem::path const& dir() const noexcept { return dir_; }

  std::filesystem::path path_for(std::string const& descriptor, FiniteGroup const& g) const {
    std::uint64_t key = fnv1a64(descriptor + "\n" + hex64(table_digest(g)));
    return dir_ / (hex64(key) + ".lattice");
  }

  std::optional<Lattice> get(std::string const& descriptor, FiniteGroup const& g) const {
    std::ifstream in(path_for(descriptor, g), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_lattice(buf.str(), descriptor, g);
  }

  /// Atomic write; returns false (after a warning) on I/O failure.
  bool put(std::string const& descriptor, FiniteGroup const& g, Lattice const& lattice) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto target = path_for(descriptor, g);
    auto temp = target;
    temp += ".tmp." + std::to_string(::getpid()) + "." +
            std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      out << serialize_lattice(lattice, descriptor, g);
      if (!out) {
        std::cerr << "powcov: warning: cannot write lattice cache " << temp << "\n";
        std::filesystem::remove(temp, ec);
        return false;
      }
    }
    std::filesystem::rename(temp, target, ec);
    if (ec) {
      std::cerr << "powcov: warning: cannot install lattice cache " << target << ": " << ec.message() << "\n";
      std::filesystem::remove(temp, ec);
      return false;
    }
    return true;
  }

  struct Lookup {
    Lattice lattice;
    bool hit = false;
  };

  /// Cached lattice when valid; otherwise enumerate and (re)write the entry.
  Lookup get_or_compute(std::string const& descriptor, FiniteGroup const& g, Caps const& caps = Caps{}) const {
    if (g.order() > caps.lattice) {
      throw CapError("order " + std::to_string(g.order()) + " exceeds lattice cap " + std::to_string(caps.lattice));
    }
    if (auto cached = get(descriptor, g)) return {std::move(*cached), true};
    Lattice fresh = enumerate_subgroups(g, caps);
    put(descriptor, g, fresh);
    return {std::move(fresh), false};
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace powcov
