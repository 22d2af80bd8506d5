#pragma once

// Group catalogs.  A catalog file lists one entry per line:
//
//   [id] descriptor
//
// with '#' comments.  When the id is omitted the descriptor doubles as id.
// Relative file: paths resolve against the catalog file's directory.  The
// special path "builtin" names the shipped catalog.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "construct.hpp"
#include "descriptor.hpp"
#include "error.hpp"
#include "group.hpp"
#include "io.hpp"

namespace powcov {

enum class EntrySource { Descriptor, CayleyFile, PermutationFile };

struct CatalogSpec {
  std::string id;
  GroupDescriptor descriptor;
};

struct CatalogEntry {
  std::string id;
  EntrySource source = EntrySource::Descriptor;
  FiniteGroup group;
};

/// Every built-in family member of order <= max_order, plus a fixed set of
/// direct products and one non-p-group.
inline std::vector<CatalogSpec> builtin_catalog(std::size_t max_order = 128) {
  std::vector<CatalogSpec> out;
  auto add = [&](GroupDescriptor d) {
    if (d.order <= max_order) out.push_back({d.to_string(), std::move(d)});
  };
  for (std::size_t p : {2, 3, 5, 7, 11}) {
    for (std::size_t m = p; m <= max_order; m *= p) add(GroupDescriptor::cyclic(m));
  }
  for (std::size_t m = 4; m <= max_order; m *= 2) add(GroupDescriptor::dihedral(m));
  for (std::size_t m = 8; m <= max_order; m *= 2) add(GroupDescriptor::quaternion(m));
  for (std::size_t m = 16; m <= max_order; m *= 2) add(GroupDescriptor::semidihedral(m));
  for (std::size_t m = 16; m <= max_order; m *= 2) add(GroupDescriptor::modular(m));
  for (std::size_t k = 2; k <= 7; ++k) add(GroupDescriptor::elementary(2, k));
  for (std::size_t k = 2; k <= 4; ++k) add(GroupDescriptor::elementary(3, k));
  for (std::size_t k = 2; k <= 3; ++k) add(GroupDescriptor::elementary(5, k));
  add(GroupDescriptor::elementary(7, 2));
  add(GroupDescriptor::elementary(11, 2));
  for (char const* text : {"product:(cyclic:4,cyclic:2)",          "product:(cyclic:4,cyclic:4)",
                           "product:(cyclic:8,cyclic:2)",          "product:(cyclic:8,cyclic:4)",
                           "product:(cyclic:16,cyclic:2)",         "product:(cyclic:4,elementary:2^2)",
                           "product:(cyclic:9,cyclic:3)",          "product:(dihedral:8,cyclic:2)",
                           "product:(dihedral:8,cyclic:4)",        "product:(quaternion:8,cyclic:2)",
                           "product:(quaternion:8,cyclic:4)",      "product:(dihedral:8,elementary:2^2)",
                           "product:(dihedral:16,cyclic:2)",       "product:(quaternion:16,cyclic:2)",
                           "product:(semidihedral:16,cyclic:2)",   "product:(modular:16,cyclic:2)",
                           "product:(modular:16,cyclic:4)",        "product:(dihedral:32,cyclic:2)",
                           "product:(dihedral:8,dihedral:8)",      "product:(dihedral:8,quaternion:8)",
                           "product:(quaternion:8,quaternion:8)",  "product:(dihedral:8,cyclic:3)"}) {
    add(parse_descriptor(text));
  }
  return out;
}

inline std::vector<CatalogSpec> read_catalog(std::istream& in, std::filesystem::path const& base_dir) {
  std::vector<CatalogSpec> out;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string first, second, extra;
    fields >> first >> second >> extra;
    if (!extra.empty()) throw InvalidGroup("catalog line " + std::to_string(line_no) + ": expected '[id] descriptor'");
    std::string id = first;
    std::string text = second.empty() ? first : second;
    GroupDescriptor d;
    try {
      d = parse_descriptor(text);
    } catch (ParseError const& e) {
      throw InvalidGroup("catalog line " + std::to_string(line_no) + ": " + e.what());
    }
    if (d.kind == GroupKind::File && std::filesystem::path(d.path).is_relative()) d.path = (base_dir / d.path).string();
    if (!ids.insert(id).second) throw InvalidGroup("catalog line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
    out.push_back({id, std::move(d)});
  }
  return out;
}

inline std::vector<CatalogSpec> load_catalog(std::string const& path) {
  if (path == "builtin") return builtin_catalog();
  std::ifstream in(path);
  if (!in) throw InvalidGroup("cannot open catalog " + path);
  return read_catalog(in, std::filesystem::path(path).parent_path());
}

inline CatalogEntry materialize(CatalogSpec const& spec, Caps const& caps = Caps{}) {
  CatalogEntry entry;
  entry.id = spec.id;
  if (spec.descriptor.kind == GroupKind::File) {
    entry.source = sniff_format(spec.descriptor.path) == FileFormat::Cayley ? EntrySource::CayleyFile : EntrySource::PermutationFile;
  }
  entry.group = build_group(spec.descriptor, caps);
  return entry;
}

}  // namespace powcov
