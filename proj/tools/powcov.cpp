// powcov command-line front end.  Exit codes: 0 success, 1 infeasible
// single query or conjecture counterexample, 2 usage or data error.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "powcov/powcov.hpp"

namespace {

using namespace powcov;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Globals {
  bool no_cache = false;
  std::unique_ptr<LatticeCache> cache;
  Caps caps;

  LatticeCache const* cache_ptr() {
    if (no_cache) return nullptr;
    if (!cache) cache = std::make_unique<LatticeCache>(LatticeCache::default_dir());
    return cache.get();
  }
};

std::string infeasible_reason(FiniteGroup const& g, FamilySelector f) {
  if (is_cyclic_subgroup(g, g.all())) return "cyclic group has no proper-subgroup cover";
  if (g.order() == 1) return "trivial group has no proper subgroups";
  return "proper " + std::string(f == FamilySelector::PowerfullyEmbedded ? "powerfully embedded" : to_string(f)) +
         " subgroups do not cover the group";
}

int cmd_sigma(Globals& gl, std::string const& text, std::string const& family_text) {
  auto family = parse_family(family_text);
  if (!family) {
    std::cerr << "powcov: unknown family '" << family_text << "' (expected all, abelian, powerful, pe)\n";
    return kExitUsage;
  }
  FiniteGroup g = build_group(std::string_view(text), gl.caps);
  if (needs_p_group(*family) && !is_p_group(g)) {
    std::cerr << "powcov: family '" << to_string(*family) << "' needs a p-group; order " << g.order() << " is not a prime power\n";
    return kExitUsage;
  }
  Lattice lattice = obtain_lattice(g, gl.cache_ptr(), gl.caps);
  CoverResult r = covering_number(g, lattice, *family);
  std::string symbol = sigma_symbol(*family);
  if (!r.optimal()) {
    std::cout << symbol << " = INF (" << infeasible_reason(g, *family) << ")\n";
    return kExitNegative;
  }
  std::cout << symbol << " = " << r.size << "\n";
  for (std::size_t i = 0; i < r.witness_sets.size(); ++i) {
    auto const& h = r.witness_sets[i];
    std::cout << "  H" << (i + 1) << " order " << h.count() << " (" << to_string(classify_small(g, h)) << "): " << h << "\n";
  }
  return kExitOk;
}

int cmd_lattice(Globals& gl, std::string const& text) {
  FiniteGroup g = build_group(std::string_view(text), gl.caps);
  Lattice lattice = obtain_lattice(g, gl.cache_ptr(), gl.caps);
  LatticeCounts c = lattice.counts();
  std::cout << "group: " << g.descriptor() << "\n";
  std::cout << "order: " << g.order() << "\n";
  std::cout << "p-group: " << (lattice.prime ? "p=" + std::to_string(*lattice.prime) : std::string("no")) << "\n";
  if (lattice.prime) {
    std::cout << "nilpotence class: " << *nilpotence_class(g) << "\n";
    std::cout << "coclass: " << coclass(g) << "\n";
  }
  std::cout << "subgroups: " << c.total << "\n";
  std::cout << "proper: " << c.proper << "\n";
  std::cout << "abelian: " << c.abelian << "\n";
  if (lattice.prime) {
    std::cout << "powerful: " << c.powerful << "\n";
    std::cout << "powerfully embedded: " << c.powerfully_embedded << "\n";
  }
  std::cout << "normal: " << c.normal << "\n";
  std::cout << "maximal: " << c.maximal << "\n";
  std::map<std::size_t, std::size_t> by_order;
  for (auto const& s : lattice.subgroups) ++by_order[s.order];
  std::cout << "by order:";
  for (auto [o, n] : by_order) std::cout << " " << o << ":" << n;
  std::cout << "\n";
  return kExitOk;
}

int cmd_construct(Globals& gl, std::string const& text, std::string const& out) {
  FiniteGroup g = build_group(std::string_view(text), gl.caps);
  save_cayley_file(g, out);
  std::cout << "wrote " << g.descriptor() << " (order " << g.order() << ") to " << out << "\n";
  return kExitOk;
}

int cmd_verify(Globals& gl, std::string const& suite, std::optional<std::size_t> max_n, std::optional<std::size_t> max_order,
               std::string const& catalog) {
  VerifyOptions opts;
  opts.caps = gl.caps;
  opts.cache = gl.cache_ptr();
  opts.catalog = catalog;
  if (max_n) {
    if (*max_n < 2 || (std::size_t{2} << *max_n) > gl.caps.lattice) {
      std::cerr << "powcov: --max-n must be at least 2 and keep 2^(n+1) within the lattice cap " << gl.caps.lattice << "\n";
      return kExitUsage;
    }
    opts.max_n = *max_n;
  } else {
    while (opts.max_n > 2 && (std::size_t{2} << opts.max_n) > gl.caps.lattice) --opts.max_n;
  }
  if (max_order) {
    if (*max_order > gl.caps.lattice) {
      std::cerr << "powcov: --max-order " << *max_order << " exceeds the lattice cap " << gl.caps.lattice << "\n";
      return kExitUsage;
    }
    opts.max_order = max_order;
  }
  if (catalog != "builtin") load_catalog(catalog);  // surface a missing catalog as a data error up front

  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  auto known = suite_names();
  for (auto const& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      std::cerr << "powcov: unknown suite '" << n << "'\n";
      return kExitUsage;
    }
  }
  std::vector<SuiteReport> reports;
  for (auto const& n : names) {
    SuiteReport r = run_suite(n, opts);
    std::cout << "== " << r.name << " ==\n";
    for (auto const& line : r.lines) std::cout << "  " << line << "\n";
    std::cout << r.name << ": " << to_string(r.status) << "\n";
    reports.push_back(std::move(r));
  }
  return exit_code(reports);
}

std::vector<FamilySelector> parse_family_list(std::string const& text) {
  std::vector<FamilySelector> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = detail::trim(item);
    auto f = parse_family(item);
    if (!f) throw ParseError("unknown family '" + item + "' in --families", 0);
    if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
  }
  if (out.empty()) throw ParseError("--families is empty", 0);
  return out;
}

int cmd_sweep(Globals& gl, std::string const& catalog, std::string const& families, std::string const& out_path, bool no_timing,
              bool no_monotonicity, std::size_t workers) {
  SweepOptions opts;
  opts.families = parse_family_list(families);
  opts.timing = !no_timing;
  opts.monotonicity = !no_monotonicity;
  opts.workers = workers;
  opts.caps = gl.caps;
  opts.cache = gl.cache_ptr();
  auto specs = load_catalog(catalog);
  auto rows = run_sweep(specs, opts);

  std::ofstream csv(out_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw Error("cannot write " + out_path);
  write_csv(csv, rows);
  std::string md_path = out_path + ".md";
  std::ofstream md(md_path, std::ios::binary | std::ios::trunc);
  if (!md) throw Error("cannot write " + md_path);
  write_markdown(md, rows);

  std::size_t chain = 0, conj = 0, mono = 0, errors = 0;
  for (auto const& r : rows) {
    chain += !r.chain_holds();
    conj += r.conjecture2_violated();
    mono += !r.monotonicity.empty();
    errors += !r.error.empty();
  }
  std::cout << "swept " << rows.size() << " entries -> " << out_path << ", " << md_path << "\n";
  std::cout << "chain violations: " << chain << "\n";
  std::cout << "conjecture 2 violations: " << conj << "\n";
  std::cout << "monotonicity violations: " << mono << "\n";
  std::cout << "entry errors: " << errors << "\n";
  return conj != 0 ? kExitNegative : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"powcov: covering numbers of finite p-groups by restricted subgroup families"};
  app.require_subcommand(1);
  Globals gl;
  app.add_flag("--no-cache", gl.no_cache, "Do not read or write the lattice cache");

  std::string descriptor, family, out, suite, catalog = "builtin", families = "all,abelian,powerful,pe";
  std::optional<std::size_t> max_n, max_order;
  bool no_timing = false, no_monotonicity = false;
  std::size_t workers = 0;

  auto* sigma = app.add_subcommand("sigma", "Covering number of one group by one family");
  sigma->add_option("descriptor", descriptor, "Group descriptor, e.g. dihedral:16")->required();
  sigma->add_option("family", family, "all | abelian | powerful | pe")->required();

  auto* lattice = app.add_subcommand("lattice", "Subgroup lattice statistics");
  lattice->add_option("descriptor", descriptor, "Group descriptor")->required();

  auto* construct = app.add_subcommand("construct", "Write a group's Cayley table");
  construct->add_option("descriptor", descriptor, "Group descriptor")->required();
  construct->add_option("--out", out, "Output Cayley file")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite (or 'all')");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--max-n", max_n, "Largest n for dihedral groups of order 2^(n+1)");
  verify->add_option("--max-order", max_order, "Largest group order drawn from the catalog");
  verify->add_option("--catalog", catalog, "Catalog file, or 'builtin'");

  auto* sweep = app.add_subcommand("sweep", "Profile every catalog entry to CSV and Markdown");
  sweep->add_option("--catalog", catalog, "Catalog file, or 'builtin'")->required();
  sweep->add_option("--families", families, "Comma-separated families");
  sweep->add_option("--out", out, "CSV output path; Markdown goes to <out>.md")->required();
  sweep->add_flag("--no-timing", no_timing, "Write '-' for time_ms so output is byte-stable");
  sweep->add_flag("--no-monotonicity", no_monotonicity, "Skip the subgroup monotonicity search");
  sweep->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    gl.caps = Caps::from_env();
    if (sigma->parsed()) return cmd_sigma(gl, descriptor, family);
    if (lattice->parsed()) return cmd_lattice(gl, descriptor);
    if (construct->parsed()) return cmd_construct(gl, descriptor, out);
    if (verify->parsed()) return cmd_verify(gl, suite, max_n, max_order, catalog);
    if (sweep->parsed()) return cmd_sweep(gl, catalog, families, out, no_timing, no_monotonicity, workers);
  } catch (ParseError const& e) {
    std::cerr << "powcov: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (CapError const& e) {
    std::cerr << "powcov: cap exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (std::exception const& e) {
    std::cerr << "powcov: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
