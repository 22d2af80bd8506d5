#pragma once

// Catalog sweeps.  Entries are processed by a pool of worker threads; rows
// come back in input order whatever the completion order.  CSV columns:
//
//   id,order,p,class,coclass,sigma,sigma_A,sigma_P,sigma_PE,time_ms,error

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cache.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "cover.hpp"
#include "profile.hpp"

namespace powcov {

struct SweepOptions {
  std::vector<FamilySelector> families{kAllFamilies.begin(), kAllFamilies.end()};
  bool timing = true;          // false writes "-" in time_ms so the CSV is byte-stable
  bool monotonicity = true;    // search subgroups for sigma_P(H) > sigma_P(G)
  std::size_t workers = 0;     // 0 picks hardware_concurrency
  Caps caps = Caps::from_env();
  LatticeCache const* cache = nullptr;
};

struct SweepRow {
  std::string id;
  std::size_t order = 0;
  std::optional<std::size_t> prime;
  std::optional<std::size_t> nilpotence_class;
  std::optional<long> coclass;
  std::array<SigmaCell, 4> sigma{};  // indexed by family_slot
  std::optional<double> time_ms;
  std::vector<MonotonicityHit> monotonicity;
  std::string error;

  SigmaCell const& cell(FamilySelector f) const { return sigma[family_slot(f)]; }

  /// sigma <= sigma_P <= sigma_A whenever all three are finite.
  bool chain_holds() const {
    auto const& s = cell(FamilySelector::All);
    auto const& sp = cell(FamilySelector::Powerful);
    auto const& sa = cell(FamilySelector::Abelian);
    if (!(s.finite() && sp.finite() && sa.finite())) return true;
    return s.value <= sp.value && sp.value <= sa.value;
  }

  /// 2-groups of order 2^{n+1} >= 8 with sigma_P > 2^{n-1} + 1.
  bool conjecture2_violated() const {
    auto const& sp = cell(FamilySelector::Powerful);
    return prime == std::size_t{2} && order >= 8 && sp.finite() && sp.value > order / 4 + 1;
  }
};

inline SweepRow sweep_entry(CatalogSpec const& spec, SweepOptions const& opts) {
  SweepRow row;
  row.id = spec.id;
  auto start = std::chrono::steady_clock::now();
  try {
    CatalogEntry entry = materialize(spec, opts.caps);
    FiniteGroup const& g = entry.group;
    row.order = g.order();
    row.prime = is_p_group(g);
    row.nilpotence_class = nilpotence_class(g);
    if (row.prime) row.coclass = coclass(g);
    Lattice lattice = obtain_lattice(g, opts.cache, opts.caps);
    for (FamilySelector f : opts.families) row.sigma[family_slot(f)] = sigma_cell(g, lattice, f);
    if (opts.monotonicity && row.prime) {
      SigmaCell sp = row.cell(FamilySelector::Powerful);
      if (sp.state == SigmaCell::State::NotRequested) sp = sigma_cell(g, lattice, FamilySelector::Powerful);
      if (sp.finite()) row.monotonicity = monotonicity_hits(g, lattice, sp.value);
    }
  } catch (std::exception const& e) {
    row.error = e.what();
  }
  if (opts.timing) {
    row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

inline std::vector<SweepRow> run_sweep(std::vector<CatalogSpec> const& specs, SweepOptions const& opts) {
  std::vector<SweepRow> rows(specs.size());
  std::size_t workers = opts.workers != 0 ? opts.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(specs.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) rows[i] = sweep_entry(specs[i], opts);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

namespace detail {

inline std::string csv_field(std::string const& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_text(std::optional<T> const& v) {
  return v ? std::to_string(*v) : "-";
}

inline std::string time_text(std::optional<double> const& t) {
  if (!t) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *t);
  return buf;
}

}  // namespace detail

inline void write_csv_header(std::ostream& out) {
  out << "id,order,p,class,coclass,sigma,sigma_A,sigma_P,sigma_PE,time_ms,error\n";
}

inline void write_csv_row(std::ostream& out, SweepRow const& r) {
  out << detail::csv_field(r.id) << ',' << r.order << ',' << detail::opt_text(r.prime) << ','
      << detail::opt_text(r.nilpotence_class) << ',' << detail::opt_text(r.coclass);
  for (FamilySelector f : kAllFamilies) out << ',' << r.cell(f).text();
  out << ',' << detail::time_text(r.time_ms) << ',' << detail::csv_field(r.error) << '\n';
}

inline void write_csv(std::ostream& out, std::vector<SweepRow> const& rows) {
  write_csv_header(out);
  for (auto const& r : rows) write_csv_row(out, r);
}

inline void write_markdown(std::ostream& out, std::vector<SweepRow> const& rows) {
  out << "# powcov sweep\n\n";
  out << "| id | order | p | class | coclass | sigma | sigma_A | sigma_P | sigma_PE | sigma_P witness |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (auto const& r : rows) {
    out << "| " << r.id << " | " << r.order << " | " << detail::opt_text(r.prime) << " | " << detail::opt_text(r.nilpotence_class)
        << " | " << detail::opt_text(r.coclass);
    for (FamilySelector f : kAllFamilies) out << " | " << r.cell(f).text();
    out << " | " << witness_summary(r.cell(FamilySelector::Powerful)) << " |\n";
  }

  auto section = [&](char const* title, auto&& pred, auto&& describe) {
    out << "\n## " << title << "\n\n";
    std::size_t found = 0;
    for (auto const& r : rows) {
      if (pred(r)) {
        out << "- " << describe(r) << "\n";
        ++found;
      }
    }
    if (found == 0) out << "None.\n";
  };

  out << "\n# Violations\n";
  section(
      "Chain sigma <= sigma_P <= sigma_A", [](SweepRow const& r) { return !r.chain_holds(); },
      [](SweepRow const& r) {
        return r.id + ": sigma=" + r.cell(FamilySelector::All).text() + " sigma_P=" + r.cell(FamilySelector::Powerful).text() +
               " sigma_A=" + r.cell(FamilySelector::Abelian).text();
      });
  section(
      "Conjecture 2 (sigma_P <= 2^{n-1} + 1 for 2-groups of order 2^{n+1})",
      [](SweepRow const& r) { return r.conjecture2_violated(); },
      [](SweepRow const& r) {
        return r.id + ": sigma_P=" + r.cell(FamilySelector::Powerful).text() + " bound=" + std::to_string(r.order / 4 + 1);
      });
  section(
      "Monotonicity (subgroup H with sigma_P(H) > sigma_P(G))", [](SweepRow const& r) { return !r.monotonicity.empty(); },
      [](SweepRow const& r) {
        std::string s = r.id + ":";
        for (auto const& h : r.monotonicity) {
          s += " subgroup #" + std::to_string(h.lattice_index) + " (order " + std::to_string(h.subgroup_order) +
               ", sigma_P=" + std::to_string(h.subgroup_sigma_p) + ")";
        }
        return s;
      });
  section(
      "Errors", [](SweepRow const& r) { return !r.error.empty(); }, [](SweepRow const& r) { return r.id + ": " + r.error; });

  std::size_t checked = 0;
  for (auto const& r : rows) checked += r.prime == std::size_t{2} && r.order >= 8 && r.cell(FamilySelector::Powerful).finite();
  out << "\nConjecture 2 checked on " << checked << " catalog 2-groups: confirmed on this catalog only, not proved.\n";
}

}  // namespace powcov
