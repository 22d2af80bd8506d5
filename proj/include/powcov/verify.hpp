#pragma once

// Verification suites.  Theorem suites PASS or FAIL; conjecture suites
// report CONFIRMED-ON-RANGE or COUNTEREXAMPLE and never claim a proof; the
// monotonicity search reports what it finds.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cache.hpp"
#include "catalog.hpp"
#include "construct.hpp"
#include "core.hpp"
#include "cover.hpp"
#include "dihedral.hpp"
#include "lattice.hpp"
#include "profile.hpp"

namespace powcov {

enum class SuiteKind { Theorem, Conjecture, Search };
enum class SuiteStatus { Pass, Fail, ConfirmedOnRange, Counterexample, NoneFound, Found };

inline std::string to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "PASS";
    case SuiteStatus::Fail: return "FAIL";
    case SuiteStatus::ConfirmedOnRange: return "CONFIRMED-ON-RANGE";
    case SuiteStatus::Counterexample: return "COUNTEREXAMPLE";
    case SuiteStatus::NoneFound: return "NONE-FOUND-ON-RANGE";
    case SuiteStatus::Found: return "FOUND";
  }
  return "?";
}

struct SuiteReport {
  std::string name;
  SuiteKind kind = SuiteKind::Theorem;
  SuiteStatus status = SuiteStatus::Pass;
  std::vector<std::string> lines;
};

struct VerifyOptions {
  std::size_t max_n = 6;                  // main-theorem: n = 2..max_n (orders 8..2^{max_n+1})
  std::optional<std::size_t> max_order;   // catalog filter; suite-specific default when unset
  std::string catalog = "builtin";
  Caps caps = Caps::from_env();
  LatticeCache const* cache = nullptr;
};

namespace detail {

struct Verifier {
  VerifyOptions const& opts;
  std::map<std::string, Lattice> memo;

  Lattice const& lattice(FiniteGroup const& g) {
    auto key = g.descriptor() + "#" + hex64(table_digest(g));
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, obtain_lattice(g, opts.cache, opts.caps)).first;
    return it->second;
  }

  SigmaCell sigma(FiniteGroup const& g, FamilySelector f) { return sigma_cell(g, lattice(g), f); }

  std::vector<CatalogEntry> catalog(std::size_t default_max) {
    std::size_t limit = opts.max_order.value_or(default_max);
    std::vector<CatalogEntry> out;
    for (auto const& spec : load_catalog(opts.catalog)) {
      if (spec.descriptor.kind != GroupKind::File && spec.descriptor.order > limit) continue;
      CatalogEntry e = materialize(spec, opts.caps);
      if (e.group.order() <= limit) out.push_back(std::move(e));
    }
    return out;
  }
};

inline std::string n_label(std::size_t order) {
  std::size_t n = 0;
  while ((std::size_t{2} << n) < order) ++n;
  return "n=" + std::to_string(n);
}

inline bool group_is_powerful(Verifier& v, FiniteGroup const& g) {
  auto const& l = v.lattice(g);
  return l.subgroups.back().is_powerful;
}

inline bool group_is_cyclic(FiniteGroup const& g) { return is_cyclic_subgroup(g, g.all()); }

}  // namespace detail

inline std::vector<std::string> suite_names() {
  return {"main-theorem", "sigma-equals-p-plus-1", "chain", "quotient", "product-powerful",
          "conjecture1", "conjecture2",           "pe-d32", "monotonicity"};
}

/// sigma_P(dihedral:2^{n+1}) = 2^{n-1} + 1 = sigma_A, with the explicit
/// normal-form cover checked independently.
inline SuiteReport suite_main_theorem(detail::Verifier& v) {
  SuiteReport r{"main-theorem", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  for (std::size_t n = 2; n <= v.opts.max_n; ++n) {
    std::size_t order = std::size_t{1} << (n + 1);
    FiniteGroup g = build_group(GroupDescriptor::dihedral(order), v.opts.caps);
    SigmaCell sp = v.sigma(g, FamilySelector::Powerful);
    SigmaCell sa = v.sigma(g, FamilySelector::Abelian);
    std::size_t expected = (std::size_t{1} << (n - 1)) + 1;
    auto phi = dihedral::nf_embed(n, g);
    std::vector<ElementSet> analytic;
    for (auto const& h : dihedral::explicit_powerful_cover(n)) analytic.push_back(dihedral::image(h, phi));
    bool cover_ok = analytic.size() == expected && verify_witness(g, FamilySelector::Powerful, analytic);
    bool ok = sp.finite() && sp.value == expected && sa.finite() && sa.value == expected && cover_ok;
    std::ostringstream line;
    line << "n=" << n << " dihedral:" << order << " sigma_P=" << sp.text() << " sigma_A=" << sa.text()
         << " expected=" << expected << " analytic-cover=" << (cover_ok ? "ok" : "BAD") << (ok ? " PASS" : " FAIL");
    r.lines.push_back(line.str());
    if (!ok) r.status = SuiteStatus::Fail;
  }
  return r;
}

inline SuiteReport suite_sigma_p_plus_1(detail::Verifier& v) {
  SuiteReport r{"sigma-equals-p-plus-1", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  for (auto const& e : v.catalog(128)) {
    auto p = is_p_group(e.group);
    if (!p || detail::group_is_cyclic(e.group)) continue;
    SigmaCell s = v.sigma(e.group, FamilySelector::All);
    bool ok = s.finite() && s.value == *p + 1;
    r.lines.push_back(e.id + " p=" + std::to_string(*p) + " sigma=" + s.text() + " expected=" + std::to_string(*p + 1) +
                      (ok ? " PASS" : " FAIL"));
    if (!ok) r.status = SuiteStatus::Fail;
  }
  return r;
}

inline SuiteReport suite_chain(detail::Verifier& v) {
  SuiteReport r{"chain", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  std::size_t checked = 0;
  for (auto const& e : v.catalog(128)) {
    if (!is_p_group(e.group)) continue;
    SigmaCell s = v.sigma(e.group, FamilySelector::All);
    SigmaCell sp = v.sigma(e.group, FamilySelector::Powerful);
    SigmaCell sa = v.sigma(e.group, FamilySelector::Abelian);
    if (!(s.finite() && sp.finite() && sa.finite())) continue;
    ++checked;
    bool ok = s.value <= sp.value && sp.value <= sa.value;
    r.lines.push_back(e.id + " sigma=" + s.text() + " sigma_P=" + sp.text() + " sigma_A=" + sa.text() + (ok ? " PASS" : " FAIL"));
    if (!ok) r.status = SuiteStatus::Fail;
  }
  r.lines.push_back("checked " + std::to_string(checked) + " groups");
  return r;
}

/// For every normal N with K = G/N noncyclic: sigma(G) <= sigma(K), and
/// sigma_P(K) <= sigma_P(G) when K is not powerful.
inline SuiteReport suite_quotient(detail::Verifier& v) {
  SuiteReport r{"quotient", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  std::size_t quotients = 0;
  for (auto const& e : v.catalog(64)) {
    if (!is_p_group(e.group) || detail::group_is_cyclic(e.group)) continue;
    auto const& lat = v.lattice(e.group);
    SigmaCell s = v.sigma(e.group, FamilySelector::All);
    SigmaCell sp = v.sigma(e.group, FamilySelector::Powerful);
    std::size_t bad = 0, here = 0;
    for (auto const& n : lat.subgroups) {
      if (!n.is_normal || n.order == 1) continue;
      FiniteGroup k = quotient_group(e.group, n.elements, v.opts.caps);
      if (detail::group_is_cyclic(k)) continue;
      ++here;
      Lattice kl = enumerate_subgroups(k, v.opts.caps);
      SigmaCell sk = sigma_cell(k, kl, FamilySelector::All);
      bool ok = sk.finite() && s.finite() && s.value <= sk.value;
      std::string detail_text;
      if (!kl.subgroups.back().is_powerful) {
        SigmaCell spk = sigma_cell(k, kl, FamilySelector::Powerful);
        ok = ok && spk.finite() && sp.finite() && spk.value <= sp.value;
        detail_text = " sigma_P(K)=" + spk.text();
      }
      if (!ok) {
        ++bad;
        r.lines.push_back(e.id + " / N(order " + std::to_string(n.order) + ") sigma(K)=" + sk.text() + detail_text + " FAIL");
      }
    }
    quotients += here;
    r.lines.push_back(e.id + " sigma=" + s.text() + " sigma_P=" + sp.text() + " noncyclic quotients=" + std::to_string(here) +
                      (bad == 0 ? " PASS" : " FAIL"));
    if (bad != 0) r.status = SuiteStatus::Fail;
  }
  r.lines.push_back("checked " + std::to_string(quotients) + " quotients");
  return r;
}

inline SuiteReport suite_product_powerful(detail::Verifier& v) {
  SuiteReport r{"product-powerful", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  std::size_t limit = v.opts.max_order.value_or(128);
  auto check = [&](char const* a, char const* b, bool equality) {
    GroupDescriptor da = parse_descriptor(a), db = parse_descriptor(b);
    if (da.order * db.order > limit) return;
    FiniteGroup g = build_group(da, v.opts.caps);
    FiniteGroup k = build_group(db, v.opts.caps);
    FiniteGroup gk = build_group(GroupDescriptor::product(da, db), v.opts.caps);
    bool g_pow = detail::group_is_powerful(v, g), k_pow = detail::group_is_powerful(v, k);
    SigmaCell sg = v.sigma(g, FamilySelector::Powerful);
    SigmaCell sk = v.sigma(k, FamilySelector::Powerful);
    SigmaCell sgk = v.sigma(gk, FamilySelector::Powerful);
    bool ok;
    std::string claim;
    if (equality) {
      // G noncyclic and not powerful, K powerful.
      ok = !detail::group_is_cyclic(g) && !g_pow && k_pow && sg.finite() && sgk.finite() && sgk.value == sg.value;
      claim = "sigma_P(GxK)=sigma_P(G)";
    } else {
      // G, H noncyclic powerful.
      ok = !detail::group_is_cyclic(g) && !detail::group_is_cyclic(k) && g_pow && k_pow && sg.finite() && sk.finite() &&
           sgk.finite() && sgk.value <= std::min(sg.value, sk.value);
      claim = "sigma_P(GxH)<=min";
    }
    r.lines.push_back(std::string(a) + " x " + b + " " + claim + ": " + sgk.text() + " vs " + sg.text() + "," + sk.text() +
                      (ok ? " PASS" : " FAIL"));
    if (!ok) r.status = SuiteStatus::Fail;
  };
  check("dihedral:8", "cyclic:2", true);
  check("dihedral:8", "cyclic:4", true);
  check("dihedral:8", "elementary:2^2", true);
  check("dihedral:16", "cyclic:2", true);
  check("quaternion:8", "cyclic:2", true);
  check("quaternion:16", "cyclic:2", true);
  check("semidihedral:16", "cyclic:2", true);
  check("dihedral:8", "modular:16", true);
  check("elementary:2^2", "elementary:2^2", false);
  check("modular:16", "elementary:2^2", false);
  check("product:(cyclic:4,cyclic:2)", "elementary:2^2", false);
  check("elementary:3^2", "elementary:3^2", false);
  return r;
}

/// Dihedral, generalized quaternion, and semidihedral groups (coclass 1)
/// of order 2^{n+1}: sigma_P = 2^{n-1} + 1.
inline SuiteReport suite_conjecture1(detail::Verifier& v) {
  SuiteReport r{"conjecture1", SuiteKind::Conjecture, SuiteStatus::ConfirmedOnRange, {}};
  std::size_t limit = v.opts.max_order.value_or(64);
  for (std::size_t order = 16; order <= limit; order *= 2) {
    for (auto d : {GroupDescriptor::dihedral(order), GroupDescriptor::quaternion(order), GroupDescriptor::semidihedral(order)}) {
      FiniteGroup g = build_group(d, v.opts.caps);
      SigmaCell sp = v.sigma(g, FamilySelector::Powerful);
      long cc = coclass(g);
      std::size_t expected = order / 4 + 1;
      bool ok = cc == 1 && sp.finite() && sp.value == expected;
      r.lines.push_back(d.to_string() + " " + detail::n_label(order) + " coclass=" + std::to_string(cc) + " sigma_P=" + sp.text() +
                        " expected=" + std::to_string(expected) + (ok ? " ok" : " COUNTEREXAMPLE"));
      if (!ok) r.status = SuiteStatus::Counterexample;
    }
  }
  return r;
}

/// 2-groups of order 2^{n+1} >= 8: sigma_P <= 2^{n-1} + 1.  Cyclic groups
/// have no cover and are skipped.
inline SuiteReport suite_conjecture2(detail::Verifier& v) {
  SuiteReport r{"conjecture2", SuiteKind::Conjecture, SuiteStatus::ConfirmedOnRange, {}};
  std::size_t checked = 0;
  for (auto const& e : v.catalog(128)) {
    auto p = is_p_group(e.group);
    if (!p || *p != 2 || e.group.order() < 8 || detail::group_is_cyclic(e.group)) continue;
    SigmaCell sp = v.sigma(e.group, FamilySelector::Powerful);
    std::size_t bound = e.group.order() / 4 + 1;
    bool ok = sp.finite() && sp.value <= bound;
    ++checked;
    r.lines.push_back(e.id + " " + detail::n_label(e.group.order()) + " sigma_P=" + sp.text() + " bound=" + std::to_string(bound) +
                      (ok ? " ok" : " COUNTEREXAMPLE"));
    if (!ok) r.status = SuiteStatus::Counterexample;
  }
  r.lines.push_back("confirmed on " + std::to_string(checked) + " catalog groups (not a proof)");
  return r;
}

inline SuiteReport suite_pe_d32(detail::Verifier& v) {
  SuiteReport r{"pe-d32", SuiteKind::Theorem, SuiteStatus::Pass, {}};
  FiniteGroup g = build_group(GroupDescriptor::dihedral(32), v.opts.caps);
  CoverInstance inst = build_instance(g, v.lattice(g), FamilySelector::PowerfullyEmbedded);
  CoverResult res = solve_exact(inst);
  ElementSet reach(g.order());
  for (auto const& c : inst.candidates) reach |= c;
  ElementSet missed = g.all() - reach;
  bool ok = !res.optimal() && !missed.empty();
  std::ostringstream line;
  line << "dihedral:32 n=4 sigma_PE=" << (res.optimal() ? std::to_string(res.size) : "INF") << " candidates=" << inst.candidates.size()
       << " uncoverable elements=" << missed.count() << " (orders";
  std::map<std::size_t, std::size_t> by_order;
  missed.for_each([&](Element x) { ++by_order[g.element_order(x)]; });
  for (auto [o, c] : by_order) line << ' ' << c << "x" << o;
  line << ")" << (ok ? " PASS" : " FAIL");
  r.lines.push_back(line.str());
  if (!ok) r.status = SuiteStatus::Fail;
  return r;
}

inline SuiteReport suite_monotonicity(detail::Verifier& v) {
  SuiteReport r{"monotonicity", SuiteKind::Search, SuiteStatus::NoneFound, {}};
  std::size_t searched = 0;
  for (auto const& e : v.catalog(64)) {
    if (!is_p_group(e.group) || detail::group_is_cyclic(e.group)) continue;
    SigmaCell sp = v.sigma(e.group, FamilySelector::Powerful);
    if (!sp.finite()) continue;
    ++searched;
    auto hits = monotonicity_hits(e.group, v.lattice(e.group), sp.value);
    for (auto const& h : hits) {
      r.status = SuiteStatus::Found;
      r.lines.push_back(e.id + " sigma_P=" + std::to_string(h.group_sigma_p) + " has subgroup #" + std::to_string(h.lattice_index) +
                        " of order " + std::to_string(h.subgroup_order) + " with sigma_P=" + std::to_string(h.subgroup_sigma_p));
    }
  }
  r.lines.push_back("searched " + std::to_string(searched) + " groups");
  return r;
}

inline SuiteReport run_suite(std::string const& name, VerifyOptions const& opts) {
  detail::Verifier v{opts, {}};
  if (name == "main-theorem") return suite_main_theorem(v);
  if (name == "sigma-equals-p-plus-1") return suite_sigma_p_plus_1(v);
  if (name == "chain") return suite_chain(v);
  if (name == "quotient") return suite_quotient(v);
  if (name == "product-powerful") return suite_product_powerful(v);
  if (name == "conjecture1") return suite_conjecture1(v);
  if (name == "conjecture2") return suite_conjecture2(v);
  if (name == "pe-d32") return suite_pe_d32(v);
  if (name == "monotonicity") return suite_monotonicity(v);
  throw InvalidGroup("unknown suite '" + name + "'");
}

/// 0 when every theorem passes and no conjecture counterexample appeared.
inline int exit_code(std::vector<SuiteReport> const& reports) {
  for (auto const& r : reports) {
    if (r.status == SuiteStatus::Fail || r.status == SuiteStatus::Counterexample) return 1;
  }
  return 0;
}

}  // namespace powcov
