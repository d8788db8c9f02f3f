#pragma once

// The commands behind the command-line tool, for one field.

#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "cosilt/cli.hpp"
#include "cosilt/report.hpp"

namespace cosilt {

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

inline void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

inline std::string dims_text(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

inline std::string translate_text(const std::vector<std::string>& names, int i) {
  return i == kZero ? "0" : i == kMissing ? "?" : names[i];
}

}  // namespace detail

template <class F>
Catalog<F> build_catalog(const RunConfig& cfg, const AlgebraFile& file) {
  auto alg = std::make_shared<const Algebra<F>>(build_algebra(to_quiver_spec<F>(file)));
  std::string family = cfg.family;
  if (family == "auto") {
    bool nakayama_shape = true;
    std::vector<int> in(alg->num_vertices(), 0), out(alg->num_vertices(), 0);
    for (const auto& a : alg->quiver().arrows) {
      nakayama_shape = nakayama_shape && ++out[a.source] <= 1 && ++in[a.target] <= 1;
    }
    for (const auto& r : alg->relations()) nakayama_shape = nakayama_shape && r.size() == 1;
    if (alg->relations().empty() && dynkin_types(alg->quiver()))
      family = "hereditary";
    else if (nakayama_shape)
      family = "nakayama";
    else if (!cfg.module_paths.empty())
      family = "explicit";
    else if (alg->relations().empty())
      family = "hereditary";
    else
      throw InputError("no built-in catalog for this algebra; use --family explicit with --module files");
  }
  if (family == "hereditary") return build_hereditary(alg);
  if (family == "nakayama") return build_nakayama(alg);
  if (family == "explicit") {
    std::vector<Module<F>> ms;
    for (const auto& p : cfg.module_paths) ms.push_back(load_module(*alg, p));
    if (ms.empty()) throw InputError("--family explicit needs at least one --module");
    return build_explicit(alg, ms, cfg.assert_complete);
  }
  throw InputError("unknown family '" + family + "'; expected auto, hereditary, nakayama or explicit");
}

template <class F>
struct Analysis {
  Catalog<F> cat;
  SubTable table;
  TorsLattice lat;
  std::vector<std::vector<int>> inj;
};

template <class F>
Analysis<F> analyse(const RunConfig& cfg, Catalog<F> cat) {
  if (!cat.complete()) throw InputError("the catalog is not declared complete; pass --assert-complete to use it");
  Analysis<F> a{std::move(cat), {}, {}, {}};
  a.table = sub_table(a.cat, cfg.budget_submodules);
  a.lat = torsion_lattice(a.cat, a.table, cfg.budget_subsets);
  a.inj = injective_hom_table(a.cat);
  return a;
}

template <class F>
json header_json(const RunConfig& cfg, const Catalog<F>& cat) {
  return json{{"command", cfg.command},
              {"field", F::field_name()},
              {"seed", cfg.seed},
              {"provenance", provenance_json(cat)},
              {"members", cat.names}};
}

template <class F>
int cmd_catalog(const RunConfig& cfg, const Catalog<F>& cat, std::ostream& out) {
  out << "catalog: " << cat.size() << " members (" << to_string(cat.completeness) << ", " << cat.family << ")\n";
  for (int i = 0; i < cat.size(); ++i)
    out << "  " << cat.names[i] << " dims " << detail::dims_text(cat.members[i].dims) << (cat.brick[i] ? " brick" : "")
        << " tau " << detail::translate_text(cat.names, cat.tau[i]) << " tau^- "
        << detail::translate_text(cat.names, cat.tau_minus[i]) << "\n";
  if (!cfg.json_path.empty()) detail::write_json(cfg.json_path, catalog_json(cat));
  return kOk;
}

template <class F>
int cmd_lattice(const RunConfig& cfg, const Catalog<F>& cat, std::ostream& out) {
  auto a = analyse(cfg, cat);
  json j = lattice_json(a.cat, a.lat);
  j["header"] = header_json(cfg, a.cat);
  detail::write_json(cfg.json_path.empty() ? "lattice.json" : cfg.json_path, j);
  if (!cfg.dot_path.empty()) detail::write_text(cfg.dot_path, lattice_dot(a.cat, a.lat));
  out << "pairs: " << a.lat.size() << ", cmi: " << cmi_elements(a.lat).size() << "\n";
  return kOk;
}

template <class F>
int cmd_pairs(const RunConfig& cfg, const Catalog<F>& cat, std::ostream& out) {
  auto a = analyse(cfg, cat);
  json rows = json::array();
  int verified = 0;
  for (const auto& tp : a.lat.pairs) {
    auto cp = pair_of_torsion_pair(a.cat, tp, a.inj);
    auto cert = verify_cosilting_pair(a.cat, cp, a.inj);
    auto rep = assemble_and_check(a.cat, cp);
    bool ok = cert.ok && rep.cosilting && rep.cogen_matches && torsion_pair_of_pair(a.cat, cp) == tp;
    verified += ok;
    rows.push_back(pair_json(a.cat, tp, cp, cert, rep));
    out << "  t=" << mask_names(a.cat, tp.t) << " -> " << pair_names(a.cat, cp) << (ok ? "" : " FAILED") << "\n";
  }
  json j{{"header", header_json(cfg, a.cat)}, {"pairs", rows}};
  detail::write_json(cfg.json_path.empty() ? "pairs.json" : cfg.json_path, j);
  if (verified != a.lat.size()) {
    out << (a.lat.size() - verified) << " of " << a.lat.size() << " cosilting pairs failed verification\n";
    return kConsistency;
  }
  out << "all " << verified << " cosilting pairs verified\n";
  return kOk;
}

template <class F>
json check_lattice(const Analysis<F>& a, std::ostream&) {
  for (const auto& p : a.lat.pairs)
    if (left_orthogonal(a.cat, p.f) != p.t || right_orthogonal(a.cat, p.t) != p.f)
      throw ConsistencyError("pair with t = " + mask_names(a.cat, p.t) + " is not Hom-orthogonal");
  auto bij = cmi_brick_bijection(a.cat, a.table, a.lat);
  json hearts = json::array();
  for (int p = 0; p < a.lat.size(); ++p) {
    auto h = heart_simples(a.cat, a.table, a.lat, p);
    Mask fat = 0, atf = 0;
    for (int b : h.tfat) fat |= bit(b);
    for (int b : h.tatf) atf |= bit(b);
    hearts.push_back(json{{"pair", p}, {"tfat", names_json(a.cat, fat)}, {"tatf", names_json(a.cat, atf)}});
  }
  json labels = json::array();
  for (const auto& c : a.lat.covers) labels.push_back(a.cat.names[c.label]);
  return json{{"pairs", a.lat.size()}, {"covers", a.lat.covers.size()}, {"cover_labels", labels}, {"cmi", bij.size()},
              {"heart_simples", hearts}};
}

template <class F>
json check_pairs(const Analysis<F>& a, std::ostream& out) {
  std::vector<CosiltingPair> image;
  json rows = json::array();
  for (const auto& tp : a.lat.pairs) {
    auto cp = pair_of_torsion_pair(a.cat, tp, a.inj);
    if (!(torsion_pair_of_pair(a.cat, cp) == tp))
      throw ConsistencyError("round trip fails for t = " + mask_names(a.cat, tp.t));
    if (std::find(image.begin(), image.end(), cp) != image.end())
      throw ConsistencyError("two torsion pairs share the cosilting pair " + pair_names(a.cat, cp));
    auto rep = assemble_and_check(a.cat, cp);
    if (!rep.cogen_matches) throw ConsistencyError("Cogen of the assembled module differs for " + pair_names(a.cat, cp));
    image.push_back(cp);
    rows.push_back(pair_json(a.cat, tp, cp, verify_cosilting_pair(a.cat, cp, a.inj), rep));
  }
  for (int x = 0; x < a.lat.size(); ++x)
    for (int y = 0; y < a.lat.size(); ++y) {
      Mask tx = a.lat.pairs[x].t, ty = a.lat.pairs[y].t;
      Order expected = tx == ty ? Order::equal : subset(tx, ty) ? Order::less : subset(ty, tx) ? Order::greater : Order::incomparable;
      if (order_compare(a.cat, image[x], image[y]) != expected)
        throw ConsistencyError("order of " + pair_names(a.cat, image[x]) + " and " + pair_names(a.cat, image[y]) +
                               " disagrees with torsion class inclusion");
    }
  json j{{"pairs", rows}};
  if (a.cat.size() <= 8) {
    auto found = exhaustive_cosilting_pairs(a.cat, a.inj);
    for (const auto& cp : found)
      if (std::find(image.begin(), image.end(), cp) == image.end())
        throw ConsistencyError("exhaustive search found the extra pair " + pair_names(a.cat, cp));
    if (found.size() != image.size()) throw ConsistencyError("exhaustive search missed a cosilting pair");
    j["exhaustive"] = found.size();
  } else {
    j["exhaustive"] = "skipped: more than 8 members";
  }
  out << "  " << image.size() << " torsion pairs <-> " << image.size() << " cosilting pairs\n";
  return j;
}

template <class F>
json check_counts(const Analysis<F>& a, std::ostream&) {
  for (const auto& tp : a.lat.pairs) {
    auto cp = pair_of_torsion_pair(a.cat, tp, a.inj);
    if (mask_size(cp.z) + mask_size(cp.inj) != a.cat.alg().num_vertices())
      throw ConsistencyError("|Z| + |I| differs from the number of vertices for " + pair_names(a.cat, cp));
  }
  return json{{"pairs", a.lat.size()}, {"vertices", a.cat.alg().num_vertices()}};
}

template <class F>
json check_criteria(const Analysis<F>& a, std::ostream&) {
  auto g = grain_context(a.cat, a.table, a.lat);
  json rows = json::array();
  for (int n = 0; n < a.cat.size(); ++n) rows.push_back(grain_json(a.cat, is_grain(g, n)));
  // Two-member version: Hom(mu_M, mu_N[1]) = 0 iff Hom(tau^- N, M) = 0.
  const auto& alg = a.cat.alg();
  for (int m = 0; m < a.cat.size(); ++m)
    for (int n = 0; n < a.cat.size(); ++n) {
      Module<F> tn = tau_inverse(alg, a.cat.members[n]);
      bool tau_side = tn.is_zero() || hom_dim(alg, tn, a.cat.members[m]) == 0;
      if (tau_side != (a.cat.shift_hom[m][n] == 0))
        throw ConsistencyError("rigidity criteria disagree on (" + a.cat.names[m] + ", " + a.cat.names[n] + ")");
    }
  return json{{"grains", rows}};
}

template <class F>
json check_brick_grain(const Analysis<F>& a, std::ostream& out) {
  auto g = grain_context(a.cat, a.table, a.lat);
  json rows = json::array();
  int bricks = 0, grains = 0;
  for (int b = 0; b < a.cat.size(); ++b) {
    if (!a.cat.brick[b]) continue;
    ++bricks;
    auto rec = grain_of_brick(g, b);
    rows.push_back(json{{"brick", a.cat.names[b]}, {"grain", a.cat.names[rec.member]}});
  }
  for (int n = 0; n < a.cat.size(); ++n) {
    auto rec = is_grain(g, n);
    if (!rec.is_grain || !rec.is_cmi) continue;
    ++grains;
    if (grain_of_brick(g, rec.brick).member != n)
      throw ConsistencyError("grain " + a.cat.names[n] + " does not round trip through its brick");
  }
  if (bricks != grains) throw ConsistencyError(std::to_string(bricks) + " bricks but " + std::to_string(grains) + " grains");
  out << "  " << bricks << " bricks ↔ " << grains << " grains\n";
  return json{{"bricks", bricks}, {"grains", grains}, {"pairs", rows}};
}

template <class F>
json check_reject(const Analysis<F>& a, std::ostream&) {
  auto g = grain_context(a.cat, a.table, a.lat);
  json rows = json::array(), findings = json::array();
  for (int n = 0; n < a.cat.size(); ++n) {
    auto rs = reject_sequence(a.cat.alg(), a.cat.members[n]);
    if (a.cat.brick[n] && rs.s_n.module.dims != a.cat.members[n].dims)
      throw ConsistencyError("reject socle of the brick " + a.cat.names[n] + " is proper");
    auto rec = is_grain(g, n);
    json row = reject_json(a.cat, a.cat.names[n], rs);
    if (rec.is_grain && !a.cat.brick[n]) {
      if (rs.s_n.module.is_zero()) {
        findings.push_back("non-brick grain " + a.cat.names[n] + " has zero reject socle");
      } else {
        if (!left_almost_split_certificate(a.cat, n, rs))
          throw ConsistencyError("N -> N~ is not left almost split in Cogen N for " + a.cat.names[n]);
        row["left_almost_split"] = true;
      }
    }
    rows.push_back(row);
  }
  return json{{"sequences", rows}, {"findings", findings}};
}

template <class F>
int cmd_verify(const RunConfig& cfg, const Catalog<F>& cat, std::ostream& out) {
  auto a = analyse(cfg, cat);
  using Check = std::function<json(const Analysis<F>&, std::ostream&)>;
  const std::vector<std::pair<std::string, Check>> checks{
      {"lattice", check_lattice<F>}, {"pairs", check_pairs<F>},   {"count", check_counts<F>},
      {"criteria", check_criteria<F>}, {"brick-grain", check_brick_grain<F>}, {"reject", check_reject<F>}};
  bool known = cfg.check == "all";
  for (const auto& [name, fn] : checks) known = known || name == cfg.check;
  if (!known) {
    std::string names;
    for (const auto& [name, fn] : checks) names += " " + name;
    throw InputError("unknown check '" + cfg.check + "'; expected all or one of" + names);
  }
  json results = json::object();
  std::string first_failure;
  for (const auto& [name, fn] : checks) {
    if (cfg.check != "all" && cfg.check != name) continue;
    json r;
    try {
      r = fn(a, out);
      r["ok"] = true;
      out << "check " << name << ": ok\n";
    } catch (const ConsistencyError& e) {
      r = json{{"ok", false}, {"error", e.what()}};
      out << "check " << name << ": FAILED: " << e.what() << "\n";
      if (first_failure.empty()) first_failure = name;
    }
    results[name] = r;
  }
  json j{{"header", header_json(cfg, a.cat)}, {"checks", results}, {"lattice", lattice_json(a.cat, a.lat)}};
  j["first_failure"] = first_failure.empty() ? json(nullptr) : json(first_failure);
  detail::write_json(cfg.json_path.empty() ? "verify.json" : cfg.json_path, j);
  if (!first_failure.empty()) {
    out << "first failing check: " << first_failure << "\n";
    return kConsistency;
  }
  return kOk;
}

template <class F>
int cmd_reject(const RunConfig& cfg, const Catalog<F>& cat, std::ostream& out) {
  std::vector<std::pair<std::string, Module<F>>> targets;
  if (cat.family != "explicit" && !cfg.module_paths.empty()) {
    for (const auto& p : cfg.module_paths) targets.emplace_back(p, load_module(cat.alg(), p));
  } else {
    for (int i = 0; i < cat.size(); ++i) targets.emplace_back(cat.names[i], cat.members[i]);
  }
  json rows = json::array();
  for (const auto& [name, m] : targets) {
    auto rs = reject_sequence(cat.alg(), m);
    rows.push_back(reject_json(cat, name, rs));
    out << "  " << name << ": Rad End dim " << rs.end.radical.size() << ", socle " << detail::dims_text(rs.s_n.module.dims)
        << ", quotient " << detail::dims_text(rs.n_tilde.module.dims) << "\n";
  }
  json j{{"header", header_json(cfg, cat)}, {"sequences", rows}};
  detail::write_json(cfg.json_path.empty() ? "reject.json" : cfg.json_path, j);
  return kOk;
}

template <class F>
int run_pipeline(const RunConfig& cfg, const AlgebraFile& file, std::ostream& out) {
  decompose_defaults().seed = cfg.seed;
  decompose_defaults().budget = cfg.budget_decompose;
  Catalog<F> cat = build_catalog<F>(cfg, file);
  if (cfg.command == "catalog") return cmd_catalog(cfg, cat, out);
  if (cfg.command == "lattice") return cmd_lattice(cfg, cat, out);
  if (cfg.command == "pairs") return cmd_pairs(cfg, cat, out);
  if (cfg.command == "verify") return cmd_verify(cfg, cat, out);
  if (cfg.command == "reject") return cmd_reject(cfg, cat, out);
  throw InputError("unknown command '" + cfg.command + "'");
}

}  // namespace cosilt
