#pragma once

// JSON and DOT renderings of catalogs, lattices and cosilting pairs.

#include <sstream>
#include <string>
#include <vector>

#include "cosilt/cosiltpair.hpp"
#include "cosilt/spec_io.hpp"

namespace cosilt {

inline constexpr char kFiniteAssumption[] = "the catalog members are taken to be all indecomposable modules";

template <class F>
json names_json(const Catalog<F>& cat, Mask m) {
  std::vector<std::string> ns;
  for (int i : members_of(m)) ns.push_back(cat.names[i]);
  std::sort(ns.begin(), ns.end());
  return json(ns);
}

template <class F>
json injectives_json(const Catalog<F>& cat, Mask inj) {
  std::vector<std::string> ns;
  for (int v : members_of(inj)) ns.push_back("I" + cat.alg().quiver().vertices[v]);
  std::sort(ns.begin(), ns.end());
  return json(ns);
}

inline json translate_json(const std::vector<std::string>& names, int i) {
  if (i == kZero) return "zero";
  if (i == kMissing) return nullptr;
  return names[i];
}

template <class F>
json provenance_json(const Catalog<F>& cat) {
  return json{{"completeness", to_string(cat.completeness)}, {"family", cat.family}, {"assumption", kFiniteAssumption}};
}

template <class F>
json catalog_json(const Catalog<F>& cat) {
  const Quiver& q = cat.alg().quiver();
  json members = json::array();
  for (int i = 0; i < cat.size(); ++i)
    members.push_back(json{{"name", cat.names[i]},
                           {"dims", cat.members[i].dims},
                           {"module", module_to_json(q, cat.members[i])},
                           {"brick", bool(cat.brick[i])},
                           {"radical_dim", cat.radical_dim[i]},
                           {"tau", translate_json(cat.names, cat.tau[i])},
                           {"tau_inverse", translate_json(cat.names, cat.tau_minus[i])}});
  return json{{"provenance", provenance_json(cat)},
              {"field", F::field_name()},
              {"vertices", q.vertices},
              {"members", members},
              {"hom", cat.hom},
              {"ext1", cat.ext},
              {"shift_hom", cat.shift_hom}};
}

template <class F>
json lattice_json(const Catalog<F>& cat, const TorsLattice& lat) {
  json pairs = json::array(), covers = json::array(), cmi = json::array();
  for (int p = 0; p < lat.size(); ++p)
    pairs.push_back(json{{"index", p}, {"t", names_json(cat, lat.pairs[p].t)}, {"f", names_json(cat, lat.pairs[p].f)}});
  for (const auto& c : lat.covers) covers.push_back(json{{"lower", c.lower}, {"upper", c.upper}, {"label", cat.names[c.label]}});
  for (auto [p, c] : cmi_elements(lat)) cmi.push_back(json{{"pair", p}, {"cover", c}});
  return json{{"provenance", provenance_json(cat)}, {"pairs", pairs}, {"covers", covers}, {"cmi", cmi}};
}

template <class F>
std::string lattice_dot(const Catalog<F>& cat, const TorsLattice& lat) {
  std::ostringstream out;
  out << "digraph tors {\n  rankdir=BT;\n";
  for (int p = 0; p < lat.size(); ++p) out << "  n" << p << " [label=\"" << mask_names(cat, lat.pairs[p].t) << "\"];\n";
  for (const auto& c : lat.covers) out << "  n" << c.lower << " -> n" << c.upper << " [label=\"" << cat.names[c.label] << "\"];\n";
  out << "}\n";
  return out.str();
}

template <class F>
json pair_json(const Catalog<F>& cat, const TorsionPair& tp, const CosiltingPair& cp, const PairCertificate& cert,
               const AssemblyReport& rep) {
  return json{{"t", names_json(cat, tp.t)},
              {"f", names_json(cat, tp.f)},
              {"Z", names_json(cat, cp.z)},
              {"I", injectives_json(cat, cp.inj)},
              {"verified", cert.ok},
              {"failed", cert.failed},
              {"cosilting", rep.cosilting},
              {"cogen_matches", rep.cogen_matches},
              {"count", json{{"Z", rep.z_count}, {"I", rep.i_count}, {"vertices", rep.vertices}}}};
}

template <class F>
json grain_json(const Catalog<F>& cat, const GrainRecord& r) {
  json j{{"member", cat.names[r.member]},
         {"grain", r.is_grain},
         {"tau_orthogonal", r.tau_orthogonal},
         {"mu_rigid", r.mu_rigid},
         {"t", names_json(cat, r.tpair.t)},
         {"f", names_json(cat, r.tpair.f)},
         {"cmi", r.is_cmi},
         {"brick", r.brick >= 0 ? json(cat.names[r.brick]) : json(nullptr)}};
  j["submodule_criterion"] = r.submodule_criterion ? json(*r.submodule_criterion) : json(nullptr);
  return j;
}

template <class F>
json reject_json(const Catalog<F>& cat, const std::string& name, const RejectSequence<F>& rs) {
  auto s = find_member(cat, rs.s_n.module);
  return json{{"module", name},
              {"radical_dim", rs.end.radical.size()},
              {"socle_dims", rs.s_n.module.dims},
              {"quotient_dims", rs.n_tilde.module.dims},
              {"socle_member", s ? json(cat.names[*s]) : json(nullptr)}};
}

}  // namespace cosilt
