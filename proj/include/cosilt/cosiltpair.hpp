#pragma once

// Cosilting pairs (Z, I) over a complete catalog, grains, bricks and reject sequences.

#include <optional>
#include <string>
#include <vector>

#include "cosilt/torslat.hpp"

namespace cosilt {

/// z: catalog members; inj: vertices v standing for the injectives I_v.
struct CosiltingPair {
  Mask z = 0, inj = 0;
  bool operator==(const CosiltingPair&) const = default;
};

template <class F>
std::string pair_names(const Catalog<F>& cat, const CosiltingPair& p) {
  std::vector<std::string> is;
  for (int v : members_of(p.inj)) is.push_back("I" + cat.alg().quiver().vertices[v]);
  std::sort(is.begin(), is.end());
  std::string s = "(" + mask_names(cat, p.z) + ", {";
  for (std::size_t k = 0; k < is.size(); ++k) s += (k ? "," : "") + is[k];
  return s + "})";
}

/// dim Hom(X, I_v) for every member X and vertex v.
template <class F>
std::vector<std::vector<int>> injective_hom_table(const Catalog<F>& cat) {
  const auto& alg = cat.alg();
  std::vector<std::vector<int>> out;
  for (const auto& x : cat.members) {
    std::vector<int> row;
    for (int v = 0; v < alg.num_vertices(); ++v) row.push_back(hom_dim(alg, x, injective(alg, v)));
    out.push_back(std::move(row));
  }
  return out;
}

/// Members of f with Ext^1(G, -) = 0 for all G in f.
template <class F>
Mask ext_injectives(const Catalog<F>& cat, Mask f) {
  Mask out = 0;
  for (int x : members_of(f)) {
    bool ok = true;
    for (int g : members_of(f)) ok = ok && cat.ext[g][x] == 0;
    if (ok) out |= bit(x);
  }
  return out;
}

/// Members embedding into a finite direct sum of the members in z.
template <class F>
Mask cogen_mask(const Catalog<F>& cat, Mask z) {
  if (z == 0) return 0;
  std::vector<Module<F>> parts;
  for (int i : members_of(z)) parts.push_back(cat.members[i]);
  Module<F> c = direct_sum(cat.alg().quiver(), parts).module;
  Mask out = 0;
  for (int x = 0; x < cat.size(); ++x)
    if (cogenerated_by(cat.alg(), cat.members[x], c)) out |= bit(x);
  return out;
}

template <class F>
TorsionPair torsion_pair_of_pair(const Catalog<F>& cat, const CosiltingPair& cp) {
  Mask f = cogen_mask(cat, cp.z);
  return {left_orthogonal(cat, f), f};
}

struct PairCertificate {
  bool ok = true;
  std::string failed;   // "rigid", "hom", "maximal" or empty
  std::string witness;
};

template <class F>
PairCertificate verify_cosilting_pair(const Catalog<F>& cat, const CosiltingPair& cp,
                                      const std::vector<std::vector<int>>& inj_hom) {
  const auto& alg = cat.alg();
  const Quiver& q = alg.quiver();
  PairCertificate c;
  auto complexes = [&](Mask z) {
    std::vector<TwoTermComplex<F>> out;
    for (int i : members_of(z)) out.push_back(cat.mu[i]);
    return out;
  };
  auto fail = [&](const char* what, std::string witness) {
    c.ok = false;
    c.failed = what;
    c.witness = std::move(witness);
    return c;
  };
  auto r = is_rigid_set(alg, complexes(cp.z));
  if (!r.rigid) {
    auto zs = members_of(cp.z);
    return fail("rigid", "Hom(mu " + cat.names[zs[r.witness->first]] + ", mu " + cat.names[zs[r.witness->second]] + "[1]) != 0");
  }
  for (int z : members_of(cp.z))
    for (int v : members_of(cp.inj))
      if (inj_hom[z][v] != 0) return fail("hom", "Hom(" + cat.names[z] + ", I" + q.vertices[v] + ") != 0");
  std::vector<std::string> addable;
  for (int x = 0; x < cat.size(); ++x) {
    if (has(cp.z, x)) continue;
    bool breaks = false;
    for (int v : members_of(cp.inj)) breaks = breaks || inj_hom[x][v] != 0;
    breaks = breaks || hom_derived_shift(alg, cat.mu[x], cat.mu[x]) != 0;
    for (int z : members_of(cp.z))
      breaks = breaks || hom_derived_shift(alg, cat.mu[x], cat.mu[z]) != 0 || hom_derived_shift(alg, cat.mu[z], cat.mu[x]) != 0;
    if (!breaks) addable.push_back(cat.names[x]);
  }
  for (int v = 0; v < alg.num_vertices(); ++v) {
    if (has(cp.inj, v)) continue;
    bool breaks = false;
    for (int z : members_of(cp.z)) breaks = breaks || inj_hom[z][v] != 0;
    if (!breaks) addable.push_back("I" + q.vertices[v]);
  }
  if (!addable.empty()) {
    std::string w;
    for (const auto& a : addable) w += (w.empty() ? "" : ", ") + a;
    return fail("maximal", "can be added: " + w);
  }
  return c;
}

template <class F>
CosiltingPair pair_of_torsion_pair(const Catalog<F>& cat, const TorsionPair& tp, const std::vector<std::vector<int>>& inj_hom) {
  CosiltingPair cp;
  cp.z = ext_injectives(cat, tp.f);
  for (int v = 0; v < cat.alg().num_vertices(); ++v) {
    bool zero = true;
    for (int x : members_of(tp.f)) zero = zero && inj_hom[x][v] == 0;
    if (zero) cp.inj |= bit(v);
  }
  auto cert = verify_cosilting_pair(cat, cp, inj_hom);
  if (!cert.ok)
    throw ConsistencyError("pair " + pair_names(cat, cp) + " of torsion pair fails " + cert.failed + ": " + cert.witness);
  return cp;
}

/// Every (Z, I) satisfying rigidity, Hom-orthogonality and one-step maximality, by exhaustion.
template <class F>
std::vector<CosiltingPair> exhaustive_cosilting_pairs(const Catalog<F>& cat, const std::vector<std::vector<int>>& inj_hom,
                                                      std::uint64_t budget = 1u << 16) {
  int n = cat.size(), nv = cat.alg().num_vertices();
  if (n + nv >= 63 || (Mask(1) << (n + nv)) > budget)
    throw BudgetError("exhaustive pair search over 2^" + std::to_string(n + nv) + " candidates exceeds budget " +
                      std::to_string(budget));
  std::vector<CosiltingPair> out;
  for (Mask z = 0; z <= all_members(n); ++z) {
    bool rigid = true;
    for (int a : members_of(z))
      for (int b : members_of(z)) rigid = rigid && cat.shift_hom[a][b] == 0;
    if (!rigid) continue;
    for (Mask i = 0; i <= all_members(nv); ++i)
      if (verify_cosilting_pair(cat, {z, i}, inj_hom).ok) out.push_back({z, i});
  }
  return out;
}

enum class Order { equal, less, greater, incomparable };

inline std::string to_string(Order o) {
  switch (o) {
    case Order::equal:
      return "equal";
    case Order::less:
      return "less";
    case Order::greater:
      return "greater";
    case Order::incomparable:
      return "incomparable";
  }
  return "";
}

/// a <= b iff Cogen Z_b is contained in Cogen Z_a.
template <class F>
Order order_compare(const Catalog<F>& cat, const CosiltingPair& a, const CosiltingPair& b) {
  Mask ca = cogen_mask(cat, a.z), cb = cogen_mask(cat, b.z);
  bool le = subset(cb, ca), ge = subset(ca, cb);
  if (le && ge) return Order::equal;
  if (le) return Order::less;
  if (ge) return Order::greater;
  return Order::incomparable;
}

// --- grains ----------------------------------------------------------------

/// Every submodule U of m has Ext^1(U, n) = 0. Needs a finite field.
template <class F>
bool submodules_ext_orthogonal(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n, std::uint64_t budget = 1u << 20) {
  for (const auto& u : enumerate_submodules(alg, m, budget))
    if (u.dimension() > 0 && ext1_dim(alg, realize(alg.quiver(), m, u).module, n) != 0) return false;
  return true;
}

struct GrainRecord {
  int member = -1;
  bool tau_orthogonal = false;  // Hom(tau^- N, N) = 0
  bool mu_rigid = false;        // {mu_N} rigid
  std::optional<bool> submodule_criterion;
  bool is_grain = false;
  TorsionPair tpair;
  int pair_index = -1;
  bool is_cmi = false;
  int brick = -1;
};

template <class F>
struct RejectSequence {
  Module<F> n;
  EndAlgebra<F> end;
  DirectSum<F> phi_target;  // N^r, r = dim Rad End N
  ModMap<F> phi;
  Embedded<F> s_n;
  Quotient<F> n_tilde;
};

template <class F>
RejectSequence<F> reject_sequence(const Algebra<F>& alg, const Module<F>& n) {
  const Quiver& q = alg.quiver();
  RejectSequence<F> r;
  r.n = n;
  r.end = end_algebra(alg, n);
  if (!r.end.is_local) throw InputError("reject_sequence: the module is decomposable");
  r.phi_target = direct_sum(q, std::vector<Module<F>>(r.end.radical.size(), n));
  r.phi = map_into_sum(r.phi_target, r.end.radical, n.dims);
  Submodule<F> k = kernel_of(r.phi);
  if (!same_submodule(k, soc_over_end(alg, n))) throw ConsistencyError("kernel of the reject map differs from Soc over End");
  r.s_n = realize(q, n, k);
  r.n_tilde = quotient(q, n, k);
  if (r.n_tilde.module.dims != image_of(r.phi).dims()) throw ConsistencyError("reject quotient differs from the image");
  if (!is_mono(r.s_n.inclusion) || !is_epi(r.n_tilde.projection) ||
      !same_submodule(image_of(r.s_n.inclusion), kernel_of(r.n_tilde.projection)))
    throw ConsistencyError("reject sequence is not exact");
  return r;
}

template <class F>
struct GrainContext {
  const Catalog<F>& cat;
  const SubTable& table;
  const TorsLattice& lat;
  std::vector<std::pair<int, int>> cmi;
};

template <class F>
GrainContext<F> grain_context(const Catalog<F>& cat, const SubTable& table, const TorsLattice& lat) {
  return {cat, table, lat, cmi_elements(lat)};
}

template <class F>
int brick_of_grain(const GrainContext<F>& g, const GrainRecord& rec) {
  if (!rec.is_grain || !rec.is_cmi) throw InputError("brick_of_grain needs a grain whose torsion pair is cmi");
  std::vector<int> cands;
  for (int b = 0; b < g.cat.size(); ++b)
    if (g.cat.brick[b] && torsionfree_closure(g.table, bit(b)) == rec.tpair.f) cands.push_back(b);
  if (cands.size() != 1)
    throw ConsistencyError("grain " + g.cat.names[rec.member] + " has " + std::to_string(cands.size()) + " brick candidates");
  auto rs = reject_sequence(g.cat.alg(), g.cat.members[rec.member]);
  if (!rs.s_n.module.is_zero() && !iso_test(g.cat.alg(), rs.s_n.module, g.cat.members[cands[0]]))
    throw ConsistencyError("reject socle of " + g.cat.names[rec.member] + " is not its brick");
  return cands[0];
}

template <class F>
GrainRecord is_grain(const GrainContext<F>& g, int n) {
  const auto& cat = g.cat;
  const auto& alg = cat.alg();
  const Module<F>& m = cat.members[n];
  GrainRecord rec;
  rec.member = n;
  Module<F> tm = tau_inverse(alg, m);
  rec.tau_orthogonal = tm.is_zero() || hom_dim(alg, tm, m) == 0;
  rec.mu_rigid = is_rigid_set(alg, std::vector<TwoTermComplex<F>>{cat.mu[n]}).rigid;
  if constexpr (F::is_finite) rec.submodule_criterion = submodules_ext_orthogonal(alg, m, m);
  if (rec.tau_orthogonal != rec.mu_rigid || (rec.submodule_criterion && *rec.submodule_criterion != rec.mu_rigid))
    throw ConsistencyError("grain criteria disagree on " + cat.names[n]);
  rec.is_grain = rec.mu_rigid;
  rec.tpair.t = left_orthogonal(cat, bit(n));
  if (rec.is_grain) {
    rec.tpair.f = torsionfree_closure(g.table, cogen_mask(cat, bit(n)));
    if (rec.tpair.f != right_orthogonal(cat, rec.tpair.t))
      throw ConsistencyError("(⊥N, Cogen N) is not a torsion pair for the grain " + cat.names[n]);
  } else {
    rec.tpair.f = right_orthogonal(cat, rec.tpair.t);
  }
  auto idx = g.lat.find_t(rec.tpair.t);
  if (!idx) throw ConsistencyError("⊥" + cat.names[n] + " is not in the lattice");
  rec.pair_index = *idx;
  rec.is_cmi = std::any_of(g.cmi.begin(), g.cmi.end(), [&](const auto& c) { return c.first == *idx; });
  if (rec.is_grain && rec.is_cmi) rec.brick = brick_of_grain(g, rec);
  return rec;
}

/// The grain N in the Ext-injectives of F(B) with Hom(B, N) != 0; round trip asserted.
template <class F>
GrainRecord grain_of_brick(const GrainContext<F>& g, int b) {
  if (!g.cat.brick[b]) throw InputError("grain_of_brick: " + g.cat.names[b] + " is not a brick");
  Mask f = torsionfree_closure(g.table, bit(b));
  std::vector<int> cands;
  for (int z : members_of(ext_injectives(g.cat, f)))
    if (g.cat.hom[b][z] != 0) cands.push_back(z);
  if (cands.size() != 1)
    throw ConsistencyError("brick " + g.cat.names[b] + " has " + std::to_string(cands.size()) + " grain candidates");
  auto rec = is_grain(g, cands[0]);
  if (!rec.is_grain || !rec.is_cmi || rec.brick != b)
    throw ConsistencyError("brick " + g.cat.names[b] + " does not round trip through its grain");
  return rec;
}

/// Every non-split-mono map from N to a member of Cogen N factors through N -> N~.
template <class F>
bool left_almost_split_certificate(const Catalog<F>& cat, int n, const RejectSequence<F>& rs) {
  const auto& alg = cat.alg();
  for (int m : members_of(cogen_mask(cat, bit(n)))) {
    std::vector<ModMap<F>> maps = m == n ? rs.end.radical : hom_basis(alg, cat.members[n], cat.members[m]);
    for (const auto& g : maps)
      if (!is_zero_map(compose(g, rs.s_n.inclusion))) return false;
    for (const auto& g : maps) {
      ModMap<F> h = factor_through_quotient(g, rs.n_tilde);
      if (!equal_maps(compose(h, rs.n_tilde.projection), g)) return false;
    }
  }
  return true;
}

struct AssemblyReport {
  bool cosilting = false;
  bool cogen_matches = false;
  int z_count = 0, i_count = 0, vertices = 0;
  bool count_matches() const { return z_count + i_count == vertices; }
};

/// sigma = sum of mu_Z plus I[-1]; checked against the finite cosilting criterion.
template <class F>
AssemblyReport assemble_and_check(const Catalog<F>& cat, const CosiltingPair& cp) {
  const auto& alg = cat.alg();
  std::vector<TwoTermComplex<F>> parts;
  for (int z : members_of(cp.z)) parts.push_back(cat.mu[z]);
  parts.push_back(stalk_minus_one(alg, members_of(cp.inj)));
  auto sigma = complex_sum(alg, parts);
  auto check = finite_cosilting_check(alg, sigma, cat.members, cat.complete());
  AssemblyReport r;
  r.cosilting = check.ok;
  if (!r.cosilting) throw ConsistencyError("assembled complex of " + pair_names(cat, cp) + " is not cosilting");
  Mask cogen = 0;
  for (int x = 0; x < cat.size(); ++x)
    if (check.cogen[x]) cogen |= bit(x);
  r.cogen_matches = cogen == torsion_pair_of_pair(cat, cp).f;
  r.z_count = mask_size(cp.z);
  r.i_count = mask_size(cp.inj);
  r.vertices = alg.num_vertices();
  return r;
}

}  // namespace cosilt
