#pragma once

// Two-term complexes E0 -> E1 of injective modules, in degrees 0 and 1.

#include <optional>
#include <utility>
#include <vector>

#include "cosilt/repmod.hpp"

namespace cosilt {

template <class F>
struct TwoTermComplex {
  StdSum<F> e0, e1;
  ModMap<F> d;
};

template <class F>
TwoTermComplex<F> mu(const Algebra<F>& alg, const Module<F>& m) {
  auto c = min_inj_copresentation(alg, m);
  return {std::move(c.e0), std::move(c.e1), std::move(c.differential)};
}

/// Indecomposable injectives placed in degree 1.
template <class F>
TwoTermComplex<F> stalk_minus_one(const Algebra<F>& alg, const std::vector<int>& vertices) {
  TwoTermComplex<F> s;
  s.e0 = std_sum(alg, StdKind::injective, {});
  s.e1 = std_sum(alg, StdKind::injective, vertices);
  s.d = zero_map(s.e0.module(), s.e1.module());
  return s;
}

template <class F>
TwoTermComplex<F> complex_sum(const Algebra<F>& alg, const std::vector<TwoTermComplex<F>>& parts) {
  TwoTermComplex<F> s;
  std::vector<int> v0, v1;
  for (const auto& p : parts) {
    v0.insert(v0.end(), p.e0.vertices.begin(), p.e0.vertices.end());
    v1.insert(v1.end(), p.e1.vertices.begin(), p.e1.vertices.end());
  }
  s.e0 = std_sum(alg, StdKind::injective, v0);
  s.e1 = std_sum(alg, StdKind::injective, v1);
  s.d = zero_map(s.e0.module(), s.e1.module());
  int k0 = 0, k1 = 0;
  for (const auto& p : parts) {
    // Summand inclusions of p sit at consecutive positions in the concatenated lists.
    for (int a = 0; a < p.e0.size(); ++a)
      for (int b = 0; b < p.e1.size(); ++b) {
        ModMap<F> block = block_component(p.e0, p.e1, p.d, a, b);
        s.d = add(s.d, compose(s.e1.sum.inclusions[k1 + b], compose(block, s.e0.sum.projections[k0 + a])));
      }
    k0 += p.e0.size();
    k1 += p.e1.size();
  }
  return s;
}

template <class F>
Module<F> h0(const Algebra<F>& alg, const TwoTermComplex<F>& s) {
  return realize(alg.quiver(), s.e0.module(), kernel_of(s.d)).module;
}

template <class F>
Module<F> h1(const Algebra<F>& alg, const TwoTermComplex<F>& s) {
  return quotient(alg.quiver(), s.e1.module(), image_of(s.d)).module;
}

/// dim Hom(s, t[1]) in the homotopy category: maps s.e0 -> t.e1 modulo h d_s + d_t g.
template <class F>
int hom_derived_shift(const Algebra<F>& alg, const TwoTermComplex<F>& s, const TwoTermComplex<F>& t) {
  const Module<F>& s0 = s.e0.module();
  const Module<F>& t1 = t.e1.module();
  int total = hom_dim(alg, s0, t1);
  if (total == 0) return 0;
  std::vector<ModMap<F>> null;
  for (const auto& h : hom_basis(alg, s.e1.module(), t1)) null.push_back(compose(h, s.d));
  for (const auto& g : hom_basis(alg, s0, t.e0.module())) null.push_back(compose(t.d, g));
  return total - static_cast<int>(rank(flatten_all(null, map_length(s0, t1))));
}

struct RigidityCertificate {
  bool rigid = true;
  std::optional<std::pair<int, int>> witness;  // (x, y) with Hom(x, y[1]) != 0
};

template <class F>
RigidityCertificate is_rigid_set(const Algebra<F>& alg, const std::vector<TwoTermComplex<F>>& cs) {
  RigidityCertificate c;
  for (std::size_t x = 0; x < cs.size(); ++x)
    for (std::size_t y = 0; y < cs.size(); ++y)
      if (hom_derived_shift(alg, cs[x], cs[y]) != 0) {
        c.rigid = false;
        c.witness = std::make_pair(static_cast<int>(x), static_cast<int>(y));
        return c;
      }
  return c;
}

/// The induced map Hom(M, e0) -> Hom(M, e1) is onto.
template <class F>
bool in_c_sigma(const Algebra<F>& alg, const Module<F>& m, const TwoTermComplex<F>& s) {
  int target = hom_dim(alg, m, s.e1.module());
  if (target == 0) return true;
  std::vector<ModMap<F>> images;
  for (const auto& f : hom_basis(alg, m, s.e0.module())) images.push_back(compose(s.d, f));
  return rank(flatten_all(images, map_length(m, s.e1.module()))) == target;
}

/// M embeds into a finite direct sum of copies of c.
template <class F>
bool cogenerated_by(const Algebra<F>& alg, const Module<F>& m, const Module<F>& c) {
  auto hs = hom_basis(alg, m, c);
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Mat<F> stacked = zeros<F>(0, m.dims[v]);
    for (const auto& h : hs) stacked = vstack(stacked, h.components[v]);
    if (rank(stacked) != m.dims[v]) return false;
  }
  return true;
}

// --- splitting a complex ---------------------------------------------------

template <class F>
struct StripDecomposition {
  TwoTermComplex<F> mu_part;   // minimal copresentation of H0
  TwoTermComplex<F> iso_part;  // invertible differential
  std::vector<int> stalk;      // injectives in degree 1
  // Chain isomorphism from (mu_part + iso_part + stalk) to the input, and its inverse.
  ModMap<F> f0, f1, g0, g1;
};

namespace detail {

/// Some map x in Hom(a, b) with x o pre = target, for pre: c -> a and target: c -> b.
template <class F>
ModMap<F> solve_precomposition(const Algebra<F>& alg, const Module<F>& a, const Module<F>& b, const Module<F>& c,
                               const ModMap<F>& pre, const ModMap<F>& target) {
  auto hs = hom_basis(alg, a, b);
  std::vector<ModMap<F>> composed;
  for (const auto& h : hs) composed.push_back(compose(h, pre));
  auto x = solve(flatten_all(composed, map_length(c, b)), flatten(target));
  if (!x) throw ConsistencyError("extension along a monomorphism into an injective failed");
  return combine(hs, *x, a, b);
}

/// A std-sum presentation of an injective submodule: returns the sum and the embedding sum -> ambient.
template <class F>
std::pair<StdSum<F>, ModMap<F>> present_injective(const Algebra<F>& alg, const Module<F>& ambient, const Submodule<F>& sub) {
  auto r = realize(alg.quiver(), ambient, sub);
  auto env = injective_envelope(alg, r.module);
  if (!is_iso(env.mono)) throw ConsistencyError("summand of an injective is not injective");
  return {env.envelope, compose(r.inclusion, inverse_map(env.mono))};
}

}  // namespace detail

template <class F>
StripDecomposition<F> strip_decompose(const Algebra<F>& alg, const TwoTermComplex<F>& s) {
  const Quiver& q = alg.quiver();
  const Module<F>& e0 = s.e0.module();
  const Module<F>& e1 = s.e1.module();
  auto k = realize(q, e0, kernel_of(s.d));
  auto cop = min_inj_copresentation(alg, k.module);
  const Module<F>& ek = cop.e0.module();
  const Module<F>& ek1 = cop.e1.module();

  // a: E_K -> E0 extending the kernel inclusion; b: a retraction of a.
  ModMap<F> a = detail::solve_precomposition(alg, ek, e0, k.module, cop.coaugmentation, k.inclusion);
  ModMap<F> b = detail::solve_precomposition(alg, e0, ek, ek, a, identity_map(ek));
  auto [qsum, qin] = detail::present_injective(alg, e0, kernel_of(b));

  // c: E_K1 -> E1 with c o d_mu = d o a.
  ModMap<F> c = detail::solve_precomposition(alg, ek1, e1, ek, cop.differential, compose(s.d, a));
  ModMap<F> dq = compose(s.d, qin);
  auto j_sum = direct_sum(q, std::vector<Module<F>>{ek1, qsum.module()});
  ModMap<F> j = map_from_sum(j_sum, {c, dq}, e1.dims);
  if (!is_mono(j)) throw ConsistencyError("strip_decompose: degree-1 comparison map is not mono");
  ModMap<F> r = detail::solve_precomposition(alg, e1, j_sum.module, j_sum.module, j, identity_map(j_sum.module));
  auto [wsum, win] = detail::present_injective(alg, e1, kernel_of(r));

  StripDecomposition<F> out;
  out.mu_part = {cop.e0, cop.e1, cop.differential};
  out.iso_part = {qsum, qsum, identity_map(qsum.module())};
  out.stalk = wsum.vertices;

  auto src = complex_sum(alg, std::vector<TwoTermComplex<F>>{out.mu_part, out.iso_part, stalk_minus_one(alg, out.stalk)});
  int nk = cop.e0.size(), nq = qsum.size(), nk1 = cop.e1.size(), nw = wsum.size();
  // Degree 0 of src lists E_K then Q; degree 1 lists E_K1, Q, W.
  ModMap<F> f0 = zero_map(src.e0.module(), e0), f1 = zero_map(src.e1.module(), e1);
  for (int i = 0; i < nk; ++i)
    f0 = add(f0, compose(compose(a, cop.e0.sum.inclusions[i]), src.e0.sum.projections[i]));
  for (int i = 0; i < nq; ++i)
    f0 = add(f0, compose(compose(qin, qsum.sum.inclusions[i]), src.e0.sum.projections[nk + i]));
  for (int i = 0; i < nk1; ++i)
    f1 = add(f1, compose(compose(c, cop.e1.sum.inclusions[i]), src.e1.sum.projections[i]));
  for (int i = 0; i < nq; ++i)
    f1 = add(f1, compose(compose(dq, qsum.sum.inclusions[i]), src.e1.sum.projections[nk1 + i]));
  for (int i = 0; i < nw; ++i)
    f1 = add(f1, compose(compose(win, wsum.sum.inclusions[i]), src.e1.sum.projections[nk1 + nq + i]));

  if (!is_iso(f0) || !is_iso(f1)) throw ConsistencyError("strip_decompose: comparison maps are not invertible");
  if (!equal_maps(compose(s.d, f0), compose(f1, src.d))) throw ConsistencyError("strip_decompose: not a chain map");
  out.f0 = f0;
  out.f1 = f1;
  out.g0 = inverse_map(f0);
  out.g1 = inverse_map(f1);
  if (!equal_maps(compose(src.d, out.g0), compose(out.g1, s.d)) || !equal_maps(compose(out.g0, f0), identity_map(src.e0.module())) ||
      !equal_maps(compose(f1, out.g1), identity_map(e1)))
    throw ConsistencyError("strip_decompose: inverse chain map certificate failed");
  return out;
}

// --- finite cosilting check ------------------------------------------------

struct CosiltingCheck {
  bool ok = false;
  std::vector<bool> cogen;    // per catalog module: in Cogen H0(s)
  std::vector<bool> csigma;   // per catalog module: in C_sigma
};

template <class F>
CosiltingCheck finite_cosilting_check(const Algebra<F>& alg, const TwoTermComplex<F>& s, const std::vector<Module<F>>& catalog,
                                      bool catalog_complete) {
  if (!catalog_complete) throw InputError("finite_cosilting_check needs a catalog declared complete");
  CosiltingCheck c;
  Module<F> h = h0(alg, s);
  for (const auto& x : catalog) {
    c.cogen.push_back(cogenerated_by(alg, x, h));
    c.csigma.push_back(in_c_sigma(alg, x, s));
  }
  c.ok = c.cogen == c.csigma;
  return c;
}

}  // namespace cosilt
