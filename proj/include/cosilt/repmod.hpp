#pragma once

// Module calculus: Hom and Ext^1, projective covers and injective envelopes,
// minimal (co)presentations, Nakayama functors and Auslander-Reiten
// translates, Krull-Schmidt decomposition, endomorphism rings.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cosilt/algebra.hpp"
#include "cosilt/errors.hpp"
#include "cosilt/linalg.hpp"
#include "cosilt/module.hpp"

namespace cosilt {

// --- Hom -------------------------------------------------------------------

/// Linear system whose solutions are the flattened homomorphisms m -> n.
template <class F>
Mat<F> intertwining_system(const Quiver& q, const Module<F>& m, const Module<F>& n) {
  int nv = q.num_vertices();
  std::vector<Index> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + Index(n.dims[v]) * m.dims[v];
  Index rows = 0;
  for (const auto& a : q.arrows) rows += Index(n.dims[a.target]) * m.dims[a.source];
  Mat<F> sys = zeros<F>(rows, off[nv]);
  Index r = 0;
  for (int a = 0; a < q.num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    const Mat<F>& ma = m.action[a];
    const Mat<F>& na = n.action[a];
    for (int i = 0; i < n.dims[t]; ++i)
      for (int j = 0; j < m.dims[s]; ++j, ++r) {
        for (int k = 0; k < m.dims[t]; ++k)
          if (!ma(k, j).is_zero()) sys(r, off[t] + Index(i) * m.dims[t] + k) += ma(k, j);
        for (int k = 0; k < n.dims[s]; ++k)
          if (!na(i, k).is_zero()) sys(r, off[s] + Index(k) * m.dims[s] + j) -= na(i, k);
      }
  }
  return sys;
}

template <class F>
std::vector<ModMap<F>> hom_basis(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n) {
  Mat<F> k = kernel_basis(intertwining_system(alg.quiver(), m, n));
  std::vector<ModMap<F>> out;
  for (Index c = 0; c < k.cols(); ++c) out.push_back(unflatten(m, n, Vec<F>(k.col(c))));
  return out;
}

template <class F>
int hom_dim(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n) {
  Mat<F> sys = intertwining_system(alg.quiver(), m, n);
  return static_cast<int>(sys.cols() - rank(sys));
}

/// Length of the flattened representation of maps m -> n.
template <class F>
Index map_length(const Module<F>& m, const Module<F>& n) {
  Index len = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) len += Index(m.dims[v]) * n.dims[v];
  return len;
}

template <class F>
ModMap<F> combine(const std::vector<ModMap<F>>& basis, const Vec<F>& coeffs, const Module<F>& m, const Module<F>& n) {
  ModMap<F> f = zero_map(m, n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs(Index(i)).is_zero()) f = add(f, scale(basis[i], coeffs(Index(i))));
  return f;
}

// --- kernels, cokernels, images --------------------------------------------

template <class F>
struct MapDecomposition {
  Embedded<F> kernel;
  Quotient<F> cokernel;
  Submodule<F> image;
};

template <class F>
MapDecomposition<F> map_kernel_cokernel_image(const Algebra<F>& alg, const Module<F>& source, const Module<F>& target,
                                              const ModMap<F>& f) {
  const Quiver& q = alg.quiver();
  if (!is_homomorphism(q, source, target, f)) throw DimensionError("map_kernel_cokernel_image: not a homomorphism");
  MapDecomposition<F> out;
  out.image = image_of(f);
  out.kernel = realize(q, source, kernel_of(f));
  out.cokernel = quotient(q, target, out.image);
  if (!is_zero_map(compose(f, out.kernel.inclusion)) || !is_zero_map(compose(out.cokernel.projection, f)))
    throw ConsistencyError("kernel or cokernel certificate failed");
  for (std::size_t v = 0; v < source.dims.size(); ++v)
    if (out.kernel.module.dims[v] + out.image.dims()[v] != source.dims[v] ||
        out.image.dims()[v] + out.cokernel.module.dims[v] != target.dims[v])
      throw ConsistencyError("rank-nullity failed at a vertex");
  return out;
}

// --- sums of standard modules ----------------------------------------------

/// A direct sum of P_v's or I_v's, one summand per listed vertex.
template <class F>
struct StdSum {
  StdKind kind = StdKind::projective;
  std::vector<int> vertices;
  DirectSum<F> sum;

  const Module<F>& module() const { return sum.module; }
  int size() const { return static_cast<int>(vertices.size()); }
};

template <class F>
StdSum<F> std_sum(const Algebra<F>& alg, StdKind kind, std::vector<int> vertices) {
  StdSum<F> s;
  s.kind = kind;
  s.vertices = std::move(vertices);
  std::vector<Module<F>> parts;
  for (int v : s.vertices) parts.push_back(std_module(alg, kind, v));
  s.sum = direct_sum(alg.quiver(), parts);
  return s;
}

/// Elements of e_j A e_i describing maps between standard summands: entry
/// (l, k) holds coordinates over paths_between(to[l], from[k]).
template <class F>
using BlockElements = std::vector<std::vector<Vec<F>>>;

/// The map P_i -> P_j, p -> x p, for x a combination of paths j -> i.
template <class F>
ModMap<F> projective_block(const Algebra<F>& alg, int i, int j, const Vec<F>& x) {
  int nv = alg.num_vertices();
  const auto& xs = alg.paths_between(j, i);
  ModMap<F> f;
  for (int w = 0; w < nv; ++w) {
    const auto& cols = alg.paths_between(i, w);
    Mat<F> c = zeros<F>(static_cast<Index>(alg.paths_between(j, w).size()), static_cast<Index>(cols.size()));
    for (std::size_t r = 0; r < xs.size(); ++r) {
      F xr = x(Index(r));
      if (xr.is_zero()) continue;
      for (int p : cols)
        for (const auto& [b, coef] : alg.product(xs[r], p)) c(alg.block_position(b), alg.block_position(p)) += xr * coef;
    }
    f.components.push_back(std::move(c));
  }
  return f;
}

/// The map I_i -> I_j, phi -> phi(- x), for x a combination of paths j -> i.
template <class F>
ModMap<F> injective_block(const Algebra<F>& alg, int i, int j, const Vec<F>& x) {
  int nv = alg.num_vertices();
  const auto& xs = alg.paths_between(j, i);
  ModMap<F> f;
  for (int w = 0; w < nv; ++w) {
    const auto& rows = alg.paths_between(w, j);
    Mat<F> c = zeros<F>(static_cast<Index>(rows.size()), static_cast<Index>(alg.paths_between(w, i).size()));
    for (std::size_t r = 0; r < xs.size(); ++r) {
      F xr = x(Index(r));
      if (xr.is_zero()) continue;
      for (int qq : rows)
        for (const auto& [b, coef] : alg.product(qq, xs[r])) c(alg.block_position(qq), alg.block_position(b)) += xr * coef;
    }
    f.components.push_back(std::move(c));
  }
  return f;
}

template <class F>
ModMap<F> block_component(const StdSum<F>& from, const StdSum<F>& to, const ModMap<F>& f, int k, int l) {
  return compose(to.sum.projections[l], compose(f, from.sum.inclusions[k]));
}

/// Reads off the path elements of a map between sums of standard modules of one kind.
template <class F>
BlockElements<F> block_elements(const Algebra<F>& alg, const StdSum<F>& from, const StdSum<F>& to, const ModMap<F>& f) {
  if (from.kind != to.kind || from.kind == StdKind::simple) throw InputError("block_elements: mismatched summand kinds");
  BlockElements<F> out(to.size(), std::vector<Vec<F>>(from.size()));
  for (int l = 0; l < to.size(); ++l)
    for (int k = 0; k < from.size(); ++k) {
      int i = from.vertices[k], j = to.vertices[l];
      ModMap<F> g = block_component(from, to, f, k, l);
      Index n = static_cast<Index>(alg.paths_between(j, i).size());
      Vec<F> x = Vec<F>::Constant(n, F(0));
      if (from.kind == StdKind::projective) {
        // x = g(e_i), in (P_j) at vertex i.
        int col = alg.block_position(alg.idempotent(i));
        for (Index r = 0; r < n; ++r) x(r) = g.components[i](r, col);
      } else {
        // x_r = g(r*)(e_j), read at vertex j.
        int row = alg.block_position(alg.idempotent(j));
        for (Index r = 0; r < n; ++r) x(r) = g.components[j](row, r);
      }
      out[l][k] = std::move(x);
    }
  return out;
}

template <class F>
ModMap<F> block_map(const Algebra<F>& alg, const StdSum<F>& from, const StdSum<F>& to, const BlockElements<F>& x) {
  ModMap<F> f = zero_map(from.module(), to.module());
  for (int l = 0; l < to.size(); ++l)
    for (int k = 0; k < from.size(); ++k) {
      int i = from.vertices[k], j = to.vertices[l];
      ModMap<F> g = from.kind == StdKind::projective ? projective_block(alg, i, j, x[l][k]) : injective_block(alg, i, j, x[l][k]);
      f = add(f, compose(to.sum.inclusions[l], compose(g, from.sum.projections[k])));
    }
  return f;
}

/// Nakayama functor on a map between sums of projectives.
template <class F>
ModMap<F> nakayama(const Algebra<F>& alg, const StdSum<F>& from, const StdSum<F>& to, const ModMap<F>& f,
                   StdSum<F>* from_out = nullptr, StdSum<F>* to_out = nullptr) {
  if (from.kind != StdKind::projective) throw InputError("nakayama expects projective summands");
  auto x = block_elements(alg, from, to, f);
  StdSum<F> a = std_sum(alg, StdKind::injective, from.vertices), b = std_sum(alg, StdKind::injective, to.vertices);
  ModMap<F> g = block_map(alg, a, b, x);
  if (from_out) *from_out = std::move(a);
  if (to_out) *to_out = std::move(b);
  return g;
}

/// Inverse Nakayama functor on a map between sums of injectives.
template <class F>
ModMap<F> nakayama_inverse(const Algebra<F>& alg, const StdSum<F>& from, const StdSum<F>& to, const ModMap<F>& f,
                           StdSum<F>* from_out = nullptr, StdSum<F>* to_out = nullptr) {
  if (from.kind != StdKind::injective) throw InputError("nakayama_inverse expects injective summands");
  auto x = block_elements(alg, from, to, f);
  StdSum<F> a = std_sum(alg, StdKind::projective, from.vertices), b = std_sum(alg, StdKind::projective, to.vertices);
  ModMap<F> g = block_map(alg, a, b, x);
  if (from_out) *from_out = std::move(a);
  if (to_out) *to_out = std::move(b);
  return g;
}

// --- covers and envelopes --------------------------------------------------

template <class F>
struct ProjectiveCover {
  StdSum<F> cover;
  ModMap<F> epi;
};

template <class F>
ProjectiveCover<F> projective_cover(const Algebra<F>& alg, const Module<F>& m) {
  const Quiver& q = alg.quiver();
  auto rad = radical(q, m);
  std::vector<int> verts;
  std::vector<Vec<F>> gens;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Mat<F> c = complement(rad.basis[v]);
    for (Index k = 0; k < c.cols(); ++k) {
      verts.push_back(v);
      gens.push_back(c.col(k));
    }
  }
  ProjectiveCover<F> out;
  out.cover = std_sum(alg, StdKind::projective, verts);
  std::vector<ModMap<F>> pieces;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int v = verts[g];
    ModMap<F> piece;
    for (int w = 0; w < q.num_vertices(); ++w) {
      const auto& paths = alg.paths_between(v, w);
      Mat<F> c = zeros<F>(m.dims[w], static_cast<Index>(paths.size()));
      for (int p : paths) c.col(alg.block_position(p)) = mul(element_matrix(alg, m, p), Mat<F>(gens[g])).col(0);
      piece.components.push_back(std::move(c));
    }
    pieces.push_back(std::move(piece));
  }
  out.epi = map_from_sum(out.cover.sum, pieces, m.dims);
  if (!is_homomorphism(q, out.cover.module(), m, out.epi) || !is_epi(out.epi))
    throw ConsistencyError("projective cover certificate failed");
  return out;
}

template <class F>
struct InjectiveEnvelope {
  StdSum<F> envelope;
  ModMap<F> mono;
};

template <class F>
InjectiveEnvelope<F> injective_envelope(const Algebra<F>& alg, const Module<F>& m) {
  const Quiver& q = alg.quiver();
  auto soc = socle(q, m);
  std::vector<int> verts;
  std::vector<Mat<F>> functionals;  // 1 x dims[v], dual to the socle basis
  for (int v = 0; v < q.num_vertices(); ++v) {
    const Mat<F>& s = soc.basis[v];
    if (s.cols() == 0) continue;
    Mat<F> inv = inverse(hstack(s, complement(s)));
    for (Index r = 0; r < s.cols(); ++r) {
      verts.push_back(v);
      functionals.push_back(inv.row(r));
    }
  }
  InjectiveEnvelope<F> out;
  out.envelope = std_sum(alg, StdKind::injective, verts);
  std::vector<ModMap<F>> pieces;
  for (std::size_t g = 0; g < verts.size(); ++g) {
    int v = verts[g];
    ModMap<F> piece;
    for (int w = 0; w < q.num_vertices(); ++w) {
      const auto& paths = alg.paths_between(w, v);
      Mat<F> c = zeros<F>(static_cast<Index>(paths.size()), m.dims[w]);
      for (int p : paths) c.row(alg.block_position(p)) = mul(functionals[g], element_matrix(alg, m, p)).row(0);
      piece.components.push_back(std::move(c));
    }
    pieces.push_back(std::move(piece));
  }
  out.mono = map_into_sum(out.envelope.sum, pieces, m.dims);
  if (!is_homomorphism(q, m, out.envelope.module(), out.mono) || !is_mono(out.mono))
    throw ConsistencyError("injective envelope certificate failed");
  return out;
}

/// Minimal injective copresentation 0 -> M -> E0 -> E1.
template <class F>
struct InjCopresentation {
  StdSum<F> e0, e1;
  ModMap<F> coaugmentation;  // M -> E0
  ModMap<F> differential;    // E0 -> E1
};

template <class F>
InjCopresentation<F> min_inj_copresentation(const Algebra<F>& alg, const Module<F>& m) {
  const Quiver& q = alg.quiver();
  auto env0 = injective_envelope(alg, m);
  auto cok = quotient(q, env0.envelope.module(), image_of(env0.mono));
  auto env1 = injective_envelope(alg, cok.module);
  InjCopresentation<F> out{env0.envelope, env1.envelope, env0.mono, compose(env1.mono, cok.projection)};
  if (!same_submodule(kernel_of(out.differential), image_of(out.coaugmentation)))
    throw ConsistencyError("copresentation is not exact at E0");
  return out;
}

/// Minimal projective presentation P1 -> P0 -> M -> 0.
template <class F>
struct ProjPresentation {
  StdSum<F> p0, p1;
  ModMap<F> augmentation;  // P0 -> M
  ModMap<F> differential;  // P1 -> P0
  Embedded<F> syzygy;      // kernel of the augmentation
};

template <class F>
ProjPresentation<F> min_proj_presentation(const Algebra<F>& alg, const Module<F>& m) {
  const Quiver& q = alg.quiver();
  auto cov0 = projective_cover(alg, m);
  auto omega = realize(q, cov0.cover.module(), kernel_of(cov0.epi));
  auto cov1 = projective_cover(alg, omega.module);
  ProjPresentation<F> out{cov0.cover, cov1.cover, cov0.epi, compose(omega.inclusion, cov1.epi), omega};
  if (!same_submodule(image_of(out.differential), kernel_of(out.augmentation)))
    throw ConsistencyError("presentation is not exact at P0");
  return out;
}

// --- Auslander-Reiten translates -------------------------------------------

template <class F>
Module<F> tau_inverse(const Algebra<F>& alg, const Module<F>& m) {
  auto mu = min_inj_copresentation(alg, m);
  StdSum<F> p0, p1;
  ModMap<F> f = nakayama_inverse(alg, mu.e0, mu.e1, mu.differential, &p0, &p1);
  return quotient(alg.quiver(), p1.module(), image_of(f)).module;
}

template <class F>
Module<F> tau(const Algebra<F>& alg, const Module<F>& m) {
  auto pres = min_proj_presentation(alg, m);
  StdSum<F> i1, i0;
  ModMap<F> g = nakayama(alg, pres.p1, pres.p0, pres.differential, &i1, &i0);
  return realize(alg.quiver(), i1.module(), kernel_of(g)).module;
}

enum class Translate { tau, tau_inverse };

template <class F>
Module<F> ar_translate(const Algebra<F>& alg, const Module<F>& m, Translate dir) {
  return dir == Translate::tau ? tau(alg, m) : tau_inverse(alg, m);
}

// --- Ext^1 -----------------------------------------------------------------

template <class F>
struct Ext1 {
  int dimension = 0;
  ProjPresentation<F> presentation;
  std::vector<ModMap<F>> classes;  // maps Omega M -> N representing a basis of Ext^1
};

template <class F>
Ext1<F> ext1(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n) {
  Ext1<F> out;
  out.presentation = min_proj_presentation(alg, m);
  const Module<F>& omega = out.presentation.syzygy.module;
  const Module<F>& p0 = out.presentation.p0.module();
  auto on_omega = hom_basis(alg, omega, n);
  std::vector<ModMap<F>> restricted;
  for (const auto& f : hom_basis(alg, p0, n)) restricted.push_back(compose(f, out.presentation.syzygy.inclusion));
  Index len = map_length(omega, n);
  Mat<F> span = column_space(flatten_all(restricted, len));
  for (const auto& h : on_omega) {
    Mat<F> v = flatten(h);
    if (in_span(span, v)) continue;
    span = hstack(span, v);
    out.classes.push_back(h);
  }
  out.dimension = static_cast<int>(out.classes.size());
  if (out.dimension != static_cast<int>(on_omega.size()) - rank(flatten_all(restricted, len)))
    throw ConsistencyError("Ext^1 dimension bookkeeping failed");
  return out;
}

template <class F>
int ext1_dim(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n) {
  return ext1(alg, m, n).dimension;
}

/// Middle term of the pushout of 0 -> Omega M -> P0 -> M -> 0 along h.
template <class F>
Module<F> extension_middle_term(const Algebra<F>& alg, const ProjPresentation<F>& pres, const Module<F>& n,
                                const ModMap<F>& h) {
  const Quiver& q = alg.quiver();
  auto sum = direct_sum(q, std::vector<Module<F>>{n, pres.p0.module()});
  ModMap<F> embed = map_into_sum(sum, {scale(h, F(-1)), pres.syzygy.inclusion}, pres.syzygy.module.dims);
  return quotient(q, sum.module, image_of(embed)).module;
}

// --- decomposition ---------------------------------------------------------

struct DecomposeOptions {
  std::uint64_t seed = 1;
  std::uint64_t budget = 1u << 16;  // exhaustive fallback over F_p
  int random_candidates = 24;
};

/// Options used when a caller passes none; the command line sets seed and budget here.
inline DecomposeOptions& decompose_defaults() {
  static DecomposeOptions opts;
  return opts;
}

namespace detail {

template <class F>
Mat<F> power(const Mat<F>& m, int e) {
  Mat<F> r = identity<F>(m.rows());
  for (int i = 0; i < e; ++i) r = mul(r, m);
  return r;
}

template <class F>
int max_dim(const Module<F>& m) {
  return m.dims.empty() ? 0 : *std::max_element(m.dims.begin(), m.dims.end());
}

template <class F>
bool is_nilpotent(const ModMap<F>& f, int n) {
  for (const auto& c : f.components)
    if (c.rows() > 0 && !is_zero(power(c, n))) return false;
  return true;
}

template <class F>
ModMap<F> shift(const ModMap<F>& f, const F& lambda) {
  ModMap<F> g = f;
  for (auto& c : g.components)
    for (Index i = 0; i < c.rows(); ++i) c(i, i) -= lambda;
  return g;
}

/// Characteristic polynomial of a square rational matrix, lowest degree first.
inline std::vector<Rational> characteristic_polynomial(const Mat<Rational>& a) {
  Index n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = Rational(1);
  Mat<Rational> m = zeros<Rational>(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = mul(a, m);
    for (Index i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    Mat<Rational> am = mul(a, m);
    Rational tr(0);
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -(tr / Rational(static_cast<long long>(k)));
  }
  return c;
}

inline std::vector<boost::multiprecision::cpp_int> divisors(boost::multiprecision::cpp_int n) {
  using boost::multiprecision::cpp_int;
  if (n < 0) n = -n;
  std::vector<cpp_int> out;
  if (n == 0 || n > cpp_int(1000000000000LL)) return out;
  for (cpp_int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

/// Rational eigenvalues of a square rational matrix (rational root theorem).
inline std::vector<Rational> rational_eigenvalues(const Mat<Rational>& a) {
  using boost::multiprecision::cpp_int;
  auto c = characteristic_polynomial(a);
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low].is_zero()) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low + 1 >= c.size()) return roots;
  cpp_int lcm = 1;
  for (const auto& x : c) lcm = boost::multiprecision::lcm(lcm, x.denominator());
  std::vector<cpp_int> ints;
  for (std::size_t i = low; i < c.size(); ++i) ints.push_back(boost::multiprecision::numerator(c[i].value() * Rational::Value(lcm)));
  auto eval = [&](const Rational& x) {
    Rational acc(0);
    for (std::size_t i = ints.size(); i-- > 0;) acc = acc * x + Rational(Rational::Value(ints[i]));
    return acc;
  };
  for (const auto& p : divisors(ints.front()))
    for (const auto& q : divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rational x(Rational::Value(p * sign, q));
        if (eval(x).is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  return roots;
}

template <class F>
std::vector<F> eigenvalue_candidates(const ModMap<F>& f) {
  std::vector<F> out;
  if constexpr (F::is_finite) {
    for (std::size_t i = 0; i < F::order; ++i) out.push_back(F::from_index(i));
  } else {
    for (const auto& c : f.components)
      for (const auto& r : rational_eigenvalues(c))
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

/// The scalar lambda with f - lambda nilpotent, if any.
template <class F>
std::optional<F> residue_scalar(const ModMap<F>& f, int n) {
  if constexpr (F::is_finite) {
    for (std::size_t i = 0; i < F::order; ++i) {
      F lambda = F::from_index(i);
      if (is_nilpotent(shift(f, lambda), n)) return lambda;
    }
    return std::nullopt;
  } else {
    for (const auto& c : f.components) {
      if (c.rows() == 0) continue;
      F tr(0);
      for (Index i = 0; i < c.rows(); ++i) tr += c(i, i);
      F lambda = tr / F(static_cast<long long>(c.rows()));
      if (is_nilpotent(shift(f, lambda), n)) return lambda;
      return std::nullopt;
    }
    return F(0);
  }
}

/// Certifies End(M) = k + J with J a nilpotent ideal, which makes M indecomposable.
template <class F>
bool locality_certificate(const std::vector<ModMap<F>>& basis, const Module<F>& m) {
  int n = max_dim(m);
  std::vector<ModMap<F>> j;
  for (const auto& b : basis) {
    auto lambda = residue_scalar(b, n);
    if (!lambda) return false;
    j.push_back(shift(b, *lambda));
  }
  Index len = map_length(m, m);
  Mat<F> jspan = column_space(flatten_all(j, len));
  std::vector<ModMap<F>> jb;
  for (Index c = 0; c < jspan.cols(); ++c) jb.push_back(unflatten(m, m, Vec<F>(jspan.col(c))));
  for (const auto& x : jb)
    for (const auto& y : jb)
      if (!in_span(jspan, Mat<F>(flatten(compose(x, y))))) return false;
  // J^k for increasing k must reach zero.
  std::vector<ModMap<F>> pow = jb;
  for (int k = 0; k <= m.dimension() && !pow.empty(); ++k) {
    std::vector<ModMap<F>> next;
    for (const auto& x : pow)
      for (const auto& y : jb) next.push_back(compose(x, y));
    Mat<F> s = column_space(flatten_all(next, len));
    pow.clear();
    for (Index c = 0; c < s.cols(); ++c) pow.push_back(unflatten(m, m, Vec<F>(s.col(c))));
  }
  return pow.empty();
}

template <class F>
bool splits(const ModMap<F>& psi, int n) {
  return !is_nilpotent(psi, n) && !is_iso(psi);
}

/// An endomorphism that is neither nilpotent nor invertible, or nothing when M is indecomposable.
template <class F>
std::optional<ModMap<F>> splitting_endomorphism(const Module<F>& m, const std::vector<ModMap<F>>& basis,
                                                const DecomposeOptions& opts) {
  int n = max_dim(m);
  if (basis.size() <= 1) return std::nullopt;
  if (locality_certificate(basis, m)) return std::nullopt;
  auto try_candidate = [&](const ModMap<F>& phi) -> std::optional<ModMap<F>> {
    for (const F& lambda : eigenvalue_candidates(phi)) {
      ModMap<F> psi = shift(phi, lambda);
      if (splits(psi, n)) return psi;
    }
    return std::nullopt;
  };
  for (const auto& b : basis)
    if (auto s = try_candidate(b)) return s;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = i + 1; k < basis.size(); ++k)
      if (auto s = try_candidate(add(basis[i], basis[k]))) return s;
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.random_candidates; ++t) {
    Vec<F> c = random_matrix<F>(static_cast<Index>(basis.size()), 1, rng).col(0);
    if (auto s = try_candidate(combine(basis, c, m, m))) return s;
  }
  if constexpr (F::is_finite) {
    double total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= double(F::order);
    if (total > double(opts.budget))
      throw BudgetError("decomposition search needs " + std::to_string(F::order) + "^" + std::to_string(basis.size()) +
                        " endomorphisms, budget " + std::to_string(opts.budget));
    Vec<F> c = Vec<F>::Constant(static_cast<Index>(basis.size()), F(0));
    for (;;) {
      Index i = 0;
      while (i < c.size() && c(i) == F::from_index(F::order - 1)) c(i++) = F(0);
      if (i == c.size()) break;
      c(i) = F::from_index(c(i).index() + 1);
      ModMap<F> phi = combine(basis, c, m, m);
      if (splits(phi, n)) return phi;
    }
    return std::nullopt;
  } else {
    throw BudgetError("could not split or certify locality of a module of dimension " + std::to_string(m.dimension()) +
                      " over Q");
  }
}

}  // namespace detail

/// An indecomposable summand with its split inclusion into the decomposed module.
template <class F>
struct Piece {
  Module<F> module;
  ModMap<F> inclusion;   // piece -> M
  ModMap<F> projection;  // M -> piece
};

template <class F>
struct Decomposition {
  std::vector<Piece<F>> pieces;
  std::vector<int> iso_class;       // per piece
  std::vector<int> representative;  // per class, a piece index
  std::vector<int> multiplicity;    // per class

  int num_classes() const { return static_cast<int>(representative.size()); }
};

template <class F>
std::optional<ModMap<F>> find_isomorphism_indecomposable(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n) {
  if (m.dims != n.dims) return std::nullopt;
  auto h = hom_basis(alg, m, n);
  if (h.empty()) return std::nullopt;
  auto g = hom_basis(alg, n, m);
  for (const auto& f : h)
    for (const auto& b : g)
      if (is_iso(compose(b, f))) return f;
  return std::nullopt;
}

namespace detail {

template <class F>
void split_into(const Algebra<F>& alg, const Module<F>& x, const ModMap<F>& incl, const ModMap<F>& proj,
                const DecomposeOptions& opts, std::vector<Piece<F>>& out) {
  if (x.dimension() == 0) return;
  const Quiver& q = alg.quiver();
  auto psi = splitting_endomorphism(x, hom_basis(alg, x, x), opts);
  if (!psi) {
    out.push_back({x, incl, proj});
    return;
  }
  int n = max_dim(x);
  Submodule<F> ker, im;
  for (const auto& c : psi->components) {
    Mat<F> p = power(c, n);
    ker.basis.push_back(kernel_basis(p));
    im.basis.push_back(column_space(p));
  }
  auto k = realize(q, x, ker), i = realize(q, x, im);
  ModMap<F> pk, pi;
  for (std::size_t v = 0; v < x.dims.size(); ++v) {
    Mat<F> inv = inverse(hstack(ker.basis[v], im.basis[v]));
    pk.components.push_back(inv.topRows(ker.basis[v].cols()));
    pi.components.push_back(inv.bottomRows(im.basis[v].cols()));
  }
  split_into(alg, k.module, compose(incl, k.inclusion), compose(pk, proj), opts, out);
  split_into(alg, i.module, compose(incl, i.inclusion), compose(pi, proj), opts, out);
}

}  // namespace detail

template <class F>
Decomposition<F> decompose(const Algebra<F>& alg, const Module<F>& m, const DecomposeOptions& opts = decompose_defaults()) {
  Decomposition<F> d;
  detail::split_into(alg, m, identity_map(m), identity_map(m), opts, d.pieces);
  for (std::size_t p = 0; p < d.pieces.size(); ++p) {
    int cls = -1;
    for (int c = 0; c < d.num_classes() && cls < 0; ++c)
      if (find_isomorphism_indecomposable(alg, d.pieces[d.representative[c]].module, d.pieces[p].module)) cls = c;
    if (cls < 0) {
      cls = d.num_classes();
      d.representative.push_back(static_cast<int>(p));
      d.multiplicity.push_back(0);
    }
    d.iso_class.push_back(cls);
    ++d.multiplicity[cls];
  }
  // Certificate: the pieces reassemble M.
  ModMap<F> total = zero_map(m, m);
  for (const auto& p : d.pieces) {
    if (!is_iso(compose(p.projection, p.inclusion)) || !equal_maps(compose(p.projection, p.inclusion), identity_map(p.module)))
      throw ConsistencyError("decomposition: projection is not a retraction");
    total = add(total, compose(p.inclusion, p.projection));
  }
  if (!equal_maps(total, identity_map(m))) throw ConsistencyError("decomposition: summands do not reassemble the module");
  return d;
}

template <class F>
bool is_indecomposable(const Algebra<F>& alg, const Module<F>& m, const DecomposeOptions& opts = decompose_defaults()) {
  if (m.dimension() == 0) return false;
  return !detail::splitting_endomorphism(m, hom_basis(alg, m, m), opts);
}

// --- isomorphism -----------------------------------------------------------

template <class F>
std::optional<ModMap<F>> find_isomorphism(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n,
                                          const DecomposeOptions& opts = decompose_defaults()) {
  if (m.dims != n.dims) return std::nullopt;
  if (m.dimension() == 0) return identity_map(m);
  if (auto f = find_isomorphism_indecomposable(alg, m, n)) return f;
  auto dm = decompose(alg, m, opts);
  if (dm.pieces.size() == 1) return std::nullopt;
  auto dn = decompose(alg, n, opts);
  if (dn.pieces.size() != dm.pieces.size()) return std::nullopt;
  std::vector<bool> used(dn.pieces.size(), false);
  ModMap<F> iso = zero_map(m, n);
  for (const auto& pm : dm.pieces) {
    bool matched = false;
    for (std::size_t k = 0; k < dn.pieces.size() && !matched; ++k) {
      if (used[k]) continue;
      if (auto theta = find_isomorphism_indecomposable(alg, pm.module, dn.pieces[k].module)) {
        used[k] = true;
        matched = true;
        iso = add(iso, compose(dn.pieces[k].inclusion, compose(*theta, pm.projection)));
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!is_iso(iso)) throw ConsistencyError("assembled isomorphism is not invertible");
  return iso;
}

template <class F>
bool iso_test(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n, const DecomposeOptions& opts = decompose_defaults()) {
  return find_isomorphism(alg, m, n, opts).has_value();
}

// --- endomorphism rings ----------------------------------------------------

template <class F>
struct EndAlgebra {
  Module<F> module;
  std::vector<ModMap<F>> basis;
  std::vector<std::vector<Vec<F>>> table;  // table[i][j]: coordinates of basis[i] o basis[j]
  std::vector<ModMap<F>> radical;          // basis of Rad(End M)
  bool is_local = false;

  int dimension() const { return static_cast<int>(basis.size()); }
};

template <class F>
EndAlgebra<F> end_algebra(const Algebra<F>& alg, const Module<F>& m, const DecomposeOptions& opts = decompose_defaults()) {
  EndAlgebra<F> e;
  e.module = m;
  e.basis = hom_basis(alg, m, m);
  Index len = map_length(m, m);
  Mat<F> flat = flatten_all(e.basis, len);
  for (const auto& a : e.basis) {
    std::vector<Vec<F>> row;
    for (const auto& b : e.basis) {
      auto x = solve(flat, flatten(compose(a, b)));
      if (!x) throw ConsistencyError("End(M) is not closed under composition");
      row.push_back(std::move(*x));
    }
    e.table.push_back(std::move(row));
  }
  if (m.dimension() == 0) return e;

  auto d = decompose(alg, m, opts);
  e.is_local = d.pieces.size() == 1;
  // theta[p]: representative of its class -> piece p.
  std::vector<ModMap<F>> theta(d.pieces.size()), theta_inv(d.pieces.size());
  for (std::size_t p = 0; p < d.pieces.size(); ++p) {
    const auto& rep = d.pieces[d.representative[d.iso_class[p]]];
    auto t = find_isomorphism_indecomposable(alg, rep.module, d.pieces[p].module);
    if (!t) throw ConsistencyError("iso class bookkeeping failed");
    theta[p] = *t;
    theta_inv[p] = inverse_map(*t);
  }
  // phi is radical iff every component between isomorphic pieces has zero residue.
  std::vector<std::vector<F>> rows;
  for (std::size_t k = 0; k < d.pieces.size(); ++k)
    for (std::size_t l = 0; l < d.pieces.size(); ++l) {
      if (d.iso_class[k] != d.iso_class[l]) continue;
      int n = detail::max_dim(d.pieces[k].module);
      std::vector<F> row;
      for (const auto& phi : e.basis) {
        ModMap<F> u = compose(theta_inv[l], compose(d.pieces[l].projection, compose(phi, compose(d.pieces[k].inclusion, theta[k]))));
        auto lambda = detail::residue_scalar(u, n);
        if (!lambda) throw UnsupportedFieldError("endomorphism ring has a residue field larger than " + F::field_name());
        row.push_back(*lambda);
      }
      rows.push_back(std::move(row));
    }
  Mat<F> functionals = from_rows<F>(rows, static_cast<Index>(e.basis.size()));
  Mat<F> ker = kernel_basis(functionals);
  for (Index c = 0; c < ker.cols(); ++c) e.radical.push_back(combine(e.basis, Vec<F>(ker.col(c)), m, m));
  return e;
}

/// Joint kernel of the radical of End(N).
template <class F>
Submodule<F> soc_over_end(const Algebra<F>& alg, const Module<F>& n, const DecomposeOptions& opts = decompose_defaults()) {
  auto e = end_algebra(alg, n, opts);
  Submodule<F> s;
  for (std::size_t v = 0; v < n.dims.size(); ++v) {
    Mat<F> stacked = zeros<F>(0, n.dims[v]);
    for (const auto& r : e.radical) stacked = vstack(stacked, r.components[v]);
    s.basis.push_back(kernel_basis(stacked));
  }
  if (!is_submodule(alg.quiver(), n, s)) throw ConsistencyError("Soc over End is not a submodule");
  return s;
}

template <class F>
bool is_brick(const Algebra<F>& alg, const Module<F>& m, const DecomposeOptions& opts = decompose_defaults()) {
  auto e = end_algebra(alg, m, opts);
  if (!e.is_local) throw InputError("is_brick: the module is decomposable");
  return e.radical.empty();
}

// --- approximations --------------------------------------------------------

template <class F>
struct Approximation {
  std::vector<int> summands;  // indices into the target list, one per copy
  DirectSum<F> target;
  ModMap<F> map;
};

namespace detail {

/// Some h with f = h o g, for g: B -> C and f: B -> W.
template <class F>
bool factors_through(const Algebra<F>& alg, const Module<F>& b, const Module<F>& c, const Module<F>& w,
                     const ModMap<F>& g, const ModMap<F>& f) {
  auto hs = hom_basis(alg, c, w);
  std::vector<ModMap<F>> composed;
  for (const auto& h : hs) composed.push_back(compose(h, g));
  return in_span(flatten_all(composed, map_length(b, w)), Mat<F>(flatten(f)));
}

}  // namespace detail

/// Left minimal add(targets)-approximation of b.
template <class F>
Approximation<F> left_min_approx(const Algebra<F>& alg, const Module<F>& b, const std::vector<Module<F>>& targets) {
  if (targets.empty()) throw InputError("left_min_approx: no targets");
  const Quiver& q = alg.quiver();
  std::vector<int> idx;
  std::vector<ModMap<F>> comps;
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (auto& h : hom_basis(alg, b, targets[t])) {
      idx.push_back(static_cast<int>(t));
      comps.push_back(std::move(h));
    }
  auto build = [&](const std::vector<int>& keep) {
    Approximation<F> a;
    std::vector<Module<F>> parts;
    std::vector<ModMap<F>> pieces;
    for (int k : keep) {
      a.summands.push_back(idx[k]);
      parts.push_back(targets[idx[k]]);
      pieces.push_back(comps[k]);
    }
    a.target = direct_sum(q, parts);
    a.map = map_into_sum(a.target, pieces, b.dims);
    return a;
  };
  std::vector<int> keep(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) keep[k] = static_cast<int>(k);
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      std::vector<int> rest = keep;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      if (rest.empty()) {
        if (!is_zero_map(comps[keep[j]])) continue;
      } else {
        auto r = build(rest);
        if (!detail::factors_through(alg, b, r.target.module, targets[idx[keep[j]]], r.map, comps[keep[j]])) continue;
      }
      keep = std::move(rest);
      stripped = true;
      break;
    }
  }
  return build(keep);
}

// --- submodule enumeration -------------------------------------------------

namespace detail {

template <class F>
std::vector<std::uint32_t> submodule_key(const Submodule<F>& s) {
  std::vector<std::uint32_t> key;
  for (const auto& b : s.basis) {
    Mat<F> c = canonical_span(b);
    key.push_back(static_cast<std::uint32_t>(c.rows()));
    for (Index i = 0; i < c.rows(); ++i)
      for (Index j = 0; j < c.cols(); ++j) key.push_back(static_cast<std::uint32_t>(c(i, j).index()));
  }
  return key;
}

}  // namespace detail

/// Every submodule of m exactly once, ordered by discovery from 0.
template <class F>
std::vector<Submodule<F>> enumerate_submodules(const Algebra<F>& alg, const Module<F>& m, std::uint64_t budget = 1u << 20) {
  if constexpr (!F::is_finite) {
    throw UnsupportedFieldError("submodule enumeration needs a finite field");
  } else {
    const Quiver& q = alg.quiver();
    double total = 1;
    for (int i = 0; i < m.dimension(); ++i) total *= double(F::order);
    if (total > double(budget))
      throw BudgetError("submodule enumeration over " + std::to_string(F::order) + "^" + std::to_string(m.dimension()) +
                        " vectors exceeds budget " + std::to_string(budget));
    std::vector<Submodule<F>> out{nothing(m)};
    std::set<std::vector<std::uint32_t>> seen{detail::submodule_key(out[0])};
    for (std::size_t head = 0; head < out.size(); ++head) {
      for (int v = 0; v < q.num_vertices(); ++v) {
        int d = m.dims[v];
        if (d == 0) continue;
        Vec<F> x = Vec<F>::Constant(d, F(0));
        for (;;) {
          Index i = 0;
          while (i < d && x(i) == F::from_index(F::order - 1)) x(i++) = F(0);
          if (i == d) break;
          x(i) = F::from_index(x(i).index() + 1);
          if (in_span(out[head].basis[v], Mat<F>(x))) continue;
          std::vector<Mat<F>> spans = out[head].basis;
          spans[v] = hstack(spans[v], Mat<F>(x));
          auto s = generated_submodule(q, m, std::move(spans));
          if (seen.insert(detail::submodule_key(s)).second) out.push_back(std::move(s));
        }
      }
    }
    return out;
  }
}

/// Calls fn(middle term) for every one of the p^d extension classes of m by n.
template <class F>
void for_each_extension(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n,
                        const std::function<void(const Vec<F>&, const Module<F>&)>& fn, std::uint64_t budget = 1u << 16) {
  if constexpr (!F::is_finite) {
    throw UnsupportedFieldError("extension class enumeration needs a finite field");
  } else {
    auto e = ext1(alg, m, n);
    double total = 1;
    for (int i = 0; i < e.dimension; ++i) total *= double(F::order);
    if (total > double(budget)) throw BudgetError("too many extension classes: " + std::to_string(total));
    const Module<F>& omega = e.presentation.syzygy.module;
    Vec<F> c = Vec<F>::Constant(e.dimension, F(0));
    for (;;) {
      fn(c, extension_middle_term(alg, e.presentation, n, combine(e.classes, c, omega, n)));
      Index i = 0;
      while (i < c.size() && c(i) == F::from_index(F::order - 1)) c(i++) = F(0);
      if (i == c.size()) break;
      c(i) = F::from_index(c(i).index() + 1);
    }
  }
}

/// Middle terms of all extensions of m by n, up to isomorphism.
template <class F>
std::vector<Module<F>> ext1_middle_terms(const Algebra<F>& alg, const Module<F>& m, const Module<F>& n,
                                         std::uint64_t budget = 1u << 16) {
  std::vector<Module<F>> out;
  for_each_extension<F>(alg, m, n, [&](const Vec<F>&, const Module<F>& e) {
    for (const auto& seen : out)
      if (iso_test(alg, seen, e)) return;
    out.push_back(e);
  }, budget);
  return out;
}

}  // namespace cosilt
