#pragma once

// Finite-dimensional representations, homomorphisms between them, and the
// subspace bookkeeping (submodules, quotients, kernels) everything else is
// built from.

#include <numeric>
#include <string>
#include <vector>

#include "cosilt/algebra.hpp"
#include "cosilt/linalg.hpp"

namespace cosilt {

template <class F>
struct Module {
  std::vector<int> dims;
  std::vector<Mat<F>> action;  // per arrow, dims[target] x dims[source]

  int dimension() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  bool is_zero() const { return dimension() == 0; }
};

/// Homomorphism components, one dims_target[v] x dims_source[v] matrix per vertex.
template <class F>
struct ModMap {
  std::vector<Mat<F>> components;
};

template <class F>
struct Submodule {
  std::vector<Mat<F>> basis;  // per vertex, independent columns

  int dimension() const {
    int d = 0;
    for (const auto& b : basis) d += static_cast<int>(b.cols());
    return d;
  }
  std::vector<int> dims() const {
    std::vector<int> out;
    for (const auto& b : basis) out.push_back(static_cast<int>(b.cols()));
    return out;
  }
};

/// A module together with an embedding into an ambient module.
template <class F>
struct Embedded {
  Module<F> module;
  ModMap<F> inclusion;
};

/// A module together with a surjection onto it.
template <class F>
struct Quotient {
  Module<F> module;
  ModMap<F> projection;
};

template <class F>
struct DirectSum {
  Module<F> module;
  std::vector<ModMap<F>> inclusions;
  std::vector<ModMap<F>> projections;
};

// --- basic constructions ---------------------------------------------------

template <class F>
Module<F> zero_module(const Quiver& q) {
  Module<F> m;
  m.dims.assign(q.num_vertices(), 0);
  m.action.assign(q.num_arrows(), zeros<F>(0, 0));
  return m;
}

template <class F>
Mat<F> path_matrix(const Module<F>& m, int source, const std::vector<int>& arrows) {
  Mat<F> acc = identity<F>(m.dims[source]);
  for (int a : arrows) acc = mul(m.action[a], acc);
  return acc;
}

/// Matrix by which the basis element `b` of the algebra acts, from its source vertex to its target.
template <class F>
Mat<F> element_matrix(const Algebra<F>& alg, const Module<F>& m, int b) {
  const Path& p = alg.basis()[b];
  return path_matrix(m, p.source, p.arrows);
}

/// Checks matrix shapes and that every relation acts as zero.
template <class F>
void validate_module(const Algebra<F>& alg, const Module<F>& m) {
  const Quiver& q = alg.quiver();
  if (static_cast<int>(m.dims.size()) != q.num_vertices())
    throw InputError("module has " + std::to_string(m.dims.size()) + " vertex dimensions, quiver has " +
                     std::to_string(q.num_vertices()));
  if (static_cast<int>(m.action.size()) != q.num_arrows()) throw InputError("module action misses arrows");
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& mat = m.action[a];
    if (mat.rows() != m.dims[q.arrows[a].target] || mat.cols() != m.dims[q.arrows[a].source])
      throw InputError("matrix of arrow '" + q.arrows[a].name + "' has shape " + std::to_string(mat.rows()) + "x" +
                       std::to_string(mat.cols()) + ", expected " + std::to_string(m.dims[q.arrows[a].target]) + "x" +
                       std::to_string(m.dims[q.arrows[a].source]));
  }
  for (std::size_t r = 0; r < alg.relations().size(); ++r) {
    const auto& rel = alg.relations()[r];
    int s = q.arrows[rel.front().arrows.front()].source, t = q.arrows[rel.front().arrows.back()].target;
    Mat<F> total = zeros<F>(m.dims[t], m.dims[s]);
    for (const auto& term : rel) total += Mat<F>(path_matrix(m, s, term.arrows) * term.coeff);
    if (!is_zero(total)) throw InputError("module does not satisfy relation " + std::to_string(r));
  }
  // Paths at the nilpotency bound vanish in the algebra, so they must act as zero.
  for (std::size_t b = 0; b < alg.basis().size(); ++b)
    for (int a = 0; a < q.num_arrows(); ++a) {
      const Path& p = alg.basis()[b];
      if (p.length() + 1 != alg.spec().nilpotency_bound || q.arrows[a].source != p.target) continue;
      auto w = p.arrows;
      w.push_back(a);
      if (!is_zero(path_matrix(m, p.source, w)))
        throw InputError("module does not vanish on paths of length " + std::to_string(alg.spec().nilpotency_bound));
    }
}

template <class F>
ModMap<F> identity_map(const Module<F>& m) {
  ModMap<F> f;
  for (int d : m.dims) f.components.push_back(identity<F>(d));
  return f;
}

template <class F>
ModMap<F> zero_map(const Module<F>& source, const Module<F>& target) {
  ModMap<F> f;
  for (std::size_t v = 0; v < source.dims.size(); ++v) f.components.push_back(zeros<F>(target.dims[v], source.dims[v]));
  return f;
}

/// g after f.
template <class F>
ModMap<F> compose(const ModMap<F>& g, const ModMap<F>& f) {
  ModMap<F> h;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(mul(g.components[v], f.components[v]));
  return h;
}

template <class F>
ModMap<F> add(const ModMap<F>& f, const ModMap<F>& g) {
  ModMap<F> h = f;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components[v] += g.components[v];
  return h;
}

template <class F>
ModMap<F> scale(const ModMap<F>& f, const F& c) {
  ModMap<F> h = f;
  for (auto& m : h.components) m *= c;
  return h;
}

template <class F>
ModMap<F> subtract(const ModMap<F>& f, const ModMap<F>& g) {
  return add(f, scale(g, F(-1)));
}

template <class F>
bool is_zero_map(const ModMap<F>& f) {
  for (const auto& c : f.components)
    if (!is_zero(c)) return false;
  return true;
}

template <class F>
bool equal_maps(const ModMap<F>& f, const ModMap<F>& g) {
  for (std::size_t v = 0; v < f.components.size(); ++v)
    if (!equal(f.components[v], g.components[v])) return false;
  return true;
}

template <class F>
bool is_homomorphism(const Quiver& q, const Module<F>& m, const Module<F>& n, const ModMap<F>& f) {
  if (f.components.size() != m.dims.size()) return false;
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    if (f.components[v].rows() != n.dims[v] || f.components[v].cols() != m.dims[v]) return false;
  for (int a = 0; a < q.num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    if (!equal(mul(f.components[t], m.action[a]), mul(n.action[a], f.components[s]))) return false;
  }
  return true;
}

template <class F>
bool is_mono(const ModMap<F>& f) {
  for (const auto& c : f.components)
    if (rank(c) != c.cols()) return false;
  return true;
}

template <class F>
bool is_epi(const ModMap<F>& f) {
  for (const auto& c : f.components)
    if (rank(c) != c.rows()) return false;
  return true;
}

template <class F>
bool is_iso(const ModMap<F>& f) {
  for (const auto& c : f.components)
    if (!is_invertible(c)) return false;
  return true;
}

template <class F>
ModMap<F> inverse_map(const ModMap<F>& f) {
  ModMap<F> g;
  for (const auto& c : f.components) g.components.push_back(inverse(c));
  return g;
}

/// Concatenation of all component entries, vertex by vertex, row-major.
template <class F>
Vec<F> flatten(const ModMap<F>& f) {
  Index n = 0;
  for (const auto& c : f.components) n += c.size();
  Vec<F> out(n);
  Index k = 0;
  for (const auto& c : f.components)
    for (Index i = 0; i < c.rows(); ++i)
      for (Index j = 0; j < c.cols(); ++j) out(k++) = c(i, j);
  return out;
}

template <class F>
ModMap<F> unflatten(const Module<F>& source, const Module<F>& target, const Vec<F>& x) {
  ModMap<F> f;
  Index k = 0;
  for (std::size_t v = 0; v < source.dims.size(); ++v) {
    Mat<F> c(target.dims[v], source.dims[v]);
    for (Index i = 0; i < c.rows(); ++i)
      for (Index j = 0; j < c.cols(); ++j) c(i, j) = x(k++);
    f.components.push_back(std::move(c));
  }
  return f;
}

/// Columns are the flattened maps; its rank is the dimension of their span.
template <class F>
Mat<F> flatten_all(const std::vector<ModMap<F>>& maps, Index length) {
  Mat<F> m = zeros<F>(length, static_cast<Index>(maps.size()));
  for (std::size_t k = 0; k < maps.size(); ++k) m.col(static_cast<Index>(k)) = flatten(maps[k]);
  return m;
}

template <class F>
DirectSum<F> direct_sum(const Quiver& q, const std::vector<Module<F>>& parts) {
  DirectSum<F> out;
  int nv = q.num_vertices();
  out.module.dims.assign(nv, 0);
  for (const auto& p : parts)
    for (int v = 0; v < nv; ++v) out.module.dims[v] += p.dims[v];
  for (int a = 0; a < q.num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    Mat<F> m = zeros<F>(out.module.dims[t], out.module.dims[s]);
    Index rs = 0, cs = 0;
    for (const auto& p : parts) {
      m.block(rs, cs, p.dims[t], p.dims[s]) = p.action[a];
      rs += p.dims[t];
      cs += p.dims[s];
    }
    out.module.action.push_back(std::move(m));
  }
  std::vector<int> off(nv, 0);
  for (const auto& p : parts) {
    ModMap<F> inc, proj;
    for (int v = 0; v < nv; ++v) {
      Mat<F> i = zeros<F>(out.module.dims[v], p.dims[v]);
      i.block(off[v], 0, p.dims[v], p.dims[v]) = identity<F>(p.dims[v]);
      proj.components.push_back(Mat<F>(i.transpose()));
      inc.components.push_back(std::move(i));
      off[v] += p.dims[v];
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

/// Map out of a direct sum given by its restrictions to the summands.
template <class F>
ModMap<F> map_from_sum(const DirectSum<F>& sum, const std::vector<ModMap<F>>& pieces, const std::vector<int>& target_dims) {
  ModMap<F> f;
  for (std::size_t v = 0; v < sum.module.dims.size(); ++v) {
    Mat<F> c = zeros<F>(target_dims[v], sum.module.dims[v]);
    for (std::size_t k = 0; k < pieces.size(); ++k) c += mul(pieces[k].components[v], sum.projections[k].components[v]);
    f.components.push_back(std::move(c));
  }
  return f;
}

/// Map into a direct sum given by its components.
template <class F>
ModMap<F> map_into_sum(const DirectSum<F>& sum, const std::vector<ModMap<F>>& pieces, const std::vector<int>& source_dims) {
  ModMap<F> f;
  for (std::size_t v = 0; v < sum.module.dims.size(); ++v) {
    Mat<F> c = zeros<F>(sum.module.dims[v], source_dims[v]);
    for (std::size_t k = 0; k < pieces.size(); ++k) c += mul(sum.inclusions[k].components[v], pieces[k].components[v]);
    f.components.push_back(std::move(c));
  }
  return f;
}

// --- subspace families -----------------------------------------------------

template <class F>
Submodule<F> whole(const Module<F>& m) {
  Submodule<F> s;
  for (int d : m.dims) s.basis.push_back(identity<F>(d));
  return s;
}

template <class F>
Submodule<F> nothing(const Module<F>& m) {
  Submodule<F> s;
  for (int d : m.dims) s.basis.push_back(zeros<F>(d, 0));
  return s;
}

template <class F>
bool is_submodule(const Quiver& q, const Module<F>& m, const Submodule<F>& s) {
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!in_span(s.basis[q.arrows[a].target], mul(m.action[a], s.basis[q.arrows[a].source]))) return false;
  return true;
}

/// Smallest submodule containing the given per-vertex vectors.
template <class F>
Submodule<F> generated_submodule(const Quiver& q, const Module<F>& m, std::vector<Mat<F>> spans) {
  for (auto& s : spans) s = column_space(s);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < q.num_arrows(); ++a) {
      int s = q.arrows[a].source, t = q.arrows[a].target;
      Mat<F> img = mul(m.action[a], spans[s]);
      if (in_span(spans[t], img)) continue;
      spans[t] = column_space(hstack(spans[t], img));
      grew = true;
    }
  }
  return Submodule<F>{std::move(spans)};
}

template <class F>
Submodule<F> submodule_sum(const Submodule<F>& a, const Submodule<F>& b) {
  Submodule<F> s;
  for (std::size_t v = 0; v < a.basis.size(); ++v) s.basis.push_back(column_space(hstack(a.basis[v], b.basis[v])));
  return s;
}

template <class F>
Submodule<F> submodule_intersection(const Submodule<F>& a, const Submodule<F>& b) {
  Submodule<F> s;
  for (std::size_t v = 0; v < a.basis.size(); ++v) s.basis.push_back(intersect(a.basis[v], b.basis[v]));
  return s;
}

template <class F>
bool contains(const Submodule<F>& big, const Submodule<F>& small) {
  for (std::size_t v = 0; v < big.basis.size(); ++v)
    if (!in_span(big.basis[v], small.basis[v])) return false;
  return true;
}

template <class F>
bool same_submodule(const Submodule<F>& a, const Submodule<F>& b) {
  return a.dims() == b.dims() && contains(a, b);
}

/// The submodule as a module in its own right, with its inclusion.
template <class F>
Embedded<F> realize(const Quiver& q, const Module<F>& m, const Submodule<F>& s) {
  Embedded<F> out;
  out.module.dims = s.dims();
  for (int a = 0; a < q.num_arrows(); ++a) {
    int src = q.arrows[a].source, tgt = q.arrows[a].target;
    auto x = solve_matrix(s.basis[tgt], mul(m.action[a], s.basis[src]));
    if (!x) throw ConsistencyError("realize: subspace family is not closed under arrow '" + q.arrows[a].name + "'");
    out.module.action.push_back(std::move(*x));
  }
  out.inclusion.components = s.basis;
  return out;
}

template <class F>
Quotient<F> quotient(const Quiver& q, const Module<F>& m, const Submodule<F>& s) {
  Quotient<F> out;
  std::vector<Mat<F>> lift;  // complement basis, i.e. a section of the projection
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Mat<F> c = complement(s.basis[v]);
    Mat<F> t = hstack(s.basis[v], c);
    Mat<F> inv = inverse(t);
    out.projection.components.push_back(inv.bottomRows(c.cols()));
    out.module.dims.push_back(static_cast<int>(c.cols()));
    lift.push_back(std::move(c));
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    int src = q.arrows[a].source, tgt = q.arrows[a].target;
    out.module.action.push_back(mul(out.projection.components[tgt], mul(m.action[a], lift[src])));
  }
  return out;
}

template <class F>
Submodule<F> kernel_of(const ModMap<F>& f) {
  Submodule<F> s;
  for (const auto& c : f.components) s.basis.push_back(kernel_basis(c));
  return s;
}

template <class F>
Submodule<F> image_of(const ModMap<F>& f) {
  Submodule<F> s;
  for (const auto& c : f.components) s.basis.push_back(column_space(c));
  return s;
}

/// Image of a submodule under a homomorphism.
template <class F>
Submodule<F> image_of(const ModMap<F>& f, const Submodule<F>& s) {
  Submodule<F> out;
  for (std::size_t v = 0; v < s.basis.size(); ++v) out.basis.push_back(column_space(mul(f.components[v], s.basis[v])));
  return out;
}

/// Restriction of f to a submodule of its source, expressed on the submodule basis.
template <class F>
ModMap<F> restrict_map(const ModMap<F>& f, const Embedded<F>& sub) {
  return compose(f, sub.inclusion);
}

/// The unique g with f = incl o g, for f landing inside the embedded submodule.
template <class F>
ModMap<F> corestrict(const ModMap<F>& f, const Embedded<F>& sub) {
  ModMap<F> g;
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    auto x = solve_matrix(sub.inclusion.components[v], f.components[v]);
    if (!x) throw ConsistencyError("corestrict: map does not land in the submodule");
    g.components.push_back(std::move(*x));
  }
  return g;
}

/// The unique g with g o proj = f, for f vanishing on the kernel of the projection.
template <class F>
ModMap<F> factor_through_quotient(const ModMap<F>& f, const Quotient<F>& quo) {
  ModMap<F> g;
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    auto x = solve_matrix(Mat<F>(quo.projection.components[v].transpose()), Mat<F>(f.components[v].transpose()));
    if (!x) throw ConsistencyError("factor_through_quotient: map does not vanish on the kernel");
    g.components.push_back(Mat<F>(x->transpose()));
  }
  return g;
}

// --- standard modules ------------------------------------------------------

enum class StdKind { projective, injective, simple };

inline std::string to_string(StdKind k) {
  switch (k) {
    case StdKind::projective: return "projective";
    case StdKind::injective: return "injective";
    case StdKind::simple: return "simple";
  }
  return "?";
}

/// P_v (paths starting at v), I_v (dual of paths ending at v) or S_v.
template <class F>
Module<F> std_module(const Algebra<F>& alg, StdKind kind, int v) {
  const Quiver& q = alg.quiver();
  if (v < 0 || v >= q.num_vertices()) throw InputError("unknown vertex index " + std::to_string(v));
  Module<F> m;
  int nv = q.num_vertices();
  m.dims.assign(nv, 0);
  switch (kind) {
    case StdKind::simple:
      m.dims[v] = 1;
      for (const auto& a : q.arrows) m.action.push_back(zeros<F>(m.dims[a.target], m.dims[a.source]));
      return m;
    case StdKind::projective:
      for (int w = 0; w < nv; ++w) m.dims[w] = static_cast<int>(alg.paths_between(v, w).size());
      for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        Mat<F> mat = zeros<F>(m.dims[t], m.dims[s]);
        for (int p : alg.paths_between(v, s))
          for (const auto& [b, c] : alg.product(p, alg.arrow_element(a))) mat(alg.block_position(b), alg.block_position(p)) += c;
        m.action.push_back(std::move(mat));
      }
      return m;
    case StdKind::injective:
      for (int w = 0; w < nv; ++w) m.dims[w] = static_cast<int>(alg.paths_between(w, v).size());
      for (int a = 0; a < q.num_arrows(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        Mat<F> mat = zeros<F>(m.dims[t], m.dims[s]);
        // (a . phi)(q) = phi(a q) for q a path from t to v.
        for (int qq : alg.paths_between(t, v))
          for (const auto& [b, c] : alg.product(alg.arrow_element(a), qq)) mat(alg.block_position(qq), alg.block_position(b)) += c;
        m.action.push_back(std::move(mat));
      }
      return m;
  }
  return m;
}

template <class F>
Module<F> projective(const Algebra<F>& alg, int v) {
  return std_module(alg, StdKind::projective, v);
}
template <class F>
Module<F> injective(const Algebra<F>& alg, int v) {
  return std_module(alg, StdKind::injective, v);
}
template <class F>
Module<F> simple(const Algebra<F>& alg, int v) {
  return std_module(alg, StdKind::simple, v);
}

// --- radical, socle, top ---------------------------------------------------

/// Image of the arrow ideal.
template <class F>
Submodule<F> radical(const Quiver& q, const Module<F>& m) {
  std::vector<Mat<F>> spans;
  for (int d : m.dims) spans.push_back(zeros<F>(d, 0));
  for (int a = 0; a < q.num_arrows(); ++a) spans[q.arrows[a].target] = hstack(spans[q.arrows[a].target], m.action[a]);
  Submodule<F> s;
  for (auto& sp : spans) s.basis.push_back(column_space(sp));
  return s;
}

/// Vectors killed by every arrow.
template <class F>
Submodule<F> socle(const Quiver& q, const Module<F>& m) {
  Submodule<F> s;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Mat<F> stacked = zeros<F>(0, m.dims[v]);
    for (int a = 0; a < q.num_arrows(); ++a)
      if (q.arrows[a].source == v) stacked = vstack(stacked, m.action[a]);
    s.basis.push_back(kernel_basis(stacked));
  }
  return s;
}

template <class F>
struct RadicalSocleTop {
  Submodule<F> radical;
  Submodule<F> socle;
  Quotient<F> top;
};

template <class F>
RadicalSocleTop<F> module_radical_socle_top(const Algebra<F>& alg, const Module<F>& m) {
  auto rad = radical(alg.quiver(), m);
  auto top = quotient(alg.quiver(), m, rad);
  return {std::move(rad), socle(alg.quiver(), m), std::move(top)};
}

}  // namespace cosilt
