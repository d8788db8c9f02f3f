#pragma once

// Finite lists of indecomposable modules with cached Hom, Ext^1 and translate tables.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cosilt/twoterm.hpp"

namespace cosilt {

enum class Completeness { builtin, user_asserted, none };

inline std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::builtin:
      return "built-in";
    case Completeness::user_asserted:
      return "user-asserted";
    case Completeness::none:
      return "not declared";
  }
  return "";
}

constexpr int kZero = -1;     // translate is the zero module
constexpr int kMissing = -2;  // not isomorphic to any member

/// An explicit catalog entry that turned out to be decomposable.
class DecomposableEntryError : public InputError {
 public:
  DecomposableEntryError(int entry, std::vector<std::vector<int>> summands)
      : InputError(message(entry, summands)), entry(entry), summands(std::move(summands)) {}

  int entry;
  std::vector<std::vector<int>> summands;  // dimension vectors

 private:
  static std::string message(int entry, const std::vector<std::vector<int>>& summands) {
    std::string s = "catalog entry " + std::to_string(entry) + " is decomposable into " + std::to_string(summands.size()) +
                    " summands with dimension vectors";
    for (const auto& d : summands) {
      s += " (";
      for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
      s += ")";
    }
    return s;
  }
};

template <class F>
struct Catalog {
  std::shared_ptr<const Algebra<F>> algebra;
  std::vector<Module<F>> members;
  std::vector<std::string> names;
  Completeness completeness = Completeness::none;
  std::string family;

  std::vector<std::vector<int>> hom, ext;
  std::vector<int> tau, tau_minus;
  std::vector<int> projective_index, injective_index, simple_index;  // per vertex
  std::vector<bool> brick;
  std::vector<int> radical_dim;  // dim Rad End
  std::vector<TwoTermComplex<F>> mu;
  std::vector<std::vector<int>> shift_hom;  // dim Hom(mu_i, mu_j[1])

  int size() const { return static_cast<int>(members.size()); }
  bool complete() const { return completeness != Completeness::none; }
  const Algebra<F>& alg() const { return *algebra; }
};

template <class F>
std::optional<int> find_member(const Catalog<F>& cat, const Module<F>& m) {
  if (m.is_zero()) return std::nullopt;
  for (int i = 0; i < cat.size(); ++i)
    if (cat.members[i].dims == m.dims && iso_test(cat.alg(), cat.members[i], m)) return i;
  return std::nullopt;
}

namespace detail {

template <class F>
int translate_index(const Catalog<F>& cat, const Module<F>& m) {
  if (m.is_zero()) return kZero;
  auto i = find_member(cat, m);
  return i ? *i : kMissing;
}

template <class F>
std::string member_name(const Catalog<F>& cat, int i) {
  const Quiver& q = cat.alg().quiver();
  for (int v = 0; v < q.num_vertices(); ++v)
    if (cat.simple_index[v] == i) return "S" + q.vertices[v];
  for (int v = 0; v < q.num_vertices(); ++v)
    if (cat.projective_index[v] == i) return "P" + q.vertices[v];
  for (int v = 0; v < q.num_vertices(); ++v)
    if (cat.injective_index[v] == i) return "I" + q.vertices[v];
  std::string s = "M(";
  const auto& d = cat.members[i].dims;
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
  return s + ")";
}

/// Sorts by total dimension, then dimension vector; ties keep their order.
template <class F>
void sort_members(std::vector<Module<F>>& ms) {
  std::stable_sort(ms.begin(), ms.end(), [](const Module<F>& a, const Module<F>& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.dims < b.dims;
  });
}

template <class F>
void add_unique(const Algebra<F>& alg, std::vector<Module<F>>& ms, const Module<F>& m) {
  for (const auto& x : ms)
    if (x.dims == m.dims && iso_test(alg, x, m)) return;
  ms.push_back(m);
}

}  // namespace detail

/// Fills every table from the members. Running it twice gives the same tables.
template <class F>
void fill_tables(Catalog<F>& cat) {
  const Algebra<F>& alg = cat.alg();
  int n = cat.size(), nv = alg.num_vertices();
  cat.hom.assign(n, std::vector<int>(n, 0));
  cat.ext.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cat.hom[i][j] = hom_dim(alg, cat.members[i], cat.members[j]);
      cat.ext[i][j] = ext1_dim(alg, cat.members[i], cat.members[j]);
    }
  cat.projective_index.assign(nv, kMissing);
  cat.injective_index.assign(nv, kMissing);
  cat.simple_index.assign(nv, kMissing);
  for (int v = 0; v < nv; ++v) {
    cat.projective_index[v] = detail::translate_index(cat, projective(alg, v));
    cat.injective_index[v] = detail::translate_index(cat, injective(alg, v));
    cat.simple_index[v] = detail::translate_index(cat, simple(alg, v));
  }
  cat.tau.assign(n, kZero);
  cat.tau_minus.assign(n, kZero);
  cat.brick.assign(n, false);
  cat.radical_dim.assign(n, 0);
  cat.mu.clear();
  for (int i = 0; i < n; ++i) {
    cat.tau[i] = detail::translate_index(cat, tau(alg, cat.members[i]));
    cat.tau_minus[i] = detail::translate_index(cat, tau_inverse(alg, cat.members[i]));
    auto e = end_algebra(alg, cat.members[i]);
    if (!e.is_local) throw ConsistencyError("catalog member " + std::to_string(i) + " has a non-local endomorphism ring");
    cat.radical_dim[i] = static_cast<int>(e.radical.size());
    cat.brick[i] = e.radical.empty();
    cat.mu.push_back(mu(alg, cat.members[i]));
  }
  cat.shift_hom.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cat.shift_hom[i][j] = hom_derived_shift(alg, cat.mu[i], cat.mu[j]);
  cat.names.clear();
  std::map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    std::string s = detail::member_name(cat, i);
    int k = ++seen[s];
    cat.names.push_back(k == 1 ? s : s + "_" + std::to_string(k));
  }
}

template <class F>
Catalog<F> make_catalog(std::shared_ptr<const Algebra<F>> alg, std::vector<Module<F>> members, Completeness c,
                        std::string family) {
  detail::sort_members(members);
  Catalog<F> cat;
  cat.algebra = std::move(alg);
  cat.members = std::move(members);
  cat.completeness = c;
  cat.family = std::move(family);
  fill_tables(cat);
  return cat;
}

// --- hereditary Dynkin -----------------------------------------------------

/// Dynkin type of each connected component of the underlying graph, e.g. "A3", "D4";
/// std::nullopt if some component is not Dynkin.
inline std::optional<std::vector<std::string>> dynkin_types(const Quiver& q) {
  int n = q.num_vertices();
  std::vector<std::vector<int>> adj(n);
  std::set<std::pair<int, int>> edges;
  for (const auto& a : q.arrows) {
    if (a.source == a.target) return std::nullopt;
    auto e = std::minmax(a.source, a.target);
    if (!edges.insert(e).second) return std::nullopt;
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::string> types;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> verts{s};
    comp[s] = s;
    for (std::size_t h = 0; h < verts.size(); ++h)
      for (int w : adj[verts[h]])
        if (comp[w] < 0) {
          comp[w] = s;
          verts.push_back(w);
        }
    int nedges = 0;
    for (int v : verts) nedges += static_cast<int>(adj[v].size());
    nedges /= 2;
    int size = static_cast<int>(verts.size());
    if (nedges != size - 1) return std::nullopt;
    std::vector<int> branch;
    for (int v : verts) {
      if (adj[v].size() > 3) return std::nullopt;
      if (adj[v].size() == 3) branch.push_back(v);
    }
    if (branch.empty()) {
      types.push_back("A" + std::to_string(size));
      continue;
    }
    if (branch.size() > 1) return std::nullopt;
    std::vector<int> arms;
    for (int w : adj[branch[0]]) {
      int len = 1, prev = branch[0], cur = w;
      while (adj[cur].size() == 2) {
        int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1)
      types.push_back("D" + std::to_string(size));
    else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4)
      types.push_back("E" + std::to_string(size));
    else
      return std::nullopt;
  }
  return types;
}

/// All indecomposables of a Dynkin path algebra, by applying tau^- to the projectives.
template <class F>
Catalog<F> build_hereditary(std::shared_ptr<const Algebra<F>> alg) {
  if (!alg->relations().empty()) throw InputError("build_hereditary: the algebra has relations");
  auto types = dynkin_types(alg->quiver());
  if (!types) throw RepresentationInfiniteError("hereditary algebra whose underlying graph is not Dynkin is representation-infinite");
  std::vector<Module<F>> found;
  for (int v = 0; v < alg->num_vertices(); ++v) detail::add_unique(*alg, found, projective(*alg, v));
  for (std::size_t h = 0; h < found.size(); ++h) {
    Module<F> next = tau_inverse(*alg, found[h]);
    if (next.is_zero()) continue;
    if (!is_indecomposable(*alg, next)) throw ConsistencyError("tau^- of an indecomposable is decomposable");
    detail::add_unique(*alg, found, next);
  }
  std::string family = "hereditary";
  for (const auto& t : *types) family += " " + t;
  return make_catalog(std::move(alg), std::move(found), Completeness::builtin, family);
}

// --- Nakayama --------------------------------------------------------------

template <class F>
Submodule<F> radical_power(const Algebra<F>& alg, const Module<F>& m, int j) {
  const Quiver& q = alg.quiver();
  Submodule<F> u = whole(m);
  for (int step = 0; step < j; ++step) {
    std::vector<Mat<F>> spans;
    for (int v = 0; v < q.num_vertices(); ++v) spans.push_back(zeros<F>(m.dims[v], 0));
    for (int a = 0; a < q.num_arrows(); ++a) {
      int t = q.arrows[a].target;
      spans[t] = hstack(spans[t], Mat<F>(m.action[a] * u.basis[q.arrows[a].source]));
    }
    u = generated_submodule(q, m, std::move(spans));
  }
  return u;
}

/// Interval modules P_i / rad^j P_i of an algebra whose quiver is a union of lines and cycles.
template <class F>
Catalog<F> build_nakayama(std::shared_ptr<const Algebra<F>> alg) {
  const Quiver& q = alg->quiver();
  std::vector<int> in(q.num_vertices(), 0), out(q.num_vertices(), 0);
  for (const auto& a : q.arrows) {
    ++out[a.source];
    ++in[a.target];
  }
  for (int v = 0; v < q.num_vertices(); ++v)
    if (in[v] > 1 || out[v] > 1)
      throw InputError("build_nakayama: vertex '" + q.vertices[v] + "' has more than one incoming or outgoing arrow");
  for (const auto& r : alg->relations())
    if (r.size() != 1) throw InputError("build_nakayama: relations must be monomial");
  std::vector<Module<F>> found;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Module<F> p = projective(*alg, v);
    for (int j = 1;; ++j) {
      detail::add_unique(*alg, found, quotient(q, p, radical_power(*alg, p, j)).module);
      if (radical_power(*alg, p, j).dimension() == 0) break;
    }
  }
  return make_catalog(std::move(alg), std::move(found), Completeness::builtin, "nakayama");
}

// --- explicit lists --------------------------------------------------------

template <class F>
Catalog<F> build_explicit(std::shared_ptr<const Algebra<F>> alg, const std::vector<Module<F>>& modules, bool assert_complete) {
  std::vector<Module<F>> found;
  for (std::size_t k = 0; k < modules.size(); ++k) {
    validate_module(*alg, modules[k]);
    if (modules[k].is_zero()) throw InputError("catalog entry " + std::to_string(k) + " is the zero module");
    auto d = decompose(*alg, modules[k]);
    if (d.pieces.size() > 1) {
      std::vector<std::vector<int>> dims;
      for (const auto& p : d.pieces) dims.push_back(p.module.dims);
      throw DecomposableEntryError(static_cast<int>(k), std::move(dims));
    }
    detail::add_unique(*alg, found, modules[k]);
  }
  return make_catalog(std::move(alg), std::move(found), assert_complete ? Completeness::user_asserted : Completeness::none,
                      "explicit");
}

}  // namespace cosilt
