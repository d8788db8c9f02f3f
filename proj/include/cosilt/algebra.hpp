#pragma once

// Bound quiver algebras kQ/I. Paths compose left to right: the path
// [a, b] runs along a first, then b. Representations are covariant, so an
// arrow a: i -> j acts by a dim(j) x dim(i) matrix and [a, b] acts by B * A.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cosilt/errors.hpp"
#include "cosilt/linalg.hpp"

namespace cosilt {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  std::optional<int> find_vertex(std::string_view name) const {
    for (int v = 0; v < num_vertices(); ++v)
      if (vertices[v] == name) return v;
    return std::nullopt;
  }
  int vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw InputError("unknown vertex '" + std::string(name) + "'");
  }
  int arrow(std::string_view name) const {
    for (int a = 0; a < num_arrows(); ++a)
      if (arrows[a].name == name) return a;
    throw InputError("unknown arrow '" + std::string(name) + "'");
  }
};

template <class F>
struct PathTerm {
  F coeff;
  std::vector<int> arrows;
};

template <class F>
using Relation = std::vector<PathTerm<F>>;

template <class F>
struct QuiverSpec {
  Quiver quiver;
  std::vector<Relation<F>> relations;
  int nilpotency_bound = 2;
};

struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  int length() const { return static_cast<int>(arrows.size()); }
};

/// Sparse linear combination of basis elements.
template <class F>
using LinComb = std::vector<std::pair<int, F>>;

template <class F>
class Algebra {
 public:
  explicit Algebra(QuiverSpec<F> spec);

  const Quiver& quiver() const { return spec_.quiver; }
  const QuiverSpec<F>& spec() const { return spec_; }
  const std::vector<Relation<F>>& relations() const { return spec_.relations; }
  int num_vertices() const { return quiver().num_vertices(); }
  int num_arrows() const { return quiver().num_arrows(); }

  const std::vector<Path>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int idempotent(int v) const { return idempotent_[v]; }
  int arrow_element(int a) const { return arrow_element_[a]; }

  /// Basis indices of the paths from u to v, in basis order.
  const std::vector<int>& paths_between(int u, int v) const { return between_[u][v]; }
  /// Position of a basis element inside paths_between(source, target).
  int block_position(int basis_index) const { return block_position_[basis_index]; }

  /// basis[i] followed by basis[j].
  const LinComb<F>& product(int i, int j) const { return product_[i][j]; }

  /// Normal form of an arbitrary composable arrow word starting at `source`.
  LinComb<F> reduce(int source, const std::vector<int>& arrows) const;

  std::string path_name(int basis_index) const;

 private:
  struct Key {
    int source;
    std::vector<int> arrows;
    auto operator<=>(const Key&) const = default;
  };

  bool word_less(const std::vector<int>& a, const std::vector<int>& b) const;

  QuiverSpec<F> spec_;
  std::vector<Path> basis_;
  std::vector<int> idempotent_;
  std::vector<int> arrow_element_;
  std::vector<std::vector<std::vector<int>>> between_;
  std::vector<int> block_position_;
  std::vector<std::vector<LinComb<F>>> product_;
  std::map<Key, LinComb<F>> normal_form_;
};

template <class F>
Algebra<F> build_algebra(QuiverSpec<F> spec) {
  return Algebra<F>(std::move(spec));
}

// ---------------------------------------------------------------------------

template <class F>
bool Algebra<F>::word_less(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& na = quiver().arrows[a[i]].name;
    const auto& nb = quiver().arrows[b[i]].name;
    if (na != nb) return na < nb;
  }
  return false;
}

template <class F>
std::string Algebra<F>::path_name(int basis_index) const {
  const Path& p = basis_[basis_index];
  if (p.arrows.empty()) return "e" + quiver().vertices[p.source];
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += ".";
    s += quiver().arrows[p.arrows[i]].name;
  }
  return s;
}

template <class F>
Algebra<F>::Algebra(QuiverSpec<F> spec) : spec_(std::move(spec)) {
  const Quiver& q = spec_.quiver;
  const int n = q.num_vertices();
  const int bound = spec_.nilpotency_bound;
  if (n == 0) throw InputError("quiver has no vertices");
  if (bound < 2) throw InputError("nilpotency_bound must be at least 2");
  for (const auto& a : q.arrows)
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
      throw InputError("arrow '" + a.name + "' has an undeclared endpoint");

  auto word_name = [&](const std::vector<int>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + q.arrows[w[i]].name;
    return s;
  };

  // Admissibility: composable terms of length >= 2 with shared endpoints.
  std::vector<std::pair<int, int>> rel_ends;
  for (std::size_t r = 0; r < spec_.relations.size(); ++r) {
    auto& rel = spec_.relations[r];
    std::erase_if(rel, [](const PathTerm<F>& t) { return t.coeff.is_zero(); });
    if (rel.empty()) throw InputError("relation " + std::to_string(r) + " has no nonzero term");
    int s = -1, t = -1;
    for (const auto& term : rel) {
      if (term.arrows.size() < 2)
        throw InputError("relation " + std::to_string(r) + " is not admissible: term '" + word_name(term.arrows) +
                         "' has length < 2");
      for (std::size_t i = 0; i + 1 < term.arrows.size(); ++i)
        if (q.arrows[term.arrows[i]].target != q.arrows[term.arrows[i + 1]].source)
          throw InputError("relation " + std::to_string(r) + ": path '" + word_name(term.arrows) +
                           "' is not composable");
      int ts = q.arrows[term.arrows.front()].source, tt = q.arrows[term.arrows.back()].target;
      if (s < 0) {
        s = ts;
        t = tt;
      } else if (s != ts || t != tt) {
        throw InputError("relation " + std::to_string(r) + " is not admissible: terms have different endpoints");
      }
    }
    rel_ends.emplace_back(s, t);
  }

  // All paths of length <= bound, grouped by endpoints.
  std::vector<std::vector<std::vector<Key>>> words(n, std::vector<std::vector<Key>>(n));
  std::vector<Key> frontier;
  for (int v = 0; v < n; ++v) {
    words[v][v].push_back({v, {}});
    frontier.push_back({v, {}});
  }
  auto end_of = [&](const Key& k) { return k.arrows.empty() ? k.source : q.arrows[k.arrows.back()].target; };
  for (int len = 1; len <= bound; ++len) {
    std::vector<Key> next;
    for (const Key& k : frontier)
      for (int a = 0; a < q.num_arrows(); ++a)
        if (q.arrows[a].source == end_of(k)) {
          Key w = k;
          w.arrows.push_back(a);
          words[w.source][q.arrows[a].target].push_back(w);
          next.push_back(std::move(w));
        }
    frontier = std::move(next);
    if (frontier.size() > 200000) throw BudgetError("path enumeration exceeds 200000 paths below the nilpotency bound");
  }

  // Ideal generators u * rel * v, truncated above the bound, per block.
  // Columns are sorted in decreasing rewriting order so pivots are leading terms.
  std::vector<std::vector<std::vector<Key>>> columns(n, std::vector<std::vector<Key>>(n));
  std::vector<std::vector<std::map<Key, Index>>> column_of(n, std::vector<std::map<Key, Index>>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto cols = words[u][v];
      std::sort(cols.begin(), cols.end(), [&](const Key& a, const Key& b) { return word_less(b.arrows, a.arrows); });
      for (std::size_t i = 0; i < cols.size(); ++i) column_of[u][v][cols[i]] = static_cast<Index>(i);
      columns[u][v] = std::move(cols);
    }
  std::vector<std::vector<std::vector<std::vector<std::pair<Index, F>>>>> generators(
      n, std::vector<std::vector<std::vector<std::pair<Index, F>>>>(n));
  for (std::size_t r = 0; r < spec_.relations.size(); ++r) {
    auto [s, t] = rel_ends[r];
    for (int x = 0; x < n; ++x)
      for (const Key& left : words[x][s])
        for (int y = 0; y < n; ++y)
          for (const Key& right : words[t][y]) {
            std::vector<std::pair<Index, F>> row;
            for (const auto& term : spec_.relations[r]) {
              Key w{x, left.arrows};
              w.arrows.insert(w.arrows.end(), term.arrows.begin(), term.arrows.end());
              w.arrows.insert(w.arrows.end(), right.arrows.begin(), right.arrows.end());
              if (static_cast<int>(w.arrows.size()) > bound) continue;
              row.emplace_back(column_of[x][y].at(w), term.coeff);
            }
            if (!row.empty()) generators[x][y].push_back(std::move(row));
          }
  }

  // Pivot (leading) words are rewritten; the rest form the basis.
  std::vector<std::vector<RowEchelon<F>>> echelon(n, std::vector<RowEchelon<F>>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& gens = generators[u][v];
      Mat<F> m = zeros<F>(static_cast<Index>(gens.size()), static_cast<Index>(columns[u][v].size()));
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& [c, coeff] : gens[i]) m(static_cast<Index>(i), c) += coeff;
      echelon[u][v] = rref(std::move(m));
    }

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& e = echelon[u][v];
      std::vector<bool> pivot(columns[u][v].size(), false);
      for (Index p : e.pivots) pivot[p] = true;
      for (std::size_t c = 0; c < columns[u][v].size(); ++c) {
        const Key& w = columns[u][v][c];
        if (static_cast<int>(w.arrows.size()) != bound) continue;
        bool zero = pivot[c];
        if (zero) {
          Index row = std::find(e.pivots.begin(), e.pivots.end(), static_cast<Index>(c)) - e.pivots.begin();
          for (Index j = 0; j < e.reduced.cols(); ++j)
            if (j != static_cast<Index>(c) && !e.reduced(row, j).is_zero()) zero = false;
        }
        if (!zero)
          throw InputError("nilpotency_bound " + std::to_string(bound) + " is insufficient: path '" +
                           word_name(w.arrows) + "' of that length does not reduce to zero");
      }
      for (std::size_t c = 0; c < columns[u][v].size(); ++c)
        if (!pivot[c]) basis_.push_back(Path{u, v, columns[u][v][c].arrows});
    }

  std::sort(basis_.begin(), basis_.end(), [&](const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return word_less(a.arrows, b.arrows);
  });

  std::map<Key, int> basis_index;
  for (std::size_t i = 0; i < basis_.size(); ++i) basis_index[{basis_[i].source, basis_[i].arrows}] = static_cast<int>(i);

  idempotent_.resize(n);
  for (int v = 0; v < n; ++v) idempotent_[v] = basis_index.at({v, {}});
  arrow_element_.resize(q.num_arrows());
  for (int a = 0; a < q.num_arrows(); ++a) arrow_element_[a] = basis_index.at({q.arrows[a].source, {a}});

  between_.assign(n, std::vector<std::vector<int>>(n));
  block_position_.assign(basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto& blk = between_[basis_[i].source][basis_[i].target];
    block_position_[i] = static_cast<int>(blk.size());
    blk.push_back(static_cast<int>(i));
  }

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& e = echelon[u][v];
      std::map<Index, Index> row_of_pivot;
      for (Index r = 0; r < e.rank(); ++r) row_of_pivot[e.pivots[r]] = r;
      for (std::size_t c = 0; c < columns[u][v].size(); ++c) {
        const Key& w = columns[u][v][c];
        LinComb<F> nf;
        auto it = row_of_pivot.find(static_cast<Index>(c));
        if (it == row_of_pivot.end()) {
          nf.emplace_back(basis_index.at(w), F(1));
        } else {
          for (Index j = 0; j < e.reduced.cols(); ++j) {
            const F& x = e.reduced(it->second, j);
            if (j == static_cast<Index>(c) || x.is_zero()) continue;
            nf.emplace_back(basis_index.at(columns[u][v][j]), -x);
          }
        }
        normal_form_[w] = std::move(nf);
      }
    }

  product_.assign(basis_.size(), std::vector<LinComb<F>>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (basis_[i].target == basis_[j].source) {
        std::vector<int> w = basis_[i].arrows;
        w.insert(w.end(), basis_[j].arrows.begin(), basis_[j].arrows.end());
        product_[i][j] = reduce(basis_[i].source, w);
      }
}

template <class F>
LinComb<F> Algebra<F>::reduce(int source, const std::vector<int>& arrows) const {
  if (static_cast<int>(arrows.size()) > spec_.nilpotency_bound) return {};
  auto it = normal_form_.find(Key{source, arrows});
  if (it == normal_form_.end()) throw InputError("reduce: word is not a composable path from the given vertex");
  return it->second;
}

}  // namespace cosilt
