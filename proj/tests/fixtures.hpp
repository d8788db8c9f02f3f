#pragma once

// Small algebras used across the test suites.

#include <string>
#include <vector>

#include "cosilt/algebra.hpp"
#include "cosilt/module.hpp"

namespace fixtures {

using namespace cosilt;

/// Linear A_n: 1 -> 2 -> ... -> n, no relations.
template <class F>
QuiverSpec<F> linear_a(int n) {
  QuiverSpec<F> s;
  for (int v = 1; v <= n; ++v) s.quiver.vertices.push_back(std::to_string(v));
  for (int v = 0; v + 1 < n; ++v) s.quiver.arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
  s.nilpotency_bound = n + 1 > 2 ? n + 1 : 2;
  return s;
}

/// A_3 with orientation 1 -> 2 <- 3.
template <class F>
QuiverSpec<F> a3_sink() {
  QuiverSpec<F> s;
  s.quiver.vertices = {"1", "2", "3"};
  s.quiver.arrows = {{"a", 0, 1}, {"b", 2, 1}};
  s.nilpotency_bound = 3;
  return s;
}

/// k[x]/(x^n).
template <class F>
QuiverSpec<F> truncated_loop(int n) {
  QuiverSpec<F> s;
  s.quiver.vertices = {"1"};
  s.quiver.arrows = {{"x", 0, 0}};
  s.relations.push_back({PathTerm<F>{F(1), std::vector<int>(n, 0)}});
  s.nilpotency_bound = n + 1;
  return s;
}

template <class F>
QuiverSpec<F> point() {
  QuiverSpec<F> s;
  s.quiver.vertices = {"1"};
  s.nilpotency_bound = 2;
  return s;
}

/// 1 -a-> 2 -b-> 3 with ab = 0.
template <class F>
QuiverSpec<F> a3_zero_relation() {
  QuiverSpec<F> s = linear_a<F>(3);
  s.relations.push_back({PathTerm<F>{F(1), {0, 1}}});
  return s;
}

/// Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with ab = cd.
template <class F>
QuiverSpec<F> commutative_square() {
  QuiverSpec<F> s;
  s.quiver.vertices = {"1", "2", "3", "4"};
  s.quiver.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
  s.relations.push_back({PathTerm<F>{F(1), {0, 1}}, PathTerm<F>{F(-1), {2, 3}}});
  s.nilpotency_bound = 3;
  return s;
}

template <class F>
Module<F> module_from(const Quiver& q, std::vector<int> dims, std::vector<std::vector<std::vector<long long>>> mats) {
  Module<F> m;
  m.dims = std::move(dims);
  for (int a = 0; a < q.num_arrows(); ++a) {
    int r = m.dims[q.arrows[a].target], c = m.dims[q.arrows[a].source];
    Mat<F> x = zeros<F>(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) x(i, j) = F(mats[a][i][j]);
    m.action.push_back(std::move(x));
  }
  return m;
}

}  // namespace fixtures
