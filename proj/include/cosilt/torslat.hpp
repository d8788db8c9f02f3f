#pragma once

// Torsion pairs over a complete catalog, encoded as bitmasks of member indices.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosilt/catalog.hpp"

namespace cosilt {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask(1) << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline int mask_size(Mask m) { return std::popcount(m); }
inline Mask all_members(int n) { return n >= 64 ? ~Mask(0) : bit(n) - 1; }

inline std::vector<int> members_of(Mask m) {
  std::vector<int> out;
  for (int i = 0; m >> i; ++i)
    if (has(m, i)) out.push_back(i);
  return out;
}

/// Summand classes of a proper nonzero submodule U of a member and of the quotient by U.
struct SubEntry {
  Mask sub = 0, quot = 0;
  bool operator<(const SubEntry& o) const { return std::pair(sub, quot) < std::pair(o.sub, o.quot); }
  bool operator==(const SubEntry& o) const = default;
};

struct SubTable {
  std::vector<std::vector<SubEntry>> entries;  // per member
};

template <class F>
Mask summand_mask(const Catalog<F>& cat, const Module<F>& m) {
  Mask out = 0;
  if (m.is_zero()) return out;
  auto d = decompose(cat.alg(), m);
  for (int c = 0; c < d.num_classes(); ++c) {
    auto i = find_member(cat, d.pieces[d.representative[c]].module);
    if (!i) throw ConsistencyError("a summand of a subquotient of a member is missing from the catalog");
    out |= bit(*i);
  }
  return out;
}

template <class F>
SubTable sub_table(const Catalog<F>& cat, std::uint64_t submodule_budget = 1u << 20) {
  const Quiver& q = cat.alg().quiver();
  SubTable t;
  for (const auto& m : cat.members) {
    std::vector<SubEntry> es;
    for (const auto& u : enumerate_submodules(cat.alg(), m, submodule_budget)) {
      if (u.dimension() == 0 || u.dimension() == m.dimension()) continue;
      es.push_back({summand_mask(cat, realize(q, m, u).module), summand_mask(cat, quotient(q, m, u).module)});
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    t.entries.push_back(std::move(es));
  }
  return t;
}

/// Closed under submodules, and no nonmember is an extension of two modules in add S.
inline bool is_torsionfree(const SubTable& t, Mask s) {
  for (std::size_t z = 0; z < t.entries.size(); ++z)
    for (const auto& e : t.entries[z]) {
      if (has(s, int(z)) && !subset(e.sub, s)) return false;
      if (!has(s, int(z)) && subset(e.sub | e.quot, s)) return false;
    }
  return true;
}

inline Mask torsionfree_closure(const SubTable& t, Mask seed) {
  Mask s = seed;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t z = 0; z < t.entries.size(); ++z)
      for (const auto& e : t.entries[z]) {
        Mask add = 0;
        if (has(s, int(z))) add |= e.sub;
        if (subset(e.sub | e.quot, s)) add |= bit(int(z));
        if (!subset(add, s)) {
          s |= add;
          grew = true;
        }
      }
  }
  return s;
}

/// {X : Hom(X, Y) = 0 for all Y in s}.
template <class F>
Mask left_orthogonal(const Catalog<F>& cat, Mask s) {
  Mask out = 0;
  for (int x = 0; x < cat.size(); ++x) {
    bool zero = true;
    for (int y : members_of(s)) zero = zero && cat.hom[x][y] == 0;
    if (zero) out |= bit(x);
  }
  return out;
}

/// {Y : Hom(X, Y) = 0 for all X in s}.
template <class F>
Mask right_orthogonal(const Catalog<F>& cat, Mask s) {
  Mask out = 0;
  for (int y = 0; y < cat.size(); ++y) {
    bool zero = true;
    for (int x : members_of(s)) zero = zero && cat.hom[x][y] == 0;
    if (zero) out |= bit(y);
  }
  return out;
}

struct TorsionPair {
  Mask t = 0, f = 0;
  bool operator==(const TorsionPair&) const = default;
};

struct Cover {
  int lower = 0, upper = 0;
  int label = -1;  // brick member
};

struct TorsLattice {
  int num_members = 0;
  std::vector<TorsionPair> pairs;  // by |t|, then t
  std::vector<Cover> covers;

  int size() const { return static_cast<int>(pairs.size()); }
  int bottom() const { return 0; }
  int top() const { return size() - 1; }
  std::optional<int> find_t(Mask t) const {
    for (int i = 0; i < size(); ++i)
      if (pairs[i].t == t) return i;
    return std::nullopt;
  }
  std::optional<int> find_f(Mask f) const {
    for (int i = 0; i < size(); ++i)
      if (pairs[i].f == f) return i;
    return std::nullopt;
  }
};

template <class F>
std::string mask_names(const Catalog<F>& cat, Mask m) {
  std::vector<std::string> ns;
  for (int i : members_of(m)) ns.push_back(cat.names[i]);
  std::sort(ns.begin(), ns.end());
  std::string s = "{";
  for (std::size_t k = 0; k < ns.size(); ++k) s += (k ? "," : "") + ns[k];
  return s + "}";
}

template <class F>
TorsLattice enumerate_torsion_pairs(const Catalog<F>& cat, const SubTable& table, std::uint64_t subset_budget = 1u << 16) {
  if (!cat.complete()) throw InputError("torsion pairs need a catalog declared complete");
  int n = cat.size();
  if (n >= 63 || (Mask(1) << n) > subset_budget)
    throw BudgetError("enumerating 2^" + std::to_string(n) + " member subsets exceeds budget " + std::to_string(subset_budget));
  TorsLattice lat;
  lat.num_members = n;
  for (Mask s = 0; s <= all_members(n); ++s) {
    if (!is_torsionfree(table, s)) continue;
    TorsionPair p{left_orthogonal(cat, s), s};
    if (right_orthogonal(cat, p.t) != s) throw ConsistencyError("torsionfree class " + mask_names(cat, s) + " is not t^perp");
    lat.pairs.push_back(p);
  }
  std::sort(lat.pairs.begin(), lat.pairs.end(), [](const TorsionPair& a, const TorsionPair& b) {
    return std::pair(mask_size(a.t), a.t) < std::pair(mask_size(b.t), b.t);
  });
  return lat;
}

/// Covers by t-inclusion, each labelled by the unique brick in t' ∩ f.
template <class F>
void hasse_with_labels(const Catalog<F>& cat, TorsLattice& lat) {
  lat.covers.clear();
  int n = lat.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Mask ta = lat.pairs[a].t, tb = lat.pairs[b].t;
      if (ta == tb || !subset(ta, tb)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c) {
        Mask tc = lat.pairs[c].t;
        if (tc != ta && tc != tb && subset(ta, tc) && subset(tc, tb)) cover = false;
      }
      if (!cover) continue;
      std::vector<int> bricks;
      for (int i : members_of(tb & lat.pairs[a].f))
        if (cat.brick[i]) bricks.push_back(i);
      if (bricks.size() != 1)
        throw ConsistencyError("cover " + mask_names(cat, ta) + " < " + mask_names(cat, tb) + " has " +
                               std::to_string(bricks.size()) + " brick labels");
      lat.covers.push_back({a, b, bricks[0]});
    }
}

template <class F>
TorsLattice torsion_lattice(const Catalog<F>& cat, const SubTable& table, std::uint64_t subset_budget = 1u << 16) {
  auto lat = enumerate_torsion_pairs(cat, table, subset_budget);
  hasse_with_labels(cat, lat);
  return lat;
}

/// Intersection of the torsion classes.
inline int lattice_meet(const TorsLattice& lat, const std::vector<int>& indices) {
  Mask t = all_members(lat.num_members);
  for (int i : indices) t &= lat.pairs[i].t;
  auto r = lat.find_t(t);
  if (!r) throw ConsistencyError("an intersection of torsion classes is not a torsion class");
  return *r;
}

/// Smallest torsion class containing all of them.
inline int lattice_join(const TorsLattice& lat, const std::vector<int>& indices) {
  Mask u = 0;
  for (int i : indices) u |= lat.pairs[i].t;
  Mask t = all_members(lat.num_members);
  for (const auto& p : lat.pairs)
    if (subset(u, p.t)) t &= p.t;
  auto r = lat.find_t(t);
  if (!r) throw ConsistencyError("join of torsion classes not found in the lattice");
  return *r;
}

/// Pairs with a unique upper cover contained in every strictly larger torsion class,
/// as (pair, cover) indices.
inline std::vector<std::pair<int, int>> cmi_elements(const TorsLattice& lat) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < lat.size(); ++p) {
    std::vector<int> up;
    for (const auto& c : lat.covers)
      if (c.lower == p) up.push_back(c.upper);
    if (up.size() != 1) continue;
    Mask star = lat.pairs[up[0]].t, t = lat.pairs[p].t;
    bool ok = true;
    for (const auto& q : lat.pairs)
      if (q.t != t && subset(t, q.t) && !subset(star, q.t)) ok = false;
    if (ok) out.emplace_back(p, up[0]);
  }
  return out;
}

/// Each brick B gives the pair (⊥B, F(B)); asserted cmi and bijective onto the cmi elements.
template <class F>
std::vector<std::pair<int, int>> cmi_brick_bijection(const Catalog<F>& cat, const SubTable& table, const TorsLattice& lat) {
  auto cmi = cmi_elements(lat);
  std::vector<std::pair<int, int>> out;
  std::vector<bool> hit(lat.size(), false);
  for (int b = 0; b < cat.size(); ++b) {
    if (!cat.brick[b]) continue;
    TorsionPair p{left_orthogonal(cat, bit(b)), torsionfree_closure(table, bit(b))};
    auto idx = lat.find_t(p.t);
    if (!idx || lat.pairs[*idx].f != p.f)
      throw ConsistencyError("brick " + cat.names[b] + " does not give a torsion pair (⊥B, F(B))");
    bool is_cmi = std::any_of(cmi.begin(), cmi.end(), [&](const auto& c) { return c.first == *idx; });
    if (!is_cmi) throw ConsistencyError("the pair of brick " + cat.names[b] + " is not completely meet-irreducible");
    if (hit[*idx]) throw ConsistencyError("two bricks give the same completely meet-irreducible pair");
    hit[*idx] = true;
    out.emplace_back(b, *idx);
  }
  if (out.size() != cmi.size()) throw ConsistencyError("bricks do not exhaust the completely meet-irreducible pairs");
  return out;
}

struct HeartSimples {
  std::vector<int> tfat;  // torsionfree, almost torsion
  std::vector<int> tatf;  // torsion, almost torsionfree
};

template <class F>
HeartSimples heart_simples(const Catalog<F>& cat, const SubTable& table, const TorsLattice& lat, int p) {
  HeartSimples h;
  const TorsionPair& tp = lat.pairs[p];
  for (const auto& c : lat.covers) {
    if (c.lower == p) h.tfat.push_back(c.label);
    if (c.upper == p) h.tatf.push_back(c.label);
  }
  for (int b : h.tfat) {
    bool ok = has(tp.f, b);
    for (const auto& e : table.entries[b]) ok = ok && subset(e.quot, tp.t);
    if (!ok) throw ConsistencyError("cover label " + cat.names[b] + " has a proper quotient outside the torsion class");
  }
  for (int b : h.tatf) {
    bool ok = has(tp.t, b);
    for (const auto& e : table.entries[b]) ok = ok && subset(e.sub, tp.f);
    if (!ok) throw ConsistencyError("cover label " + cat.names[b] + " has a proper submodule outside the torsionfree class");
  }
  std::sort(h.tfat.begin(), h.tfat.end());
  std::sort(h.tatf.begin(), h.tatf.end());
  return h;
}

}  // namespace cosilt
