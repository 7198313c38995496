#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "catalog.hpp"

namespace taurec {

/// Set of catalog ids.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : n_(universe), w_((universe + 63) / 64, 0) {}
  IdSet(std::size_t universe, const std::vector<std::size_t>& ids) : IdSet(universe) {
    for (auto i : ids) insert(i);
  }
  static IdSet full(std::size_t universe) {
    IdSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  static IdSet from_mask(std::size_t universe, std::uint64_t mask) {
    IdSet s(universe);
    if (!s.w_.empty()) s.w_[0] = mask;
    return s;
  }

  std::size_t universe() const { return n_; }
  void insert(std::size_t i) {
    if (i >= n_) throw Error("id " + std::to_string(i) + " outside the catalog");
    w_[i / 64] |= std::uint64_t(1) << (i % 64);
  }
  void erase(std::size_t i) { w_[i / 64] &= ~(std::uint64_t(1) << (i % 64)); }
  bool contains(std::size_t i) const { return i < n_ && (w_[i / 64] >> (i % 64)) & 1; }
  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const { return size() == 0; }
  std::vector<std::size_t> ids() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  std::uint64_t mask() const { return w_.empty() ? 0 : w_[0]; }

  bool intersects(const IdSet& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  bool subset_of(const IdSet& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  IdSet operator|(const IdSet& o) const {
    IdSet r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= o.w_[k];
    return r;
  }
  IdSet operator&(const IdSet& o) const {
    IdSet r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  IdSet minus(const IdSet& o) const {
    IdSet r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= ~o.w_[k];
    return r;
  }
  bool operator==(const IdSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const IdSet& o) const { return !(*this == o); }
  /// ordered by size, then by the sorted id list
  bool operator<(const IdSet& o) const {
    auto a = size(), b = o.size();
    if (a != b) return a < b;
    return ids() < o.ids();
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline std::string to_string(const IdSet& s, const IndCatalog& c) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.ids()) {
    out += (first ? "" : ", ") + c.name(i);
    first = false;
  }
  return out + "}";
}

struct TorsionPair {
  IdSet torsion, torsionfree;
  bool operator==(const TorsionPair& o) const { return torsion == o.torsion && torsionfree == o.torsionfree; }
};

/// Hom-nonvanishing relation of a catalog, precomputed.
class HomGraph {
 public:
  explicit HomGraph(const IndCatalog& c) : n_(c.size()), out_(n_, IdSet(n_)), in_(n_, IdSet(n_)) {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (c.hom_dim(x, y) > 0) {
          out_[x].insert(y);
          in_[y].insert(x);
        }
  }
  const IdSet& out(std::size_t x) const { return out_[x]; }
  const IdSet& in(std::size_t y) const { return in_[y]; }
  /// S^perp = {Y : Hom(S, Y) = 0}
  IdSet perp_right(const IdSet& s) const {
    IdSet r(n_);
    for (std::size_t y = 0; y < n_; ++y)
      if (!in_[y].intersects(s)) r.insert(y);
    return r;
  }
  /// ^perp S = {X : Hom(X, S) = 0}
  IdSet perp_left(const IdSet& s) const {
    IdSet r(n_);
    for (std::size_t x = 0; x < n_; ++x)
      if (!out_[x].intersects(s)) r.insert(x);
    return r;
  }

 private:
  std::size_t n_;
  std::vector<IdSet> out_, in_;
};

inline IdSet perp_right(const IndCatalog& c, const IdSet& s) { return HomGraph(c).perp_right(s); }
inline IdSet perp_left(const IndCatalog& c, const IdSet& s) { return HomGraph(c).perp_left(s); }

/// Smallest torsion class containing s: ^perp(s^perp).
inline IdSet torsion_closure(const IndCatalog& c, const IdSet& s) {
  HomGraph g(c);
  return g.perp_left(g.perp_right(s));
}
inline IdSet torsionfree_closure(const IndCatalog& c, const IdSet& s) {
  HomGraph g(c);
  return g.perp_right(g.perp_left(s));
}
inline bool is_torsion_class(const IndCatalog& c, const IdSet& t) { return torsion_closure(c, t) == t; }
inline bool is_torsionfree_class(const IndCatalog& c, const IdSet& f) { return torsionfree_closure(c, f) == f; }
inline IdSet torsionfree_of(const IndCatalog& c, const IdSet& t) { return perp_right(c, t); }
inline IdSet torsion_of(const IndCatalog& c, const IdSet& f) { return perp_left(c, f); }

/// Every indecomposable M sits in 0 -> tM -> M -> M/tM -> 0 with tM in T and M/tM in F.
inline bool canonical_sequences_hold(const IndCatalog& c, const TorsionPair& p, std::string* why = nullptr) {
  Module tsum = c.sum_of(p.torsion.ids());
  auto in = [&](const Module& m, const IdSet& s) {
    if (m.is_zero()) return true;
    for (auto& [id, mult] : c.identify(m))
      if (!s.contains(id)) return false;
    return true;
  };
  for (std::size_t x = 0; x < c.size(); ++x) {
    const Module& m = c.module(x);
    GradedSubspace t = tsum.is_zero() ? zero_subspace(m) : trace_space(tsum, m);
    auto sub = submodule(m, t);
    auto quo = quotient(m, t);
    if (!in(sub.module, p.torsion) || !in(quo.module, p.torsionfree)) {
      if (why) *why = "canonical sequence fails for " + c.name(x);
      return false;
    }
  }
  return true;
}

inline bool is_torsion_pair(const IndCatalog& c, const TorsionPair& p, std::string* why = nullptr) {
  HomGraph g(c);
  if (g.perp_right(p.torsion) != p.torsionfree || g.perp_left(p.torsionfree) != p.torsion) {
    if (why) *why = "classes are not mutual Hom-orthogonals";
    return false;
  }
  return canonical_sequences_hold(c, p, why);
}

/// Indecomposables generated by add T.
inline IdSet gen_class(const IndCatalog& c, const IdSet& t) {
  IdSet r(c.size());
  if (t.empty()) return r;
  Module sum = c.sum_of(t.ids());
  for (std::size_t y = 0; y < c.size(); ++y)
    if (is_generated_by(sum, c.module(y))) r.insert(y);
  return r;
}

/// Indecomposables cogenerated by add T (submodules of T^n).
inline IdSet sub_class(const IndCatalog& c, const IdSet& t) {
  IdSet r(c.size());
  if (t.empty()) return r;
  HomGraph g(c);
  for (std::size_t y = 0; y < c.size(); ++y) {
    // Y embeds in a sum of copies of T iff the joint kernel of all maps Y -> T vanishes
    const Module& m = c.module(y);
    GradedSubspace k = full_subspace(m);
    for (auto x : t.ids())
      for (auto& f : c.hom(y, x)) {
        auto ks = kernel_space(f);
        for (std::size_t v = 0; v < k.size(); ++v) k[v] = subspace_intersection(k[v], ks[v]);
      }
    if (graded_dim(k) == 0) r.insert(y);
  }
  return r;
}

/// Ext-projectives of a class: X in T with Ext^1(X, T) = 0.
inline IdSet ext_projectives(const IndCatalog& c, const IdSet& t) {
  IdSet r(c.size());
  for (auto x : t.ids()) {
    bool ok = true;
    for (auto y : t.ids())
      if (c.ext_dim(x, y) != 0) ok = false;
    if (ok) r.insert(x);
  }
  return r;
}
/// Ext-injectives: Y in F with Ext^1(F, Y) = 0.
inline IdSet ext_injectives(const IndCatalog& c, const IdSet& f) {
  IdSet r(c.size());
  for (auto y : f.ids()) {
    bool ok = true;
    for (auto x : f.ids())
      if (c.ext_dim(x, y) != 0) ok = false;
    if (ok) r.insert(y);
  }
  return r;
}

inline bool tau_orthogonal(const IndCatalog& c, std::size_t x, std::size_t y) {
  long t = c.tau(y);
  if (t == -2) throw Inconclusive("tau of " + c.name(y) + " lies outside the catalog");
  return t < 0 || c.hom_dim(x, static_cast<std::size_t>(t)) == 0;
}

/// Hom(T, tau T) = 0.
inline bool is_tau_rigid(const IndCatalog& c, const IdSet& t) {
  auto ids = t.ids();
  for (auto x : ids)
    for (auto y : ids)
      if (!tau_orthogonal(c, x, y)) return false;
  return true;
}

inline bool is_tau_tilting(const IndCatalog& c, const IdSet& t) { return t.size() == c.algebra().num_vertices() && is_tau_rigid(c, t); }

/// Vertices where every summand vanishes.
inline std::vector<std::size_t> zero_vertices(const IndCatalog& c, const IdSet& t) {
  std::vector<std::size_t> e;
  for (std::size_t v = 0; v < c.algebra().num_vertices(); ++v) {
    bool zero = true;
    for (auto x : t.ids())
      if (c.module(x).dim_at(v) != 0) zero = false;
    if (zero) e.push_back(v);
  }
  return e;
}

inline bool is_sincere(const IndCatalog& c, const IdSet& t) { return zero_vertices(c, t).empty(); }

struct SupportCheck {
  bool definitional = false;  // tau-tilting over A/<e_E>
  bool by_count = false;      // tau_A-rigid and |T| = n - |E|
  std::vector<std::size_t> zero_vertices;
  bool ok() const { return definitional && by_count; }
};

/// Both characterisations of support tau-tilting; they must agree.
inline SupportCheck check_support_tau_tilting(const IndCatalog& c, const IdSet& t) {
  SupportCheck r;
  const FdAlgebra& a = c.algebra();
  r.zero_vertices = zero_vertices(c, t);
  const std::size_t n = a.num_vertices(), ne = r.zero_vertices.size();
  r.by_count = t.size() + ne == n && is_tau_rigid(c, t);
  if (ne == n) {
    r.definitional = t.empty();
  } else {
    auto q = quotient_by_vertices(a, r.zero_vertices);
    std::vector<Module> over, taus;
    for (auto x : t.ids()) {
      over.push_back(view_over_quotient(c.module(x), q));
      taus.push_back(tau(over.back()));
    }
    bool rigid = true;
    for (auto& m : over)
      for (auto& tm : taus)
        if (!tm.is_zero() && dim_hom(m, tm) != 0) rigid = false;
    r.definitional = rigid && over.size() == q.algebra.num_vertices();
  }
  if (r.definitional != r.by_count)
    throw InternalConsistencyError("support tau-tilting characterisations disagree on " + to_string(t, c));
  return r;
}

inline bool is_support_tau_tilting(const IndCatalog& c, const IdSet& t) { return check_support_tau_tilting(c, t).ok(); }

/// Basic support tau-tilting modules, as id sets, sorted by (size, ids).
inline std::vector<IdSet> enumerate_support_tau_tilting(const IndCatalog& c) {
  const std::size_t n = c.size(), nv = c.algebra().num_vertices();
  std::vector<bool> self(n);
  std::vector<IdSet> compat(n, IdSet(n));
  for (std::size_t x = 0; x < n; ++x) self[x] = tau_orthogonal(c, x, x);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (self[x] && self[y] && tau_orthogonal(c, x, y) && tau_orthogonal(c, y, x)) compat[x].insert(y);
  std::vector<IdSet> out;
  IdSet cur(n);
  std::function<void(std::size_t, const IdSet&)> dfs = [&](std::size_t start, const IdSet& allowed) {
    if (cur.size() + zero_vertices(c, cur).size() == nv) out.push_back(cur);
    if (cur.size() >= nv) return;
    for (std::size_t x = start; x < n; ++x) {
      if (!allowed.contains(x)) continue;
      cur.insert(x);
      dfs(x + 1, allowed & compat[x]);
      cur.erase(x);
    }
  };
  IdSet all(n);
  for (std::size_t x = 0; x < n; ++x)
    if (self[x]) all.insert(x);
  dfs(0, all);
  for (auto& t : out)
    if (!check_support_tau_tilting(c, t).ok()) throw InternalConsistencyError("enumeration produced " + to_string(t, c) + ", which fails the definition");
  std::sort(out.begin(), out.end());
  return out;
}

/// All torsion classes, by scanning every subset of the catalog.
inline std::vector<IdSet> enumerate_torsion_classes(const IndCatalog& c, std::size_t max_size = 26) {
  const std::size_t n = c.size();
  if (n > max_size) throw Inconclusive("catalog too large for the subset scan (" + std::to_string(n) + " > " + std::to_string(max_size) + ")");
  std::vector<std::uint64_t> out_m(n, 0), in_m(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (c.hom_dim(x, y) > 0) {
        out_m[x] |= std::uint64_t(1) << y;
        in_m[y] |= std::uint64_t(1) << x;
      }
  std::vector<IdSet> res;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
    std::uint64_t perp = 0, back = 0;
    for (std::size_t y = 0; y < n; ++y)
      if (!(in_m[y] & s)) perp |= std::uint64_t(1) << y;
    for (std::size_t x = 0; x < n; ++x)
      if (!(out_m[x] & perp)) back |= std::uint64_t(1) << x;
    if (back == s) res.push_back(IdSet::from_mask(n, s));
  }
  std::sort(res.begin(), res.end());
  return res;
}

struct Approximation {
  ModuleMap map;
  IdMultiset target;  // summands of the approximating object
};

/// Left add(X)-approximation of B: B -> sum over x of x^{dim Hom(B, x)}, assembled from hom bases.
inline Approximation left_approximation(const IndCatalog& c, const IdSet& cls, const Module& b) {
  std::vector<Module> parts;
  std::vector<ModuleMap> comps;
  Approximation r{ModuleMap::zero(b, Module(c.algebra())), {}};
  for (auto x : cls.ids()) {
    auto h = hom_basis(b, c.module(x));
    if (h.empty()) continue;
    r.target.push_back({x, h.size()});
    for (auto& f : h) {
      parts.push_back(c.module(x));
      comps.push_back(f);
    }
  }
  auto s = direct_sum(parts, c.algebra());
  r.map = map_to_sum(s, comps, b);
  return r;
}

/// Right add(X)-approximation: sum over x of x^{dim Hom(x, B)} -> B.
inline Approximation right_approximation(const IndCatalog& c, const IdSet& cls, const Module& b) {
  std::vector<Module> parts;
  std::vector<ModuleMap> comps;
  Approximation r{ModuleMap::zero(Module(c.algebra()), b), {}};
  for (auto x : cls.ids()) {
    auto h = hom_basis(c.module(x), b);
    if (h.empty()) continue;
    r.target.push_back({x, h.size()});
    for (auto& f : h) {
      parts.push_back(c.module(x));
      comps.push_back(f);
    }
  }
  auto s = direct_sum(parts, c.algebra());
  r.map = map_from_sum(s, comps, b);
  return r;
}

/// f: B -> T is a left approximation iff Hom(T, X) o f = Hom(B, X) for every X in the class.
inline bool is_left_approximation(const IndCatalog& c, const IdSet& cls, const ModuleMap& f) {
  for (auto x : cls.ids()) {
    const Module& xm = c.module(x);
    std::size_t want = dim_hom(f.source, xm);
    std::vector<ModuleMap> comp;
    for (auto& h : hom_basis(f.target, xm)) comp.push_back(h * f);
    if (rank(flat_span(comp, flat_size(f.source, xm), c.algebra().field())) != want) return false;
  }
  return true;
}

inline bool is_right_approximation(const IndCatalog& c, const IdSet& cls, const ModuleMap& f) {
  for (auto x : cls.ids()) {
    const Module& xm = c.module(x);
    std::size_t want = dim_hom(xm, f.target);
    std::vector<ModuleMap> comp;
    for (auto& h : hom_basis(xm, f.source)) comp.push_back(f * h);
    if (rank(flat_span(comp, flat_size(xm, f.target), c.algebra().field())) != want) return false;
  }
  return true;
}

/// Functorial finiteness of add(class), certified by constructing and checking approximations
/// of every indecomposable.
inline bool is_functorially_finite(const IndCatalog& c, const IdSet& cls) {
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (!is_left_approximation(c, cls, left_approximation(c, cls, c.module(b)).map)) return false;
    if (!is_right_approximation(c, cls, right_approximation(c, cls, c.module(b)).map)) return false;
  }
  return true;
}

/// Support tau-tilting module attached to a functorially finite torsion class.
inline IdSet tau_tilting_of_torsion_class(const IndCatalog& c, const IdSet& t) { return ext_projectives(c, t); }

}  // namespace taurec
