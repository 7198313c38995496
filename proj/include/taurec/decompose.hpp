#pragma once

#include <optional>
#include <vector>

#include "homological.hpp"

namespace taurec {

/// End_A(M) with a basis of full matrices.
struct Endomorphisms {
  std::vector<ModuleMap> basis;
  std::vector<Matrix> full;
};

inline Endomorphisms endomorphisms(const Module& m) {
  Endomorphisms e;
  e.basis = hom_basis(m, m);
  for (auto& f : e.basis) e.full.push_back(f.full());
  return e;
}

/// dim End(M) / rad End(M), via the trace form on M; nullopt over F_p with p <= dim M.
inline std::optional<std::size_t> endomorphism_top_dim(const Module& m, const Endomorphisms& e) {
  const Field& f = m.field();
  if (!f.is_rational() && f.modulus() <= m.dim()) return std::nullopt;
  const std::size_t n = e.full.size();
  Matrix g(n, n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix p = e.full[i] * e.full[j];
      Rational t = 0;
      for (std::size_t k = 0; k < p.rows(); ++k) t += p(k, k);
      g.set(i, j, t);
      g.set(j, i, t);
    }
  return rank(g);
}

struct Summand {
  Module module;
  ModuleMap inclusion;   // summand -> M
  ModuleMap projection;  // M -> summand
};

namespace detail {

// A non-nilpotent, non-invertible endomorphism, if one is found among the candidates.
inline std::optional<ModuleMap> splitting_endomorphism(const Module& m, const Endomorphisms& e) {
  const Field& f = m.field();
  std::vector<ModuleMap> cands = e.basis;
  const std::size_t n = e.basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cands.push_back(e.basis[i] * e.basis[j]);
  for (std::size_t i = 0; i + 1 < n; ++i) cands.push_back(e.basis[i] + e.basis[i + 1]);
  for (auto& x : cands) {
    Matrix full = x.full();
    Polynomial cp = characteristic_polynomial(full);
    auto roots = field_roots(cp, f);
    if (!roots) continue;
    for (auto& lambda : *roots) {
      ModuleMap y = x - ModuleMap::identity(m).scaled(lambda);
      if (y.is_isomorphism()) continue;
      if (is_nilpotent(y.full())) continue;
      return y;
    }
  }
  return std::nullopt;
}

inline void decompose_into(const Module& m, const ModuleMap& inc, const ModuleMap& proj, std::vector<Summand>& out) {
  Endomorphisms e = endomorphisms(m);
  if (e.basis.size() == 1) {
    out.push_back({m, inc, proj});
    return;
  }
  auto top = endomorphism_top_dim(m, e);
  if (top && *top == 1) {
    out.push_back({m, inc, proj});
    return;
  }
  auto y = splitting_endomorphism(m, e);
  if (!y) {
    if (top) throw Inconclusive("no splitting endomorphism found (End/rad has dimension " + std::to_string(*top) + ")");
    throw Inconclusive("cannot decide indecomposability over " + m.field().name());
  }
  // Fitting: M = ker y^d (+) im y^d
  ModuleMap yd = ModuleMap::identity(m);
  for (std::size_t k = 0; k < m.dim(); ++k) yd = yd * *y;
  SubmoduleResult k = kernel(yd), i = image(yd);
  ModuleMap pk = ModuleMap::zero(m, k.module), pi = ModuleMap::zero(m, i.module);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    Matrix b = hstack(k.inclusion.blocks[v], i.inclusion.blocks[v]);
    auto inv = inverse(b);
    if (!inv) throw InternalConsistencyError("Fitting decomposition is not a direct sum");
    pk.blocks[v] = inv->block(0, 0, k.module.dim_at(v), m.dim_at(v));
    pi.blocks[v] = inv->block(k.module.dim_at(v), 0, i.module.dim_at(v), m.dim_at(v));
  }
  decompose_into(k.module, inc * k.inclusion, pk * proj, out);
  decompose_into(i.module, inc * i.inclusion, pi * proj, out);
}

}  // namespace detail

/// Krull-Schmidt decomposition into indecomposable summands.
inline std::vector<Summand> decompose(const Module& m) {
  std::vector<Summand> out;
  if (m.is_zero()) return out;
  detail::decompose_into(m, ModuleMap::identity(m), ModuleMap::identity(m), out);
  return out;
}

inline bool is_indecomposable(const Module& m) {
  if (m.is_zero()) return false;
  Endomorphisms e = endomorphisms(m);
  if (e.basis.size() == 1) return true;
  if (auto top = endomorphism_top_dim(m, e)) return *top == 1;
  return decompose(m).size() == 1;
}

/// For indecomposable M, N: some composite N -> M -> N... is invertible iff M and N are isomorphic.
inline bool is_isomorphic_indecomposable(const Module& m, const Module& n) {
  check_same_algebra(m, n);
  if (m.dim_vector() != n.dim_vector()) return false;
  auto f = hom_basis(m, n);
  if (f.empty()) return false;
  auto g = hom_basis(n, m);
  for (auto& a : f)
    if (a.is_isomorphism()) return true;
  for (auto& a : f)
    for (auto& b : g)
      if ((b * a).is_isomorphism()) return true;
  return false;
}

inline bool is_isomorphic(const Module& m, const Module& n) {
  check_same_algebra(m, n);
  if (m.dim_vector() != n.dim_vector()) return false;
  if (m.is_zero()) return true;
  auto dm = decompose(m), dn = decompose(n);
  if (dm.size() != dn.size()) return false;
  std::vector<bool> used(dn.size(), false);
  for (auto& s : dm) {
    bool found = false;
    for (std::size_t j = 0; j < dn.size() && !found; ++j)
      if (!used[j] && is_isomorphic_indecomposable(s.module, dn[j].module)) used[j] = found = true;
    if (!found) return false;
  }
  return true;
}

/// Indecomposable summands grouped into isomorphism classes: (representative, multiplicity).
inline std::vector<std::pair<Module, std::size_t>> isotypic_summands(const Module& m) {
  std::vector<std::pair<Module, std::size_t>> out;
  for (auto& s : decompose(m)) {
    bool found = false;
    for (auto& [r, k] : out)
      if (is_isomorphic_indecomposable(r, s.module)) {
        ++k;
        found = true;
        break;
      }
    if (!found) out.push_back({s.module, 1});
  }
  return out;
}

inline std::size_t num_nonisomorphic_summands(const Module& m) { return isotypic_summands(m).size(); }

inline Module basic_version(const Module& m) {
  std::vector<Module> parts;
  for (auto& [r, k] : isotypic_summands(m)) parts.push_back(r);
  return direct_sum_module(parts, m.algebra());
}

/// Trace of T in M: sum of images of all maps T -> M.
inline GradedSubspace trace_space(const Module& t, const Module& m) {
  GradedSubspace u = zero_subspace(m);
  for (auto& f : hom_basis(t, m)) u = subspace_sum(u, image_space(f));
  return u;
}

inline SubmoduleResult trace_of(const Module& t, const Module& m) { return submodule(m, trace_space(t, m)); }

/// M in Gen T, i.e. the trace of T in M is all of M.
inline bool is_generated_by(const Module& t, const Module& m) { return graded_dim(trace_space(t, m)) == m.dim(); }

}  // namespace taurec
