#pragma once

#include <vector>

#include "module.hpp"

namespace taurec {

/// rad M = J M, graded.
inline GradedSubspace radical_space(const Module& m) {
  const FdAlgebra& a = m.algebra();
  GradedSubspace r = zero_subspace(m);
  if (a.radical_is_arrow_span()) {
    for (auto g : a.generators()) {
      Matrix img = span_basis(m.block(g));
      r[a.tgt(g)] = subspace_sum(r[a.tgt(g)], img);
    }
    return r;
  }
  Matrix acc(m.dim(), 0, m.field());
  for (std::size_t c = 0; c < a.radical().cols(); ++c) acc = hstack(acc, m.action(a.radical().column_vector(c)));
  Matrix img = span_basis(acc);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) r[v] = span_basis(img.block(m.offset(v), 0, m.dim_at(v), img.cols()));
  return r;
}

/// soc M = {x : J x = 0}, graded.
inline GradedSubspace socle_space(const Module& m) {
  const FdAlgebra& a = m.algebra();
  GradedSubspace s;
  if (a.radical_is_arrow_span()) {
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
      Matrix stacked(0, m.dim_at(v), m.field());
      for (auto g : a.generators())
        if (a.src(g) == v) stacked = vstack(stacked, m.block(g));
      s.push_back(kernel_basis(stacked));
    }
    return s;
  }
  Matrix stacked(0, m.dim(), m.field());
  for (std::size_t c = 0; c < a.radical().cols(); ++c) stacked = vstack(stacked, m.action(a.radical().column_vector(c)));
  Matrix k = kernel_basis(stacked);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    Matrix coord(m.dim(), m.dim_at(v), m.field());
    for (std::size_t i = 0; i < m.dim_at(v); ++i) coord.set(m.offset(v) + i, i, 1);
    Matrix inter = subspace_intersection(k, coord);
    s.push_back(span_basis(inter.block(m.offset(v), 0, m.dim_at(v), inter.cols())));
  }
  return s;
}

inline SubmoduleResult radical(const Module& m) { return submodule(m, radical_space(m)); }
inline QuotientResult top(const Module& m) { return quotient(m, radical_space(m)); }
inline SubmoduleResult socle(const Module& m) { return submodule(m, socle_space(m)); }

/// The map P(v) -> M sending e_v to x (x in M_v, a column vector).
inline ModuleMap map_from_projective(const Module& p, std::size_t v, const Module& m, const Matrix& x) {
  const FdAlgebra& a = m.algebra();
  auto pos = projective_positions(a, v);
  ModuleMap f = ModuleMap::zero(p, m);
  for (auto b : a.basis_from(v)) {
    Matrix y = m.block(b) * x;
    std::size_t u = a.tgt(b);
    for (std::size_t i = 0; i < m.dim_at(u); ++i) f.blocks[u].set(i, static_cast<std::size_t>(pos[b]), y(i, 0));
  }
  return f;
}

/// A projective module written as a sum of indecomposable projectives.
struct ProjectiveSum {
  std::vector<std::size_t> vertices;
  DirectSum sum;
  const Module& module() const { return sum.module; }
};

inline ProjectiveSum projective_sum(const FdAlgebra& a, const std::vector<std::size_t>& vertices) {
  std::vector<Module> parts;
  for (auto v : vertices) parts.push_back(projective_module(a, v));
  return {vertices, direct_sum(parts, a)};
}

struct ProjectiveCover {
  ProjectiveSum projective;
  ModuleMap map;  // projective -> M, surjective, minimal
};

inline ProjectiveCover projective_cover(const Module& m) {
  const FdAlgebra& a = m.algebra();
  QuotientResult t = top(m);
  std::vector<std::size_t> vs;
  std::vector<Matrix> gens;
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    for (std::size_t i = 0; i < t.module.dim_at(v); ++i) {
      vs.push_back(v);
      gens.push_back(t.section[v].col(i));
    }
  ProjectiveSum ps = projective_sum(a, vs);
  std::vector<ModuleMap> comps;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    comps.push_back(map_from_projective(ps.sum.projections[k].target, vs[k], m, gens[k]));
  }
  ModuleMap f = map_from_sum(ps.sum, comps, m);
  if (!f.is_surjective()) throw InternalConsistencyError("projective cover is not surjective");
  return {std::move(ps), f};
}

inline bool is_projective(const Module& m) { return projective_cover(m).projective.module().dim() == m.dim(); }

struct Presentation {
  ProjectiveSum p1, p0;
  ModuleMap d1;            // P1 -> P0
  ModuleMap d0;            // P0 -> M
  SubmoduleResult syzygy;  // Omega M inside P0
  ModuleMap cover1;        // P1 -> Omega M
};

inline Presentation minimal_projective_presentation(const Module& m) {
  ProjectiveCover c0 = projective_cover(m);
  SubmoduleResult k = kernel(c0.map);
  ProjectiveCover c1 = projective_cover(k.module);
  ModuleMap d1 = k.inclusion * c1.map;
  return {c1.projective, c0.projective, d1, c0.map, k, c1.map};
}

/// Element x_{lk} in e_{w_l} A e_{v_k}... expressed as an algebra element: the l-th component of
/// d1 applied to the generator of the k-th summand of P1.
inline std::vector<std::vector<Vec>> presentation_elements(const Presentation& pr, const FdAlgebra& a) {
  const auto& p1 = pr.p1;
  const auto& p0 = pr.p0;
  std::vector<std::vector<Vec>> x(p0.vertices.size(), std::vector<Vec>(p1.vertices.size()));
  for (std::size_t k = 0; k < p1.vertices.size(); ++k) {
    std::size_t v = p1.vertices[k];
    const Module& pk = p1.sum.inclusions[k].source;
    auto posk = projective_positions(a, v);
    // generator e_v of the k-th summand
    ModuleMap gen = p1.sum.inclusions[k];
    Matrix e(pk.dim(), 1, a.field());
    e.set(pk.offset(v) + static_cast<std::size_t>(posk[a.idempotent(v)]), 0, 1);
    Matrix img = (pr.d1 * gen).full() * e;
    for (std::size_t l = 0; l < p0.vertices.size(); ++l) {
      std::size_t w = p0.vertices[l];
      const Module& pl = p0.sum.projections[l].target;
      Matrix comp = p0.sum.projections[l].full() * img;
      auto posl = projective_positions(a, w);
      Vec el(a.dim());
      for (auto b : a.basis_from(w)) el[b] = comp(pl.offset(a.tgt(b)) + static_cast<std::size_t>(posl[b]), 0);
      x[l][k] = el;
    }
  }
  return x;
}

/// Dual D M = Hom_k(M, k) as a module over the opposite algebra.
inline Module dual(const Module& m) {
  FdAlgebra op = opposite(m.algebra());
  std::vector<Matrix> blocks;
  for (auto& b : m.blocks()) blocks.push_back(b.transpose());
  return Module(op, m.dim_vector(), blocks);
}

inline ModuleMap dual(const ModuleMap& f) {
  Module s = dual(f.target), t = dual(f.source);
  ModuleMap g{s, t, {}};
  for (auto& b : f.blocks) g.blocks.push_back(b.transpose());
  return g;
}

struct InjectiveSum {
  std::vector<std::size_t> vertices;
  DirectSum sum;
  const Module& module() const { return sum.module; }
};

inline InjectiveSum injective_sum(const FdAlgebra& a, const std::vector<std::size_t>& vertices) {
  std::vector<Module> parts;
  for (auto v : vertices) parts.push_back(injective_module(a, v));
  return {vertices, direct_sum(parts, a)};
}

/// Nakayama functor applied to the map P(v) -> P(w) given by right multiplication with x in e_v A e_w:
/// I(v) -> I(w), phi |-> phi(x .).
inline ModuleMap nakayama_component(const FdAlgebra& a, const Module& iv, std::size_t v, const Module& iw, std::size_t w, const Vec& x) {
  auto posv = injective_positions(a, v), posw = injective_positions(a, w);
  ModuleMap f = ModuleMap::zero(iv, iw);
  // b* (b in e_v A) maps to sum over y in e_w A of coeff_b(x y) y*
  for (auto y : a.basis_to(w)) {
    Vec xy = a.multiply(x, a.basis_vector(y));
    for (auto b : a.basis_to(v)) {
      if (xy[b] == 0) continue;
      if (a.src(b) != a.src(y)) continue;
      f.blocks[a.src(y)].set(static_cast<std::size_t>(posw[y]), static_cast<std::size_t>(posv[b]), xy[b]);
    }
  }
  return f;
}

/// tau M = ker(nu(d1)) for a minimal projective presentation P1 -> P0 -> M.
inline Module tau(const Module& m) {
  const FdAlgebra& a = m.algebra();
  if (m.is_zero()) return Module(a);
  Presentation pr = minimal_projective_presentation(m);
  if (pr.p1.vertices.empty()) return Module(a);
  auto x = presentation_elements(pr, a);
  InjectiveSum i1 = injective_sum(a, pr.p1.vertices), i0 = injective_sum(a, pr.p0.vertices);
  ModuleMap nu = ModuleMap::zero(i1.module(), i0.module());
  for (std::size_t k = 0; k < pr.p1.vertices.size(); ++k)
    for (std::size_t l = 0; l < pr.p0.vertices.size(); ++l) {
      const Module& ik = i1.sum.inclusions[k].source;
      const Module& il = i0.sum.inclusions[l].source;
      ModuleMap c = nakayama_component(a, ik, pr.p1.vertices[k], il, pr.p0.vertices[l], x[l][k]);
      nu = nu + i0.sum.inclusions[l] * c * i1.sum.projections[k];
    }
  if (!nu.is_module_map()) throw InternalConsistencyError("Nakayama image is not a module map");
  return kernel(nu).module;
}

/// Auslander-Bridger transpose Tr M as a module over the opposite algebra.
inline Module transpose(const Module& m) {
  const FdAlgebra& a = m.algebra();
  FdAlgebra op = opposite(a);
  if (m.is_zero()) return Module(op);
  Presentation pr = minimal_projective_presentation(m);
  auto x = presentation_elements(pr, a);
  // Hom_A(P(w), A) = e_w A = projective of A^op at w; Hom(d1, A): e_{w_l} A -> e_{v_k} A, y |-> x_{lk} y
  ProjectiveSum q0 = projective_sum(op, pr.p0.vertices), q1 = projective_sum(op, pr.p1.vertices);
  ModuleMap h = ModuleMap::zero(q0.module(), q1.module());
  for (std::size_t l = 0; l < pr.p0.vertices.size(); ++l) {
    std::size_t w = pr.p0.vertices[l];
    auto posw = projective_positions(op, w);
    for (std::size_t k = 0; k < pr.p1.vertices.size(); ++k) {
      std::size_t v = pr.p1.vertices[k];
      auto posv = projective_positions(op, v);
      const Module& sl = q0.sum.inclusions[l].source;
      const Module& sk = q1.sum.inclusions[k].source;
      ModuleMap c = ModuleMap::zero(sl, sk);
      for (auto y : op.basis_from(w)) {
        Vec xy = a.multiply(x[l][k], a.basis_vector(y));
        for (std::size_t b = 0; b < a.dim(); ++b)
          if (xy[b] != 0) c.blocks[op.tgt(b)].set(static_cast<std::size_t>(posv[b]), static_cast<std::size_t>(posw[y]), xy[b]);
      }
      h = h + q1.sum.inclusions[k] * c * q0.sum.projections[l];
    }
  }
  if (!h.is_module_map()) throw InternalConsistencyError("transpose presentation is not a module map");
  return cokernel(h).module;
}

/// tau M computed as D Tr M (independent of the Nakayama route).
inline Module tau_dtr(const Module& m) {
  Module t = dual(transpose(m));
  return t.rebind(m.algebra());
}

inline Module tau_inverse(const Module& m) {
  Module t = tau(dual(m));
  return dual(t).rebind(m.algebra());
}

/// Injective envelope N -> I(N), computed as the dual of the projective cover of D N.
struct InjectiveEnvelope {
  InjectiveSum injective;
  ModuleMap map;  // N -> I(N), injective
};

inline InjectiveEnvelope injective_envelope(const Module& n) {
  const FdAlgebra& a = n.algebra();
  ProjectiveCover c = projective_cover(dual(n));
  InjectiveSum is = injective_sum(a, c.projective.vertices);
  // D(P_op(v)) is isomorphic to I(v); D(cover): D P -> N^** = N, transpose gives N -> D P
  ModuleMap dm = dual(c.map);  // D N^op-side ... : N -> D(P)
  Module dp = dm.target.rebind(a);
  ModuleMap to_dp{n, dp, dm.blocks};
  // identify D(P_op(v)) with I(v): both have basis indexed by e_v A with the same grading
  ModuleMap iso = ModuleMap::zero(dp, is.module());
  iso.blocks.clear();
  for (std::size_t u = 0; u < a.num_vertices(); ++u) iso.blocks.push_back(Matrix::identity(dp.dim_at(u), a.field()));
  ModuleMap f = iso * to_dp;
  f.source = n;
  f.target = is.module();
  if (!f.is_module_map() || !f.is_injective()) throw InternalConsistencyError("injective envelope construction failed");
  return {is, f};
}

/// dim Ext^1(M, N) = dim Hom(Omega M, N) - rank of restriction from Hom(P0, N).
inline std::size_t ext1_dim(const Module& m, const Module& n) {
  check_same_algebra(m, n);
  if (m.is_zero() || n.is_zero()) return 0;
  Presentation pr = minimal_projective_presentation(m);
  const Module& om = pr.syzygy.module;
  std::size_t homo = dim_hom(om, n);
  if (homo == 0) return 0;
  auto hp = hom_basis(pr.p0.module(), n);
  std::vector<ModuleMap> restricted;
  for (auto& h : hp) restricted.push_back(h * pr.syzygy.inclusion);
  std::size_t r = rank(flat_span(restricted, flat_size(om, n), m.field()));
  return homo - r;
}

/// Middle term of the extension 0 -> N -> E -> M -> 0 classified by g: Omega M -> N (pushout).
inline Module extension_module(const Module& m, const Module& n, const ModuleMap& g) {
  Presentation pr = minimal_projective_presentation(m);
  if (g.source.dim_vector() != pr.syzygy.module.dim_vector() || !(g.target == n)) throw InvalidModule("cocycle is not a map Omega M -> N");
  ModuleMap gg{pr.syzygy.module, n, g.blocks};
  if (!gg.is_module_map()) throw InvalidModule("cocycle is not a module map");
  DirectSum s = direct_sum({pr.p0.module(), n}, m.algebra());
  ModuleMap d = s.inclusions[0] * pr.syzygy.inclusion - s.inclusions[1] * gg;
  return cokernel(d).module;
}

/// Subspace of Hom(N, L) of maps factoring through an injective module (columns, flattened).
inline Matrix hom_through_injectives_span(const Module& n, const Module& l) {
  InjectiveEnvelope env = injective_envelope(n);
  auto hs = hom_basis(env.injective.module(), l);
  std::vector<ModuleMap> comp;
  for (auto& h : hs) comp.push_back(h * env.map);
  return span_basis(flat_span(comp, flat_size(n, l), n.field()));
}

inline std::size_t hom_through_injectives_dim(const Module& n, const Module& l) {
  return hom_through_injectives_span(n, l).cols();
}

}  // namespace taurec
