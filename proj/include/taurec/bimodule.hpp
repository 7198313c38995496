#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "module.hpp"

namespace taurec {

/// (A, B)-bimodule with a basis homogeneous for both vertex sets: m in e_i M e_j.
struct Bimodule {
  FdAlgebra left, right;
  std::vector<std::size_t> ltgt, rsrc;
  std::vector<Matrix> left_action;   // per basis element a of A: m |-> a m
  std::vector<Matrix> right_action;  // per basis element b of B: m |-> m b
  std::vector<std::string> labels;

  std::size_t dim() const { return ltgt.size(); }

  static Bimodule zero(const FdAlgebra& a, const FdAlgebra& b) {
    Bimodule m{a, b, {}, {}, {}, {}, {}};
    m.left_action.assign(a.dim(), Matrix(0, 0, a.field()));
    m.right_action.assign(b.dim(), Matrix(0, 0, a.field()));
    return m;
  }

  void validate() const {
    const Field& f = left.field();
    if (!(f == right.field())) throw FieldMismatch("bimodule over algebras with different fields");
    const std::size_t n = dim();
    if (rsrc.size() != n || left_action.size() != left.dim() || right_action.size() != right.dim()) throw InvalidModule("bimodule data has inconsistent sizes");
    for (auto& x : left_action)
      if (x.rows() != n || x.cols() != n) throw InvalidModule("left action has the wrong shape");
    for (auto& x : right_action)
      if (x.rows() != n || x.cols() != n) throw InvalidModule("right action has the wrong shape");
    for (std::size_t v = 0; v < left.num_vertices(); ++v) {
      const Matrix& e = left_action[left.idempotent(v)];
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          if (e(t, s) != ((s == t && ltgt[s] == v) ? 1 : 0)) throw InvalidModule("bimodule basis is not homogeneous on the left");
    }
    for (std::size_t v = 0; v < right.num_vertices(); ++v) {
      const Matrix& e = right_action[right.idempotent(v)];
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          if (e(t, s) != ((s == t && rsrc[s] == v) ? 1 : 0)) throw InvalidModule("bimodule basis is not homogeneous on the right");
    }
    for (std::size_t i = 0; i < left.dim(); ++i)
      for (std::size_t j = 0; j < left.dim(); ++j) {
        Matrix r(n, n, f);
        for (auto& t : left.product(i, j)) r = r + left_action[t.index].scaled(t.coeff);
        if (!(left_action[i] * left_action[j] == r)) throw InvalidModule("left action is not multiplicative");
      }
    for (std::size_t i = 0; i < right.dim(); ++i)
      for (std::size_t j = 0; j < right.dim(); ++j) {
        Matrix r(n, n, f);
        for (auto& t : right.product(i, j)) r = r + right_action[t.index].scaled(t.coeff);
        if (!(right_action[j] * right_action[i] == r)) throw InvalidModule("right action is not multiplicative");
      }
    for (auto& a : left_action)
      for (auto& b : right_action)
        if (!(a * b == b * a)) throw InvalidModule("left and right actions do not commute");
  }

  /// M as a left module over the left algebra.
  Module as_left_module() const {
    std::vector<std::size_t> dims(left.num_vertices(), 0);
    for (auto i : ltgt) ++dims[i];
    std::vector<std::vector<std::size_t>> at(left.num_vertices());
    for (std::size_t s = 0; s < dim(); ++s) at[ltgt[s]].push_back(s);
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < left.dim(); ++a)
      blocks.push_back(left_action[a].select_rows(at[left.tgt(a)]).select_columns(at[left.src(a)]));
    return Module(left, dims, blocks);
  }

  /// M as a right module over B, i.e. a left module over B^op.
  Module as_right_module() const {
    FdAlgebra op = opposite(right);
    std::vector<std::size_t> dims(right.num_vertices(), 0);
    for (auto j : rsrc) ++dims[j];
    std::vector<std::vector<std::size_t>> at(right.num_vertices());
    for (std::size_t s = 0; s < dim(); ++s) at[rsrc[s]].push_back(s);
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < right.dim(); ++b)
      blocks.push_back(right_action[b].select_rows(at[op.tgt(b)]).select_columns(at[op.src(b)]));
    return Module(op, dims, blocks);
  }
};

/// M = A with right B-action through phi: B -> A, rebased into the pieces e_i A phi(e_j).
inline Bimodule bimodule_from_morphism(const AlgebraMorphism& phi) {
  phi.validate();
  const FdAlgebra &b = phi.source, &a = phi.target;
  if (!phi.is_unital()) throw InvalidAlgebra("morphism is not unital; the twisted bimodule is not unitary");
  const Field& f = a.field();
  const std::size_t n = a.dim();
  auto right_mult_by = [&](const Vec& x) {
    Matrix r(n, n, f);
    for (std::size_t k = 0; k < n; ++k)
      if (x[k] != 0) r = r + a.right_mult(k).scaled(x[k]);
    return r;
  };
  Matrix basis(n, 0, f);
  std::vector<std::size_t> ltgt, rsrc;
  for (std::size_t i = 0; i < a.num_vertices(); ++i) {
    Matrix ei = Matrix::identity(n, f).select_columns(a.basis_to(i));
    for (std::size_t j = 0; j < b.num_vertices(); ++j) {
      Matrix piece = span_basis(right_mult_by(phi.image(b.idempotent(j))) * ei);
      basis = hstack(basis, piece);
      for (std::size_t c = 0; c < piece.cols(); ++c) {
        ltgt.push_back(i);
        rsrc.push_back(j);
      }
    }
  }
  auto inv = inverse(basis);
  if (!inv) throw InvalidAlgebra("twisted bimodule pieces do not form a basis");
  Bimodule m{a, b, ltgt, rsrc, {}, {}, {}};
  for (std::size_t x = 0; x < a.dim(); ++x) m.left_action.push_back(*inv * a.left_mult(x) * basis);
  for (std::size_t y = 0; y < b.dim(); ++y) m.right_action.push_back(*inv * right_mult_by(phi.image(y)) * basis);
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    std::string label = "m" + std::to_string(c);
    std::size_t nz = 0, at = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (basis(r, c) != 0) ++nz, at = r;
    if (nz == 1 && basis(at, c) == 1) label = a.basis_label(at);
    m.labels.push_back(label + "@" + a.vertex_label(ltgt[c]) + "," + b.vertex_label(rsrc[c]));
  }
  m.validate();
  return m;
}

struct TriangularAlgebra {
  FdAlgebra algebra;
  std::vector<std::size_t> left_vertex, right_vertex;  // vertices of A, B inside the triangular algebra
  std::size_t right_offset = 0, bimodule_offset = 0;   // basis layout: A, then B, then M
};

/// [[A, M], [0, B]] acting on columns (X; Y).
inline TriangularAlgebra triangular_algebra(const Bimodule& m) {
  const FdAlgebra &a = m.left, &b = m.right;
  if (!(a.field() == b.field())) throw FieldMismatch("triangular algebra over different fields");
  const std::size_t na = a.dim(), nb = b.dim(), nm = m.dim(), n = na + nb + nm;
  std::set<std::string> la(a.vertex_labels().begin(), a.vertex_labels().end());
  bool clash = false;
  for (auto& l : b.vertex_labels())
    if (la.count(l)) clash = true;
  AlgebraSpec s;
  s.field = a.field();
  s.name = "T(" + a.name() + "," + b.name() + ")";
  for (auto& l : a.vertex_labels()) s.vertex_labels.push_back(clash ? "L" + l : l);
  for (auto& l : b.vertex_labels()) s.vertex_labels.push_back(clash ? "R" + l : l);
  const std::size_t va = a.num_vertices();
  for (std::size_t v = 0; v < va; ++v) s.vertex_basis.push_back(a.idempotent(v));
  for (std::size_t v = 0; v < b.num_vertices(); ++v) s.vertex_basis.push_back(na + b.idempotent(v));
  for (std::size_t x = 0; x < na; ++x) {
    s.src.push_back(a.src(x));
    s.tgt.push_back(a.tgt(x));
    s.basis_labels.push_back(a.basis_label(x));
  }
  for (std::size_t x = 0; x < nb; ++x) {
    s.src.push_back(va + b.src(x));
    s.tgt.push_back(va + b.tgt(x));
    s.basis_labels.push_back(b.basis_label(x));
  }
  for (std::size_t x = 0; x < nm; ++x) {
    s.src.push_back(va + m.rsrc[x]);
    s.tgt.push_back(m.ltgt[x]);
    s.basis_labels.push_back(m.labels.empty() ? "m" + std::to_string(x) : m.labels[x]);
  }
  s.products.assign(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) s.products[i][j] = a.product(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      SparseVec p = b.product(i, j);
      for (auto& t : p) t.index += na;
      s.products[na + i][na + j] = p;
    }
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t x = 0; x < nm; ++x)
      for (std::size_t y = 0; y < nm; ++y)
        if (m.left_action[i](y, x) != 0) s.products[i][na + nb + x].push_back({na + nb + y, m.left_action[i](y, x)});
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t x = 0; x < nm; ++x)
      for (std::size_t y = 0; y < nm; ++y)
        if (m.right_action[j](y, x) != 0) s.products[na + nb + x][na + j].push_back({na + nb + y, m.right_action[j](y, x)});
  TriangularAlgebra t{FdAlgebra(std::move(s)), {}, {}, na, na + nb};
  for (std::size_t v = 0; v < va; ++v) t.left_vertex.push_back(v);
  for (std::size_t v = 0; v < b.num_vertices(); ++v) t.right_vertex.push_back(va + v);
  return t;
}

/// M (x)_B Y as a left A-module, with the data needed to push elements m (x) y into it.
struct TensorProduct {
  Module module;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;  // per A-vertex: (m index, y index in Y_rsrc(m))
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> position;
  std::vector<Matrix> proj, section;

  /// Coordinates in the tensor module (at vertex ltgt(s)) of m_s (x) y, y a column in Y_rsrc(s).
  Matrix image(const Bimodule& m, std::size_t s, const Matrix& y) const {
    std::size_t i = m.ltgt[s];
    Matrix v(pairs[i].size(), 1, y.field());
    for (std::size_t r = 0; r < y.rows(); ++r)
      if (y(r, 0) != 0) v.set(position[i].at({s, r}), 0, y(r, 0));
    return proj[i] * v;
  }
};

inline TensorProduct tensor_over(const Bimodule& m, const Module& y) {
  const FdAlgebra &a = m.left, &b = m.right;
  if (!same_algebra(y.algebra(), b)) throw InvalidModule("tensor_over: module is not over the right algebra of the bimodule");
  const Field& f = a.field();
  const std::size_t na = a.num_vertices();
  TensorProduct t;
  t.pairs.assign(na, {});
  t.position.assign(na, {});
  for (std::size_t s = 0; s < m.dim(); ++s)
    for (std::size_t r = 0; r < y.dim_at(m.rsrc[s]); ++r) {
      std::size_t i = m.ltgt[s];
      t.position[i][{s, r}] = t.pairs[i].size();
      t.pairs[i].push_back({s, r});
    }
  // balanced relations (m g) (x) y - m (x) (g y) for generators g of B
  std::vector<Matrix> rel;
  for (std::size_t i = 0; i < na; ++i) rel.emplace_back(t.pairs[i].size(), 0, f);
  for (auto g : b.generators()) {
    std::size_t gs = b.src(g), gt = b.tgt(g);
    for (std::size_t s = 0; s < m.dim(); ++s) {
      if (m.rsrc[s] != gt) continue;
      std::size_t i = m.ltgt[s];
      for (std::size_t r = 0; r < y.dim_at(gs); ++r) {
        Matrix v(t.pairs[i].size(), 1, f);
        for (std::size_t s2 = 0; s2 < m.dim(); ++s2) {
          const Rational& c = m.right_action[g](s2, s);
          if (c != 0) v.add_to(t.position[i].at({s2, r}), 0, c);
        }
        const Matrix& yg = y.block(g);
        for (std::size_t r2 = 0; r2 < y.dim_at(gt); ++r2)
          if (yg(r2, r) != 0) v.add_to(t.position[i].at({s, r2}), 0, -yg(r2, r));
        if (!v.is_zero()) rel[i] = hstack(rel[i], v);
      }
    }
  }
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < na; ++i) {
    Matrix rb = span_basis(rel[i]);
    Matrix c = subspace_complement(rb);
    Matrix inv = *inverse(hstack(c, rb));
    t.proj.push_back(inv.block(0, 0, c.cols(), t.pairs[i].size()));
    t.section.push_back(c);
    dims.push_back(c.cols());
  }
  std::vector<Matrix> blocks;
  for (std::size_t x = 0; x < a.dim(); ++x) {
    std::size_t i = a.src(x), i2 = a.tgt(x);
    Matrix tx(t.pairs[i2].size(), t.pairs[i].size(), f);
    for (std::size_t p = 0; p < t.pairs[i].size(); ++p) {
      auto [s, r] = t.pairs[i][p];
      for (std::size_t s2 = 0; s2 < m.dim(); ++s2) {
        const Rational& c = m.left_action[x](s2, s);
        if (c != 0) tx.add_to(t.position[i2].at({s2, r}), p, c);
      }
    }
    blocks.push_back(t.proj[i2] * tx * t.section[i]);
  }
  t.module = Module(a, dims, blocks);
  return t;
}

/// M (x) g : M (x) Y -> M (x) Y'.
inline ModuleMap tensor_map(const Bimodule& m, const TensorProduct& ty, const TensorProduct& ty2, const ModuleMap& g) {
  ModuleMap h = ModuleMap::zero(ty.module, ty2.module);
  const Field& f = m.left.field();
  for (std::size_t i = 0; i < ty.pairs.size(); ++i) {
    Matrix big(ty2.pairs[i].size(), ty.pairs[i].size(), f);
    for (std::size_t p = 0; p < ty.pairs[i].size(); ++p) {
      auto [s, r] = ty.pairs[i][p];
      const Matrix& gb = g.blocks[m.rsrc[s]];
      for (std::size_t r2 = 0; r2 < gb.rows(); ++r2)
        if (gb(r2, r) != 0) big.set(ty2.position[i].at({s, r2}), p, gb(r2, r));
    }
    h.blocks[i] = ty2.proj[i] * big * ty.section[i];
  }
  return h;
}

}  // namespace taurec
