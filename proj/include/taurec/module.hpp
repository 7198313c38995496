#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace taurec {

/// Finite-dimensional left module with a basis graded by vertices.
/// block(b) is the action of basis element b, a map M_src(b) -> M_tgt(b).
class Module {
 public:
  Module() = default;
  Module(FdAlgebra a, std::vector<std::size_t> dims, std::vector<Matrix> blocks)
      : alg_(std::move(a)), dims_(std::move(dims)), blocks_(std::move(blocks)) {
    if (dims_.size() != alg_.num_vertices()) throw InvalidModule("dimension vector length differs from the vertex count");
    if (blocks_.size() != alg_.dim()) throw InvalidModule("one action block per basis element required");
    for (std::size_t b = 0; b < alg_.dim(); ++b) {
      const Matrix& m = blocks_[b];
      if (m.rows() != dims_[alg_.tgt(b)] || m.cols() != dims_[alg_.src(b)]) throw InvalidModule("action block of " + alg_.basis_label(b) + " has the wrong shape");
      if (!(m.field() == alg_.field())) throw FieldMismatch("module field differs from algebra field");
    }
    offsets_.assign(dims_.size() + 1, 0);
    std::partial_sum(dims_.begin(), dims_.end(), offsets_.begin() + 1);
  }

  /// Zero module.
  explicit Module(FdAlgebra a) : Module(a, std::vector<std::size_t>(a.num_vertices(), 0), zero_blocks(a)) {}

  const FdAlgebra& algebra() const { return alg_; }
  const Field& field() const { return alg_.field(); }
  std::size_t dim() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t dim_at(std::size_t v) const { return dims_[v]; }
  std::size_t offset(std::size_t v) const { return offsets_[v]; }
  const std::vector<std::size_t>& dim_vector() const { return dims_; }
  std::size_t num_vertices() const { return dims_.size(); }
  const Matrix& block(std::size_t b) const { return blocks_[b]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  bool is_zero() const { return dim() == 0; }
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < dims_.size(); ++v)
      if (dims_[v]) s.push_back(v);
    return s;
  }

  /// Action of basis element b as a dim() x dim() matrix.
  Matrix action(std::size_t b) const {
    Matrix m(dim(), dim(), field());
    m.set_block(offset(alg_.tgt(b)), offset(alg_.src(b)), blocks_[b]);
    return m;
  }
  /// Action of an arbitrary algebra element.
  Matrix action(const Vec& x) const {
    Matrix m(dim(), dim(), field());
    for (std::size_t b = 0; b < alg_.dim(); ++b)
      if (x[b] != 0) m = m + action(b).scaled(x[b]);
    return m;
  }

  /// Check the module axioms against the structure constants.
  void validate() const {
    const Field& f = field();
    for (std::size_t v = 0; v < num_vertices(); ++v)
      if (!(blocks_[alg_.idempotent(v)] == Matrix::identity(dims_[v], f))) throw InvalidModule("idempotent e_" + alg_.vertex_label(v) + " does not act as the identity");
    for (std::size_t i = 0; i < alg_.dim(); ++i)
      for (std::size_t j = 0; j < alg_.dim(); ++j) {
        if (alg_.src(i) != alg_.tgt(j)) continue;
        Matrix lhs = blocks_[i] * blocks_[j];
        Matrix rhs(lhs.rows(), lhs.cols(), f);
        for (auto& t : alg_.product(i, j)) rhs = rhs + blocks_[t.index].scaled(t.coeff);
        if (!(lhs == rhs)) throw InvalidModule("action is not multiplicative at (" + alg_.basis_label(i) + "," + alg_.basis_label(j) + ")");
      }
  }

  /// Same module structure over a structurally equal algebra.
  Module rebind(const FdAlgebra& b) const {
    if (!same_algebra(alg_, b)) throw InvalidModule("rebind to a different algebra");
    return Module(b, dims_, blocks_);
  }

  bool operator==(const Module& o) const { return same_algebra(alg_, o.alg_) && dims_ == o.dims_ && blocks_ == o.blocks_; }

 private:
  static std::vector<Matrix> zero_blocks(const FdAlgebra& a) {
    return std::vector<Matrix>(a.dim(), Matrix(0, 0, a.field()));
  }
  FdAlgebra alg_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> blocks_;
  std::vector<std::size_t> offsets_;
};

inline void check_same_algebra(const Module& m, const Module& n) {
  if (!same_algebra(m.algebra(), n.algebra())) throw InvalidModule("modules over different algebras");
}

/// Homomorphism of graded modules: one block per vertex.
struct ModuleMap {
  Module source, target;
  std::vector<Matrix> blocks;  // blocks[v]: target.dim_at(v) x source.dim_at(v)

  static ModuleMap zero(const Module& s, const Module& t) {
    check_same_algebra(s, t);
    ModuleMap f{s, t, {}};
    for (std::size_t v = 0; v < s.num_vertices(); ++v) f.blocks.emplace_back(t.dim_at(v), s.dim_at(v), s.field());
    return f;
  }
  static ModuleMap identity(const Module& m) {
    ModuleMap f{m, m, {}};
    for (std::size_t v = 0; v < m.num_vertices(); ++v) f.blocks.push_back(Matrix::identity(m.dim_at(v), m.field()));
    return f;
  }
  /// Build from a full target.dim() x source.dim() matrix (must be block diagonal).
  static ModuleMap from_full(const Module& s, const Module& t, const Matrix& m) {
    ModuleMap f{s, t, {}};
    for (std::size_t v = 0; v < s.num_vertices(); ++v) f.blocks.push_back(m.block(t.offset(v), s.offset(v), t.dim_at(v), s.dim_at(v)));
    return f;
  }

  Matrix full() const {
    Matrix m(target.dim(), source.dim(), source.field());
    for (std::size_t v = 0; v < blocks.size(); ++v) m.set_block(target.offset(v), source.offset(v), blocks[v]);
    return m;
  }

  bool is_module_map() const {
    const FdAlgebra& a = source.algebra();
    for (std::size_t b = 0; b < a.dim(); ++b)
      if (!(target.block(b) * blocks[a.src(b)] == blocks[a.tgt(b)] * source.block(b))) return false;
    return true;
  }

  bool is_zero() const {
    for (auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (auto& b : blocks) r += taurec::rank(b);
    return r;
  }
  bool is_injective() const { return rank() == source.dim(); }
  bool is_surjective() const { return rank() == target.dim(); }
  bool is_isomorphism() const { return source.dim() == target.dim() && is_injective(); }

  ModuleMap operator+(const ModuleMap& o) const {
    ModuleMap r = *this;
    for (std::size_t v = 0; v < blocks.size(); ++v) r.blocks[v] = blocks[v] + o.blocks[v];
    return r;
  }
  ModuleMap operator-(const ModuleMap& o) const { return *this + o.scaled(-1); }
  ModuleMap scaled(const Rational& c) const {
    ModuleMap r = *this;
    for (auto& b : r.blocks) b = b.scaled(c);
    return r;
  }
  /// Flattened coordinates (row-major per vertex block).
  bool operator==(const ModuleMap& o) const { return source == o.source && target == o.target && blocks == o.blocks; }

  Vec flatten() const {
    Vec x;
    for (auto& b : blocks)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x.push_back(b(i, j));
    return x;
  }
};

/// g * f = g after f
inline ModuleMap operator*(const ModuleMap& g, const ModuleMap& f) {
  if (g.source.dim_vector() != f.target.dim_vector()) throw DimensionMismatch("composition of non-composable maps");
  ModuleMap h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
  return h;
}

inline std::size_t flat_size(const Module& m, const Module& n) {
  std::size_t s = 0;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) s += m.dim_at(v) * n.dim_at(v);
  return s;
}

inline ModuleMap unflatten(const Module& m, const Module& n, const Vec& x) {
  ModuleMap f = ModuleMap::zero(m, n);
  std::size_t k = 0;
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    for (std::size_t i = 0; i < n.dim_at(v); ++i)
      for (std::size_t j = 0; j < m.dim_at(v); ++j) f.blocks[v].set(i, j, x[k++]);
  return f;
}

/// Basis of Hom_A(M, N), from the commutation equations over the generators.
inline std::vector<ModuleMap> hom_basis(const Module& m, const Module& n) {
  check_same_algebra(m, n);
  const FdAlgebra& a = m.algebra();
  const Field& f = a.field();
  const std::size_t nv = a.num_vertices();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dim_at(v) * m.dim_at(v);
  const std::size_t nvars = off[nv];
  if (nvars == 0) return {};
  auto var = [&](std::size_t v, std::size_t i, std::size_t j) { return off[v] + i * m.dim_at(v) + j; };
  std::vector<std::vector<Term>> eqs;
  for (auto g : a.generators()) {
    std::size_t s = a.src(g), t = a.tgt(g);
    const Matrix &ng = n.block(g), &mg = m.block(g);
    // (N(g) phi_s - phi_t M(g))[i][j] = 0
    for (std::size_t i = 0; i < n.dim_at(t); ++i)
      for (std::size_t j = 0; j < m.dim_at(s); ++j) {
        std::vector<Term> row;
        for (std::size_t k = 0; k < n.dim_at(s); ++k)
          if (ng(i, k) != 0) row.push_back({var(s, k, j), ng(i, k)});
        for (std::size_t k = 0; k < m.dim_at(t); ++k)
          if (mg(k, j) != 0) row.push_back({var(t, i, k), -mg(k, j)});
        if (!row.empty()) eqs.push_back(std::move(row));
      }
  }
  Matrix sys(eqs.size(), nvars, f);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (auto& t : eqs[r]) sys.add_to(r, t.index, t.coeff);
  Matrix k = kernel_basis(sys);
  std::vector<ModuleMap> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(unflatten(m, n, k.column_vector(c)));
  return out;
}

inline std::size_t dim_hom(const Module& m, const Module& n) { return hom_basis(m, n).size(); }

/// Span of maps in the flattened coordinates (columns).
inline Matrix flat_span(const std::vector<ModuleMap>& maps, std::size_t size, const Field& f) {
  Matrix s(size, maps.size(), f);
  for (std::size_t c = 0; c < maps.size(); ++c) {
    Vec x = maps[c].flatten();
    for (std::size_t r = 0; r < size; ++r) s.set(r, c, x[r]);
  }
  return s;
}

// ---- standard modules ----

inline Module simple_module(const FdAlgebra& a, std::size_t v) {
  std::vector<std::size_t> dims(a.num_vertices(), 0);
  dims[v] = 1;
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Matrix m(dims[a.tgt(b)], dims[a.src(b)], a.field());
    if (b == a.idempotent(v)) m.set(0, 0, 1);
    blocks.push_back(m);
  }
  return Module(a, dims, blocks);
}

/// Position of each basis element of A e_v in the graded basis of P(v).
inline std::vector<long> projective_positions(const FdAlgebra& a, std::size_t v) {
  std::vector<long> pos(a.dim(), -1);
  std::vector<std::size_t> count(a.num_vertices(), 0);
  for (auto b : a.basis_from(v)) pos[b] = static_cast<long>(count[a.tgt(b)]++);
  return pos;
}

/// Indecomposable projective P(v) = A e_v.
inline Module projective_module(const FdAlgebra& a, std::size_t v) {
  std::vector<std::size_t> dims(a.num_vertices(), 0);
  for (auto b : a.basis_from(v)) ++dims[a.tgt(b)];
  auto pos = projective_positions(a, v);
  std::vector<Matrix> blocks;
  for (std::size_t x = 0; x < a.dim(); ++x) {
    Matrix m(dims[a.tgt(x)], dims[a.src(x)], a.field());
    for (auto b : a.basis_from(v)) {
      if (a.tgt(b) != a.src(x)) continue;
      for (auto& t : a.product(x, b)) m.set(static_cast<std::size_t>(pos[t.index]), static_cast<std::size_t>(pos[b]), t.coeff);
    }
    blocks.push_back(m);
  }
  return Module(a, dims, blocks);
}

/// Position of each basis element of e_v A in the graded dual basis of I(v).
inline std::vector<long> injective_positions(const FdAlgebra& a, std::size_t v) {
  std::vector<long> pos(a.dim(), -1);
  std::vector<std::size_t> count(a.num_vertices(), 0);
  for (auto b : a.basis_to(v)) pos[b] = static_cast<long>(count[a.src(b)]++);
  return pos;
}

/// Indecomposable injective I(v) = D(e_v A), with (x.phi)(y) = phi(y x).
inline Module injective_module(const FdAlgebra& a, std::size_t v) {
  std::vector<std::size_t> dims(a.num_vertices(), 0);
  for (auto b : a.basis_to(v)) ++dims[a.src(b)];
  auto pos = injective_positions(a, v);
  std::vector<Matrix> blocks;
  for (std::size_t x = 0; x < a.dim(); ++x) {
    Matrix m(dims[a.tgt(x)], dims[a.src(x)], a.field());
    // x . b* = sum_y coeff_b(y x) y*, y in e_v A with src(y) = tgt(x)
    for (auto y : a.basis_to(v)) {
      if (a.src(y) != a.tgt(x)) continue;
      for (auto& t : a.product(y, x))
        if (pos[t.index] >= 0) m.set(static_cast<std::size_t>(pos[y]), static_cast<std::size_t>(pos[t.index]), t.coeff);
    }
    blocks.push_back(m);
  }
  return Module(a, dims, blocks);
}

struct DirectSum {
  Module module;
  std::vector<ModuleMap> inclusions, projections;
};

inline DirectSum direct_sum(const std::vector<Module>& parts, const FdAlgebra& a) {
  const std::size_t nv = a.num_vertices();
  std::vector<std::size_t> dims(nv, 0);
  for (auto& p : parts) {
    if (!same_algebra(p.algebra(), a)) throw InvalidModule("direct sum of modules over different algebras");
    for (std::size_t v = 0; v < nv; ++v) dims[v] += p.dim_at(v);
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::vector<Matrix> bs;
    for (auto& p : parts) bs.push_back(p.block(b));
    blocks.push_back(block_diagonal(bs, a.field()));
  }
  DirectSum d{Module(a, dims, blocks), {}, {}};
  std::vector<std::size_t> start(nv, 0);
  for (auto& p : parts) {
    ModuleMap inc = ModuleMap::zero(p, d.module), pr = ModuleMap::zero(d.module, p);
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t i = 0; i < p.dim_at(v); ++i) {
        inc.blocks[v].set(start[v] + i, i, 1);
        pr.blocks[v].set(i, start[v] + i, 1);
      }
      start[v] += p.dim_at(v);
    }
    d.inclusions.push_back(inc);
    d.projections.push_back(pr);
  }
  return d;
}

inline Module direct_sum_module(const std::vector<Module>& parts, const FdAlgebra& a) {
  return direct_sum(parts, a).module;
}

/// Map from a direct sum given by its components on the summands.
inline ModuleMap map_from_sum(const DirectSum& s, const std::vector<ModuleMap>& comps, const Module& target) {
  ModuleMap f = ModuleMap::zero(s.module, target);
  for (std::size_t k = 0; k < comps.size(); ++k) f = f + comps[k] * s.projections[k];
  return f;
}

/// Map into a direct sum given by its components.
inline ModuleMap map_to_sum(const DirectSum& s, const std::vector<ModuleMap>& comps, const Module& source) {
  ModuleMap f = ModuleMap::zero(source, s.module);
  for (std::size_t k = 0; k < comps.size(); ++k) f = f + s.inclusions[k] * comps[k];
  return f;
}

// ---- submodules and quotients ----

/// Graded subspace: per vertex a matrix whose columns span the piece at that vertex.
using GradedSubspace = std::vector<Matrix>;

inline GradedSubspace zero_subspace(const Module& m) {
  GradedSubspace u;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) u.emplace_back(m.dim_at(v), 0, m.field());
  return u;
}

inline GradedSubspace full_subspace(const Module& m) {
  GradedSubspace u;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) u.push_back(Matrix::identity(m.dim_at(v), m.field()));
  return u;
}

inline GradedSubspace subspace_sum(const GradedSubspace& a, const GradedSubspace& b) {
  GradedSubspace r;
  for (std::size_t v = 0; v < a.size(); ++v) r.push_back(subspace_sum(a[v], b[v]));
  return r;
}

inline std::size_t graded_dim(const GradedSubspace& u) {
  std::size_t d = 0;
  for (auto& x : u) d += rank(x);
  return d;
}

inline bool graded_contains(const GradedSubspace& u, const GradedSubspace& w) {
  for (std::size_t v = 0; v < u.size(); ++v)
    if (!subspace_contains(u[v], w[v])) return false;
  return true;
}

/// Smallest submodule containing the given graded subspace.
inline GradedSubspace submodule_closure(const Module& m, GradedSubspace u) {
  const FdAlgebra& a = m.algebra();
  for (auto& x : u) x = span_basis(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < a.dim(); ++b) {
      if (a.is_idempotent_basis(b)) continue;
      std::size_t s = a.src(b), t = a.tgt(b);
      if (u[s].cols() == 0) continue;
      Matrix img = m.block(b) * u[s];
      if (!subspace_contains(u[t], img)) {
        u[t] = subspace_sum(u[t], img);
        changed = true;
      }
    }
  }
  return u;
}

struct SubmoduleResult {
  Module module;
  ModuleMap inclusion;
};

inline SubmoduleResult submodule(const Module& m, const GradedSubspace& u) {
  const FdAlgebra& a = m.algebra();
  GradedSubspace basis;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    basis.push_back(span_basis(u[v]));
    dims.push_back(basis.back().cols());
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::size_t s = a.src(b), t = a.tgt(b);
    Matrix img = m.block(b) * basis[s];
    auto x = solve(basis[t], img);
    if (!x) throw InvalidModule("subspace is not a submodule");
    blocks.push_back(*x);
  }
  Module sub(a, dims, blocks);
  ModuleMap inc{sub, m, basis};
  return {sub, inc};
}

struct QuotientResult {
  Module module;
  ModuleMap projection;
  std::vector<Matrix> section;  // per vertex: complement basis, a linear right inverse of the projection
};

inline QuotientResult quotient(const Module& m, const GradedSubspace& u) {
  const FdAlgebra& a = m.algebra();
  std::vector<Matrix> sec, proj;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    Matrix ub = span_basis(u[v]);
    Matrix c = subspace_complement(ub);
    Matrix inv = *inverse(hstack(c, ub));
    proj.push_back(inv.block(0, 0, c.cols(), m.dim_at(v)));
    sec.push_back(c);
    dims.push_back(c.cols());
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::size_t s = a.src(b), t = a.tgt(b);
    blocks.push_back(proj[t] * m.block(b) * sec[s]);
  }
  Module q(a, dims, blocks);
  return {q, ModuleMap{m, q, proj}, sec};
}

inline GradedSubspace kernel_space(const ModuleMap& f) {
  GradedSubspace k;
  for (auto& b : f.blocks) k.push_back(kernel_basis(b));
  return k;
}

inline GradedSubspace image_space(const ModuleMap& f) {
  GradedSubspace k;
  for (auto& b : f.blocks) k.push_back(span_basis(b));
  return k;
}

inline SubmoduleResult kernel(const ModuleMap& f) { return submodule(f.source, kernel_space(f)); }
inline SubmoduleResult image(const ModuleMap& f) { return submodule(f.target, image_space(f)); }
inline QuotientResult cokernel(const ModuleMap& f) { return quotient(f.target, image_space(f)); }

/// Induced map on quotients: given f: M -> N with f(U) in W, the map M/U -> N/W.
inline ModuleMap induced_on_quotients(const QuotientResult& mu, const QuotientResult& nw, const ModuleMap& f) {
  ModuleMap g{mu.module, nw.module, {}};
  for (std::size_t v = 0; v < f.blocks.size(); ++v) g.blocks.push_back(nw.projection.blocks[v] * f.blocks[v] * mu.section[v]);
  return g;
}

/// Factor g: L -> N through an injective f: M -> N (f h = g); nullopt if im g is not inside im f.
inline std::optional<ModuleMap> factor_through_mono(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = ModuleMap::zero(g.source, f.source);
  for (std::size_t v = 0; v < f.blocks.size(); ++v) {
    auto x = solve(f.blocks[v], g.blocks[v]);
    if (!x) return std::nullopt;
    h.blocks[v] = *x;
  }
  return h;
}

/// Restriction of scalars along an algebra map phi: B -> A (M over A becomes a B-module).
/// Requires phi to map vertex idempotents to sums of vertex idempotents.
inline Module restrict_along(const AlgebraMorphism& phi, const Module& m) {
  const FdAlgebra &b = phi.source, &a = phi.target;
  if (!same_algebra(a, m.algebra())) throw InvalidModule("restrict_along: module is not over the target algebra");
  // vertex v of B acts by phi(e_v); it must be a sum of idempotents of A
  std::vector<std::vector<std::size_t>> over(b.num_vertices());
  std::vector<int> owner(a.num_vertices(), -1);
  for (std::size_t v = 0; v < b.num_vertices(); ++v) {
    Vec img = phi.image(b.idempotent(v));
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (img[k] == 0) continue;
      if (!a.is_idempotent_basis(k) || img[k] != 1) throw InvalidModule("restrict_along: vertex image is not a sum of vertex idempotents");
      std::size_t u = a.src(k);
      if (owner[u] >= 0) throw InvalidModule("restrict_along: vertex images overlap");
      owner[u] = static_cast<int>(v);
      over[v].push_back(u);
    }
  }
  std::vector<std::size_t> dims(b.num_vertices(), 0);
  for (std::size_t u = 0; u < a.num_vertices(); ++u) {
    if (owner[u] < 0) {
      if (m.dim_at(u)) throw InvalidModule("restrict_along: module lives on a vertex outside the image");
      continue;
    }
    dims[static_cast<std::size_t>(owner[u])] += m.dim_at(u);
  }
  std::vector<Matrix> blocks;
  for (std::size_t x = 0; x < b.dim(); ++x) {
    std::size_t s = b.src(x), t = b.tgt(x);
    Matrix full = m.action(phi.image(x));
    std::vector<std::size_t> rows, cols;
    for (auto u : over[t])
      for (std::size_t i = 0; i < m.dim_at(u); ++i) rows.push_back(m.offset(u) + i);
    for (auto u : over[s])
      for (std::size_t i = 0; i < m.dim_at(u); ++i) cols.push_back(m.offset(u) + i);
    blocks.push_back(full.select_rows(rows).select_columns(cols));
  }
  return Module(b, dims, blocks);
}

/// A module annihilated by <e_E>, viewed over A / <e_E>.
inline Module view_over_quotient(const Module& m, const VertexQuotient& q) {
  if (!same_algebra(m.algebra(), q.projection.source)) throw InvalidModule("view_over_quotient: module over another algebra");
  for (auto v : q.removed)
    if (m.dim_at(v)) throw InvalidModule("module is not annihilated by the vertex ideal (nonzero at " + m.algebra().vertex_label(v) + ")");
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    if (q.vertex_map[v] >= 0) dims.push_back(m.dim_at(v));
  std::vector<Matrix> blocks;
  for (auto b : q.kept_basis) blocks.push_back(m.block(b));
  return Module(q.algebra, dims, blocks);
}

/// Inverse of view_over_quotient: inflate a module over A / <e_E> to A.
inline Module inflate_from_quotient(const Module& m, const VertexQuotient& q) {
  const FdAlgebra& a = q.projection.source;
  std::vector<std::size_t> dims(a.num_vertices(), 0);
  for (std::size_t v = 0; v < a.num_vertices(); ++v)
    if (q.vertex_map[v] >= 0) dims[v] = m.dim_at(static_cast<std::size_t>(q.vertex_map[v]));
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    Matrix blk(dims[a.tgt(b)], dims[a.src(b)], a.field());
    if (blk.rows() && blk.cols()) {
      Vec img = q.projection.image(b);
      for (std::size_t k = 0; k < img.size(); ++k)
        if (img[k] != 0) blk = blk + m.block(k).scaled(img[k]);
    }
    blocks.push_back(blk);
  }
  return Module(a, dims, blocks);
}

}  // namespace taurec
