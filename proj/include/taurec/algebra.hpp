#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace taurec {

struct Term {
  std::size_t index;
  Rational coeff;
  bool operator==(const Term&) const = default;
};
using SparseVec = std::vector<Term>;
using Vec = std::vector<Rational>;

struct AlgebraSpec {
  Field field;
  std::string name;
  std::vector<std::string> vertex_labels;
  std::vector<std::size_t> vertex_basis;  // basis index of the idempotent e_v
  std::vector<std::size_t> src, tgt;      // b in e_tgt A e_src
  std::vector<std::string> basis_labels;
  std::vector<std::vector<SparseVec>> products;  // products[i][j] = b_i * b_j
};

/// Basic finite-dimensional algebra given by structure constants in a basis
/// that contains the vertex idempotents and is vertex-homogeneous.
///
/// Cheap to copy; the data is shared and immutable.
class FdAlgebra {
 public:
  FdAlgebra() = default;
  explicit FdAlgebra(AlgebraSpec spec, bool check_associativity = true);

  std::size_t dim() const { return d_->spec.src.size(); }
  std::size_t num_vertices() const { return d_->spec.vertex_labels.size(); }
  const Field& field() const { return d_->spec.field; }
  const std::string& name() const { return d_->spec.name; }
  const std::string& vertex_label(std::size_t v) const { return d_->spec.vertex_labels.at(v); }
  const std::vector<std::string>& vertex_labels() const { return d_->spec.vertex_labels; }
  std::size_t vertex_index(const std::string& label) const {
    for (std::size_t v = 0; v < num_vertices(); ++v)
      if (vertex_label(v) == label) return v;
    throw Error("unknown vertex '" + label + "' in algebra " + name());
  }
  std::size_t idempotent(std::size_t v) const { return d_->spec.vertex_basis.at(v); }
  bool is_idempotent_basis(std::size_t b) const { return d_->is_idem[b]; }
  std::size_t src(std::size_t b) const { return d_->spec.src[b]; }
  std::size_t tgt(std::size_t b) const { return d_->spec.tgt[b]; }
  const std::string& basis_label(std::size_t b) const { return d_->spec.basis_labels[b]; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return d_->spec.products[i][j]; }
  const AlgebraSpec& spec() const { return d_->spec; }

  /// basis elements b with src(b) = v, ordered by (tgt, index): the graded basis of A e_v
  const std::vector<std::size_t>& basis_from(std::size_t v) const { return d_->from[v]; }
  /// basis elements b with tgt(b) = v, ordered by (src, index): e_v A
  const std::vector<std::size_t>& basis_to(std::size_t v) const { return d_->to[v]; }
  /// basis of e_u A e_v
  std::vector<std::size_t> corner(std::size_t u, std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t b = 0; b < dim(); ++b)
      if (tgt(b) == u && src(b) == v) r.push_back(b);
    return r;
  }

  /// Non-idempotent elements generating A together with the vertex idempotents.
  const std::vector<std::size_t>& generators() const { return d_->generators; }
  /// Columns span the Jacobson radical (coordinates in the basis).
  const Matrix& radical() const { return d_->radical; }
  bool radical_is_arrow_span() const { return d_->arrow_span_radical; }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        Rational c = x[i] * y[j];
        for (auto& t : product(i, j)) r[t.index] += c * t.coeff;
      }
    }
    for (auto& c : r) c = field().reduce(c);
    return r;
  }
  Vec basis_vector(std::size_t b) const {
    Vec v(dim());
    v[b] = 1;
    return v;
  }
  Vec unit() const {
    Vec v(dim());
    for (std::size_t u = 0; u < num_vertices(); ++u) v[idempotent(u)] = 1;
    return v;
  }
  /// Matrix of left multiplication by b_i.
  Matrix left_mult(std::size_t i) const {
    Matrix m(dim(), dim(), field());
    for (std::size_t j = 0; j < dim(); ++j)
      for (auto& t : product(i, j)) m.set(t.index, j, t.coeff);
    return m;
  }
  Matrix right_mult(std::size_t j) const {
    Matrix m(dim(), dim(), field());
    for (std::size_t i = 0; i < dim(); ++i)
      for (auto& t : product(i, j)) m.set(t.index, i, t.coeff);
    return m;
  }

  bool same_as(const FdAlgebra& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    const auto &a = d_->spec, &b = o.d_->spec;
    return a.field == b.field && a.vertex_labels == b.vertex_labels && a.vertex_basis == b.vertex_basis &&
           a.src == b.src && a.tgt == b.tgt && a.products == b.products;
  }
  bool valid() const { return static_cast<bool>(d_); }

  /// Stable structural digest (FNV-1a over the canonical text form).
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
      h = (h ^ 0xff) * 1099511628211ull;
    };
    const auto& s = d_->spec;
    mix(s.field.name());
    for (auto& l : s.vertex_labels) mix(l);
    for (std::size_t b = 0; b < dim(); ++b) mix(std::to_string(s.src[b]) + ">" + std::to_string(s.tgt[b]));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (auto& t : s.products[i][j]) mix(std::to_string(i) + "," + std::to_string(j) + ":" + std::to_string(t.index) + "=" + t.coeff.get_str());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  struct Data {
    AlgebraSpec spec;
    std::vector<bool> is_idem;
    std::vector<std::vector<std::size_t>> from, to;
    std::vector<std::size_t> generators;
    Matrix radical;
    bool arrow_span_radical = false;
    mutable std::shared_ptr<const Data> op;
    mutable std::weak_ptr<const Data> op_of;
  };
  void compute_radical();
  friend FdAlgebra opposite(const FdAlgebra& a);
  std::shared_ptr<const Data> d_;
};

inline bool same_algebra(const FdAlgebra& a, const FdAlgebra& b) { return a.same_as(b); }

namespace detail {

inline SparseVec sparse_from(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back({i, v[i]});
  return s;
}

inline Vec dense_from(const SparseVec& s, std::size_t n) {
  Vec v(n);
  for (auto& t : s) v[t.index] = t.coeff;
  return v;
}

}  // namespace detail

inline FdAlgebra::FdAlgebra(AlgebraSpec spec, bool check_associativity) {
  auto data = std::make_shared<Data>();
  const std::size_t n = spec.src.size(), nv = spec.vertex_labels.size();
  if (spec.tgt.size() != n || spec.products.size() != n) throw InvalidAlgebra("inconsistent basis data");
  if (spec.basis_labels.size() != n) {
    spec.basis_labels.resize(n);
    for (std::size_t b = 0; b < n; ++b)
      if (spec.basis_labels[b].empty()) spec.basis_labels[b] = "b" + std::to_string(b);
  }
  if (spec.vertex_basis.size() != nv) throw InvalidAlgebra("one idempotent per vertex required");
  if (nv == 0 && n > 0) throw InvalidAlgebra("algebra without vertices");
  for (auto& row : spec.products)
    if (row.size() != n) throw InvalidAlgebra("structure constant table is not square");
  for (auto& row : spec.products)
    for (auto& s : row)
      for (auto& t : s) {
        if (t.index >= n) throw InvalidAlgebra("structure constant index out of range");
        t.coeff = spec.field.reduce(t.coeff);
      }
  for (auto& row : spec.products)
    for (auto& s : row) std::erase_if(s, [](const Term& t) { return t.coeff == 0; });
  data->is_idem.assign(n, false);
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t e = spec.vertex_basis[v];
    if (e >= n) throw InvalidAlgebra("idempotent index out of range");
    if (spec.src[e] != v || spec.tgt[e] != v) throw InvalidAlgebra("idempotent e_" + spec.vertex_labels[v] + " is not in its own corner");
    data->is_idem[e] = true;
  }
  for (std::size_t b = 0; b < n; ++b)
    if (spec.src[b] >= nv || spec.tgt[b] >= nv) throw InvalidAlgebra("vertex index out of range");
  // homogeneity: b_i b_j lies in e_tgt(i) A e_src(j), and vanishes unless composable
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = spec.products[i][j];
      if (spec.src[i] != spec.tgt[j]) {
        if (!p.empty()) throw InvalidAlgebra("basis is not vertex-homogeneous: " + spec.basis_labels[i] + "*" + spec.basis_labels[j] + " != 0");
        continue;
      }
      for (auto& t : p)
        if (spec.tgt[t.index] != spec.tgt[i] || spec.src[t.index] != spec.src[j])
          throw InvalidAlgebra("basis is not vertex-homogeneous: product " + spec.basis_labels[i] + "*" + spec.basis_labels[j]);
    }
  // idempotents act as identities on their corners
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t e = spec.vertex_basis[v];
    for (std::size_t b = 0; b < n; ++b) {
      SparseVec id = {{b, Rational(1)}};
      if (spec.tgt[b] == v && spec.products[e][b] != id) throw InvalidAlgebra("e_" + spec.vertex_labels[v] + " is not a left identity on " + spec.basis_labels[b]);
      if (spec.src[b] == v && spec.products[b][e] != id) throw InvalidAlgebra("e_" + spec.vertex_labels[v] + " is not a right identity on " + spec.basis_labels[b]);
    }
  }
  if (check_associativity) {
    const Field& f = spec.field;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (spec.src[i] != spec.tgt[j] || data->is_idem[i] || data->is_idem[j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (spec.src[j] != spec.tgt[k] || data->is_idem[k]) continue;
          Vec l(n), r(n);
          for (auto& t : spec.products[i][j])
            for (auto& u : spec.products[t.index][k]) l[u.index] += t.coeff * u.coeff;
          for (auto& t : spec.products[j][k])
            for (auto& u : spec.products[i][t.index]) r[u.index] += t.coeff * u.coeff;
          for (std::size_t m = 0; m < n; ++m)
            if (f.reduce(l[m]) != f.reduce(r[m]))
              throw InvalidAlgebra("structure constants are not associative at (" + spec.basis_labels[i] + "," + spec.basis_labels[j] + "," + spec.basis_labels[k] + ")");
        }
      }
  }
  data->from.assign(nv, {});
  data->to.assign(nv, {});
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t b = 0; b < n; ++b) {
      if (spec.tgt[b] == u) data->from[spec.src[b]].push_back(b);
      if (spec.src[b] == u) data->to[spec.tgt[b]].push_back(b);
    }
  data->spec = std::move(spec);
  d_ = data;
  compute_radical();
}

inline void FdAlgebra::compute_radical() {
  auto data = std::const_pointer_cast<Data>(d_);
  const std::size_t n = dim();
  const Field& f = field();
  std::vector<std::size_t> rest;
  for (std::size_t b = 0; b < n; ++b)
    if (!data->is_idem[b]) rest.push_back(b);
  // candidate: span of the non-idempotent basis elements; conclusive when it is a nilpotent ideal
  bool ideal = true;
  for (std::size_t i = 0; i < n && ideal; ++i)
    for (std::size_t j = 0; j < n && ideal; ++j) {
      if (data->is_idem[i] && data->is_idem[j]) continue;
      for (auto& t : product(i, j))
        if (data->is_idem[t.index]) ideal = false;
    }
  bool nilpotent = false;
  if (ideal) {
    // J^k spanned by products; iterate until zero or stuck
    Matrix span = Matrix::identity(n, f).select_columns(rest);
    for (std::size_t step = 0; step <= n; ++step) {
      if (span.cols() == 0 || span.is_zero()) {
        nilpotent = true;
        break;
      }
      // span <- span * J
      Matrix next(n, 0, f);
      for (std::size_t c = 0; c < span.cols(); ++c) {
        Vec x = span.column_vector(c);
        for (auto j : rest) {
          Vec y = multiply(x, basis_vector(j));
          next = hstack(next, Matrix::column(y, f));
        }
      }
      span = span_basis(next);
    }
  }
  if (ideal && nilpotent) {
    data->radical = Matrix::identity(n, f).select_columns(rest);
    data->arrow_span_radical = true;
  } else if (f.is_rational()) {
    // Dickson: rad A = {x : tr(L_{xy}) = 0 for all y}
    Vec tr(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (auto& t : product(k, j))
          if (t.index == j) tr[k] += t.coeff;
    Matrix g(n, n, f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (auto& t : product(i, j)) s += t.coeff * tr[t.index];
        g.set(i, j, s);
      }
    data->radical = kernel_basis(g.transpose());
  } else {
    throw Inconclusive("cannot determine the radical of " + name() + " over " + f.name());
  }
  // primitivity: each corner e_v A e_v is local with one-dimensional top
  for (std::size_t v = 0; v < num_vertices(); ++v) {
    auto c = corner(v, v);
    Matrix cs = Matrix::identity(n, f).select_columns(c);
    std::size_t top = c.size() - subspace_intersection(cs, data->radical).cols();
    if (top != 1) throw InvalidAlgebra("idempotent e_" + vertex_label(v) + " is not primitive");
  }
  if (rank(data->radical) + num_vertices() != n) throw InvalidAlgebra("algebra is not basic over its vertices");
  // generators: radical basis elements independent modulo rad^2
  if (data->arrow_span_radical) {
    Matrix rad2(n, 0, f);
    for (auto i : rest)
      for (auto j : rest)
        if (!product(i, j).empty()) rad2 = hstack(rad2, Matrix::column(detail::dense_from(product(i, j), n), f));
    Matrix acc = span_basis(rad2);
    for (auto b : rest) {
      Matrix e = Matrix::unit(n, b, f);
      if (!subspace_contains(acc, e)) {
        data->generators.push_back(b);
        acc = subspace_sum(acc, e);
      }
    }
  } else {
    data->generators = rest;
  }
}

/// Linear map between algebras given on bases (target coordinates of each source basis element).
struct AlgebraMorphism {
  FdAlgebra source, target;
  Matrix matrix;  // target.dim() x source.dim()

  Vec apply(const Vec& x) const {
    Matrix r = matrix * Matrix::column(x, source.field());
    return r.column_vector(0);
  }
  Vec image(std::size_t b) const { return matrix.column_vector(b); }

  void validate() const {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) throw DimensionMismatch("morphism matrix shape");
    if (!(source.field() == target.field())) throw FieldMismatch("morphism between algebras over different fields");
    for (std::size_t i = 0; i < source.dim(); ++i)
      for (std::size_t j = 0; j < source.dim(); ++j) {
        Vec lhs = apply(detail::dense_from(source.product(i, j), source.dim()));
        Vec rhs = target.multiply(image(i), image(j));
        if (lhs != rhs) throw InvalidAlgebra("map is not multiplicative at (" + source.basis_label(i) + "," + source.basis_label(j) + ")");
      }
  }
  bool is_unital() const { return apply(source.unit()) == target.unit(); }
};

/// The opposite algebra: same basis, reversed products.  Cached so that
/// opposite(opposite(A)) is A itself.
inline FdAlgebra opposite(const FdAlgebra& a) {
  if (a.d_->op) {
    FdAlgebra r;
    r.d_ = a.d_->op;
    return r;
  }
  if (auto back = a.d_->op_of.lock()) {
    FdAlgebra r;
    r.d_ = back;
    return r;
  }
  AlgebraSpec s;
  s.field = a.field();
  s.name = a.name() + "^op";
  s.vertex_labels = a.vertex_labels();
  s.vertex_basis = a.spec().vertex_basis;
  s.src = a.spec().tgt;
  s.tgt = a.spec().src;
  s.basis_labels = a.spec().basis_labels;
  s.products.assign(a.dim(), std::vector<SparseVec>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s.products[i][j] = a.product(j, i);
  FdAlgebra r(std::move(s), false);
  a.d_->op = r.d_;
  r.d_->op_of = a.d_;
  return r;
}

struct VertexQuotient {
  FdAlgebra algebra;
  AlgebraMorphism projection;               // A -> A / <e_E>
  std::vector<std::size_t> removed;         // the vertices in E
  std::vector<long> vertex_map;             // vertex of A -> vertex of the quotient, or -1
  std::vector<std::size_t> kept_basis;      // basis of A whose images form the quotient basis
};

/// A / <sum of e_v, v in E>.  The quotient basis consists of images of basis elements of A.
inline VertexQuotient quotient_by_vertices(const FdAlgebra& a, std::vector<std::size_t> e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  if (e.size() == a.num_vertices()) throw Error("quotient by all vertices is the zero algebra");
  const std::size_t n = a.dim();
  const Field& f = a.field();
  // ideal spanned by b_i e_v b_j
  std::vector<Vec> gens;
  for (auto v : e)
    for (std::size_t i = 0; i < n; ++i) {
      if (a.src(i) != v) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (a.tgt(j) != v) continue;
        gens.push_back(a.multiply(a.basis_vector(i), a.basis_vector(j)));
      }
    }
  Matrix g(n, gens.size(), f);
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) g.set(r, c, gens[c][r]);
  Matrix ideal = span_basis(g);
  // greedy complement by basis elements, in index order
  std::vector<std::size_t> kept;
  Matrix acc = ideal;
  for (std::size_t b = 0; b < n; ++b) {
    Matrix u = Matrix::unit(n, b, f);
    if (!subspace_contains(acc, u)) {
      kept.push_back(b);
      acc = subspace_sum(acc, u);
    }
  }
  // coordinates: x = sum over kept of c_k b_k + ideal part
  Matrix basis = hstack(Matrix::identity(n, f).select_columns(kept), ideal);
  Matrix inv = *inverse(basis);
  Matrix proj = inv.block(0, 0, kept.size(), n);
  std::vector<long> vmap(a.num_vertices(), -1);
  AlgebraSpec s;
  s.field = f;
  s.name = a.name() + "/<e>";
  long nv = 0;
  for (std::size_t v = 0; v < a.num_vertices(); ++v)
    if (!std::binary_search(e.begin(), e.end(), v)) {
      vmap[v] = nv++;
      s.vertex_labels.push_back(a.vertex_label(v));
    }
  std::vector<long> pos(n, -1);
  for (std::size_t k = 0; k < kept.size(); ++k) pos[kept[k]] = static_cast<long>(k);
  for (std::size_t v = 0; v < a.num_vertices(); ++v)
    if (vmap[v] >= 0) {
      if (pos[a.idempotent(v)] < 0) throw InvalidAlgebra("idempotent absorbed by vertex ideal");
      s.vertex_basis.push_back(static_cast<std::size_t>(pos[a.idempotent(v)]));
    }
  for (auto b : kept) {
    s.src.push_back(static_cast<std::size_t>(vmap[a.src(b)]));
    s.tgt.push_back(static_cast<std::size_t>(vmap[a.tgt(b)]));
    s.basis_labels.push_back(a.basis_label(b));
  }
  s.products.assign(kept.size(), std::vector<SparseVec>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) {
      Vec prod = detail::dense_from(a.product(kept[i], kept[j]), n);
      Matrix c = proj * Matrix::column(prod, f);
      s.products[i][j] = detail::sparse_from(c.column_vector(0));
    }
  VertexQuotient q{FdAlgebra(std::move(s)), {}, e, vmap, kept};
  q.projection = AlgebraMorphism{a, q.algebra, proj};
  return q;
}

}  // namespace taurec
