#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace taurec {

using Rational = mpq_class;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Ground field tag: the rationals (modulus 0) or F_p.
///
/// Elements of F_p are stored as integral Rationals in [0, p).
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }

  bool is_rational() const { return p_ == 0; }
  std::uint64_t modulus() const { return p_; }
  bool operator==(const Field&) const = default;

  std::string name() const { return p_ == 0 ? "rational" : "fp " + std::to_string(p_); }

  Rational reduce(const Rational& x) const {
    if (p_ == 0) return x;
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class num = x.get_num() % p;
    if (num < 0) num += p;
    if (x.get_den() == 1) return Rational(num);
    mpz_class den = x.get_den() % p, inv;
    if (den == 0 || mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
      throw Error("denominator not invertible in F_" + std::to_string(p_));
    mpz_class r = (num * inv) % p;
    return Rational(r);
  }

  Rational inverse(const Rational& x) const {
    if (x == 0) throw Error("division by zero");
    if (p_ == 0) return 1 / x;
    mpz_class p(static_cast<unsigned long>(p_)), inv;
    mpz_class v = x.get_num();
    mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return Rational(inv);
  }

  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational div(const Rational& a, const Rational& b) const { return reduce(a * inverse(b)); }

 private:
  std::uint64_t p_ = 0;
};

inline Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw Error("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Dense matrix over a Field, row-major.  Every entry is kept reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = {})
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {}

  static Matrix identity(std::size_t n, Field field = {}) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols, Field field = {}) {
    return Matrix(rows, cols, field);
  }
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, Field field = {}) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }
  static Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows, Field field = {}) {
    std::vector<std::vector<Rational>> r;
    for (auto& row : rows) r.emplace_back(row.begin(), row.end());
    return from_rows(r, field);
  }
  static Matrix column(const std::vector<Rational>& v, Field field = {}) {
    Matrix m(v.size(), 1, field);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }
  // standard basis vector e_i in F^n
  static Matrix unit(std::size_t n, std::size_t i, Field field = {}) {
    Matrix m(n, 1, field);
    m.data_[i] = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v) { data_[i * cols_ + j] = field_.reduce(v); }
  void add_to(std::size_t i, std::size_t j, const Rational& v) {
    auto& x = data_[i * cols_ + j];
    x = field_.reduce(x + v);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
  }

  std::vector<Rational> column_vector(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix m(nr, nc, field_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    check_field(b);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
  }
  Matrix select_columns(const std::vector<std::size_t>& cs) const {
    Matrix m(rows_, cs.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m.data_[i * cs.size() + j] = (*this)(i, cs[j]);
    return m;
  }
  Matrix select_rows(const std::vector<std::size_t>& rs) const {
    Matrix m(rs.size(), cols_, field_);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.data_[i * cols_ + j] = (*this)(rs[i], j);
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.data_[j * rows_ + i] = (*this)(i, j);
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    check_field(o);
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
    Matrix m(rows_, o.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Rational& b = o(k, j);
          if (b != 0) m.data_[i * o.cols_ + j] += a * b;
        }
      }
    if (!field_.is_rational())
      for (auto& x : m.data_) x = field_.reduce(x);
    return m;
  }
  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix m(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.reduce(data_[i] + o.data_[i]);
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix m(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.reduce(data_[i] - o.data_[i]);
    return m;
  }
  Matrix operator-() const { return scaled(-1); }
  Matrix scaled(const Rational& c) const {
    Matrix m(*this);
    for (auto& x : m.data_) x = field_.reduce(x * c);
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
  }

  void check_field(const Matrix& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch("mixed field tags: " + field_.name() + " vs " + o.field_.name());
  }

 private:
  void check_same_shape(const Matrix& o) const {
    check_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0, cols_ = 0;
  Field field_;
  std::vector<Rational> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.str(); }

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  a.check_field(b);
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  a.check_field(b);
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column counts differ");
  Matrix m(a.rows() + b.rows(), a.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline Matrix block_diagonal(const std::vector<Matrix>& blocks, Field field) {
  std::size_t r = 0, c = 0;
  for (auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix m(r, c, field);
  r = c = 0;
  for (auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RrefResult rref(Matrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational t = m(p, j);
        m.set(p, j, m(r, j));
        m.set(r, j, t);
      }
    Rational inv = f.inverse(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j)
      if (m(r, j) != 0) m.set(r, j, m(r, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m.set(i, j, m(i, j) - factor * m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Columns form a basis of the null space {x : m x = 0}.
inline Matrix kernel_basis(const Matrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix k(m.cols(), free.size(), m.field());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k.set(free[t], t, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) k.set(pivots[i], t, -r(i, free[t]));
  }
  return k;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  a.check_field(b);
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  auto [r, pivots] = rref(hstack(a, b));
  for (auto p : pivots)
    if (p >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols(), a.field());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(pivots[i], j, r(i, a.cols() + j));
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto [r, pivots] = rref(hstack(m, Matrix::identity(m.rows(), m.field())));
  if (pivots.size() < m.rows() || (m.rows() > 0 && pivots[m.rows() - 1] >= m.cols())) return std::nullopt;
  return r.block(0, m.cols(), m.rows(), m.cols());
}

// ---- subspaces, represented by a matrix whose columns span them ----

/// Canonical basis (reduced echelon, as columns) of the span of the columns.
inline Matrix span_basis(const Matrix& u) {
  auto [r, pivots] = rref(u.transpose());
  return r.block(0, 0, pivots.size(), r.cols()).transpose();
}

inline std::size_t subspace_dim(const Matrix& u) { return rank(u); }

inline Matrix subspace_sum(const Matrix& u, const Matrix& v) { return span_basis(hstack(u, v)); }

inline Matrix subspace_intersection(const Matrix& u, const Matrix& v) {
  Matrix ub = span_basis(u), vb = span_basis(v);
  Matrix k = kernel_basis(hstack(ub, -vb));
  return span_basis(ub * k.block(0, 0, ub.cols(), k.cols()));
}

inline bool subspace_contains(const Matrix& u, const Matrix& vecs) {
  if (vecs.cols() == 0) return true;
  return rank(hstack(u, vecs)) == rank(u);
}

inline bool subspace_equal(const Matrix& u, const Matrix& v) {
  return span_basis(u) == span_basis(v);
}

/// Matrix whose null space is exactly the span of u.
inline Matrix annihilator(const Matrix& u) { return kernel_basis(span_basis(u).transpose()).transpose(); }

/// {x : f x in u}
inline Matrix subspace_preimage(const Matrix& f, const Matrix& u) {
  if (u.rows() != f.rows()) throw DimensionMismatch("preimage: ambient mismatch");
  Matrix q = annihilator(u);
  if (q.rows() == 0) return Matrix::identity(f.cols(), f.field());
  return kernel_basis(q * f);
}

/// Standard basis vectors completing span(u) to the whole space.
inline Matrix subspace_complement(const Matrix& u) {
  auto [r, pivots] = rref(u.transpose());
  std::vector<bool> used(u.rows(), false);
  for (auto p : pivots) used[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < u.rows(); ++j)
    if (!used[j]) rest.push_back(j);
  return Matrix::identity(u.rows(), u.field()).select_columns(rest);
}

/// Indices of a maximal independent subset of the columns (leftmost first).
inline std::vector<std::size_t> independent_columns(const Matrix& m) { return rref(m).pivots; }

// ---- polynomials (coefficient vectors, lowest degree first) ----

using Polynomial = std::vector<Rational>;

inline Polynomial characteristic_polynomial(Matrix a) {
  const Field& f = a.field();
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  // similarity to upper Hessenberg form
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && a(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational t = a(i, j);
        a.set(i, j, a(m, j));
        a.set(m, j, t);
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational t = a(j, i);
        a.set(j, i, a(j, m));
        a.set(j, m, t);
      }
    }
    for (std::size_t j = m + 1; j < n; ++j) {
      if (a(j, m - 1) == 0) continue;
      Rational u = f.div(a(j, m - 1), a(m, m - 1));
      for (std::size_t k = 0; k < n; ++k) a.set(j, k, a(j, k) - u * a(m, k));
      for (std::size_t k = 0; k < n; ++k) a.set(k, m, a(k, m) + u * a(k, j));
    }
  }
  std::vector<Polynomial> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t m = 1; m <= n; ++m) {
    Polynomial cur(m + 1);
    for (std::size_t k = 0; k < p[m - 1].size(); ++k) {
      cur[k + 1] = f.add(cur[k + 1], p[m - 1][k]);
      cur[k] = f.sub(cur[k], a(m - 1, m - 1) * p[m - 1][k]);
    }
    Rational t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, a(m - i, m - i - 1));
      Rational c = f.mul(t, a(m - i - 1, m - 1));
      for (std::size_t k = 0; k < p[m - i - 1].size(); ++k) cur[k] = f.sub(cur[k], c * p[m - i - 1][k]);
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

inline Rational evaluate(const Polynomial& p, const Rational& x, const Field& f) {
  Rational r = 0;
  for (std::size_t k = p.size(); k-- > 0;) r = f.add(f.mul(r, x), p[k]);
  return r;
}

/// Roots of p lying in the ground field, or nullopt when the search is not attempted
/// (F_p with very large p, or rational coefficients too large to factor by trial division).
inline std::optional<std::vector<Rational>> field_roots(Polynomial p, const Field& f) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  if (p[0] == 0) {
    roots.push_back(0);
    std::size_t z = 0;
    while (p[z] == 0) ++z;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(z));
  }
  if (!f.is_rational()) {
    if (f.modulus() > (1u << 16)) return std::nullopt;
    for (std::uint64_t x = 1; x < f.modulus(); ++x)
      if (evaluate(p, Rational(static_cast<unsigned long>(x)), f) == 0) roots.push_back(Rational(static_cast<unsigned long>(x)));
    return roots;
  }
  mpz_class l = 1;
  for (auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (auto& c : p) z.push_back(mpz_class(c * l));
  auto divisors = [](mpz_class n) -> std::optional<std::vector<mpz_class>> {
    n = abs(n);
    if (n > mpz_class("1000000000000")) return std::nullopt;
    std::vector<mpz_class> d;
    for (mpz_class i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        d.push_back(i);
        if (i * i != n) d.push_back(n / i);
      }
    return d;
  };
  auto num = divisors(z.front()), den = divisors(z.back());
  if (!num || !den) return std::nullopt;
  for (auto& a : *num)
    for (auto& b : *den)
      for (int s : {1, -1}) {
        Rational x(a * s, b);
        x.canonicalize();
        if (evaluate(p, x, f) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline bool is_nilpotent(const Matrix& m) {
  if (m.rows() == 0) return true;
  Matrix p = m;
  for (std::size_t k = 1; k < m.rows(); ++k) {
    if (p.is_zero()) return true;
    p = p * m;
  }
  return p.is_zero();
}

inline Matrix power(const Matrix& m, std::size_t k) {
  Matrix r = Matrix::identity(m.rows(), m.field());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace taurec
