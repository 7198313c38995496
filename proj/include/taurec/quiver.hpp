#pragma once

#include <map>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace taurec {

struct Arrow {
  std::string label;
  std::size_t src, tgt;
};

/// Path written in function order: {b, a} is "b*a", a applied first.
using Path = std::vector<std::size_t>;

struct RelationTerm {
  Rational coeff;
  Path path;
};
using Relation = std::vector<RelationTerm>;

struct QuiverPresentation {
  Field field;
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  std::size_t arrow_index(const std::string& label) const {
    for (std::size_t a = 0; a < arrows.size(); ++a)
      if (arrows[a].label == label) return a;
    throw Error("unknown arrow '" + label + "'");
  }
  std::size_t vertex_index(const std::string& label) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v] == label) return v;
    throw Error("unknown vertex '" + label + "'");
  }
};

struct QuiverAlgebra {
  FdAlgebra algebra;
  QuiverPresentation presentation;
  std::vector<Vec> arrow_elements;
  std::vector<Path> basis_paths;          // the path behind each basis element
  std::vector<std::size_t> basis_src;     // its source vertex (needed for trivial paths)
  std::size_t truncation = 0;             // all paths longer than this vanish

  Vec path_element(const Path& p, std::size_t start_vertex = 0) const {
    if (p.empty()) return algebra.basis_vector(algebra.idempotent(start_vertex));
    Vec x = arrow_elements.at(p.back());
    for (std::size_t k = p.size() - 1; k-- > 0;) x = algebra.multiply(arrow_elements.at(p[k]), x);
    return x;
  }
};

namespace detail {

struct PathKey {
  std::size_t len;
  std::size_t src, tgt;
  Path arrows;
};

inline std::string path_label(const QuiverPresentation& q, const Path& p, std::size_t v) {
  if (p.empty()) return "e" + q.vertices[v];
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "*" : "") + q.arrows[p[k]].label;
  return s;
}

}  // namespace detail

/// Compile kQ/I into structure constants.  The relations are truncated at path length N
/// for N = 1, 2, ...; the algebra is accepted once the dimension stabilises (d_N = d_{N+1}).
inline QuiverAlgebra compile_quiver_algebra(const QuiverPresentation& q, std::size_t length_cap = 64) {
  const Field& f = q.field;
  const std::size_t nv = q.vertices.size();
  if (nv == 0) throw InvalidAlgebra("quiver without vertices");
  for (auto& a : q.arrows)
    if (a.src >= nv || a.tgt >= nv) throw InvalidAlgebra("arrow " + a.label + " has an unknown endpoint");
  auto path_src = [&](const Path& p) { return q.arrows[p.back()].src; };
  auto path_tgt = [&](const Path& p) { return q.arrows[p.front()].tgt; };
  for (auto& rel : q.relations) {
    if (rel.empty()) throw InvalidAlgebra("empty relation");
    for (auto& t : rel) {
      if (t.path.empty()) throw InvalidAlgebra("relation term without arrows");
      for (std::size_t k = 0; k + 1 < t.path.size(); ++k)
        if (q.arrows[t.path[k]].src != q.arrows[t.path[k + 1]].tgt)
          throw InvalidAlgebra("relation contains a non-composable path " + detail::path_label(q, t.path, 0));
      if (path_src(t.path) != path_src(rel[0].path) || path_tgt(t.path) != path_tgt(rel[0].path))
        throw InvalidAlgebra("relation terms have different endpoints");
    }
  }

  // paths grouped by length; paths[L] lists the paths of length L (with endpoints)
  std::vector<std::vector<detail::PathKey>> by_len;
  by_len.push_back({});
  for (std::size_t v = 0; v < nv; ++v) by_len[0].push_back({0, v, v, {}});
  auto extend = [&]() {
    std::vector<detail::PathKey> next;
    for (auto& p : by_len.back())
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].src == p.tgt) {
          Path np;
          np.push_back(a);
          np.insert(np.end(), p.arrows.begin(), p.arrows.end());
          next.push_back({p.len + 1, p.src, q.arrows[a].tgt, np});
        }
    by_len.push_back(std::move(next));
  };

  struct Truncated {
    std::vector<detail::PathKey> paths;  // column order: longest first
    std::map<Path, std::size_t> col;
    std::vector<std::size_t> basis_cols;  // non-pivot columns
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t dim;
  };
  auto truncate = [&](std::size_t n) {
    while (by_len.size() <= n) extend();
    Truncated t;
    for (std::size_t l = n + 1; l-- > 0;)
      for (auto& p : by_len[l]) {
        t.col[p.arrows] = t.paths.size();
        t.paths.push_back(p);
      }
    // trivial paths share the empty arrow list; key them separately
    std::map<std::size_t, std::size_t> trivial_col;
    for (std::size_t c = 0; c < t.paths.size(); ++c)
      if (t.paths[c].len == 0) trivial_col[t.paths[c].src] = c;
    std::vector<Vec> rows;
    const std::size_t ncols = t.paths.size();
    for (auto& rel : q.relations) {
      std::size_t rs = path_src(rel[0].path), rt = path_tgt(rel[0].path);
      // u * rel * w for paths u starting at rt and w ending at rs
      for (std::size_t lu = 0; lu <= n; ++lu)
        for (auto& u : by_len[lu]) {
          if (u.src != rt) continue;
          for (std::size_t lw = 0; lu + lw <= n; ++lw)
            for (auto& w : by_len[lw]) {
              if (w.tgt != rs) continue;
              Vec row(ncols);
              bool any = false;
              for (auto& term : rel) {
                if (lu + lw + term.path.size() > n) continue;
                Path full = u.arrows;
                full.insert(full.end(), term.path.begin(), term.path.end());
                full.insert(full.end(), w.arrows.begin(), w.arrows.end());
                auto& c = row[t.col.at(full)];
                c = f.reduce(c + term.coeff);
                any = true;
              }
              if (any) rows.push_back(std::move(row));
            }
        }
    }
    Matrix m(rows.size(), ncols, f);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < ncols; ++c)
        if (rows[r][c] != 0) m.set(r, c, rows[r][c]);
    auto rr = rref(m);
    t.reduced = std::move(rr.reduced);
    t.pivots = std::move(rr.pivots);
    std::vector<bool> piv(ncols, false);
    for (auto p : t.pivots) piv[p] = true;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!piv[c]) t.basis_cols.push_back(c);
    for (auto& [v, c] : trivial_col)
      if (piv[c]) throw InvalidAlgebra("relations kill the vertex " + q.vertices[v]);
    t.dim = t.basis_cols.size();
    return t;
  };

  std::size_t n = 1;
  Truncated cur = truncate(n);
  while (true) {
    if (n >= length_cap) throw InvalidAlgebra("algebra " + q.name + " does not stabilise below path length " + std::to_string(length_cap) + " (infinite-dimensional or cap too small)");
    Truncated next = truncate(n + 1);
    if (next.dim == cur.dim) break;
    cur = std::move(next);
    ++n;
  }

  // express a path (column) in the basis
  const std::size_t dim = cur.dim;
  std::vector<long> basis_pos(cur.paths.size(), -1);
  for (std::size_t k = 0; k < dim; ++k) basis_pos[cur.basis_cols[k]] = static_cast<long>(k);
  std::vector<long> pivot_row(cur.paths.size(), -1);
  for (std::size_t r = 0; r < cur.pivots.size(); ++r) pivot_row[cur.pivots[r]] = static_cast<long>(r);
  auto reduce_col = [&](std::size_t c) {
    SparseVec s;
    if (basis_pos[c] >= 0) {
      s.push_back({static_cast<std::size_t>(basis_pos[c]), Rational(1)});
      return s;
    }
    std::size_t r = static_cast<std::size_t>(pivot_row[c]);
    for (std::size_t k = 0; k < dim; ++k) {
      const Rational& x = cur.reduced(r, cur.basis_cols[k]);
      if (x != 0) s.push_back({k, f.reduce(-x)});
    }
    return s;
  };
  auto reduce_path = [&](const detail::PathKey& p) -> SparseVec {
    if (p.len > n) return {};
    if (p.len == 0) {
      for (std::size_t c = 0; c < cur.paths.size(); ++c)
        if (cur.paths[c].len == 0 && cur.paths[c].src == p.src) return reduce_col(c);
    }
    return reduce_col(cur.col.at(p.arrows));
  };

  AlgebraSpec s;
  s.field = f;
  s.name = q.name;
  s.vertex_labels = q.vertices;
  s.vertex_basis.assign(nv, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& p = cur.paths[cur.basis_cols[k]];
    s.src.push_back(p.src);
    s.tgt.push_back(p.tgt);
    s.basis_labels.push_back(detail::path_label(q, p.arrows, p.src));
    if (p.len == 0) s.vertex_basis[p.src] = k;
  }
  s.products.assign(dim, std::vector<SparseVec>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& a = cur.paths[cur.basis_cols[i]];
      const auto& b = cur.paths[cur.basis_cols[j]];
      if (a.src != b.tgt) continue;
      detail::PathKey c{a.len + b.len, b.src, a.tgt, a.arrows};
      c.arrows.insert(c.arrows.end(), b.arrows.begin(), b.arrows.end());
      if (a.len == 0) c = b;
      else if (b.len == 0) c = a;
      s.products[i][j] = reduce_path(c);
    }
  QuiverAlgebra out{FdAlgebra(std::move(s)), q, {}, {}, {}, n};
  for (std::size_t k = 0; k < dim; ++k) {
    out.basis_paths.push_back(cur.paths[cur.basis_cols[k]].arrows);
    out.basis_src.push_back(cur.paths[cur.basis_cols[k]].src);
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    detail::PathKey p{1, q.arrows[a].src, q.arrows[a].tgt, {a}};
    out.arrow_elements.push_back(detail::dense_from(reduce_path(p), dim));
  }
  return out;
}

}  // namespace taurec
