#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "decompose.hpp"

namespace taurec {

/// (catalog id, multiplicity) pairs, sorted by id.
using IdMultiset = std::vector<std::pair<std::size_t, std::size_t>>;

struct CatalogLimits {
  std::size_t max_nodes = 512;
  std::size_t max_dim = 64;
};

struct ARArrow {
  std::size_t from, to, multiplicity;
};

struct ARQuiver {
  std::size_t num_nodes = 0;
  std::vector<ARArrow> arrows;
  std::vector<long> tau;  // tau[x] = id of tau X, or -1 for projectives
  std::vector<std::vector<std::size_t>> dim_vectors;
};

/// Complete list of indecomposables of a representation-finite algebra, up to isomorphism,
/// with Hom/Ext/tau tables.
class IndCatalog {
 public:
  IndCatalog(FdAlgebra a, std::vector<Module> modules) : alg_(std::move(a)), modules_(std::move(modules)) { build_tables(); }

  const FdAlgebra& algebra() const { return alg_; }
  std::size_t size() const { return modules_.size(); }
  const Module& module(std::size_t id) const { return modules_.at(id); }
  const std::vector<Module>& modules() const { return modules_; }
  long tau(std::size_t id) const { return tau_[id]; }
  long tau_inverse(std::size_t id) const { return tau_inv_[id]; }
  std::size_t hom_dim(std::size_t x, std::size_t y) const { return hom_[x][y].size(); }
  std::size_t ext_dim(std::size_t x, std::size_t y) const { return ext_[x][y]; }
  const std::vector<ModuleMap>& hom(std::size_t x, std::size_t y) const { return hom_[x][y]; }
  long projective(std::size_t v) const { return proj_[v]; }
  long injective(std::size_t v) const { return inj_[v]; }
  long simple(std::size_t v) const { return simple_[v]; }
  bool is_projective(std::size_t id) const { return tau_[id] == -1; }
  bool is_injective(std::size_t id) const { return tau_inv_[id] == -1; }
  /// Modules whose tau-translates or radical summands are not in the catalog.
  const std::vector<std::string>& missing() const { return missing_; }
  static constexpr long outside = -2;
  /// Summands of rad P(v) as catalog ids.
  const IdMultiset& radical_summands(std::size_t v) const { return rad_[v]; }

  /// Id of an indecomposable module, or -1 if it is not in the catalog.
  long find(const Module& m) const {
    for (std::size_t i = 0; i < modules_.size(); ++i)
      if (modules_[i].dim_vector() == m.dim_vector() && is_isomorphic_indecomposable(modules_[i], m)) return static_cast<long>(i);
    return -1;
  }
  std::size_t id_of(const Module& m) const {
    long i = find(m);
    if (i < 0) throw InternalConsistencyError("indecomposable module outside the catalog (dim vector " + dim_string(m.dim_vector()) + ")");
    return static_cast<std::size_t>(i);
  }
  /// Decompose and identify every summand.
  IdMultiset identify(const Module& m) const {
    std::map<std::size_t, std::size_t> count;
    if (!m.is_zero()) {
      for (auto& s : decompose(m)) ++count[id_of(s.module)];
    }
    return {count.begin(), count.end()};
  }

  Module sum_of(const IdMultiset& ids) const {
    std::vector<Module> parts;
    for (auto [id, k] : ids)
      for (std::size_t i = 0; i < k; ++i) parts.push_back(modules_[id]);
    return direct_sum_module(parts, alg_);
  }
  Module sum_of(const std::vector<std::size_t>& ids) const {
    std::vector<Module> parts;
    for (auto id : ids) parts.push_back(modules_[id]);
    return direct_sum_module(parts, alg_);
  }

  static std::string dim_string(const std::vector<std::size_t>& d) {
    std::string s;
    for (auto x : d) s += std::to_string(x);
    return s;
  }
  std::string dim_string(std::size_t id) const { return dim_string(modules_[id].dim_vector()); }

  /// Short name: P(v), S(v), I(v) when applicable, else X<id>.
  std::string name(std::size_t id) const {
    for (std::size_t v = 0; v < alg_.num_vertices(); ++v)
      if (proj_[v] == static_cast<long>(id)) return "P(" + alg_.vertex_label(v) + ")";
    for (std::size_t v = 0; v < alg_.num_vertices(); ++v)
      if (simple_[v] == static_cast<long>(id)) return "S(" + alg_.vertex_label(v) + ")";
    for (std::size_t v = 0; v < alg_.num_vertices(); ++v)
      if (inj_[v] == static_cast<long>(id)) return "I(" + alg_.vertex_label(v) + ")";
    return "X" + std::to_string(id);
  }

  /// Irreducible-map multiplicity from x to y, derived from meshes and the radicals of projectives.
  std::size_t arrow_multiplicity(std::size_t x, std::size_t y) const {
    // y projective: multiplicity of x in rad y; otherwise m(x -> y) = m(tau y -> x)
    for (std::size_t v = 0; v < alg_.num_vertices(); ++v)
      if (proj_[v] == static_cast<long>(y)) {
        for (auto [id, k] : rad_[v])
          if (id == x) return k;
        return 0;
      }
    long ty = tau_[y];
    if (ty < 0) return 0;
    return arrow_multiplicity(static_cast<std::size_t>(ty), x);
  }

  ARQuiver quiver() const {
    ARQuiver q;
    q.num_nodes = size();
    q.tau = tau_;
    for (auto& m : modules_) q.dim_vectors.push_back(m.dim_vector());
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (auto k = arrow_multiplicity(x, y)) q.arrows.push_back({x, y, k});
    return q;
  }

 private:
  void build_tables();

  FdAlgebra alg_;
  std::vector<Module> modules_;
  std::vector<long> tau_, tau_inv_, proj_, inj_, simple_;
  std::vector<IdMultiset> rad_;
  std::vector<std::string> missing_;
  std::vector<std::vector<std::vector<ModuleMap>>> hom_;
  std::vector<std::vector<std::size_t>> ext_;
};

inline void IndCatalog::build_tables() {
  const std::size_t n = modules_.size(), nv = alg_.num_vertices();
  for (auto& m : modules_)
    if (!same_algebra(m.algebra(), alg_)) throw InvalidModule("catalog module over a different algebra");
  auto find_or = [&](const Module& m) { return m.is_zero() ? -1L : find(m); };
  proj_.assign(nv, -1);
  inj_.assign(nv, -1);
  simple_.assign(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    proj_[v] = find_or(projective_module(alg_, v));
    inj_[v] = find_or(injective_module(alg_, v));
    simple_[v] = find_or(simple_module(alg_, v));
  }
  tau_.assign(n, -1);
  tau_inv_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    Module t = taurec::tau(modules_[i]);
    if (!t.is_zero()) {
      tau_[i] = find(t);
      if (tau_[i] < 0) {
        tau_[i] = outside;
        missing_.push_back("tau of " + std::to_string(i));
      }
    }
    Module ti = taurec::tau_inverse(modules_[i]);
    if (!ti.is_zero()) {
      tau_inv_[i] = find(ti);
      if (tau_inv_[i] < 0) {
        tau_inv_[i] = outside;
        missing_.push_back("tau inverse of " + std::to_string(i));
      }
    }
  }
  rad_.assign(nv, {});
  for (std::size_t v = 0; v < nv; ++v) {
    try {
      rad_[v] = identify(radical(projective_module(alg_, v)).module);
    } catch (const InternalConsistencyError&) {
      missing_.push_back("a summand of rad P(" + alg_.vertex_label(v) + ")");
    }
  }
  hom_.assign(n, std::vector<std::vector<ModuleMap>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hom_[i][j] = hom_basis(modules_[i], modules_[j]);
  ext_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (tau_[i] == -1) continue;  // projective
    Presentation pr = minimal_projective_presentation(modules_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t homo = dim_hom(pr.syzygy.module, modules_[j]);
      if (homo == 0) continue;
      std::vector<ModuleMap> restricted;
      for (auto& h : hom_basis(pr.p0.module(), modules_[j])) restricted.push_back(h * pr.syzygy.inclusion);
      ext_[i][j] = homo - rank(flat_span(restricted, flat_size(pr.syzygy.module, modules_[j]), alg_.field()));
    }
  }
}

struct KnitResult {
  std::shared_ptr<const IndCatalog> catalog;
  ARQuiver quiver;
};

/// Knit the AR quiver: the tau^{-1}-closure of the indecomposable projectives, with the
/// irreducible maps derived from meshes and every mesh dimension identity checked.
inline KnitResult knit_ar_quiver(const FdAlgebra& a, const CatalogLimits& limits = {}) {
  std::vector<Module> nodes;
  auto known = [&](const Module& m) {
    for (auto& x : nodes)
      if (x.dim_vector() == m.dim_vector() && is_isomorphic_indecomposable(x, m)) return true;
    return false;
  };
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    Module p = projective_module(a, v);
    if (!known(p)) nodes.push_back(p);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Module y = tau_inverse(nodes[i]);
    if (y.is_zero()) continue;
    if (y.dim() > limits.max_dim) throw Error("knitting failed: module dimension exceeds " + std::to_string(limits.max_dim) + " (likely representation-infinite)");
    if (known(y)) throw Error("knitting failed: tau inverse of node " + std::to_string(i) + " repeats an existing node");
    nodes.push_back(y);
    if (nodes.size() > limits.max_nodes) throw Error("knitting failed: more than " + std::to_string(limits.max_nodes) + " nodes (likely representation-infinite)");
  }
  auto cat = std::make_shared<IndCatalog>(a, std::move(nodes));
  if (!cat->missing().empty()) throw Error("knitting failed: " + cat->missing().front() + " lies outside the tau-orbits of the projectives");
  ARQuiver q = cat->quiver();
  // mesh identity: dim L + dim tau^{-1} L = sum of multiplicity * dim over arrows out of L
  for (std::size_t l = 0; l < cat->size(); ++l) {
    long t = cat->tau_inverse(l);
    if (t < 0) continue;
    std::vector<std::size_t> lhs = cat->module(l).dim_vector(), rhs(a.num_vertices(), 0);
    for (std::size_t v = 0; v < lhs.size(); ++v) lhs[v] += cat->module(static_cast<std::size_t>(t)).dim_at(v);
    for (auto& ar : q.arrows)
      if (ar.from == l)
        for (std::size_t v = 0; v < rhs.size(); ++v) rhs[v] += ar.multiplicity * cat->module(ar.to).dim_at(v);
    if (lhs != rhs) throw Error("knitting failed: mesh dimension mismatch at node " + std::to_string(l));
  }
  return {cat, q};
}

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    for (auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Re-check a catalog from the definitions.
inline VerifyReport verify_catalog(const IndCatalog& c) {
  VerifyReport r;
  const FdAlgebra& a = c.algebra();
  const std::size_t n = c.size();
  {
    std::string bad;
    for (std::size_t i = 0; i < n; ++i)
      if (!is_indecomposable(c.module(i))) bad += " " + std::to_string(i);
    r.checks.push_back({"indecomposable", bad.empty(), bad.empty() ? "" : "decomposable entries:" + bad});
  }
  {
    std::string bad;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (c.module(i).dim_vector() == c.module(j).dim_vector() && is_isomorphic_indecomposable(c.module(i), c.module(j)))
          bad += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    r.checks.push_back({"pairwise_non_isomorphic", bad.empty(), bad.empty() ? "" : "isomorphic pairs:" + bad});
  }
  {
    std::string bad;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
      if (c.projective(v) < 0) bad += " P(" + a.vertex_label(v) + ")";
      if (c.injective(v) < 0) bad += " I(" + a.vertex_label(v) + ")";
    }
    r.checks.push_back({"projectives_and_injectives_present", bad.empty(), bad.empty() ? "" : "missing:" + bad});
  }
  {
    std::string bad;
    for (auto& m : c.missing()) bad += " " + m;
    r.checks.push_back({"tau_closed", bad.empty(), bad.empty() ? "" : "outside the catalog:" + bad});
  }
  {
    std::string bad;
    for (std::size_t i = 0; i < n; ++i) {
      bool proj = false, inj = false;
      for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        proj = proj || c.projective(v) == static_cast<long>(i);
        inj = inj || c.injective(v) == static_cast<long>(i);
      }
      if (proj != (c.tau(i) < 0) || inj != (c.tau_inverse(i) < 0)) bad += " " + std::to_string(i);
      if (c.tau(i) >= 0 && c.tau_inverse(static_cast<std::size_t>(c.tau(i))) != static_cast<long>(i)) bad += " " + std::to_string(i);
      if (c.tau_inverse(i) >= 0 && c.tau(static_cast<std::size_t>(c.tau_inverse(i))) != static_cast<long>(i)) bad += " " + std::to_string(i);
    }
    r.checks.push_back({"tau_table", bad.empty(), bad.empty() ? "" : "inconsistent entries:" + bad});
  }
  {
    std::string bad;
    for (std::size_t i = 0; i < n; ++i) {
      Module t1 = tau(c.module(i)), t2 = tau_dtr(c.module(i));
      if (t1.dim_vector() != t2.dim_vector() || (!t1.is_zero() && !is_isomorphic(t1, t2))) bad += " " + std::to_string(i);
    }
    r.checks.push_back({"tau_two_paths", bad.empty(), bad.empty() ? "" : "tau and D Tr differ at:" + bad});
  }
  {
    std::string bad;
    for (std::size_t m = 0; m < n; ++m) {
      long t = c.tau(m);
      if (t == IndCatalog::outside) continue;
      for (std::size_t nn = 0; nn < n; ++nn) {
        std::size_t rhs = 0;
        if (t >= 0) {
          const Module& tm = c.module(static_cast<std::size_t>(t));
          rhs = c.hom_dim(nn, static_cast<std::size_t>(t)) - hom_through_injectives_dim(c.module(nn), tm);
        }
        if (c.ext_dim(m, nn) != rhs) bad += " (" + std::to_string(m) + "," + std::to_string(nn) + ")";
      }
    }
    r.checks.push_back({"ar_formula", bad.empty(), bad.empty() ? "" : "Ext1(M,N) != stable Hom(N, tau M) at:" + bad});
  }
  {
    std::string bad;
    for (std::size_t i = 0; i < n; ++i) {
      if (c.module(i).dim() == 0) bad += " " + std::to_string(i);
      try {
        c.module(i).validate();
      } catch (const Error&) {
        bad += " " + std::to_string(i);
      }
    }
    r.checks.push_back({"module_axioms", bad.empty(), bad});
  }
  return r;
}

inline std::string export_dot(const ARQuiver& q, const std::vector<std::string>& names = {}) {
  std::ostringstream os;
  os << "digraph AR {\n";
  for (std::size_t i = 0; i < q.num_nodes; ++i) {
    os << "  X" << i << " [label=\"" << i << ": " << IndCatalog::dim_string(q.dim_vectors[i]);
    if (i < names.size()) os << "\\n" << names[i];
    os << "\"];\n";
  }
  for (auto& a : q.arrows) {
    os << "  X" << a.from << " -> X" << a.to;
    if (a.multiplicity > 1) os << " [label=\"" << a.multiplicity << "\"]";
    os << ";\n";
  }
  for (std::size_t i = 0; i < q.num_nodes; ++i)
    if (q.tau[i] >= 0) os << "  X" << i << " -> X" << q.tau[i] << " [style=dashed, constraint=false];\n";
  os << "}\n";
  return os.str();
}

}  // namespace taurec
