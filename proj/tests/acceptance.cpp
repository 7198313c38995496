// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "taurec/definition.hpp"
#include "taurec/embedded.hpp"
#include "taurec/example51.hpp"

using namespace taurec;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << ": " << title << " [" << o.detail << "; " << t.str() << " s]" << std::endl;
}

// Indecomposables of a linearly oriented type A quiver with monomial relations are the intervals
// containing no relation path.
std::size_t interval_count(const QuiverPresentation& q) {
  const std::size_t n = q.vertices.size();
  std::vector<long> next(n, -1), prev(n, -1), arrow_at(n, -1);
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    auto& a = q.arrows[k];
    if (next[a.src] != -1 || prev[a.tgt] != -1) throw std::runtime_error("quiver is not linearly oriented");
    next[a.src] = static_cast<long>(a.tgt);
    prev[a.tgt] = static_cast<long>(a.src);
    arrow_at[a.src] = static_cast<long>(k);
  }
  std::size_t start = 0;
  while (prev[start] != -1) start = static_cast<std::size_t>(prev[start]);
  std::vector<std::size_t> line{start};
  while (next[line.back()] != -1) line.push_back(static_cast<std::size_t>(next[line.back()]));
  if (line.size() != n) throw std::runtime_error("quiver is not connected");
  std::vector<std::set<std::size_t>> killed;
  for (auto& r : q.relations) {
    if (r.size() != 1) throw std::runtime_error("relation is not monomial");
    killed.emplace_back(r[0].path.begin(), r[0].path.end());
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::set<std::size_t> arrows;
      for (std::size_t k = i; k < j; ++k) arrows.insert(static_cast<std::size_t>(arrow_at[line[k]]));
      bool ok = true;
      for (auto& kp : killed)
        if (std::includes(arrows.begin(), arrows.end(), kp.begin(), kp.end())) ok = false;
      if (ok) ++count;
    }
  return count;
}

std::size_t catalan(std::size_t n) {
  std::size_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<IdSet> tau_rigid_sets(const IndCatalog& c) {
  const std::size_t n = c.size(), nv = c.algebra().num_vertices();
  std::vector<IdSet> out;
  IdSet cur(n);
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    out.push_back(cur);
    if (cur.size() == nv) return;
    for (std::size_t x = start; x < n; ++x) {
      IdSet next = cur;
      next.insert(x);
      if (!is_tau_rigid(c, next)) continue;
      cur = next;
      dfs(x + 1);
      cur.erase(x);
    }
  };
  dfs(0);
  return out;
}

Outcome part(const TriangularRecollement& r, const Json& expected, int p, const std::string& summary) {
  PartReport rep = run_example51_part(r, expected, p);
  std::string bad;
  for (auto& c : rep.checks)
    if (!c.passed) bad += c.name + ": got " + c.actual + ", expected " + c.expected + "; ";
  if (!rep.error.empty()) bad += rep.error;
  return {rep.ok(), rep.ok() ? std::to_string(rep.checks.size()) + " comparisons; " + summary : bad};
}

}  // namespace

int main() {
  const Definitions defs = parse_definitions(embedded::ex51_definition);
  const Json expected = Json::parse(embedded::ex51_expected);
  std::optional<TriangularRecollement> rec;
  double build_secs = 0;
  {
    auto t0 = Clock::now();
    rec.emplace(recollement_from_definitions(defs, "ex51", false));
    build_secs = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  const TriangularRecollement& r = *rec;
  const IndCatalog &ca = r.catalog(Side::A), &cb = r.catalog(Side::B), &cc = r.catalog(Side::C);

  report(1, "recollement axioms on all catalog modules", [&] {
    auto t0 = Clock::now();
    VerifyReport v = r.verify_axioms();
    double secs = std::chrono::duration<double>(Clock::now() - t0).count() + build_secs;
    std::string failed;
    for (auto& c : v.checks)
      if (!c.passed) failed += c.name + " ";
    const std::vector<std::string> required = {"adjunction_dimensions", "unit_counit_isomorphisms", "vanishing_composites", "image_equals_kernel", "four_term_sequences"};
    for (auto& name : required) {
      bool seen = false;
      for (auto& c : v.checks) seen = seen || c.name == name;
      if (!seen) failed += "missing:" + name + " ";
    }
    bool pass = failed.empty() && cb.size() == 15 && secs < 10;
    return Outcome{pass, std::to_string(v.checks.size()) + " checks on " + std::to_string(cb.size()) + " modules" + (failed.empty() ? "" : ", failed: " + failed)};
  });

  report(2, "simples of the glued algebra", [&] {
    SimplesReport s = simples_check(r);
    bool pass = s.ok && s.total == 5 && s.left == 2 && s.right == 3;
    return Outcome{pass, s.detail};
  });

  report(3, "catalog sizes", [&] {
    std::size_t oa = interval_count(defs.algebra("Lprime").presentation), oc = interval_count(defs.algebra("Ldprime").presentation);
    bool pass = ca.size() == oa && cc.size() == oc && oa == 3 && oc == 5 && cb.size() == 15;
    return Outcome{pass, std::to_string(ca.size()) + ", " + std::to_string(cc.size()) + ", " + std::to_string(cb.size()) + " (interval counts " + std::to_string(oa) + ", " + std::to_string(oc) + ")"};
  });

  report(4, "part 1: glued support tau-tilting module", [&] {
    IdSet tl(ca.size(), {static_cast<std::size_t>(ca.simple(0))});
    IdSet tr(cc.size(), {static_cast<std::size_t>(cc.projective(2)), static_cast<std::size_t>(cc.projective(1))});
    GlueReport g = glue_support_tau_tilting(r, tl, tr);
    return part(r, expected, 1, "P(T) = " + r.name(Side::B, detail::as_multiset(g.result)) + "; " + g.note);
  });
  report(5, "part 2: restriction by strategy a", [&] { return part(r, expected, 2, "j^*(T) realises (j^*(T), j^*(F))"); });
  report(6, "part 3: restriction by strategy a", [&] { return part(r, expected, 3, "basic j^*(T) = S(4)+P(3)"); });
  report(7, "part 4: glued tau-tilting module", [&] { return part(r, expected, 4, "5 summands, Gen T is the glued class"); });
  report(8, "part 5: refusal and the support tau-tilting route", [&] { return part(r, expected, 5, "witness outside T; P(T) differs from i_*(T') + j_!(T'')"); });
  report(9, "part 6: restriction by strategy b", [&] { return part(r, expected, 6, "induced pair differs; i^*(T) = S(1)+S(1) not tau-tilting"); });

  report(10, "support tau-tilting modules and torsion classes are in bijection", [&] {
    std::string detail;
    bool pass = true;
    for (Side s : {Side::A, Side::C, Side::B}) {
      const IndCatalog& c = r.catalog(s);
      auto st = enumerate_support_tau_tilting(c);
      auto tors = enumerate_torsion_classes(c);
      std::set<IdSet> images;
      for (auto& t : st) {
        IdSet g = gen_class(c, t);
        images.insert(g);
        if (ext_projectives(c, g) != t) pass = false;
      }
      for (auto& t : tors)
        if (gen_class(c, ext_projectives(c, t)) != t) pass = false;
      if (images.size() != st.size() || std::vector<IdSet>(images.begin(), images.end()) != tors) pass = false;
      detail += c.algebra().name() + ": " + std::to_string(st.size()) + "/" + std::to_string(tors.size()) + "; ";
      if (s == Side::A && st.size() != catalan(3)) pass = false;
    }
    return Outcome{pass, detail + "A2 oracle " + std::to_string(catalan(3))};
  });

  report(11, "glued classes under the first gluing hypothesis", [&] {
    auto sa = enumerate_support_tau_tilting(ca), sc = enumerate_support_tau_tilting(cc);
    std::size_t pairs = 0, hyp = 0, bad = 0;
    for (auto& tl : sa)
      for (auto& tr : sc) {
        ++pairs;
        TorsionPair g = glue_torsion_pair(r, pair_of(ca, tl), pair_of(cc, tr));
        if (!r.is_exact(FunctorTag::i_shriek) || !r.check_condition(Condition::i_i_shriek_T, g.torsion).holds) continue;
        ++hyp;
        if (!is_torsion_class(cb, g.torsion) || !is_functorially_finite(cb, g.torsion) || gen_class(cb, ext_projectives(cb, g.torsion)) != g.torsion) ++bad;
      }
    return Outcome{bad == 0 && hyp > 0, std::to_string(hyp) + " of " + std::to_string(pairs) + " pairs satisfy the hypothesis, " + std::to_string(bad) + " failures"};
  });

  report(12, "internal consistency of independent computations", [&] {
    std::size_t modules = 0, pairs = 0, candidates = 0;
    std::string bad;
    for (Side s : {Side::A, Side::C, Side::B}) {
      const IndCatalog& c = r.catalog(s);
      for (std::size_t i = 0; i < c.size(); ++i) {
        ++modules;
        Module t1 = tau(c.module(i)), t2 = tau_dtr(c.module(i));
        if (t1.dim_vector() != t2.dim_vector() || (!t1.is_zero() && !is_isomorphic(t1, t2))) bad += "tau " + c.name(i) + "; ";
      }
      for (std::size_t m = 0; m < c.size(); ++m) {
        Module tm = tau(c.module(m));
        for (std::size_t n = 0; n < c.size(); ++n) {
          ++pairs;
          std::size_t ext = ext1_dim(c.module(m), c.module(n));
          std::size_t rhs = tm.is_zero() ? 0 : dim_hom(c.module(n), tm) - hom_through_injectives_dim(c.module(n), tm);
          if (ext != rhs) bad += "AR formula (" + c.name(m) + "," + c.name(n) + "); ";
        }
      }
      for (auto& t : tau_rigid_sets(c)) {
        ++candidates;
        check_support_tau_tilting(c, t);
      }
    }
    return Outcome{bad.empty(), std::to_string(modules) + " modules, " + std::to_string(pairs) + " pairs, " + std::to_string(candidates) + " tau-rigid candidates" + (bad.empty() ? "" : "; " + bad)};
  });

  return failures == 0 ? 0 : 1;
}
