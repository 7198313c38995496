#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "taurec/catalog.hpp"

using namespace taurec;

namespace {

using DV = std::vector<std::size_t>;

// interval [i, j] over the linear quiver 3 -> 4 -> 5 with the path of length two killed
struct Interval {
  std::size_t i, j;
};

std::vector<Interval> intervals_oracle() { return {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}; }

DV interval_dim(const Interval& x) {
  DV d(3, 0);
  for (std::size_t v = x.i; v <= x.j; ++v) d[v] = 1;
  return d;
}

bool interval_hom_nonzero(const Interval& m, const Interval& n) { return n.i <= m.i && m.i <= n.j && n.j <= m.j; }

}  // namespace

TEST_CASE("A2 catalog") {
  auto k = knit_ar_quiver(fixtures::a2());
  const IndCatalog& c = *k.catalog;
  CHECK(c.size() == 3);
  std::set<DV> dims;
  for (auto& m : c.modules()) dims.insert(m.dim_vector());
  CHECK(dims == std::set<DV>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(verify_catalog(c).ok());
  CHECK(k.quiver.arrows.size() == 2);
  std::string dot = export_dot(k.quiver);
  std::size_t solid = 0, dashed = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) {
    auto eol = dot.find('\n', p);
    (dot.substr(p, eol - p).find("dashed") != std::string::npos ? dashed : solid)++;
  }
  CHECK(solid == 2);
  CHECK(dashed == 1);
}

TEST_CASE("catalog of the algebra with a zero relation matches the interval oracle") {
  const FdAlgebra& b = fixtures::b3();
  auto k = knit_ar_quiver(b);
  const IndCatalog& c = *k.catalog;
  auto ivs = intervals_oracle();
  REQUIRE(c.size() == ivs.size());
  std::vector<std::size_t> id(ivs.size());
  for (std::size_t x = 0; x < ivs.size(); ++x) {
    bool found = false;
    for (std::size_t y = 0; y < c.size(); ++y)
      if (c.module(y).dim_vector() == interval_dim(ivs[x])) {
        id[x] = y;
        found = true;
      }
    REQUIRE(found);
  }
  for (std::size_t x = 0; x < ivs.size(); ++x)
    for (std::size_t y = 0; y < ivs.size(); ++y) CHECK((c.hom_dim(id[x], id[y]) > 0) == interval_hom_nonzero(ivs[x], ivs[y]));
  CHECK(verify_catalog(c).ok());
}

TEST_CASE("catalog of the triangular algebra") {
  const FdAlgebra& l = fixtures::lambda();
  auto k = knit_ar_quiver(l);
  const IndCatalog& c = *k.catalog;
  CHECK(c.size() == 15);
  std::set<DV> dims;
  for (auto& m : c.modules()) dims.insert(m.dim_vector());
  CHECK(dims.size() == 15);
  auto report = verify_catalog(c);
  for (auto& r : report.checks) INFO(r.name << ": " << r.detail);
  CHECK(report.ok());
  for (std::size_t v = 0; v < 5; ++v) {
    CHECK(c.projective(v) >= 0);
    CHECK(c.injective(v) >= 0);
    CHECK(c.simple(v) >= 0);
  }
  // Auslander-Reiten formula on the table
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      if (c.tau(x) < 0) continue;
      CHECK(c.ext_dim(x, y) == dim_hom(c.module(y), c.module(static_cast<std::size_t>(c.tau(x)))) - hom_through_injectives_dim(c.module(y), c.module(static_cast<std::size_t>(c.tau(x)))));
    }
}

TEST_CASE("verification detects broken catalogs") {
  const FdAlgebra& a = fixtures::a2();
  auto k = knit_ar_quiver(a);
  auto mods = k.catalog->modules();
  SECTION("duplicate") {
    mods.push_back(mods.front());
    CHECK_FALSE(verify_catalog(IndCatalog(a, mods)).ok());
  }
  SECTION("missing injective") {
    std::vector<Module> keep;
    for (auto& m : mods)
      if (m.dim_vector() != DV{1, 0}) keep.push_back(m);
    IndCatalog bad(a, keep);
    CHECK_FALSE(verify_catalog(bad).ok());
  }
}

TEST_CASE("knitting stops on representation-infinite algebras") {
  QuiverPresentation q;
  q.name = "kronecker";
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
  auto k = compile_quiver_algebra(q);
  CHECK_THROWS_WITH(knit_ar_quiver(k.algebra, {64, 12}), Catch::Matchers::ContainsSubstring("knitting failed"));
}

TEST_CASE("identify and names") {
  auto k = knit_ar_quiver(fixtures::a2());
  const IndCatalog& c = *k.catalog;
  const FdAlgebra& a = fixtures::a2();
  Module m = direct_sum_module({simple_module(a, 0), projective_module(a, 0), simple_module(a, 0)}, a);
  auto ids = c.identify(m);
  REQUIRE(ids.size() == 2);
  std::size_t total = 0;
  for (auto& [id, mult] : ids) total += mult;
  CHECK(total == 3);
  CHECK(c.name(static_cast<std::size_t>(c.projective(0))) == "P(1)");
  CHECK(c.name(static_cast<std::size_t>(c.simple(0))) == "S(1)");
  CHECK(c.name(static_cast<std::size_t>(c.injective(1))) == "P(1)");
  CHECK(c.name(static_cast<std::size_t>(c.projective(1))) == "P(2)");
}
