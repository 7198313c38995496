#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "fixtures.hpp"
#include "taurec/recollement.hpp"

using namespace taurec;

namespace {

using DV = std::vector<std::size_t>;

const TriangularRecollement& ex51() {
  static const TriangularRecollement r = recollement_from_definitions(fixtures::ex51(), "ex51");
  return r;
}

// module over the triangular algebra with dimension vector (x | y)
std::size_t by_dims(const TriangularRecollement& r, const DV& x, const DV& y) {
  DV d = x;
  d.insert(d.end(), y.begin(), y.end());
  const IndCatalog& c = r.catalog(Side::B);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.module(i).dim_vector() == d) return i;
  FAIL("no indecomposable with dimension vector " + IndCatalog::dim_string(d));
  return 0;
}

std::size_t in_side(const TriangularRecollement& r, Side s, const DV& d) {
  const IndCatalog& c = r.catalog(s);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.module(i).dim_vector() == d) return i;
  FAIL("no indecomposable with dimension vector " + IndCatalog::dim_string(d));
  return 0;
}

// Lambda' modules
const DV P1{1, 1}, S1{1, 0}, S2{0, 1}, Z2{0, 0};
// Lambda'' modules
const DV P3{1, 1, 0}, P4{0, 1, 1}, P5{0, 0, 1}, S3{1, 0, 0}, S4{0, 1, 0}, Z3{0, 0, 0};

}  // namespace

TEST_CASE("recollement axioms on the example") {
  const auto& r = ex51();
  for (auto& c : r.axioms().checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(r.catalog(Side::A).size() == 3);
  CHECK(r.catalog(Side::B).size() == 15);
  CHECK(r.catalog(Side::C).size() == 5);
}

TEST_CASE("triples and functors") {
  const auto& r = ex51();
  const IndCatalog& cb = r.catalog(Side::B);
  for (std::size_t x = 0; x < cb.size(); ++x) CHECK(is_isomorphic(r.triple_to_module(r.module_to_triple(cb.module(x))), cb.module(x)));
  // j_!(P(4)) = (S(2), P(4))
  Module p4 = r.catalog(Side::C).module(in_side(r, Side::C, P4));
  Module j = r.apply(FunctorTag::j_lower, p4);
  CHECK(j.dim_vector() == DV{0, 1, 0, 1, 1});
  CHECK(r.apply(FunctorTag::i_star_upper, j).is_zero());
  // j_*(Y) is a triple with f = 0 even though M (x) Y is nonzero
  Module js = r.apply(FunctorTag::j_star, p4);
  CHECK(js.dim_vector() == DV{0, 0, 0, 1, 1});
  CHECK_THROWS_AS(r.apply(FunctorTag::i_star, p4), InvalidModule);
}

TEST_CASE("exactness certificates") {
  const auto& r = ex51();
  CHECK(r.exactness_certificate(FunctorTag::i_shriek).exact);
  CHECK(r.exactness_certificate(FunctorTag::j_lower).exact);
  CHECK(r.exactness_certificate(FunctorTag::j_star).exact);
  CHECK(r.exactness_certificate(FunctorTag::i_star).exact);
  CHECK(r.exactness_certificate(FunctorTag::j_star_upper).exact);
  auto c = r.exactness_certificate(FunctorTag::i_star_upper);
  CHECK_FALSE(c.exact);
  REQUIRE(c.witness);
  CHECK(c.witness->dim_left + c.witness->dim_right != c.witness->dim_middle);
}

TEST_CASE("simples") {
  auto s = simples_check(ex51());
  CHECK(s.ok);
  CHECK(s.total == 5);
  CHECK(s.left == 2);
  CHECK(s.right == 3);
}

TEST_CASE("image classes and conditions") {
  const auto& r = ex51();
  const IndCatalog& cb = r.catalog(Side::B);
  IdSet all = IdSet::full(cb.size());
  CHECK(r.image_class(FunctorTag::j_star_upper, all) == IdSet::full(r.catalog(Side::C).size()));
  CHECK(r.image_class(FunctorTag::i_star_upper, IdSet(cb.size())).empty());
  for (auto c : {Condition::i_i_shriek_T, Condition::i_i_star_F, Condition::j_j_star_F, Condition::j_j_star_T, Condition::j_shriek_j_star_F})
    CHECK(r.check_condition(c, all).holds);
}

TEST_CASE("part 1: gluing support tau-tilting modules") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet tl(3, {in_side(r, Side::A, S1)});
  IdSet tr(5, {in_side(r, Side::C, P5), in_side(r, Side::C, P4)});
  auto g = glue_support_tau_tilting(r, tl, tr);
  IdSet torsion(n, {by_dims(r, S2, S4), by_dims(r, P1, P4), by_dims(r, Z2, P4), by_dims(r, S2, P4), by_dims(r, Z2, S4), by_dims(r, Z2, P5), by_dims(r, S1, Z3), by_dims(r, P1, S4)});
  IdSet free(n, {by_dims(r, P1, Z3), by_dims(r, Z2, S3), by_dims(r, S2, Z3)});
  CHECK(g.glued.torsion == torsion);
  CHECK(g.glued.torsionfree == free);
  CHECK(g.result == IdSet(n, {by_dims(r, Z2, P5), by_dims(r, S2, P4), by_dims(r, Z2, P4), by_dims(r, P1, P4)}));
  CHECK_FALSE(g.hypothesis1);
  CHECK_FALSE(g.hypothesis2);
  CHECK(g.finiteness_direct);
  CHECK_FALSE(g.naive_equals);
  CHECK(detail::support_of(n, g.naive) == IdSet(n, {by_dims(r, S1, Z3), by_dims(r, Z2, P5), by_dims(r, S2, P4)}));
}

TEST_CASE("part 2: restriction with strategy a") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet t(n, {by_dims(r, P1, Z3), by_dims(r, S2, Z3), by_dims(r, S1, S3), by_dims(r, Z2, P5)});
  auto out = restrict_to_C(r, t, 'a');
  IdSet want(5, {in_side(r, Side::C, S3), in_side(r, Side::C, P5)});
  CHECK(out.result == want);
  CHECK(out.pair.torsion == want);
  CHECK(out.pair.torsionfree == IdSet(5, {in_side(r, Side::C, S4), in_side(r, Side::C, P3)}));
  CHECK(out.realized_checked);
}

TEST_CASE("part 3: restriction with strategy a") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet t(n, {by_dims(r, S2, S4), by_dims(r, P1, S4), by_dims(r, Z2, S4), by_dims(r, P1, P3)});
  auto out = restrict_to_C(r, t, 'a');
  CHECK(out.result == IdSet(5, {in_side(r, Side::C, S4), in_side(r, Side::C, P3)}));
  CHECK(out.pair.torsion == IdSet(5, {in_side(r, Side::C, S4), in_side(r, Side::C, P3), in_side(r, Side::C, S3)}));
  CHECK(out.pair.torsionfree == IdSet(5, {in_side(r, Side::C, P5), in_side(r, Side::C, P4)}));
}

TEST_CASE("part 4: gluing tau-tilting modules") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet tl(3, {in_side(r, Side::A, P1), in_side(r, Side::A, S1)});
  IdSet tr(5, {in_side(r, Side::C, P5), in_side(r, Side::C, P3), in_side(r, Side::C, S3)});
  auto g = glue_tau_tilting(r, tl, tr);
  REQUIRE_FALSE(g.refused);
  CHECK(g.basic == IdSet(n, {by_dims(r, P1, Z3), by_dims(r, S1, Z3), by_dims(r, Z2, P5), by_dims(r, P1, P3), by_dims(r, S1, S3)}));
  CHECK(g.tau_tilting);
  CHECK(g.gen_matches);
  CHECK(g.glued.torsionfree == IdSet(n, {by_dims(r, S2, Z3), by_dims(r, S2, S4), by_dims(r, Z2, S4)}));
}

TEST_CASE("part 5: refusal and the support tau-tilting route") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet tl(3, {in_side(r, Side::A, P1), in_side(r, Side::A, S1)});
  IdSet tr(5, {in_side(r, Side::C, P3), in_side(r, Side::C, P4), in_side(r, Side::C, S4)});
  auto g = glue_tau_tilting(r, tl, tr);
  CHECK(g.refused);
  CHECK(g.condition.image == IdSet(n, {by_dims(r, P1, Z3), by_dims(r, S1, Z3), by_dims(r, S2, Z3)}));
  CHECK(g.condition.failing == IdSet(n, {by_dims(r, S2, Z3)}));
  auto s = glue_support_tau_tilting(r, tl, tr);
  CHECK(s.result == IdSet(n, {by_dims(r, S2, P4), by_dims(r, P1, P4), by_dims(r, P1, Z3), by_dims(r, S2, S4), by_dims(r, P1, P3)}));
  CHECK_FALSE(s.naive_equals);
  CHECK(s.glued.torsionfree == IdSet(n, {by_dims(r, S2, Z3), by_dims(r, Z2, P5)}));
}

TEST_CASE("part 6: restriction with strategy b") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet t(n, {by_dims(r, S2, S4), by_dims(r, P1, P4), by_dims(r, Z2, P4), by_dims(r, P1, S4), by_dims(r, P1, P3)});
  CHECK(is_tau_tilting(r.catalog(Side::B), t));
  CHECK_THROWS_AS(restrict_to_C(r, t, 'a'), HypothesisRefusal);
  auto out = restrict_to_C(r, t, 'b');
  CHECK(out.result == IdSet(5, {in_side(r, Side::C, S4), in_side(r, Side::C, P4), in_side(r, Side::C, P3)}));
  CHECK(is_tau_tilting(r.catalog(Side::C), out.result));
  REQUIRE(out.lhs);
  CHECK_FALSE(*out.lhs);
  CHECK_FALSE(*out.rhs);
  CHECK(out.pair != out.image_pair);
  CHECK(out.pair.torsionfree == IdSet(5, {in_side(r, Side::C, P5)}));
  // i^*(T) is S(1) + S(1)
  IdMultiset tm;
  for (auto x : t.ids()) tm.push_back({x, 1});
  auto it = r.image_ids(FunctorTag::i_star_upper, tm);
  REQUIRE(it.size() == 1);
  CHECK(it[0].first == in_side(r, Side::A, S1));
  CHECK(it[0].second == 2);
  CHECK_FALSE(is_tau_tilting(r.catalog(Side::A), detail::support_of(3, it)));
  CHECK_THROWS_AS(restrict_to_A(r, t), HypothesisRefusal);
}

TEST_CASE("transport of approximations") {
  const auto& r = ex51();
  const std::size_t n = r.catalog(Side::B).size();
  IdSet tl(3, {in_side(r, Side::A, S1)});
  IdSet tr(5, {in_side(r, Side::C, P5), in_side(r, Side::C, P4)});
  auto g = glue_support_tau_tilting(r, tl, tr);
  Module s3 = r.catalog(Side::C).module(in_side(r, Side::C, S3));
  ModuleMap f = transport_left_approximation(r, s3, g.glued.torsion);
  CHECK(f.source == s3);
  ModuleMap h = transport_left_approximation(r, s3, IdSet::full(n));
  CHECK(h.is_module_map());
}

TEST_CASE("product recollement") {
  const FdAlgebra &a = fixtures::a2(), &b = fixtures::b3();
  TriangularRecollement r(Bimodule::zero(a, b));
  CHECK(r.axioms().ok());
  for (auto t : all_functors()) CHECK(r.is_exact(t));
  CHECK(r.catalog(Side::B).size() == 8);
  auto sa = enumerate_support_tau_tilting(r.catalog(Side::A));
  auto sc = enumerate_support_tau_tilting(r.catalog(Side::C));
  for (auto& tl : sa)
    for (auto& tr : sc) {
      auto g = glue_support_tau_tilting(r, tl, tr);
      CHECK(g.fast_path);
      CHECK(g.naive_equals);
      auto back = restrict_to_A(r, g.result);
      CHECK(back.result == tl);
    }
  CHECK(simples_check(r).ok);
}

TEST_CASE("corrupted bimodule is rejected") {
  Bimodule m = bimodule_from_morphism(fixtures::ex51().morphisms.at("phi"));
  const FdAlgebra& b = fixtures::b3();
  m.right_action[b.idempotent(0)] = m.right_action[b.idempotent(0)].scaled(2);
  CHECK_THROWS_AS(TriangularRecollement(m), Error);
}
