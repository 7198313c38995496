#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "taurec/decompose.hpp"
#include "taurec/homological.hpp"

using namespace taurec;

namespace {

using DV = std::vector<std::size_t>;

}  // namespace

TEST_CASE("definition file builds the example algebras") {
  const auto& d = fixtures::ex51();
  CHECK(d.algebra_names.size() == 2);
  CHECK(fixtures::a2().dim() == 3);
  CHECK(fixtures::b3().dim() == 5);
  const auto& phi = d.morphisms.at("phi");
  CHECK(phi.is_unital());
  CHECK(d.recollements.count("ex51") == 1);
}

TEST_CASE("standard modules over A2") {
  const FdAlgebra& a = fixtures::a2();
  Module p1 = projective_module(a, 0), p2 = projective_module(a, 1);
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  CHECK(p1.dim_vector() == DV{1, 1});
  CHECK(p2.dim_vector() == DV{0, 1});
  for (auto* m : {&p1, &p2, &s1, &s2}) m->validate();
  CHECK(dim_hom(p1, s1) == 1);
  CHECK(dim_hom(s1, p1) == 0);
  CHECK(dim_hom(p2, p1) == 1);
  CHECK(dim_hom(p1, p2) == 0);
  CHECK(dim_hom(s2, p1) == 1);
  CHECK(top(p1).module.dim_vector() == DV{1, 0});
  CHECK(radical(p1).module.dim_vector() == DV{0, 1});
  CHECK(socle(p1).module.dim_vector() == DV{0, 1});
  CHECK(is_projective(p1));
  CHECK_FALSE(is_projective(s1));
  CHECK(is_isomorphic(injective_module(a, 0), s1));
  CHECK(is_isomorphic(injective_module(a, 1), p1));
}

TEST_CASE("presentations and tau over A2") {
  const FdAlgebra& a = fixtures::a2();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  auto pr = minimal_projective_presentation(s1);
  CHECK(pr.p0.module().dim_vector() == DV{1, 1});
  CHECK(pr.p1.module().dim_vector() == DV{0, 1});
  CHECK(is_isomorphic(tau(s1), s2));
  CHECK(tau(s2).is_zero());
  CHECK(is_isomorphic(tau_dtr(s1), s2));
  CHECK(is_isomorphic(tau_inverse(s2), s1));
  CHECK(tau_inverse(s1).is_zero());
}

TEST_CASE("extensions over A2") {
  const FdAlgebra& a = fixtures::a2();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  CHECK(ext1_dim(s1, s2) == 1);
  CHECK(ext1_dim(s2, s1) == 0);
  auto pr = minimal_projective_presentation(s1);
  auto g = hom_basis(pr.syzygy.module, s2);
  REQUIRE(g.size() == 1);
  Module e = extension_module(s1, s2, g[0]);
  CHECK(is_isomorphic(e, projective_module(a, 0)));
}

TEST_CASE("tau over the algebra with a zero relation") {
  const FdAlgebra& b = fixtures::b3();
  Module s3 = simple_module(b, 0), s4 = simple_module(b, 1), s5 = simple_module(b, 2);
  CHECK(is_isomorphic(tau(s4), s5));
  CHECK(is_isomorphic(tau(s3), s4));
  CHECK(is_isomorphic(tau_dtr(s4), s5));
  Module p3 = projective_module(b, 0);
  CHECK(p3.dim_vector() == DV{1, 1, 0});
  CHECK(tau(p3).is_zero());
  for (std::size_t v = 0; v < 3; ++v) {
    Module i = injective_module(b, v);
    CHECK(tau_inverse(i).is_zero());
  }
}

TEST_CASE("duality is an involution") {
  const FdAlgebra& b = fixtures::b3();
  for (std::size_t v = 0; v < 3; ++v) {
    Module p = projective_module(b, v);
    Module dd = dual(dual(p)).rebind(b);
    CHECK(is_isomorphic(dd, p));
    CHECK(is_isomorphic(dual(p).rebind(opposite(b)), injective_module(opposite(b), v)));
  }
}

TEST_CASE("decomposition and isomorphism") {
  const FdAlgebra& a = fixtures::a2();
  Module s1 = simple_module(a, 0), p1 = projective_module(a, 0);
  Module m = direct_sum_module({s1, s1, p1}, a);
  auto parts = decompose(m);
  CHECK(parts.size() == 3);
  CHECK(num_nonisomorphic_summands(m) == 2);
  CHECK(basic_version(m).dim() == 3);
  CHECK_FALSE(is_indecomposable(m));
  CHECK(is_indecomposable(p1));
  CHECK(is_isomorphic(m, direct_sum_module({p1, s1, s1}, a)));
  CHECK_FALSE(is_isomorphic(m, direct_sum_module({p1, p1}, a)));
  for (auto& s : parts) CHECK((s.projection * s.inclusion).is_isomorphism());
}

TEST_CASE("trace and generation") {
  const FdAlgebra& a = fixtures::a2();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1), p1 = projective_module(a, 0);
  CHECK(graded_dim(trace_space(p1, s1)) == 1);
  CHECK(graded_dim(trace_space(s1, p1)) == 0);
  CHECK(graded_dim(trace_space(s2, p1)) == 1);
  CHECK(is_generated_by(p1, s1));
  CHECK_FALSE(is_generated_by(s2, p1));
}

TEST_CASE("maps factoring through injectives") {
  const FdAlgebra& a = fixtures::a2();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1), p1 = projective_module(a, 0);
  // p1 is injective, so every map into it factors
  CHECK(hom_through_injectives_dim(s2, p1) == 1);
  CHECK(hom_through_injectives_dim(s2, s2) == 0);
  CHECK(hom_through_injectives_dim(p1, s1) == 1);
}

TEST_CASE("modules over a vertex quotient") {
  const FdAlgebra& b = fixtures::b3();
  auto q = quotient_by_vertices(b, {1});
  Module s3 = simple_module(b, 0);
  Module v = view_over_quotient(s3, q);
  CHECK(v.dim() == 1);
  CHECK(inflate_from_quotient(v, q) == s3);
  CHECK_THROWS(view_over_quotient(simple_module(b, 1), q));
}

TEST_CASE("kernels, images and cokernels") {
  const FdAlgebra& a = fixtures::a2();
  Module p1 = projective_module(a, 0), p2 = projective_module(a, 1);
  auto h = hom_basis(p2, p1);
  REQUIRE(h.size() == 1);
  CHECK(h[0].is_injective());
  CHECK(kernel(h[0]).module.is_zero());
  CHECK(cokernel(h[0]).module.dim_vector() == DV{1, 0});
  CHECK(image(h[0]).module.dim_vector() == DV{0, 1});
}
