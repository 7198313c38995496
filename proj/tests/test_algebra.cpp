#include <catch2/catch_amalgamated.hpp>

#include "taurec/bimodule.hpp"
#include "taurec/quiver.hpp"

using namespace taurec;

namespace {

QuiverPresentation a2() {
  QuiverPresentation q;
  q.name = "A2";
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  return q;
}

QuiverPresentation b3() {
  QuiverPresentation q;
  q.name = "B";
  q.vertices = {"3", "4", "5"};
  q.arrows = {{"alpha", 0, 1}, {"beta", 1, 2}};
  q.relations = {{{1, {1, 0}}}};
  return q;
}

// Oracle: count paths of a quiver avoiding the given monomial zero relations as subwords.
std::size_t count_paths_avoiding(const QuiverPresentation& q, std::size_t max_len) {
  std::vector<Path> zero;
  for (auto& r : q.relations) zero.push_back(r[0].path);
  auto contains = [&](const Path& p) {
    for (auto& z : zero)
      for (std::size_t i = 0; i + z.size() <= p.size(); ++i)
        if (std::equal(z.begin(), z.end(), p.begin() + static_cast<std::ptrdiff_t>(i))) return true;
    return false;
  };
  std::size_t count = q.vertices.size();
  std::vector<Path> layer;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) layer.push_back({a});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<Path> next;
    for (auto& p : layer) {
      if (contains(p)) continue;
      ++count;
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].src == q.arrows[p.front()].tgt) {
          Path np{a};
          np.insert(np.end(), p.begin(), p.end());
          next.push_back(np);
        }
    }
    layer = next;
  }
  return count;
}

}  // namespace

TEST_CASE("A2 compiles to a 3-dimensional algebra") {
  auto qa = compile_quiver_algebra(a2());
  const FdAlgebra& a = qa.algebra;
  CHECK(a.dim() == 3);
  CHECK(a.num_vertices() == 2);
  CHECK(a.dim() == count_paths_avoiding(a2(), 10));
  CHECK(a.generators().size() == 1);
  CHECK(a.radical().cols() == 1);
}

TEST_CASE("linear quiver with a zero relation") {
  auto qb = compile_quiver_algebra(b3());
  CHECK(qb.algebra.dim() == 5);
  CHECK(qb.algebra.dim() == count_paths_avoiding(b3(), 10));
  Vec ba = qb.path_element({1, 0});
  CHECK(std::all_of(ba.begin(), ba.end(), [](const Rational& x) { return x == 0; }));
}

TEST_CASE("commutativity relation") {
  QuiverPresentation q;
  q.name = "square";
  q.vertices = {"1", "2", "3", "4"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
  q.relations = {{{1, {1, 0}}, {-1, {3, 2}}}};
  auto qa = compile_quiver_algebra(q);
  CHECK(qa.algebra.dim() == 9);
  CHECK(qa.path_element({1, 0}) == qa.path_element({3, 2}));
}

TEST_CASE("infinite-dimensional path algebra is rejected") {
  QuiverPresentation q;
  q.name = "loop";
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  CHECK_THROWS_AS(compile_quiver_algebra(q, 8), InvalidAlgebra);
  q.relations = {{{1, {0, 0, 0}}}};
  CHECK(compile_quiver_algebra(q).algebra.dim() == 3);
}

TEST_CASE("relations with mismatched endpoints are rejected") {
  QuiverPresentation q = b3();
  q.relations = {{{1, {1, 0}}, {1, {0}}}};
  CHECK_THROWS_AS(compile_quiver_algebra(q), InvalidAlgebra);
}

TEST_CASE("structure constants are checked") {
  AlgebraSpec s;
  s.name = "bad";
  s.vertex_labels = {"1"};
  s.vertex_basis = {0};
  s.src = {0, 0};
  s.tgt = {0, 0};
  s.products = {{{{0, 1}}, {{1, 1}}}, {{{1, 1}}, {{0, 1}}}};  // x^2 = 1: not local
  CHECK_THROWS_AS(FdAlgebra(s), InvalidAlgebra);
  s.products[1][1] = {};
  CHECK(FdAlgebra(s).dim() == 2);
}

TEST_CASE("opposite is an involution up to identity") {
  auto qb = compile_quiver_algebra(b3());
  FdAlgebra op = opposite(qb.algebra);
  CHECK(opposite(op).same_as(qb.algebra));
  for (std::size_t b = 0; b < op.dim(); ++b) CHECK(op.src(b) == qb.algebra.tgt(b));
}

TEST_CASE("quotient by a vertex") {
  auto qb = compile_quiver_algebra(b3());
  auto q = quotient_by_vertices(qb.algebra, {1});
  CHECK(q.algebra.dim() == 2);
  CHECK(q.algebra.num_vertices() == 2);
  q.projection.validate();
  CHECK(q.projection.is_unital());
  CHECK_THROWS(quotient_by_vertices(qb.algebra, {0, 1, 2}));
}

TEST_CASE("twisted bimodule and triangular algebra") {
  auto qa = compile_quiver_algebra(a2());
  auto qb = compile_quiver_algebra(b3());
  const FdAlgebra &a = qa.algebra, &b = qb.algebra;
  Matrix phi(a.dim(), b.dim());
  auto set_image = [&](std::size_t bb, const Vec& x) {
    for (std::size_t k = 0; k < x.size(); ++k) phi.set(k, bb, x[k]);
  };
  set_image(b.idempotent(0), a.basis_vector(a.idempotent(0)));
  set_image(b.idempotent(1), a.basis_vector(a.idempotent(1)));
  for (std::size_t k = 0; k < b.dim(); ++k)
    if (qb.arrow_elements[0][k] != 0) set_image(k, qa.arrow_elements[0]);
  AlgebraMorphism f{b, a, phi};
  f.validate();
  Bimodule m = bimodule_from_morphism(f);
  CHECK(m.dim() == 3);
  auto t = triangular_algebra(m);
  CHECK(t.algebra.dim() == 11);
  CHECK(t.algebra.num_vertices() == 5);
  // the generators of rad/rad^2: two arrows of B, one of A2, two bimodule elements
  CHECK(t.algebra.generators().size() == 5);

  // presentation of the same algebra by quiver and relations
  QuiverPresentation q;
  q.name = "Lambda";
  q.vertices = {"1", "2", "3", "4", "5"};
  q.arrows = {{"delta", 0, 1}, {"epsilon", 2, 0}, {"gamma", 3, 1}, {"alpha", 2, 3}, {"beta", 3, 4}};
  q.relations = {{{1, {2, 3}}, {-1, {0, 1}}}, {{1, {4, 3}}}};
  CHECK(compile_quiver_algebra(q).algebra.dim() == 11);

  // a non-unital map is rejected
  Matrix zero(a.dim(), b.dim());
  AlgebraMorphism z{b, a, zero};
  CHECK_THROWS(bimodule_from_morphism(z));
}

TEST_CASE("F_p algebras") {
  QuiverPresentation q = b3();
  q.field = Field::prime(3);
  auto qb = compile_quiver_algebra(q);
  CHECK(qb.algebra.dim() == 5);
  CHECK(qb.algebra.field().modulus() == 3);
}
