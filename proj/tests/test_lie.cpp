#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "abelcs/lie_algebra.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;

namespace {

LieAlgebra aff_c() {
  return LieAlgebra(4, {{0, 2, {0, 0, 1, 0}},
                        {0, 3, {0, 0, 0, 1}},
                        {1, 2, {0, 0, 0, 1}},
                        {1, 3, {0, 0, -1, 0}}});
}

LieAlgebra heisenberg() { return LieAlgebra(3, {{0, 1, {0, 0, 1}}}); }

// sl(2): [h,e] = 2e, [h,f] = -2f, [e,f] = h
LieAlgebra sl2() {
  return LieAlgebra(3, {{0, 1, {0, 2, 0}}, {0, 2, {0, 0, -2}}, {1, 2, {1, 0, 0}}});
}

Subspace span(std::size_t n, std::vector<Vector> v) { return Subspace::span(n, v); }

}  // namespace

TEST_CASE("aff(C) structure") {
  const LieAlgebra g = aff_c();
  CHECK_FALSE(check_jacobi(g).has_value());
  CHECK(commutator_ideal(g) == span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  CHECK(center(g).is_zero());
  const SeriesReport s = derived_and_central_series(g);
  CHECK(s.is_solvable);
  CHECK(s.is_2step_solvable);
  CHECK_FALSE(s.is_nilpotent);
  CHECK_FALSE(s.nilpotency_class.has_value());
  REQUIRE(s.derived.size() == 3);
  CHECK(s.derived[1].dim() == 2);
  CHECK(s.derived[2].dim() == 0);
  // tr ad_{e1} = 2
  CHECK(g.ad_basis(0).trace() == 2);
  CHECK_FALSE(is_unimodular(g));
  CHECK(g.bracket_basis(2, 0) == Vector{0, 0, -1, 0});
}

TEST_CASE("Heisenberg algebra") {
  const LieAlgebra h = heisenberg();
  const SeriesReport s = derived_and_central_series(h);
  CHECK(s.is_nilpotent);
  REQUIRE(s.nilpotency_class.has_value());
  CHECK(*s.nilpotency_class == 2);
  CHECK(is_unimodular(h));
  CHECK(center(h) == span(3, {{0, 0, 1}}));
  CHECK_FALSE(is_abelian(h));
  CHECK(derived_and_central_series(LieAlgebra::abelian(3)).nilpotency_class == 1u);
}

TEST_CASE("sl(2) is perfect") {
  const LieAlgebra g = sl2();
  CHECK_FALSE(check_jacobi(g).has_value());
  const SeriesReport s = derived_and_central_series(g);
  CHECK_FALSE(s.is_solvable);
  CHECK_FALSE(s.is_nilpotent);
  CHECK(commutator_ideal(g).is_whole());
  CHECK(is_unimodular(g));
}

TEST_CASE("Jacobi violation is reported with its triple") {
  // [e1,e2] = e3, [e1,e3] = e1: Jacobi on (e1,e2,e3) gives -e3
  const LieAlgebra bad(3, {{0, 1, {0, 0, 1}}, {0, 2, {1, 0, 0}}});
  const auto v = check_jacobi(bad);
  REQUIRE(v.has_value());
  CHECK(v->i == 0);
  CHECK(v->j == 1);
  CHECK(v->k == 2);
  CHECK(v->residual == Vector{0, 0, -1});
}

TEST_CASE("from_tensor rejects non-antisymmetric constants") {
  Tensor3 t(2);
  t(0, 1, 0) = 1;
  CHECK_THROWS_AS(LieAlgebra::from_tensor(t), PreconditionError);
  t(1, 0, 0) = -1;
  CHECK(LieAlgebra::from_tensor(t).bracket_basis(0, 1) == Vector{1, 0});
  Tensor3 diag(2);
  diag(0, 0, 1) = 1;
  CHECK_THROWS_AS(LieAlgebra::from_tensor(diag), PreconditionError);
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  const LieAlgebra g = aff_c();
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 30; ++t) {
    Vector x(4), y(4), z(4);
    for (std::size_t i = 0; i < 4; ++i) {
      x[i] = d(rng);
      y[i] = d(rng);
      z[i] = d(rng);
    }
    CHECK(g.bracket(x, y) == -g.bracket(y, x));
    CHECK(g.bracket(x, y + z) == g.bracket(x, y) + g.bracket(x, z));
    CHECK(g.ad(x).apply(y) == g.bracket(x, y));
  }
}

TEST_CASE("subspace classification") {
  const LieAlgebra g = aff_c();
  const SubspaceFlags d = classify_subspace(g, commutator_ideal(g));
  CHECK(d.is_ideal);
  CHECK(d.is_subalgebra);
  CHECK(d.is_abelian_subspace);
  const SubspaceFlags u = classify_subspace(g, span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(u.is_subalgebra);
  CHECK_FALSE(u.is_ideal);
  const SubspaceFlags w = classify_subspace(g, span(4, {{1, 0, 0, 0}, {0, 0, 1, 0}}));
  CHECK(w.is_subalgebra);
  CHECK_FALSE(w.is_abelian_subspace);
  const SubspaceFlags x = classify_subspace(g, span(4, {{1, 0, 0, 0}, {0, 1, 1, 0}}));
  CHECK_FALSE(x.is_subalgebra);
  CHECK_THROWS_AS(center_of_subalgebra(g, span(4, {{1, 0, 0, 0}, {0, 1, 1, 0}})),
                  PreconditionError);
}

TEST_CASE("pushforward is an isomorphism") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const LieAlgebra g = t % 2 ? aff_c() : direct_sum(heisenberg(), LieAlgebra::abelian(1));
    const Matrix p = random_unimodular(4, rng);
    const LieAlgebra h = pushforward(g, p);
    CHECK_FALSE(check_jacobi(h).has_value());
    CHECK(is_homomorphism(p, g, h).ok);
    CHECK(is_unimodular(h) == is_unimodular(g));
    CHECK(commutator_ideal(h) == image(p, commutator_ideal(g)));
    CHECK(center(h) == image(p, center(g)));
  }
  const auto bad = is_homomorphism(Matrix::identity(4), aff_c(), LieAlgebra::abelian(4));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
}

TEST_CASE("direct sum") {
  const LieAlgebra s = direct_sum(heisenberg(), aff_c());
  CHECK(s.dim() == 7);
  CHECK(s.bracket_basis(0, 1) == unit_vector(7, 2));
  CHECK(s.bracket_basis(3, 5) == unit_vector(7, 5));
  CHECK(s.bracket_basis(0, 3) == zero_vector(7));
  CHECK(center(s).dim() == 1);
}
