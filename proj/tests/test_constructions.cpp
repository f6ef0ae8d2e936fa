#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "abelcs/constructions.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;

namespace {

LieAlgebra aff_c() {
  return LieAlgebra(4, {{0, 2, {0, 0, 1, 0}},
                        {0, 3, {0, 0, 0, 1}},
                        {1, 2, {0, 0, 0, 1}},
                        {1, 3, {0, 0, -1, 0}}});
}

ComplexStructure from_images(const std::vector<Vector>& cols) {
  return ComplexStructure(Matrix::from_columns(cols, cols.size()));
}
ComplexStructure j1() {
  return from_images({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
}
ComplexStructure j2() {
  return from_images({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
}

Subspace span(std::size_t n, std::vector<Vector> v) { return Subspace::span(n, v); }

bool is_nilpotent_algebra(const CommAssocAlgebra& a) { return nilradical(a).radical.is_whole(); }

}  // namespace

TEST_CASE("double product of C with the zero product is aff(C) with J2") {
  const DoubleProduct dp = double_product(complex_plane(), CommAssocAlgebra::zero(2));
  CHECK(dp.algebra.constants() == aff_c().constants());
  CHECK(dp.j.matrix() == j2().matrix());
  CHECK(dp.u == span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(aff_algebra(complex_plane()).algebra.constants() == aff_c().constants());
}

TEST_CASE("small double products") {
  CHECK(is_abelian(double_product(CommAssocAlgebra::zero(3), CommAssocAlgebra::zero(3)).algebra));

  const DoubleProduct r = double_product(real_line(), real_line());
  CHECK(r.algebra.dim() == 2);
  CHECK_FALSE(is_abelian(r.algebra));

  const DoubleProduct a = aff_algebra(real_line());
  CHECK(a.algebra.dim() == 2);
  CHECK_FALSE(is_unimodular(a.algebra));
  // [(1,0),(0,1)] = (0,1)
  CHECK(a.algebra.bracket_basis(0, 1) == Vector{0, 1});

  const DoubleProduct split = aff_algebra(direct_sum(real_line(), real_line()));
  CHECK(commutator_ideal(split.algebra) == span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  CHECK(center(split.algebra).is_zero());
  CHECK(split.algebra.bracket_basis(0, 3) == zero_vector(4));
  CHECK(split.algebra.bracket_basis(1, 3) == unit_vector(4, 3));
}

TEST_CASE("double product rejects incompatible pairs") {
  const CommAssocAlgebra star(2, {{0, 0, {0, 1}}});
  CHECK_THROWS_WITH_AS(double_product(complex_plane(), star), doctest::Contains("compatibility identity"),
                       PreconditionError);
  CHECK_THROWS_AS(double_product(complex_plane(), real_line()), DimensionError);
  const CommAssocAlgebra nonassoc(2, {{0, 0, {0, 1}}, {1, 1, {1, 0}}});
  CHECK_THROWS_AS(double_product(nonassoc, CommAssocAlgebra::zero(2)), PreconditionError);
}

TEST_CASE("beta is a holomorphic isomorphism") {
  for (const auto& a : {real_line(), complex_plane(), direct_sum(real_line(), real_line()),
                        truncated_polynomials(2), truncated_polynomials(3)}) {
    const HolomorphicPair p = beta_iso(a);
    CHECK(is_holomorphic_iso(p));
    CHECK(p.map.rows() == 2 * a.dim());
  }
}

TEST_CASE("extracting products from aff(C) with J2") {
  const ExtractedProducts e = extract_products(aff_c(), j2(), span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(e.dot == complex_plane());
  CHECK(e.star == CommAssocAlgebra::zero(2));
  CHECK(is_holomorphic_iso(e.identification));

  const ExtractedProducts z =
      extract_products(LieAlgebra::abelian(4), standard_complex_structure(4),
                       span(4, {{1, 0, 0, 0}, {0, 0, 1, 1}}));
  CHECK(z.dot == CommAssocAlgebra::zero(2));
  CHECK(z.star == CommAssocAlgebra::zero(2));
}

TEST_CASE("extract_products names the failed hypothesis") {
  CHECK_THROWS_WITH_AS(extract_products(aff_c(), j1(), span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})),
                       doctest::Contains("not U ⊕ JU"), PreconditionError);
  // e1, e3 span a non-abelian subalgebra
  CHECK_THROWS_WITH_AS(extract_products(aff_c(), j2(), span(4, {{1, 0, 0, 0}, {0, 0, 1, 0}})),
                       doctest::Contains("⊕"), PreconditionError);
  CHECK_THROWS_WITH_AS(extract_products(aff_c(), j2(), span(4, {{0, 1, 0, 0}, {0, 0, 1, 0}})),
                       doctest::Contains("not abelian"), PreconditionError);
}

TEST_CASE("extract inverts double_product on random compatible pairs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 120; ++t) {
    const std::size_t dim = 1 + t % 6;
    const auto [dot, star] = random_compatible_pair(static_cast<Family>(t % 3), dim, rng, t % 2 == 1);
    const DoubleProduct dp = double_product(dot, star);
    CHECK_FALSE(check_jacobi(dp.algebra).has_value());
    CHECK(is_abelian_cs(dp.algebra, dp.j));
    CHECK(witness_check(dp.algebra, dp.j, dp.u));
    const ExtractedProducts e = extract_products(dp.algebra, dp.j, dp.u);
    CHECK(e.dot == dot);
    CHECK(e.star == star);
  }
}

TEST_CASE("nilpotent double products come from nilpotent algebras") {
  std::mt19937_64 rng(77);
  int nilpotent_seen = 0;
  for (int t = 0; t < 80; ++t) {
    const auto [dot, star] = random_compatible_pair(Family::diagonal_pair, 1 + t % 5, rng, t % 2 == 0);
    const DoubleProduct dp = double_product(dot, star);
    const bool lie_nil = derived_and_central_series(dp.algebra).is_nilpotent;
    CHECK(lie_nil == (is_nilpotent_algebra(dot) && is_nilpotent_algebra(star)));
    nilpotent_seen += lie_nil;
  }
  // both branches of the equivalence must have been exercised
  CHECK(nilpotent_seen > 0);
  CHECK(nilpotent_seen < 80);
}

TEST_CASE("recognising aff(A)") {
  const auto r = recognize_aff(aff_c(), j2());
  REQUIRE(r.has_value());
  CHECK(r->v == span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  // e3*e3 = -e3, e4*e4 = e3: C with unit -e3
  CHECK(r->algebra.product_basis(0, 0) == Vector{-1, 0});
  CHECK(r->algebra.product_basis(1, 1) == Vector{1, 0});
  CHECK(unit_element(r->algebra) == Vector{-1, 0});
  CHECK(is_holomorphic_iso(r->iso));

  const DoubleProduct affr = aff_algebra(real_line());
  const auto rr = recognize_aff(affr.algebra, affr.j);
  REQUIRE(rr.has_value());
  CHECK(rr->algebra.dim() == 1);
  CHECK(nilradical(rr->algebra).is_semisimple);

  CHECK_FALSE(recognize_aff(LieAlgebra::abelian(4), standard_complex_structure(4)).has_value());
  // J1 preserves g', so g is not g' + Jg'
  CHECK_FALSE(recognize_aff(aff_c(), j1()).has_value());
  CHECK_THROWS_AS(recognize_aff(aff_c(), from_images({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}})),
                  PreconditionError);
}

TEST_CASE("witness check") {
  CHECK(witness_check(aff_c(), j1(), span(4, {{1, 0, 1, 0}, {0, 1, 0, 1}})));
  CHECK(witness_check(aff_c(), j2(), span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  CHECK_FALSE(witness_check(aff_c(), j1(), span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  CHECK_FALSE(witness_check(aff_c(), j2(), span(4, {{1, 0, 0, 0}})));
}

TEST_CASE("greedy J-split") {
  const ComplexStructure j = standard_complex_structure(6);
  const Subspace z = Subspace::whole(6);
  const Subspace base = span(6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}});
  const Subspace l = greedy_j_split(z, base, j);
  CHECK(l.dim() == 2);
  const Subspace jl = image(j.matrix(), l);
  CHECK(sum(sum(base, l), jl) == z);
  CHECK(intersect(l, jl).is_zero());
  CHECK(intersect(sum(base, l), jl).is_zero());
}

TEST_CASE("first part of the structure theorem") {
  SUBCASE("aff(C) with J2") {
    const Subspace u = span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    const AffITheorem t = theorem_aff_i(aff_c(), j2(), u);
    CHECK(t.a == u);
    CHECK(witness_check(aff_c(), j2(), t.a));
  }
  SUBCASE("aff(C) with J1 and the twisted witness") {
    const Subspace u = span(4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
    const AffITheorem t = theorem_aff_i(aff_c(), j1(), u);
    CHECK(t.a == u);
  }
  SUBCASE("abelian plane") {
    const AffITheorem t =
        theorem_aff_i(LieAlgebra::abelian(2), standard_complex_structure(2), Subspace::whole(2));
    CHECK(t.a.dim() == 1);
    CHECK(t.l.dim() == 1);
    CHECK(t.h.is_zero());
    CHECK(witness_check(LieAlgebra::abelian(2), standard_complex_structure(2), t.a));
  }
  SUBCASE("U + JU not direct") {
    // aff(R) + R^2 with U = span{f1, z1, z2}, so U meets JU in the center
    const LieAlgebra g(4, {{0, 1, {0, 1, 0, 0}}});
    const ComplexStructure j = standard_complex_structure(4);
    const Subspace u = span(4, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const AffITheorem t = theorem_aff_i(g, j, u, Matrix::identity(4));
    CHECK(t.enlarged_u == sum(u, center(g)));
    CHECK(witness_check(g, j, t.a));
    CHECK(t.enlarged_u.contains(t.a));
    CHECK(t.h == span(4, {{1, 0, 0, 0}}));
    CHECK(t.l.dim() == 1);
  }
  SUBCASE("hypotheses are checked") {
    CHECK_THROWS_AS(theorem_aff_i(aff_c(), j1(), span(4, {{1, 0, 0, 0}, {0, 0, 1, 0}})),
                    PreconditionError);
    CHECK_THROWS_AS(theorem_aff_i(aff_c(), j2(), span(4, {{1, 0, 0, 0}})), PreconditionError);
  }
}

TEST_CASE("theorem_aff_i output is always a witness") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const RandomInstance r =
        random_instance(1000 + t, 1 + t % 4, static_cast<Family>(t % 3), t % 2 == 0, t % 3 == 0);
    const Subspace u = image(r.disguise, Subspace::span(r.algebra.dim(), [&] {
      std::vector<Vector> b;
      for (std::size_t i = 0; i < r.algebra.dim() / 2; ++i) b.push_back(unit_vector(r.algebra.dim(), i));
      return b;
    }()));
    std::optional<Matrix> gram;
    if (r.metric) gram = r.metric->gram();
    const AffITheorem th = theorem_aff_i(r.algebra, r.j, u, gram);
    CHECK(witness_check(r.algebra, r.j, th.a));
  }
}

TEST_CASE("second part of the structure theorem") {
  SUBCASE("aff(C) with J2 and U = g'") {
    const Subspace u = span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    const AffIITheorem t = theorem_aff_ii(aff_c(), j2(), u);
    CHECK(t.v == u);
    CHECK(unit_element(t.recognition.algebra) == Vector{-1, 0});
    CHECK(is_holomorphic_iso(t.recognition.iso));
  }
  SUBCASE("aff(R) + R^2 with part of the center") {
    const LieAlgebra g(4, {{0, 1, {0, 1, 0, 0}}});
    const ComplexStructure j = standard_complex_structure(4);
    for (const auto& gram : {std::optional<Matrix>{}, std::optional<Matrix>{Matrix::identity(4)}}) {
      const AffIITheorem t = theorem_aff_ii(g, j, span(4, {{0, 1, 0, 0}, {0, 0, 1, 0}}), gram);
      CHECK(t.v.dim() == 2);
      CHECK(intersect(t.v, image(j.matrix(), t.v)).is_zero());
      CHECK(classify_subspace(g, t.v).is_ideal);
      CHECK(classify_subspace(g, t.v).is_abelian_subspace);
      CHECK(is_holomorphic_iso(t.recognition.iso));
    }
  }
  SUBCASE("split aff(R) x aff(R)") {
    const DoubleProduct dp = aff_algebra(direct_sum(real_line(), real_line()));
    const AffIITheorem t = theorem_aff_ii(dp.algebra, dp.j, commutator_ideal(dp.algebra));
    std::mt19937_64 rng(3);
    const IdempotentSet s = primitive_idempotents(t.recognition.algebra, rng);
    REQUIRE(s.types.size() == 2);
    CHECK(s.types[0] == FactorType::real);
    CHECK(s.types[1] == FactorType::real);
  }
  SUBCASE("hypotheses are checked") {
    // U not an ideal
    CHECK_THROWS_AS(theorem_aff_ii(aff_c(), j2(), span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})),
                    PreconditionError);
    CHECK_THROWS_AS(theorem_aff_ii(aff_c(), j1(), span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}})),
                    PreconditionError);
  }
}

TEST_CASE("example family") {
  const auto [g, j] = example52_family(1, Matrix::identity(2));
  CHECK_FALSE(check_jacobi(g).has_value());
  CHECK(is_abelian_cs(g, j));
  // f1 -> e2, f2 -> e1, v1 -> e3, v2 -> e4 onto aff(C) with J1
  const Matrix p = Matrix::from_columns({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4);
  CHECK(is_holomorphic_iso(HolomorphicPair{g, j, aff_c(), j1(), p}));

  const auto [g2, jj2] = example52_family(2, Matrix::identity(4));
  CHECK(g2.dim() == 6);
  CHECK_FALSE(check_jacobi(g2).has_value());
  CHECK(is_abelian_cs(g2, jj2));
  CHECK(derived_and_central_series(g2).is_2step_solvable);
  CHECK(lemma_cap_report(g2, jj2).all());
  CHECK(g2.basis_names()[0] == "f1");
  CHECK(g2.basis_names()[2] == "v1");

  // T commuting with J but not a multiple of the identity
  const Matrix t = Matrix::from_rows({{2, -1, 0, 0}, {1, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}});
  const auto [g3, j3] = example52_family(2, t);
  CHECK(is_abelian_cs(g3, j3));
  CHECK_FALSE(check_jacobi(g3).has_value());

  CHECK_THROWS_AS(example52_family(1, Matrix::from_rows({{1, 0}, {0, 2}})), PreconditionError);
  CHECK_THROWS_AS(example52_family(1, Matrix(2, 2)), PreconditionError);
  CHECK_THROWS_AS(example52_family(2, Matrix::identity(2)), DimensionError);
}

TEST_CASE("random witness search") {
  std::mt19937_64 rng(12);
  const LieAlgebra flat = LieAlgebra::abelian(4);
  const WitnessSearch hit = random_witness_search(flat, standard_complex_structure(4), 50, rng);
  REQUIRE(hit.found.has_value());
  CHECK(witness_check(flat, standard_complex_structure(4), *hit.found));

  const auto [g, j] = example52_family(2, Matrix::identity(4));
  const WitnessSearch miss = random_witness_search(g, j, 300, rng);
  CHECK(miss.trials == 300);
  CHECK_FALSE(miss.found.has_value());
}
