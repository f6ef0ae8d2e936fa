#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "abelcs/instance_io.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;

namespace {

std::string data(const std::string& name) { return std::string(ABELCS_DATA_DIR) + "/" + name; }

// The decomposition must rebuild (g, J, metric) exactly from the model.
void check_rebuild(const HermitianTriple& t, const KahlerDecomposition& d) {
  const Matrix& p = d.change_of_basis;
  CHECK(is_holomorphic_iso(HolomorphicPair{d.model, d.model_j, t.algebra(), t.j(), p}));
  CHECK(p.transpose() * t.metric().gram() * p == d.model_metric.gram());
  CHECK(2 * d.n() + 2 * d.s() == t.dim());
  for (const auto& f : d.factors) {
    CHECK(f.curvature * f.norm_sq == 1);
    CHECK(sectional_curvature(t.algebra(), t.metric(), f.idempotent, t.j().apply(f.idempotent)) ==
          -f.curvature);
    CHECK(commutator_ideal(t.algebra()).contains(f.idempotent));
  }
  for (std::size_t k = 1; k < d.factors.size(); ++k) CHECK(d.factors[k - 1].norm_sq >= d.factors[k].norm_sq);
}

}  // namespace

TEST_CASE("decomposition of two hyperbolic planes and a flat plane") {
  const Instance inst = load_instance(data("kahler_2haff.json"));
  const HermitianTriple t = inst.triple();
  const KahlerDecomposition d = kahler_decompose(t);
  CHECK(d.n() == 2);
  CHECK(d.s() == 1);
  REQUIRE(d.factors.size() == 2);
  // f2 * f2 = [J f2, f2] = -f2, so the idempotents are -f2 and -g2; equal
  // norms fall back to lexicographic order
  CHECK(d.factors[0].idempotent == Vector{0, -1, 0, 0, 0, 0});
  CHECK(d.factors[1].idempotent == Vector{0, 0, 0, -1, 0, 0});
  CHECK(d.factors[0].curvature == 1);
  CHECK(d.factors[1].curvature == 1);
  CHECK(d.center == Subspace::span(6, {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}}));
  check_rebuild(t, d);
}

TEST_CASE("scaled factors are ordered by norm") {
  const HermitianTriple t = load_instance(data("kahler_2haff_scaled.json")).triple();
  const KahlerDecomposition d = kahler_decompose(t);
  REQUIRE(d.n() == 2);
  CHECK(d.factors[0].norm_sq == 4);
  CHECK(d.factors[0].curvature == Scalar(1, 4));
  CHECK(d.factors[1].norm_sq == 1);
  CHECK(d.factors[1].curvature == 1);
  check_rebuild(t, d);
}

TEST_CASE("decomposition refuses non-Kähler input") {
  const HermitianTriple t = load_instance(data("aff_c_j1.json")).triple();
  CHECK_THROWS_WITH_AS(kahler_decompose(t), doctest::Contains("not Kähler"), PreconditionError);
  const HermitianTriple flat(LieAlgebra::abelian(4), standard_complex_structure(4), InnerProduct::identity(4));
  const KahlerDecomposition d = kahler_decompose(flat);
  CHECK(d.n() == 0);
  CHECK(d.s() == 2);
  check_rebuild(flat, d);
}

TEST_CASE("a real split that is not split over Q stops at the idempotent step") {
  // aff(A) for A = Q[t]/(t^2 - 2), whose real idempotents involve sqrt 2
  const CommAssocAlgebra a(2, {{0, 0, {1, 0}}, {0, 1, {0, 1}}, {1, 1, {2, 0}}});
  const DoubleProduct dp = aff_algebra(a);
  const HermitianTriple t(dp.algebra, dp.j, InnerProduct(Matrix::from_rows({{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}})));
  REQUIRE(is_kahler(t));
  try {
    kahler_decompose(t);
    FAIL("expected a step failure");
  } catch (const KahlerStepError& e) {
    CHECK(e.step() == 6);
  }
}

TEST_CASE("random Kähler instances decompose into their blocks") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const KahlerInstance k = random_kahler_instance(seed, 4 + 2 * (seed % 5));
    CHECK(is_kahler(k.triple));
    CHECK(is_abelian_cs(k.triple.algebra(), k.triple.j()));
    const KahlerDecomposition d = kahler_decompose(k.triple);
    CHECK(d.n() == commutator_ideal(k.triple.algebra()).dim());
    CHECK(d.n() == k.norms_sq.size());
    CHECK(d.s() == k.center_half_dim);
    std::vector<Scalar> expect = k.norms_sq, got;
    std::sort(expect.begin(), expect.end(), [](const Scalar& x, const Scalar& y) { return x > y; });
    for (const auto& f : d.factors) got.push_back(f.norm_sq);
    CHECK(got == expect);
    check_rebuild(k.triple, d);
    if (d.n() > 0) CHECK_FALSE(is_unimodular(k.triple.algebra()));
  }
}

TEST_CASE("random instances are valid and reproducible") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Family f = static_cast<Family>(seed % 3);
    const RandomInstance a = random_instance(seed, 1 + seed % 6, f, true, true);
    const RandomInstance b = random_instance(seed, 1 + seed % 6, f, true, true);
    CHECK(a.algebra.constants() == b.algebra.constants());
    CHECK(a.j.matrix() == b.j.matrix());
    CHECK_FALSE(check_jacobi(a.algebra).has_value());
    CHECK(is_abelian_cs(a.algebra, a.j));
    CHECK(is_hermitian(a.j, *a.metric));
    CHECK(determinant(a.disguise) * determinant(a.disguise) == 1);
    CHECK(pushforward(double_product(a.dot, a.star).algebra, a.disguise) == a.algebra);
  }
  CHECK_THROWS_AS(random_instance(0, 9, Family::trivial_star, false, false), PreconditionError);
  CHECK(std::string(family_name(Family::diagonal_pair)) == "diagonal-pair");
}

TEST_CASE("theorem suite is deterministic and finds no counterexamples") {
  const TrialReport par = theorem_suite(5, 48, 10, true);
  const TrialReport ser = theorem_suite(5, 48, 10, false);
  CHECK(par.to_json() == ser.to_json());
  CHECK(par.ok());
  for (const auto& c : par.counterexamples) MESSAGE(c.theorem << ": " << c.message);
  for (const char* name : {"lemma_cap", "abelian_implies_integrable", "levi_civita_torsion_free_metric",
                           "first_canonical_flags", "first_canonical_expansion", "kahler_identity_matches",
                           "kahler_decomposition", "kahler_unimodular_implies_abelian"}) {
    REQUIRE(par.theorems.count(name) == 1);
    CHECK(par.theorems.at(name).pass > 0);
    CHECK(par.theorems.at(name).fail == 0);
  }
  CHECK(trial_seed(5, 0) != trial_seed(5, 1));
  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
  CHECK_THROWS_AS(theorem_suite(1, 1, 1), PreconditionError);
}
