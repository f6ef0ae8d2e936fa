// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "abelcs/constructions.hpp"
#include "abelcs/hermitian.hpp"
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

// Collects the reasons a criterion failed.
struct Check {
  std::ostringstream why;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

bool fixture_exactness(Check& c) {
  for (const auto& [name, j] : {std::pair{"J1", j1()}, std::pair{"J2", j2()}}) {
    const std::string n = name;
    const LieAlgebra g = aff_c();
    c.require(!check_jacobi(g), n + ": Jacobi");
    c.require(j.matrix() * j.matrix() == -Matrix::identity(4), n + ": J^2");
    c.require(is_abelian_cs(g, j), n + ": abelian");
    c.require(is_integrable(g, j), n + ": integrable");
    c.require(lemma_cap_report(g, j).all(), n + ": cap flags");
    c.require(!is_unimodular(g), n + ": unimodular");
  }
  return c.ok;
}

bool double_product_soundness(Check& c, std::size_t& pairs) {
  std::mt19937_64 rng(20240501);
  for (std::size_t t = 0; t < 540; ++t) {
    const std::size_t dim = 1 + t % 6;
    const Family f = static_cast<Family>((t / 6) % 3);
    const bool disguise = (t / 18) % 2 == 1;
    const auto [dot, star] = random_compatible_pair(f, dim, rng, disguise);
    const DoubleProduct dp = double_product(dot, star);
    const std::string tag = "pair " + std::to_string(t);
    c.require(!check_jacobi(dp.algebra), tag + ": Jacobi");
    c.require(is_abelian_cs(dp.algebra, dp.j), tag + ": abelian");
    const ExtractedProducts e = extract_products(dp.algebra, dp.j, dp.u);
    c.require(e.dot == dot && e.star == star, tag + ": round trip");
    ++pairs;
  }
  return c.ok;
}

bool iso_certificates(Check& c) {
  for (const auto& a : {real_line(), complex_plane(), direct_sum(real_line(), real_line()),
                        truncated_polynomials(2)}) {
    c.require(is_holomorphic_iso(beta_iso(a)), "beta for dim " + std::to_string(a.dim()));
  }
  const auto r = recognize_aff(aff_c(), j2());
  c.require(r.has_value(), "aff(C)/J2 not recognised");
  if (r) {
    c.require(is_holomorphic_iso(r->iso), "recognition iso");
    c.require(square_span(r->algebra).is_whole(), "A^2 != A");
    // A ≅ C: one complex idempotent equal to the unit
    std::mt19937_64 rng(1);
    const IdempotentSet s = primitive_idempotents(r->algebra, rng);
    c.require(s.types.size() == 1 && s.types[0] == FactorType::complex, "A is not C");
  }
  return c.ok;
}

bool kahler_decomposition(Check& c) {
  // aff(R) x aff(R) x R^2 with r1^2 = 4, r2^2 = 1
  const LieAlgebra g(6, {{0, 1, {0, 1, 0, 0, 0, 0}}, {2, 3, {0, 0, 0, 1, 0, 0}}});
  Matrix gram = Matrix::identity(6);
  gram(0, 0) = gram(1, 1) = 4;
  const HermitianTriple t(g, standard_complex_structure(6), InnerProduct(gram));
  const KahlerDecomposition d = kahler_decompose(t);
  c.require(d.n() == 2 && d.s() == 1, "n, s");
  if (d.n() == 2) {
    c.require(d.factors[0].curvature == Scalar(1, 4) && d.factors[1].curvature == 1, "c values");
    for (const auto& f : d.factors) {
      c.require(sectional_curvature(g, t.metric(), f.idempotent, t.j().apply(f.idempotent)) == -f.curvature,
                "sectional curvature");
    }
  }
  const Matrix& p = d.change_of_basis;
  c.require(pushforward(d.model, p) == g, "rebuilt brackets");
  c.require(p.transpose() * gram * p == d.model_metric.gram(), "rebuilt metric");
  c.require(p * d.model_j.matrix() == t.j().matrix() * p, "rebuilt J");
  return c.ok;
}

bool connection_identities(Check& c, const TrialReport& rep) {
  for (const char* name : {"levi_civita_torsion_free_metric", "first_canonical_flags", "first_canonical_expansion"}) {
    const auto it = rep.theorems.find(name);
    c.require(it != rep.theorems.end() && it->second.fail == 0 && it->second.pass >= 500, name);
  }
  c.require(!rep.theorems.count("instance_generation") && !rep.theorems.count("trial_execution"),
            "trials did not all run");
  return c.ok;
}

bool rigidity(Check& c, const TrialReport& rep) {
  for (const char* name : {"first_canonical_zero_implies_abelian", "first_canonical_flat_implies_abelian",
                           "flat_instance_lemmas", "nilpotent_nonabelian_not_flat"}) {
    const auto it = rep.theorems.find(name);
    c.require(it != rep.theorems.end() && it->second.fail == 0 && it->second.pass >= 500, name);
  }
  const HermitianTriple a(aff_c(), j1(), InnerProduct::identity(4));
  c.require(!curvature(aff_c(), first_canonical(a)).is_zero(), "aff(C)/J1 is flat");

  // dot = star = t R[t]/(t^4)
  const CommAssocAlgebra nil(3, {{0, 0, {0, 1, 0}}, {0, 1, {0, 0, 1}}});
  const DoubleProduct dp = double_product(nil, nil);
  c.require(derived_and_central_series(dp.algebra).is_nilpotent && !is_abelian(dp.algebra),
            "fixture is not non-abelian nilpotent");
  const HermitianTriple n(dp.algebra, dp.j, InnerProduct::identity(6));
  c.require(!curvature(dp.algebra, first_canonical(n)).is_zero(), "nilpotent fixture is flat");
  return c.ok;
}

bool kahler_rigidity(Check& c, std::size_t& instances) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const KahlerInstance k = random_kahler_instance(trial_seed(77, seed), 12);
    const std::string tag = "instance " + std::to_string(seed);
    c.require(is_kahler(k.triple) && is_abelian_cs(k.triple.algebra(), k.triple.j()), tag + ": not Kähler");
    try {
      const KahlerDecomposition d = kahler_decompose(k.triple);
      c.require(d.n() == commutator_ideal(k.triple.algebra()).dim(), tag + ": n != dim g'");
    } catch (const KahlerStepError& e) {
      c.require(false, tag + ": step " + std::to_string(e.step()) + ": " + e.what());
    }
    ++instances;
  }
  return c.ok;
}

bool d_omega_value(Check& c) {
  const HermitianTriple t(aff_c(), j1(), InnerProduct::identity(4));
  c.require(d_omega(t, unit_vector(4, 0), unit_vector(4, 2), unit_vector(4, 3)) == -2, "value");
  c.require(!is_kahler(t), "is_kahler");
  return c.ok;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int n, const std::string& title, const std::function<bool(Check&)>& body) {
    Check c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << n << " " << title;
    if (!c.ok) std::cout << " -- " << c.why.str();
    std::cout << "\n" << std::flush;
    all = all && c.ok;
  };

  std::size_t pairs = 0, kahler = 0;
  TrialReport suite;
  try {
    suite = theorem_suite(2024, 520, 12, true);
  } catch (const std::exception& e) {
    std::cerr << "theorem suite aborted: " << e.what() << "\n";
  }

  report(1, "aff(C) fixtures with J1 and J2", fixture_exactness);
  report(2, "double products of random compatible pairs", [&](Check& c) { return double_product_soundness(c, pairs); });
  report(3, "beta and recognition certificates", iso_certificates);
  report(4, "Kähler decomposition of aff(R) x aff(R) x R^2", kahler_decomposition);
  report(5, "Levi-Civita and first canonical identities over 520 triples",
         [&](Check& c) { return connection_identities(c, suite); });
  report(6, "rigidity of the first canonical connection", [&](Check& c) { return rigidity(c, suite); });
  report(7, "Kähler rigidity over 200 instances", [&](Check& c) { return kahler_rigidity(c, kahler); });
  report(8, "d omega(e1,e3,e4) = -2 on aff(C) with J1", d_omega_value);
  std::cout << "pairs: " << pairs << ", kahler instances: " << kahler << ", suite trials: " << suite.trials
            << ", counterexamples: " << suite.counterexamples.size() << "\n";
  return all ? 0 : 1;
}
