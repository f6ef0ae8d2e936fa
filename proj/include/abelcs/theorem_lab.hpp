#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abelcs/assoc_algebra.hpp"
#include "abelcs/constructions.hpp"
#include "abelcs/hermitian.hpp"
#include "abelcs/instance_io.hpp"

namespace abelcs {

struct KahlerFactor {
  Vector idempotent;  ///< e_i in g', e_i * e_i = e_i
  Scalar norm_sq;     ///< r_i^2 = g(e_i, e_i)
  Scalar curvature;   ///< c_i = 1 / r_i^2
  Subspace plane;     ///< span{e_i, J e_i}
};

/// g ≅ aff(R) x ... x aff(R) x R^{2s}, orthogonal and J-stable.
struct KahlerDecomposition {
  std::vector<KahlerFactor> factors;  ///< descending r_i^2, ties lexicographic in e_i
  Subspace center;
  /// Model -> g. Model basis: (f1, f2) per factor with [f1,f2] = f2, J f1 = f2,
  /// metric r_i^2 I; then (l, Jl) pairs spanning the center.
  LinearMap change_of_basis;
  LieAlgebra model;
  ComplexStructure model_j;
  InnerProduct model_metric;

  std::size_t n() const { return factors.size(); }
  std::size_t s() const { return center.dim() / 2; }
};

/// A numbered step of kahler_decompose failed. On valid input this is a bug.
class KahlerStepError : public VerificationError {
 public:
  KahlerStepError(int step, const std::string& what);
  int step() const { return step_; }

 private:
  int step_;
};

/// Runs the structure proof as an algorithm:
///  1 cyclic identity, 2 z = (g'_J)^perp and g = g'_J ⊕ z, 3 g' ∩ Jg' = 0,
///  4 A = (g', *) recognised, 5 A semisimple with symmetric multiplications,
///  6 primitive idempotents all real, 7 orthogonal assembly and rebuild,
///  8 r_i^2 and c_i.
/// Throws PreconditionError unless J is abelian and the triple is Kähler.
KahlerDecomposition kahler_decompose(const HermitianTriple& t);

enum class Family { trivial_star, equal_products, diagonal_pair };
const char* family_name(Family f);

/// Random commutative associative algebra: direct sum of scaled R, C,
/// R[t]/(t^k) and nilpotent blocks, in a random integer basis.
CommAssocAlgebra random_comm_assoc(std::size_t dim, std::mt19937_64& rng, bool disguise);
/// Compatible (dot, star) pair from one of the families.
std::pair<CommAssocAlgebra, CommAssocAlgebra> random_compatible_pair(Family f, std::size_t dim,
                                                                     std::mt19937_64& rng,
                                                                     bool disguise);
/// Integer matrix with determinant ±1.
Matrix random_unimodular(std::size_t n, std::mt19937_64& rng);
/// (G0 + J^T G0 J) / 2 for a random diagonally dominant integer G0.
InnerProduct random_hermitian_metric(const ComplexStructure& j, std::mt19937_64& rng);

struct RandomInstance {
  Family family = Family::trivial_star;
  CommAssocAlgebra dot, star;  ///< the pair before the Lie-level disguise
  LinearMap disguise;          ///< identity when not disguised
  LieAlgebra algebra;
  ComplexStructure j;
  std::optional<InnerProduct> metric;

  Instance as_instance() const { return Instance{algebra, j, metric}; }
};

/// Double product of a random compatible pair, optionally pushed forward by a
/// random unimodular map and equipped with an averaged Hermitian metric.
/// Throws PreconditionError when dim_a > 8.
RandomInstance random_instance(std::uint64_t seed, std::size_t dim_a, Family family,
                               bool disguise, bool metric);

/// Orthogonal sum of scaled aff(R) blocks and a flat center, transported by
/// a random unimodular map (bracket, J and metric together).
struct KahlerInstance {
  HermitianTriple triple;
  std::vector<Scalar> norms_sq;  ///< r_i^2 of the blocks
  std::size_t center_half_dim = 0;
};
KahlerInstance random_kahler_instance(std::uint64_t seed, std::size_t max_dim);

struct TheoremTally {
  std::size_t pass = 0;
  std::size_t fail = 0;
};

struct Counterexample {
  std::string theorem;
  std::size_t trial = 0;
  std::string message;
  std::string instance;  ///< instance file text
};

struct TrialReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t max_dim = 0;
  std::map<std::string, TheoremTally> theorems;
  std::vector<Counterexample> counterexamples;

  bool ok() const { return counterexamples.empty(); }
  /// {"seed","trials","max_dim","theorems":{name:{pass,fail}},"counterexamples":[...]}
  std::string to_json() const;
};

/// Per-trial seed derived from the suite seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Random abelian-J Hermitian instances (a quarter of them Kähler), each run
/// through the rigidity and connection checks. The parallel and serial modes
/// produce identical reports.
TrialReport theorem_suite(std::uint64_t seed, std::size_t trials, std::size_t max_dim = 12,
                          bool parallel = true);

}  // namespace abelcs
