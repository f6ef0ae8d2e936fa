#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>

#include "abelcs/assoc_algebra.hpp"
#include "abelcs/complex_structure.hpp"
#include "abelcs/lie_algebra.hpp"

namespace abelcs {

/// The Lie algebra A ⊕ A with bracket
///   [(a,a'),(b,b')] = (-(a∗b' - b∗a'), a·b' - b·a')
/// and standard J(a,a') = (-a', a). Coordinates 0..n-1 are the first copy.
struct DoubleProduct {
  LieAlgebra algebra;
  ComplexStructure j;
  CommAssocAlgebra dot;
  CommAssocAlgebra star;
  Subspace u;  ///< first copy A ⊕ 0
};

/// Throws PreconditionError when the axioms or compatibility fail.
DoubleProduct double_product(const CommAssocAlgebra& dot, const CommAssocAlgebra& star);
/// double_product(a, 0)
DoubleProduct aff_algebra(const CommAssocAlgebra& a);

/// β(a,b) = (a+b, -a+b) from (A,·)⋈(A,·) onto aff(A).
HolomorphicPair beta_iso(const CommAssocAlgebra& a);

struct ExtractedProducts {
  CommAssocAlgebra dot;   ///< x·y = J([Jx,y] projected to JU)
  CommAssocAlgebra star;  ///< x∗y = [Jx,y] projected to U
  /// (U,·)⋈(U,∗) -> g, (a,a') -> a_U + J a'_U in the canonical basis of U.
  HolomorphicPair identification;
};

/// Products induced on U from g = U ⊕ JU. Throws PreconditionError when
/// U, JU are not complementary abelian subalgebras or J is not abelian.
ExtractedProducts extract_products(const LieAlgebra& g, const ComplexStructure& j,
                                   const Subspace& u);

/// Result of recognising g = g' ⊕ Jg' (or g = v ⊕ Jv) as aff(A).
struct AffRecognition {
  CommAssocAlgebra algebra;  ///< A = (v, ∗), x∗y = [Jx,y], in the canonical basis of v
  Subspace v;
  HolomorphicPair iso;       ///< aff(A) -> g
};

/// nullopt when g ≠ g' ⊕ Jg'. Throws PreconditionError unless J is abelian.
std::optional<AffRecognition> recognize_aff(const LieAlgebra& g, const ComplexStructure& j);

/// Builds A = (v, ∗) and the isomorphism aff(A) -> g for an abelian ideal v
/// with g = v ⊕ Jv. Throws VerificationError if any certificate fails.
AffRecognition aff_from_abelian_ideal(const LieAlgebra& g, const ComplexStructure& j,
                                      const Subspace& v);

/// U abelian subalgebra, JU abelian subalgebra, g = U ⊕ JU.
bool witness_check(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u);

/// Greedy split z = l ⊕ Jl of a J-stable subspace relative to an already
/// J-stable part `base` inside it: returns l with base ⊕ l ⊕ Jl = z.
Subspace greedy_j_split(const Subspace& z, const Subspace& base, const ComplexStructure& j);

struct AffITheorem {
  Subspace a;  ///< g = a ⊕ Ja, a ⊆ U + z
  Subspace enlarged_u;  ///< U + z
  Subspace h;           ///< complement of z in U + z
  Subspace l;           ///< z = l ⊕ Jl
};

/// Decomposition of a solvable g = U + JU with U an abelian subalgebra into
/// an abelian double product. Throws PreconditionError naming the failed
/// hypothesis; VerificationError if the certificate fails.
AffITheorem theorem_aff_i(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u,
                          const std::optional<Matrix>& gram = std::nullopt);

struct AffIITheorem {
  Subspace v;  ///< k ⊕ h ⊕ (g'∩z) ⊕ l
  Subspace k, h, derived_center, l;
  AffRecognition recognition;
};

/// g = U + JU with U an abelian ideal and g' ∩ Jg' = 0 is holomorphically
/// aff(A). Same error conventions as theorem_aff_i.
AffIITheorem theorem_aff_ii(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u,
                            const std::optional<Matrix>& gram = std::nullopt);

/// g = span{f1,f2} ⊕ v, v = R^{2n} with standard J, Jf1 = f2, brackets
/// [f1,v] = TJv, [f2,v] = Tv. Throws PreconditionError if T is singular or
/// does not commute with J|v.
std::pair<LieAlgebra, ComplexStructure> example52_family(std::size_t n, const LinearMap& t);

/// Random search for U with witness_check(g,J,U). Finding none is
/// inconclusive, never a proof of non-existence.
struct WitnessSearch {
  std::size_t trials = 0;
  std::optional<Subspace> found;
};
WitnessSearch random_witness_search(const LieAlgebra& g, const ComplexStructure& j,
                                    std::size_t trials, std::mt19937_64& rng);

}  // namespace abelcs
