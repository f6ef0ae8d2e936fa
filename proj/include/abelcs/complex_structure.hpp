#pragma once

#include <array>
#include <optional>

#include "abelcs/lie_algebra.hpp"

namespace abelcs {

/// Endomorphism J with J^2 = -I, validated exactly on construction.
class ComplexStructure {
 public:
  ComplexStructure() = default;
  /// Throws PreconditionError unless j is square with j*j == -I.
  explicit ComplexStructure(Matrix j);

  std::size_t dim() const { return j_.rows(); }
  const Matrix& matrix() const { return j_; }
  Vector apply(const Vector& v) const { return j_.apply(v); }

  friend bool operator==(const ComplexStructure& a, const ComplexStructure& b) = default;

 private:
  Matrix j_;
};

/// J e_{2k} = e_{2k+1} on R^{2m}.
ComplexStructure standard_complex_structure(std::size_t dim);
/// Block-diagonal J1 ⊕ J2.
ComplexStructure direct_sum(const ComplexStructure& a, const ComplexStructure& b);
/// P J P^-1
ComplexStructure transport(const ComplexStructure& j, const LinearMap& p);

/// N(x,y) = [Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y]
Vector nijenhuis(const LieAlgebra& g, const ComplexStructure& j, const Vector& x, const Vector& y);

struct PairWitness {
  std::size_t i = 0, j = 0;
  Vector residual;
};

/// First basis pair with N(e_i,e_j) != 0.
std::optional<PairWitness> nijenhuis_witness(const LieAlgebra& g, const ComplexStructure& j);
bool is_integrable(const LieAlgebra& g, const ComplexStructure& j);
/// [Jx,Jy] = [x,y] on all basis pairs.
bool is_abelian_cs(const LieAlgebra& g, const ComplexStructure& j);
/// g' + J g'
Subspace j_stable_commutator(const LieAlgebra& g, const ComplexStructure& j);

/// The five structural properties every abelian complex structure has.
struct CapReport {
  bool center_j_stable = false;           ///< (i)
  bool ad_j_anticommutes = false;         ///< (ii) ad_{Jx} = -ad_x J
  bool commutator_abelian = false;        ///< (iii)
  bool j_commutator_abelian_subalgebra = false;  ///< (iv)
  bool intersection_in_center = false;    ///< (v) g' ∩ Jg' ⊆ z(g'_J)

  bool all() const {
    return center_j_stable && ad_j_anticommutes && commutator_abelian &&
           j_commutator_abelian_subalgebra && intersection_in_center;
  }
};

/// Throws PreconditionError unless J is abelian.
CapReport lemma_cap_report(const LieAlgebra& g, const ComplexStructure& j);

/// A linear map between two Lie algebras with complex structures.
struct HolomorphicPair {
  LieAlgebra source;
  ComplexStructure source_j;
  LieAlgebra target;
  ComplexStructure target_j;
  LinearMap map;  ///< target.dim x source.dim
};

/// Invertible, a Lie homomorphism, and map∘J_source = J_target∘map.
bool is_holomorphic_iso(const HolomorphicPair& p);

}  // namespace abelcs
