#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abelcs/linalg.hpp"
#include "abelcs/subspace.hpp"

namespace abelcs {

/// One nonzero bracket [e_i, e_j] = value, i < j.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Vector value;
};

/// Finite-dimensional Lie algebra over Q given by structure constants:
/// constants()(i,j,k) is the coefficient of e_k in [e_i, e_j].
///
/// Antisymmetry holds by construction. The Jacobi identity is not enforced
/// here (see check_jacobi), so malformed tensors can still be represented
/// and diagnosed.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Brackets given for pairs i < j only; the i > j half is reflected.
  LieAlgebra(std::size_t dim, const std::vector<BracketEntry>& brackets,
             std::vector<std::string> basis_names = {});
  /// Full tensor; throws PreconditionError if it is not antisymmetric.
  static LieAlgebra from_tensor(Tensor3 constants, std::vector<std::string> basis_names = {});
  static LieAlgebra abelian(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Tensor3& constants() const { return c_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  /// Nonzero brackets with i < j in lexicographic order.
  std::vector<BracketEntry> brackets() const;

  Vector bracket(const Vector& x, const Vector& y) const;
  Vector bracket_basis(std::size_t i, std::size_t j) const { return c_.fibre(i, j); }
  /// Matrix of y -> [x, y].
  LinearMap ad(const Vector& x) const;
  LinearMap ad_basis(std::size_t i) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t dim_ = 0;
  Tensor3 c_;
  std::vector<std::string> names_;
};

std::vector<std::string> default_basis_names(std::size_t dim, const std::string& prefix = "e");

struct JacobiViolation {
  std::size_t i = 0, j = 0, k = 0;
  Vector residual;  ///< [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
};

/// First violating basis triple i<j<k in lexicographic order, if any.
std::optional<JacobiViolation> check_jacobi(const LieAlgebra& g);

Subspace commutator_ideal(const LieAlgebra& g);
Subspace center(const LieAlgebra& g);
/// span{[u, v] : u in a, v in b}
Subspace bracket_subspaces(const LieAlgebra& g, const Subspace& a, const Subspace& b);
/// {u in U : [u, U] = 0}. Throws PreconditionError if U is not a subalgebra.
Subspace center_of_subalgebra(const LieAlgebra& g, const Subspace& u);

struct SeriesReport {
  std::vector<Subspace> derived;        ///< g, [g,g], ... until stable
  std::vector<Subspace> lower_central;  ///< g, [g,g], [g,[g,g]], ... until stable
  bool is_solvable = false;
  bool is_2step_solvable = false;  ///< derived length <= 2
  bool is_nilpotent = false;
  /// Smallest k with C^k = 0 (C^0 = g); 0 for the zero algebra, unset when
  /// not nilpotent.
  std::optional<std::size_t> nilpotency_class;
};

SeriesReport derived_and_central_series(const LieAlgebra& g);
bool is_unimodular(const LieAlgebra& g);
bool is_abelian(const LieAlgebra& g);

struct SubspaceFlags {
  bool is_subalgebra = false;
  bool is_ideal = false;
  bool is_abelian_subspace = false;
};

SubspaceFlags classify_subspace(const LieAlgebra& g, const Subspace& u);

/// Transport of structure along an invertible P: [x,y]' = P[P^-1 x, P^-1 y].
LieAlgebra pushforward(const LieAlgebra& g, const LinearMap& p);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

struct HomomorphismCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  ///< basis pair (i,j) of the source
};

/// phi : source -> target, a target.dim x source.dim matrix.
HomomorphismCheck is_homomorphism(const LinearMap& phi, const LieAlgebra& source,
                                  const LieAlgebra& target);

}  // namespace abelcs
