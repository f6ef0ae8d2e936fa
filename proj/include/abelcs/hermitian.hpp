#pragma once

#include <optional>
#include <vector>

#include "abelcs/complex_structure.hpp"
#include "abelcs/lie_algebra.hpp"

namespace abelcs {

/// Inner product given by a symmetric positive definite Gram matrix.
class InnerProduct {
 public:
  InnerProduct() = default;
  /// Throws PreconditionError unless gram is symmetric positive definite.
  explicit InnerProduct(Matrix gram);
  static InnerProduct identity(std::size_t n) { return InnerProduct(Matrix::identity(n)); }

  std::size_t dim() const { return g_.rows(); }
  const Matrix& gram() const { return g_; }
  Scalar operator()(const Vector& x, const Vector& y) const;

  friend bool operator==(const InnerProduct& a, const InnerProduct& b) = default;

 private:
  Matrix g_;
};

/// J^T G J == G
bool is_hermitian(const ComplexStructure& j, const InnerProduct& metric);

/// (g, J, metric) with J compatible with the metric. J is not required to be
/// integrable here; callers check that separately.
class HermitianTriple {
 public:
  HermitianTriple() = default;
  /// Throws DimensionError on mismatched sizes, PreconditionError when the
  /// metric is not J-invariant.
  HermitianTriple(LieAlgebra g, ComplexStructure j, InnerProduct metric);

  const LieAlgebra& algebra() const { return g_; }
  const ComplexStructure& j() const { return j_; }
  const InnerProduct& metric() const { return metric_; }
  std::size_t dim() const { return g_.dim(); }

 private:
  LieAlgebra g_;
  ComplexStructure j_;
  InnerProduct metric_;
};

/// gamma(i,j,k) is the coefficient of e_k in nabla_{e_i} e_j.
struct Connection {
  Tensor3 gamma;

  static Connection zero(std::size_t n) { return Connection{Tensor3(n)}; }
  std::size_t dim() const { return gamma.extent0(); }
  Vector apply(const Vector& x, const Vector& y) const { return gamma.contract(x, y); }
  /// Matrix of nabla_{e_i}.
  Matrix op(std::size_t i) const;
  bool is_zero() const { return gamma.is_zero(); }

  friend bool operator==(const Connection& a, const Connection& b) = default;
};

/// Curvature operators R(e_i,e_j), stored at i*n+j.
class Curvature {
 public:
  Curvature() = default;
  Curvature(std::size_t n, std::vector<Matrix> ops) : n_(n), ops_(std::move(ops)) {}

  std::size_t dim() const { return n_; }
  const Matrix& at(std::size_t i, std::size_t j) const { return ops_[i * n_ + j]; }
  /// R(x,y) = sum x_i y_j R(e_i,e_j)
  Matrix apply(const Vector& x, const Vector& y) const;
  bool is_zero() const;
  /// Exact sum of squared entries over all i, j.
  Scalar squared_norm() const;

  friend bool operator==(const Curvature& a, const Curvature& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> ops_;
};

/// ω(x,y) = g(Jx,y)
Scalar kahler_form(const HermitianTriple& t, const Vector& x, const Vector& y);
/// dω(x,y,z) = -ω([x,y],z) - ω([y,z],x) - ω([z,x],y)
Scalar d_omega(const HermitianTriple& t, const Vector& x, const Vector& y, const Vector& z);

struct TripleValue {
  std::size_t i = 0, j = 0, k = 0;
  Scalar value;
};

/// First basis triple i<j<k with dω != 0.
std::optional<TripleValue> d_omega_witness(const HermitianTriple& t);
bool is_kahler(const HermitianTriple& t);
/// g([x,y],z) + g([y,z],x) + g([z,x],y) = 0 on basis triples. Throws
/// PreconditionError unless J is abelian.
bool kahler_identity_check(const HermitianTriple& t);
/// g([x,Jy],z) + g([y,Jz],x) + g([z,Jx],y) = 0 on all basis triples.
bool vip_identity(const HermitianTriple& t);

/// Koszul formula solved exactly. Throws VerificationError if the result is
/// not torsion-free and metric.
Connection levi_civita(const LieAlgebra& g, const InnerProduct& metric);

/// T(e_i,e_j) = nabla_i e_j - nabla_j e_i - [e_i,e_j] at (i,j,.)
Tensor3 torsion(const LieAlgebra& g, const Connection& c);
Curvature curvature(const LieAlgebra& g, const Connection& c);
bool is_torsion_free(const LieAlgebra& g, const Connection& c);
bool is_flat(const LieAlgebra& g, const Connection& c);

struct ConnectionFlags {
  bool is_metric = false;        ///< every nabla_x skew w.r.t. G
  bool is_complex = false;       ///< nabla_x J = J nabla_x
  bool torsion_type_11 = false;  ///< T(Jx,Jy) = T(x,y)
};

ConnectionFlags connection_flags(const LieAlgebra& g, const ComplexStructure& j,
                                 const InnerProduct& metric, const Connection& c);

/// nabla-bar_x y = (nabla_x y - J nabla_x Jy) / 2
Connection bar_connection(const ComplexStructure& j, const Connection& c);

/// bar_connection of the Levi-Civita connection. For abelian J the result is
/// cross-checked against first_canonical_expanded; VerificationError on
/// mismatch.
Connection first_canonical(const HermitianTriple& t);
/// The closed form valid for abelian J:
/// 4 g(∇¹_x y, z) = g([x,y],z) + g([z,x],y) + g([x,Jy],Jz) + g([Jz,x],Jy) - 2 g([y,z],x).
/// Throws PreconditionError unless J is abelian.
Connection first_canonical_expanded(const HermitianTriple& t);

struct FlatMetricReport {
  bool commuting = false;         ///< [nabla_x, nabla_y] = 0
  bool derived_parallel = false;  ///< nabla_v = 0 for v in g'
  bool ok() const { return commuting && derived_parallel; }
};

/// Throws PreconditionError unless g is solvable and c is flat and metric.
FlatMetricReport flat_metric_lemma_check(const LieAlgebra& g, const InnerProduct& metric,
                                         const Connection& c);

/// K(x,y) for the Levi-Civita connection. Throws PreconditionError when x, y
/// are linearly dependent.
Scalar sectional_curvature(const LieAlgebra& g, const InnerProduct& metric, const Vector& x,
                           const Vector& y);

}  // namespace abelcs
