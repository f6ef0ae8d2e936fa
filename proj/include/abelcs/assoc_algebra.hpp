#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abelcs/linalg.hpp"
#include "abelcs/subspace.hpp"

namespace abelcs {

/// One product e_i · e_j = value with i <= j.
struct ProductEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Vector value;
};

/// A bilinear product on Q^n: table()(i,j,k) is the coefficient of e_k in
/// e_i · e_j. Commutativity and associativity are checked by check_axioms,
/// not assumed, so that malformed tables can be diagnosed.
class CommAssocAlgebra {
 public:
  CommAssocAlgebra() = default;
  /// Symmetric pairs i <= j; the i > j half is reflected.
  CommAssocAlgebra(std::size_t dim, const std::vector<ProductEntry>& products,
                   std::vector<std::string> basis_names = {});
  static CommAssocAlgebra from_tensor(Tensor3 table, std::vector<std::string> basis_names = {});
  static CommAssocAlgebra zero(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Tensor3& table() const { return m_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  /// Nonzero products with i <= j.
  std::vector<ProductEntry> products() const;

  Vector multiply(const Vector& x, const Vector& y) const;
  Vector product_basis(std::size_t i, std::size_t j) const { return m_.fibre(i, j); }

  friend bool operator==(const CommAssocAlgebra& a, const CommAssocAlgebra& b) {
    return a.dim_ == b.dim_ && a.m_ == b.m_;
  }

 private:
  std::size_t dim_ = 0;
  Tensor3 m_;
  std::vector<std::string> names_;
};

/// R with 1·1 = scale·1.
CommAssocAlgebra real_line(const Scalar& scale = 1);
/// C as R^2 with basis {1, i}.
CommAssocAlgebra complex_plane();
/// R[t]/(t^k) with basis {1, t, ..., t^{k-1}}.
CommAssocAlgebra truncated_polynomials(std::size_t k);
/// Block-diagonal product.
CommAssocAlgebra direct_sum(const CommAssocAlgebra& a, const CommAssocAlgebra& b);
/// x·'y = P(P^-1 x · P^-1 y)
CommAssocAlgebra pushforward(const CommAssocAlgebra& a, const LinearMap& p);

struct AxiomViolation {
  enum class Kind { commutativity, associativity };
  Kind kind = Kind::commutativity;
  std::size_t i = 0, j = 0, k = 0;
  Vector residual;
};

std::optional<AxiomViolation> check_axioms(const CommAssocAlgebra& a);

struct CompatibilityViolation {
  int identity = 1;  ///< 1: a∗(b·c) = b∗(a·c); 2: a·(b∗c) = b·(a∗c)
  std::size_t i = 0, j = 0, k = 0;
  Vector residual;
};

/// Both compatibility identities on basis triples. Throws PreconditionError
/// on dimension mismatch or when either product fails check_axioms.
std::optional<CompatibilityViolation> check_compatibility(const CommAssocAlgebra& dot,
                                                          const CommAssocAlgebra& star);

/// Matrix of y -> x·y.
LinearMap left_mult(const CommAssocAlgebra& a, const Vector& x);

struct Nilradical {
  Subspace radical;
  bool is_semisimple = false;
};

/// Radical of the trace form b(x,y) = tr(ℓ_{x·y}). Throws PreconditionError
/// when the axioms fail.
Nilradical nilradical(const CommAssocAlgebra& a);
Subspace square_span(const CommAssocAlgebra& a);
std::optional<Vector> unit_element(const CommAssocAlgebra& a);

enum class FactorType { real, complex };

struct IdempotentSet {
  std::vector<Vector> idempotents;
  std::vector<FactorType> types;  ///< parallel to idempotents
};

enum class SpectralMode { exact, floating };

/// Raised when the exact mode meets a spectrum it cannot factor over Q, or
/// when floating-mode rounding cannot be certified.
class IrrationalSpectrumError : public Error {
 public:
  using Error::Error;
};

/// Primitive orthogonal idempotents of a semisimple algebra, one per simple
/// factor, tagged R or C. Ordered real-first, then lexicographically.
/// Throws PreconditionError when not semisimple.
IdempotentSet primitive_idempotents(const CommAssocAlgebra& a, std::mt19937_64& rng,
                                    SpectralMode mode = SpectralMode::exact);

// Polynomial helpers (coefficients low to high), exposed for testing.
using Polynomial = std::vector<Scalar>;
Polynomial minimal_polynomial(const Matrix& m);
Matrix evaluate(const Polynomial& p, const Matrix& m);
Scalar evaluate(const Polynomial& p, const Scalar& x);
/// Best rational approximation with denominator <= max_den.
Scalar rationalize(double value, long long max_den);

}  // namespace abelcs
