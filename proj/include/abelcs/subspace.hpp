#pragma once

#include <optional>
#include <vector>

#include "abelcs/linalg.hpp"

namespace abelcs {

/// A linear subspace of Q^n held as the nonzero rows of a reduced row
/// echelon matrix. The representation is canonical, so two subspaces are
/// equal as sets iff they compare equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace whole(std::size_t ambient_dim);
  /// Linear span; throws DimensionError if a vector has the wrong length.
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_whole() const { return basis_.size() == ambient_; }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v with respect to basis(); nullopt when v is not inside.
  std::optional<Vector> coordinates(const Vector& v) const;
  /// Inverse of coordinates().
  Vector from_coordinates(const Vector& coords) const;
  /// Matrix whose columns are the basis vectors (ambient x dim).
  Matrix basis_matrix() const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
/// Image of u under a square linear map.
Subspace image(const Matrix& map, const Subspace& u);
bool is_stable(const Matrix& map, const Subspace& u);

/// A complement C of u inside w (w = u + C, u ∩ C = 0). With a Gram matrix
/// the orthogonal complement of u within w is returned; otherwise basis
/// vectors of w are added greedily in echelon order. Throws
/// PreconditionError when u is not contained in w.
Subspace complement(const Subspace& u, const Subspace& w,
                    const std::optional<Matrix>& gram = std::nullopt);
/// {x : gram(x, u) = 0} in the whole ambient space.
Subspace orthogonal_complement(const Subspace& u, const Matrix& gram);

}  // namespace abelcs
