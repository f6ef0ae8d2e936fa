#include "abelcs/subspace.hpp"

namespace abelcs {

namespace {

void require_ambient(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw DimensionError("subspaces live in different ambient spaces");
  }
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(unit_vector(ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s;
  s.ambient_ = ambient_dim;
  if (vectors.empty() || ambient_dim == 0) {
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw DimensionError("span: vector length mismatch");
    }
    return s;
  }
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw DimensionError("span: vector length mismatch");
  }
  RowEchelon e = row_reduce(Matrix::from_rows(vectors));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis_.push_back(e.reduced.row(r));
  s.pivots_ = std::move(e.pivots);
  return s;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw DimensionError("coordinates: vector length mismatch");
  // In reduced echelon form the coordinate on row r is v[pivot_r].
  Vector c(basis_.size());
  Vector residual = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    c[r] = v[pivots_[r]];
    axpy(residual, -c[r], basis_[r]);
  }
  if (!abelcs::is_zero(residual)) return std::nullopt;
  return c;
}

Vector Subspace::from_coordinates(const Vector& coords) const {
  if (coords.size() != basis_.size()) throw DimensionError("from_coordinates: length mismatch");
  Vector v(ambient_);
  for (std::size_t r = 0; r < basis_.size(); ++r) axpy(v, coords[r], basis_[r]);
  return v;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  require_ambient(*this, other);
  for (const auto& b : other.basis_) {
    if (!contains(b)) return false;
  }
  return true;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_columns(basis_, ambient_); }

Subspace sum(const Subspace& u, const Subspace& v) {
  require_ambient(u, v);
  std::vector<Vector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.ambient_dim(), all);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  require_ambient(u, v);
  if (u.is_zero() || v.is_zero()) return Subspace::zero(u.ambient_dim());
  // Solve sum a_i u_i - sum b_j v_j = 0; each solution gives sum a_i u_i.
  const std::size_t n = u.ambient_dim();
  Matrix m(n, u.dim() + v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) m.set_col(i, u.basis()[i]);
  for (std::size_t j = 0; j < v.dim(); ++j) m.set_col(u.dim() + j, -v.basis()[j]);
  std::vector<Vector> out;
  for (const auto& k : nullspace(m)) {
    Vector x(n);
    for (std::size_t i = 0; i < u.dim(); ++i) axpy(x, k[i], u.basis()[i]);
    out.push_back(std::move(x));
  }
  return Subspace::span(n, out);
}

Subspace image(const Matrix& map, const Subspace& u) {
  if (map.cols() != u.ambient_dim()) throw DimensionError("image: map/subspace shape");
  std::vector<Vector> out;
  out.reserve(u.dim());
  for (const auto& b : u.basis()) out.push_back(map.apply(b));
  return Subspace::span(map.rows(), out);
}

bool is_stable(const Matrix& map, const Subspace& u) {
  if (!map.is_square() || map.rows() != u.ambient_dim()) {
    throw DimensionError("is_stable: map/subspace shape");
  }
  for (const auto& b : u.basis()) {
    if (!u.contains(map.apply(b))) return false;
  }
  return true;
}

Subspace complement(const Subspace& u, const Subspace& w, const std::optional<Matrix>& gram) {
  require_ambient(u, w);
  if (!w.contains(u)) throw PreconditionError("complement: U is not contained in W");
  const std::size_t n = u.ambient_dim();
  if (gram) {
    if (gram->rows() != n || gram->cols() != n) throw DimensionError("complement: Gram shape");
    // x = sum c_k w_k with u_i^T G x = 0 for every basis vector u_i.
    if (u.is_zero()) return w;
    Matrix m(u.dim(), w.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) {
      Vector gu = gram->transpose().apply(u.basis()[i]);
      for (std::size_t k = 0; k < w.dim(); ++k) m(i, k) = dot(gu, w.basis()[k]);
    }
    std::vector<Vector> out;
    for (const auto& c : nullspace(m)) out.push_back(w.from_coordinates(c));
    return Subspace::span(n, out);
  }
  std::vector<Vector> chosen;
  Subspace acc = u;
  for (const auto& b : w.basis()) {
    if (acc.contains(b)) continue;
    chosen.push_back(b);
    acc = sum(acc, Subspace::span(n, {b}));
  }
  return Subspace::span(n, chosen);
}

Subspace orthogonal_complement(const Subspace& u, const Matrix& gram) {
  return complement(u, Subspace::whole(u.ambient_dim()), gram);
}

}  // namespace abelcs
