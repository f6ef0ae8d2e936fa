#include "abelcs/linalg.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace abelcs {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

void require_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_token(num)) throw ParseError("malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Scalar(parse_integer(num));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_token(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Scalar q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& value) {
  Scalar s = value;
  s.canonicalize();
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector r(v.size());
  if (sgn(s) == 0) return r;
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vector& operator+=(Vector& a, const Vector& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

void axpy(Vector& a, const Scalar& s, const Vector& b) {
  require_same_size(a, b);
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) != 0) a[i] += s * b[i];
  }
}

Scalar dot(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  Scalar r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) r += a[i] * b[i];
  }
  return r;
}

std::string format_vector(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_scalar(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_col(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw DimensionError("trace of non-square matrix");
  Scalar t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  Vector r(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, c);
      if (sgn(a) != 0) r[i] += a * v[c];
    }
  }
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b(k, j);
        if (sgn(bkj) != 0) r(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator-(const Matrix& a) { return Scalar(-1) * a; }

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  if (sgn(s) == 0) return r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
  return r;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << format_vector(m.row(r));
  }
  os << "]";
  return os.str();
}

RowEchelon row_reduce(Matrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead_row, j));
    }
    Scalar inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || sgn(m(r, c)) == 0) continue;
      Scalar f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (sgn(m(lead_row, j)) != 0) m(r, j) -= f * m(lead_row, j);
      }
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: right-hand side length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    throw PreconditionError("matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      Scalar f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

bool is_symmetric_positive_definite(const Matrix& m) {
  if (!m.is_square()) return false;
  if (m.transpose() != m) return false;
  // Gaussian elimination without pivoting: the k-th pivot is the ratio of
  // consecutive leading principal minors, so all pivots > 0 iff SPD.
  Matrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(a(c, c)) <= 0) return false;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      Scalar f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Tensor3::Tensor3(std::size_t n0, std::size_t n1, std::size_t n2)
    : n0_(n0), n1_(n1), n2_(n2), data_(n0 * n1 * n2) {}

Vector Tensor3::fibre(std::size_t i, std::size_t j) const {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>((i * n1_ + j) * n2_);
  return Vector(first, first + static_cast<std::ptrdiff_t>(n2_));
}

void Tensor3::set_fibre(std::size_t i, std::size_t j, const Vector& v) {
  if (v.size() != n2_) throw DimensionError("tensor fibre length mismatch");
  for (std::size_t k = 0; k < n2_; ++k) (*this)(i, j, k) = v[k];
}

Vector Tensor3::contract(const Vector& x, const Vector& y) const {
  if (x.size() != n0_ || y.size() != n1_) throw DimensionError("tensor contraction shape");
  Vector r(n2_);
  for (std::size_t i = 0; i < n0_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n1_; ++j) {
      if (sgn(y[j]) == 0) continue;
      Scalar w = x[i] * y[j];
      for (std::size_t k = 0; k < n2_; ++k) {
        const Scalar& t = (*this)(i, j, k);
        if (sgn(t) != 0) r[k] += w * t;
      }
    }
  }
  return r;
}

bool Tensor3::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Scalar Tensor3::squared_norm() const {
  Scalar s = 0;
  for (const auto& x : data_) {
    if (sgn(x) != 0) s += x * x;
  }
  return s;
}

}  // namespace abelcs
