#include "abelcs/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "abelcs/lie_algebra.hpp"

namespace abelcs::kernels {

namespace {

Vector jacobi_residual(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = g.dim();
  Vector r = g.bracket(g.bracket_basis(i, j), unit_vector(n, k));
  r += g.bracket(g.bracket_basis(j, k), unit_vector(n, i));
  r += g.bracket(g.bracket_basis(k, i), unit_vector(n, j));
  return r;
}

Vector koszul_rhs(const Tensor3& c, const Matrix& gram, std::size_t i, std::size_t j) {
  const std::size_t n = gram.rows();
  // g([x,y],z) - g([y,z],x) + g([z,x],y) for x=e_i, y=e_j, z=e_k
  Vector cij = c.fibre(i, j);
  Vector gcij = gram.apply(cij);  // G symmetric: component k is g([e_i,e_j], e_k)
  Vector rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    Scalar v = gcij[k];
    for (std::size_t m = 0; m < n; ++m) {
      const Scalar& cjk = c(j, k, m);
      if (sgn(cjk) != 0) v -= cjk * gram(m, i);
      const Scalar& cki = c(k, i, m);
      if (sgn(cki) != 0) v += cki * gram(m, j);
    }
    rhs[k] = v;
  }
  return rhs;
}

Matrix curvature_entry(const std::vector<Matrix>& ops, const Tensor3& c, std::size_t i,
                       std::size_t j) {
  const std::size_t n = ops.size();
  Matrix r = commutator(ops[i], ops[j]);
  for (std::size_t m = 0; m < n; ++m) {
    const Scalar& cm = c(i, j, m);
    if (sgn(cm) == 0) continue;
    r = r - cm * ops[m];
  }
  return r;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix connection_operator(const Tensor3& gamma, std::size_t i) {
  const std::size_t n = gamma.extent1();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, j) = gamma(i, j, k);
  return m;
}

std::optional<JacobiViolation> first_jacobi_violation(const LieAlgebra& g) {
  const long n = static_cast<long>(g.dim());
  std::vector<std::optional<JacobiViolation>> per_i(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = ui + 1; j < g.dim() && !per_i[ui]; ++j)
      for (std::size_t k = j + 1; k < g.dim(); ++k) {
        Vector r = jacobi_residual(g, ui, j, k);
        if (!is_zero(r)) {
          per_i[ui] = JacobiViolation{ui, j, k, std::move(r)};
          break;
        }
      }
  }
  for (auto& v : per_i) {
    if (v) return v;
  }
  return std::nullopt;
}

Tensor3 levi_civita_christoffel(const Tensor3& brackets, const Matrix& gram) {
  const std::size_t n = gram.rows();
  const Matrix half_inv = Scalar(1, 2) * inverse(gram);
  Tensor3 gamma(n);
  const long nn = static_cast<long>(n * n);
#pragma omp parallel for schedule(dynamic)
  for (long ij = 0; ij < nn; ++ij) {
    const auto i = static_cast<std::size_t>(ij) / n;
    const auto j = static_cast<std::size_t>(ij) % n;
    gamma.set_fibre(i, j, half_inv.apply(koszul_rhs(brackets, gram, i, j)));
  }
  return gamma;
}

std::vector<Matrix> curvature(const Tensor3& gamma, const Tensor3& brackets) {
  const std::size_t n = gamma.extent0();
  std::vector<Matrix> ops(n);
  for (std::size_t i = 0; i < n; ++i) ops[i] = connection_operator(gamma, i);
  std::vector<Matrix> r(n * n, Matrix(n, n));
  const long nn = static_cast<long>(n * n);
#pragma omp parallel for schedule(dynamic)
  for (long ij = 0; ij < nn; ++ij) {
    const auto i = static_cast<std::size_t>(ij) / n;
    const auto j = static_cast<std::size_t>(ij) % n;
    if (i < j) r[static_cast<std::size_t>(ij)] = curvature_entry(ops, brackets, i, j);
  }
  // R(e_j, e_i) = -R(e_i, e_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) r[i * n + j] = -r[j * n + i];
  return r;
}

namespace serial {

std::optional<JacobiViolation> first_jacobi_violation(const LieAlgebra& g) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      for (std::size_t k = j + 1; k < g.dim(); ++k) {
        Vector r = jacobi_residual(g, i, j, k);
        if (!is_zero(r)) return JacobiViolation{i, j, k, std::move(r)};
      }
  return std::nullopt;
}

Tensor3 levi_civita_christoffel(const Tensor3& brackets, const Matrix& gram) {
  // Solves 2 G gamma_ij = rhs_ij directly rather than through G^{-1}.
  const std::size_t n = gram.rows();
  const Matrix two_g = Scalar(2) * gram;
  Tensor3 gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto x = solve(two_g, koszul_rhs(brackets, gram, i, j));
      if (!x) throw PreconditionError("Gram matrix is singular");
      gamma.set_fibre(i, j, *x);
    }
  return gamma;
}

std::vector<Matrix> curvature(const Tensor3& gamma, const Tensor3& brackets) {
  // Direct evaluation R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k
  // - nabla_{[e_i,e_j]} e_k, without operator matrices.
  const std::size_t n = gamma.extent0();
  auto nabla = [&](const Vector& x, const Vector& y) { return gamma.contract(x, y); };
  std::vector<Matrix> r;
  r.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix m(n, n);
      const Vector ei = unit_vector(n, i);
      const Vector ej = unit_vector(n, j);
      const Vector cij = brackets.fibre(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = unit_vector(n, k);
        Vector v = nabla(ei, nabla(ej, ek)) - nabla(ej, nabla(ei, ek)) - nabla(cij, ek);
        m.set_col(k, v);
      }
      r.push_back(std::move(m));
    }
  return r;
}

}  // namespace serial
}  // namespace abelcs::kernels
