#pragma once

// Tensor kernels shared by the geometry code. Each kernel has an OpenMP
// version (used by the library) and a plain serial reference in
// kernels::serial that the tests compare against entry-wise.

#include <optional>
#include <vector>

#include "abelcs/linalg.hpp"

namespace abelcs {

class LieAlgebra;
struct JacobiViolation;

namespace kernels {

/// Lexicographically first basis triple i<j<k violating Jacobi.
std::optional<JacobiViolation> first_jacobi_violation(const LieAlgebra& g);

/// Christoffel symbols gamma(i,j,.) = nabla_{e_i} e_j of the Levi-Civita
/// connection, from 2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
Tensor3 levi_civita_christoffel(const Tensor3& brackets, const Matrix& gram);

/// Matrix of nabla_{e_i}: column j is gamma(i,j,.).
Matrix connection_operator(const Tensor3& gamma, std::size_t i);

/// R(e_i,e_j) = [nabla_i, nabla_j] - nabla_{[e_i,e_j]}, stored at i*n+j.
std::vector<Matrix> curvature(const Tensor3& gamma, const Tensor3& brackets);

namespace serial {

std::optional<JacobiViolation> first_jacobi_violation(const LieAlgebra& g);
Tensor3 levi_civita_christoffel(const Tensor3& brackets, const Matrix& gram);
std::vector<Matrix> curvature(const Tensor3& gamma, const Tensor3& brackets);

}  // namespace serial

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace abelcs
