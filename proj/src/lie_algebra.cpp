#include "abelcs/lie_algebra.hpp"

#include "abelcs/kernels.hpp"

namespace abelcs {

std::vector<std::string> default_basis_names(std::size_t dim, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

LieAlgebra::LieAlgebra(std::size_t dim, const std::vector<BracketEntry>& brackets,
                       std::vector<std::string> basis_names)
    : dim_(dim), c_(dim), names_(std::move(basis_names)) {
  if (names_.empty()) names_ = default_basis_names(dim);
  if (names_.size() != dim) throw DimensionError("basis name count differs from dimension");
  for (const auto& b : brackets) {
    if (b.i >= dim || b.j >= dim || b.value.size() != dim) {
      throw DimensionError("bracket entry out of range");
    }
    if (b.i == b.j) {
      if (!is_zero(b.value)) throw PreconditionError("[e_i, e_i] must vanish");
      continue;
    }
    const std::size_t lo = std::min(b.i, b.j);
    const std::size_t hi = std::max(b.i, b.j);
    const Vector v = b.i < b.j ? b.value : -b.value;
    c_.set_fibre(lo, hi, v);
    c_.set_fibre(hi, lo, -v);
  }
}

LieAlgebra LieAlgebra::from_tensor(Tensor3 constants, std::vector<std::string> basis_names) {
  const std::size_t n = constants.extent0();
  if (constants.extent1() != n || constants.extent2() != n) {
    throw DimensionError("structure constants must be n x n x n");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (constants(i, j, k) != -constants(j, i, k)) {
          throw PreconditionError("structure constants are not antisymmetric");
        }
      }
  LieAlgebra g;
  g.dim_ = n;
  g.c_ = std::move(constants);
  g.names_ = basis_names.empty() ? default_basis_names(n) : std::move(basis_names);
  if (g.names_.size() != n) throw DimensionError("basis name count differs from dimension");
  return g;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return LieAlgebra(dim, {}); }

std::vector<BracketEntry> LieAlgebra::brackets() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      Vector v = c_.fibre(i, j);
      if (!is_zero(v)) out.push_back({i, j, std::move(v)});
    }
  return out;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket: vector length");
  return c_.contract(x, y);
}

LinearMap LieAlgebra::ad(const Vector& x) const {
  if (x.size() != dim_) throw DimensionError("ad: vector length");
  LinearMap m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Scalar& c = c_(i, j, k);
        if (sgn(c) != 0) m(k, j) += x[i] * c;
      }
  }
  return m;
}

LinearMap LieAlgebra::ad_basis(std::size_t i) const { return ad(unit_vector(dim_, i)); }

std::optional<JacobiViolation> check_jacobi(const LieAlgebra& g) {
  return kernels::first_jacobi_violation(g);
}

Subspace commutator_ideal(const LieAlgebra& g) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) vs.push_back(g.bracket_basis(i, j));
  return Subspace::span(g.dim(), vs);
}

Subspace center(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  // Unknown x; equation (j,k): sum_i x_i c(i,j,k) = 0.
  Matrix m(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(j * n + k, i) = g.constants()(i, j, k);
  return Subspace::span(n, nullspace(m));
}

Subspace bracket_subspaces(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vector> vs;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) vs.push_back(g.bracket(x, y));
  return Subspace::span(g.dim(), vs);
}

Subspace center_of_subalgebra(const LieAlgebra& g, const Subspace& u) {
  if (!u.contains(bracket_subspaces(g, u, u))) {
    throw PreconditionError("center_of_subalgebra: U is not closed under the bracket");
  }
  const std::size_t d = u.dim();
  const std::size_t n = g.dim();
  // Unknown coordinates a; [sum a_p u_p, u_q] = 0 for every q.
  Matrix m(n * d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      Vector b = g.bracket(u.basis()[p], u.basis()[q]);
      for (std::size_t k = 0; k < n; ++k) m(q * n + k, p) = b[k];
    }
  std::vector<Vector> out;
  for (const auto& a : nullspace(m)) out.push_back(u.from_coordinates(a));
  return Subspace::span(n, out);
}

SeriesReport derived_and_central_series(const LieAlgebra& g) {
  SeriesReport r;
  const Subspace whole = Subspace::whole(g.dim());
  r.derived.push_back(whole);
  while (true) {
    Subspace next = bracket_subspaces(g, r.derived.back(), r.derived.back());
    if (next == r.derived.back()) break;
    r.derived.push_back(std::move(next));
  }
  r.lower_central.push_back(whole);
  while (true) {
    Subspace next = bracket_subspaces(g, whole, r.lower_central.back());
    if (next == r.lower_central.back()) break;
    r.lower_central.push_back(std::move(next));
  }
  r.is_solvable = r.derived.back().is_zero();
  r.is_2step_solvable = r.is_solvable && r.derived.size() <= 3;
  r.is_nilpotent = r.lower_central.back().is_zero();
  if (r.is_nilpotent) r.nilpotency_class = r.lower_central.size() - 1;
  return r;
}

bool is_unimodular(const LieAlgebra& g) {
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Scalar t = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) t += g.constants()(i, j, j);
    if (sgn(t) != 0) return false;
  }
  return true;
}

bool is_abelian(const LieAlgebra& g) { return g.constants().is_zero(); }

SubspaceFlags classify_subspace(const LieAlgebra& g, const Subspace& u) {
  if (u.ambient_dim() != g.dim()) throw DimensionError("classify_subspace: ambient mismatch");
  SubspaceFlags f;
  Subspace uu = bracket_subspaces(g, u, u);
  f.is_abelian_subspace = uu.is_zero();
  f.is_subalgebra = u.contains(uu);
  f.is_ideal = u.contains(bracket_subspaces(g, Subspace::whole(g.dim()), u));
  return f;
}

LieAlgebra pushforward(const LieAlgebra& g, const LinearMap& p) {
  if (!p.is_square() || p.rows() != g.dim()) throw DimensionError("pushforward: shape");
  const LinearMap q = inverse(p);  // throws on singular P
  const std::size_t n = g.dim();
  std::vector<Vector> qcols(n);
  for (std::size_t a = 0; a < n; ++a) qcols[a] = q.col(a);
  std::vector<BracketEntry> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector v = p.apply(g.bracket(qcols[a], qcols[b]));
      if (!is_zero(v)) out.push_back({a, b, std::move(v)});
    }
  return LieAlgebra(n, out, g.basis_names());
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<BracketEntry> out;
  auto embed = [n](const Vector& v, std::size_t offset) {
    Vector w(n);
    for (std::size_t k = 0; k < v.size(); ++k) w[offset + k] = v[k];
    return w;
  };
  for (const auto& e : a.brackets()) out.push_back({e.i, e.j, embed(e.value, 0)});
  for (const auto& e : b.brackets())
    out.push_back({e.i + a.dim(), e.j + a.dim(), embed(e.value, a.dim())});
  std::vector<std::string> names = a.basis_names();
  names.insert(names.end(), b.basis_names().begin(), b.basis_names().end());
  return LieAlgebra(n, out, std::move(names));
}

HomomorphismCheck is_homomorphism(const LinearMap& phi, const LieAlgebra& source,
                                  const LieAlgebra& target) {
  if (phi.rows() != target.dim() || phi.cols() != source.dim()) {
    throw DimensionError("is_homomorphism: map shape does not match algebras");
  }
  HomomorphismCheck r;
  for (std::size_t i = 0; i < source.dim(); ++i)
    for (std::size_t j = i + 1; j < source.dim(); ++j) {
      Vector lhs = phi.apply(source.bracket_basis(i, j));
      Vector rhs = target.bracket(phi.col(i), phi.col(j));
      if (lhs != rhs) {
        r.ok = false;
        r.witness = {i, j};
        return r;
      }
    }
  return r;
}

}  // namespace abelcs
