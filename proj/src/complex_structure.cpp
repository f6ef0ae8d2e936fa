#include "abelcs/complex_structure.hpp"

namespace abelcs {

ComplexStructure::ComplexStructure(Matrix j) : j_(std::move(j)) {
  if (!j_.is_square()) throw PreconditionError("complex structure must be square");
  if (j_ * j_ != -Matrix::identity(j_.rows())) {
    throw PreconditionError("complex structure does not satisfy J^2 = -I");
  }
}

ComplexStructure standard_complex_structure(std::size_t dim) {
  if (dim % 2 != 0) throw PreconditionError("complex structure needs even dimension");
  Matrix j(dim, dim);
  for (std::size_t k = 0; k < dim; k += 2) {
    j(k + 1, k) = 1;
    j(k, k + 1) = -1;
  }
  return ComplexStructure(std::move(j));
}

ComplexStructure direct_sum(const ComplexStructure& a, const ComplexStructure& b) {
  const std::size_t n = a.dim() + b.dim();
  Matrix j(n, n);
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) j(r, c) = a.matrix()(r, c);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c) j(a.dim() + r, a.dim() + c) = b.matrix()(r, c);
  return ComplexStructure(std::move(j));
}

ComplexStructure transport(const ComplexStructure& j, const LinearMap& p) {
  return ComplexStructure(p * j.matrix() * inverse(p));
}

Vector nijenhuis(const LieAlgebra& g, const ComplexStructure& j, const Vector& x,
                 const Vector& y) {
  if (j.dim() != g.dim()) throw DimensionError("nijenhuis: J and g differ in dimension");
  const Vector jx = j.apply(x);
  const Vector jy = j.apply(y);
  return g.bracket(jx, jy) - j.apply(g.bracket(jx, y)) - j.apply(g.bracket(x, jy)) -
         g.bracket(x, y);
}

std::optional<PairWitness> nijenhuis_witness(const LieAlgebra& g, const ComplexStructure& j) {
  const std::size_t n = g.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector r = nijenhuis(g, j, unit_vector(n, a), unit_vector(n, b));
      if (!is_zero(r)) return PairWitness{a, b, std::move(r)};
    }
  return std::nullopt;
}

bool is_integrable(const LieAlgebra& g, const ComplexStructure& j) {
  return !nijenhuis_witness(g, j).has_value();
}

bool is_abelian_cs(const LieAlgebra& g, const ComplexStructure& j) {
  if (j.dim() != g.dim()) throw DimensionError("is_abelian_cs: J and g differ in dimension");
  const std::size_t n = g.dim();
  std::vector<Vector> jcols(n);
  for (std::size_t a = 0; a < n; ++a) jcols[a] = j.matrix().col(a);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (g.bracket(jcols[a], jcols[b]) != g.bracket_basis(a, b)) return false;
    }
  return true;
}

Subspace j_stable_commutator(const LieAlgebra& g, const ComplexStructure& j) {
  const Subspace d = commutator_ideal(g);
  return sum(d, image(j.matrix(), d));
}

CapReport lemma_cap_report(const LieAlgebra& g, const ComplexStructure& j) {
  if (!is_abelian_cs(g, j)) {
    throw PreconditionError("lemma_cap_report requires an abelian complex structure");
  }
  CapReport r;
  const std::size_t n = g.dim();
  r.center_j_stable = is_stable(j.matrix(), center(g));

  r.ad_j_anticommutes = true;
  for (std::size_t a = 0; a < n && r.ad_j_anticommutes; ++a) {
    const Matrix lhs = g.ad(j.matrix().col(a));
    const Matrix rhs = -(g.ad_basis(a) * j.matrix());
    r.ad_j_anticommutes = lhs == rhs;
  }

  const Subspace d = commutator_ideal(g);
  const Subspace jd = image(j.matrix(), d);
  r.commutator_abelian = bracket_subspaces(g, d, d).is_zero();
  r.j_commutator_abelian_subalgebra = bracket_subspaces(g, jd, jd).is_zero();

  const Subspace dj = sum(d, jd);
  r.intersection_in_center = center_of_subalgebra(g, dj).contains(intersect(d, jd));
  return r;
}

bool is_holomorphic_iso(const HolomorphicPair& p) {
  const std::size_t n = p.source.dim();
  if (p.map.rows() != p.target.dim() || p.map.cols() != n || p.source_j.dim() != n ||
      p.target_j.dim() != p.target.dim()) {
    throw DimensionError("is_holomorphic_iso: shape mismatch");
  }
  if (!p.map.is_square() || rank(p.map) != n) return false;
  if (p.map * p.source_j.matrix() != p.target_j.matrix() * p.map) return false;
  return is_homomorphism(p.map, p.source, p.target).ok;
}

}  // namespace abelcs
