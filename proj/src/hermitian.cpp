#include "abelcs/hermitian.hpp"

#include "abelcs/kernels.hpp"

namespace abelcs {

InnerProduct::InnerProduct(Matrix gram) : g_(std::move(gram)) {
  if (!is_symmetric_positive_definite(g_)) {
    throw PreconditionError("metric is not symmetric positive definite");
  }
}

Scalar InnerProduct::operator()(const Vector& x, const Vector& y) const {
  return dot(x, g_.apply(y));
}

bool is_hermitian(const ComplexStructure& j, const InnerProduct& metric) {
  if (j.dim() != metric.dim()) throw DimensionError("is_hermitian: J and metric differ in size");
  return j.matrix().transpose() * metric.gram() * j.matrix() == metric.gram();
}

HermitianTriple::HermitianTriple(LieAlgebra g, ComplexStructure j, InnerProduct metric)
    : g_(std::move(g)), j_(std::move(j)), metric_(std::move(metric)) {
  if (g_.dim() != j_.dim() || g_.dim() != metric_.dim()) {
    throw DimensionError("Hermitian triple: algebra, J and metric differ in dimension");
  }
  if (!is_hermitian(j_, metric_)) throw PreconditionError("metric is not J-invariant");
}

Matrix Connection::op(std::size_t i) const { return kernels::connection_operator(gamma, i); }

Matrix Curvature::apply(const Vector& x, const Vector& y) const {
  Matrix r(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(y[j]) == 0) continue;
      r = r + (x[i] * y[j]) * at(i, j);
    }
  }
  return r;
}

bool Curvature::is_zero() const {
  for (const auto& m : ops_)
    if (!m.is_zero()) return false;
  return true;
}

Scalar Curvature::squared_norm() const {
  Scalar s = 0;
  for (const auto& m : ops_)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * m(r, c);
  return s;
}

Scalar kahler_form(const HermitianTriple& t, const Vector& x, const Vector& y) {
  return t.metric()(t.j().apply(x), y);
}

Scalar d_omega(const HermitianTriple& t, const Vector& x, const Vector& y, const Vector& z) {
  const LieAlgebra& g = t.algebra();
  return -kahler_form(t, g.bracket(x, y), z) - kahler_form(t, g.bracket(y, z), x) -
         kahler_form(t, g.bracket(z, x), y);
}

std::optional<TripleValue> d_omega_witness(const HermitianTriple& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Scalar v = d_omega(t, unit_vector(n, i), unit_vector(n, j), unit_vector(n, k));
        if (sgn(v) != 0) return TripleValue{i, j, k, v};
      }
  return std::nullopt;
}

bool is_kahler(const HermitianTriple& t) { return !d_omega_witness(t).has_value(); }

bool kahler_identity_check(const HermitianTriple& t) {
  if (!is_abelian_cs(t.algebra(), t.j())) {
    throw PreconditionError("kahler_identity_check requires an abelian complex structure");
  }
  const std::size_t n = t.dim();
  const Tensor3& c = t.algebra().constants();
  const Matrix& gm = t.metric().gram();
  // gc(i,j,k) = g([e_i,e_j], e_k)
  auto gc = [&](std::size_t i, std::size_t j, std::size_t k) {
    Scalar s = 0;
    for (std::size_t m = 0; m < n; ++m)
      if (sgn(c(i, j, m)) != 0) s += c(i, j, m) * gm(m, k);
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (sgn(gc(i, j, k) + gc(j, k, i) + gc(k, i, j)) != 0) return false;
  return true;
}

bool vip_identity(const HermitianTriple& t) {
  const std::size_t n = t.dim();
  const LieAlgebra& g = t.algebra();
  const Matrix& gm = t.metric().gram();
  // b[i*n+j] = G [e_i, J e_j]
  std::vector<Vector> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b[i * n + j] = gm.apply(g.bracket(unit_vector(n, i), t.j().matrix().col(j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(b[i * n + j][k] + b[j * n + k][i] + b[k * n + i][j]) != 0) return false;
  return true;
}

Connection levi_civita(const LieAlgebra& g, const InnerProduct& metric) {
  if (g.dim() != metric.dim()) throw DimensionError("levi_civita: algebra and metric differ");
  Connection c{kernels::levi_civita_christoffel(g.constants(), metric.gram())};
  if (!is_torsion_free(g, c)) throw VerificationError("Levi-Civita connection has torsion");
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Matrix a = metric.gram() * c.op(i);
    if (!(a + a.transpose()).is_zero()) {
      throw VerificationError("Levi-Civita connection is not metric");
    }
  }
  return c;
}

Tensor3 torsion(const LieAlgebra& g, const Connection& c) {
  const std::size_t n = g.dim();
  if (c.dim() != n) throw DimensionError("torsion: connection and algebra differ");
  Tensor3 t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        t(i, j, k) = c.gamma(i, j, k) - c.gamma(j, i, k) - g.constants()(i, j, k);
  return t;
}

Curvature curvature(const LieAlgebra& g, const Connection& c) {
  if (c.dim() != g.dim()) throw DimensionError("curvature: connection and algebra differ");
  return Curvature(g.dim(), kernels::curvature(c.gamma, g.constants()));
}

bool is_torsion_free(const LieAlgebra& g, const Connection& c) {
  return torsion(g, c).is_zero();
}

bool is_flat(const LieAlgebra& g, const Connection& c) { return curvature(g, c).is_zero(); }

ConnectionFlags connection_flags(const LieAlgebra& g, const ComplexStructure& j,
                                 const InnerProduct& metric, const Connection& c) {
  const std::size_t n = g.dim();
  if (j.dim() != n || metric.dim() != n || c.dim() != n) {
    throw DimensionError("connection_flags: dimension mismatch");
  }
  ConnectionFlags f{true, true, true};
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix op = c.op(i);
    const Matrix a = metric.gram() * op;
    if (!(a + a.transpose()).is_zero()) f.is_metric = false;
    if (op * j.matrix() != j.matrix() * op) f.is_complex = false;
  }
  const Tensor3 t = torsion(g, c);
  std::vector<Vector> jc(n);
  for (std::size_t a = 0; a < n; ++a) jc[a] = j.matrix().col(a);
  for (std::size_t a = 0; a < n && f.torsion_type_11; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (t.contract(jc[a], jc[b]) != t.fibre(a, b)) {
        f.torsion_type_11 = false;
        break;
      }
  return f;
}

Connection bar_connection(const ComplexStructure& j, const Connection& c) {
  const std::size_t n = c.dim();
  if (j.dim() != n) throw DimensionError("bar_connection: J and connection differ");
  Tensor3 out(n);
  const Matrix& jm = j.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix op = c.op(i);
    const Matrix bar = Scalar(1, 2) * (op - jm * op * jm);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) out(i, b, k) = bar(k, b);
  }
  return Connection{std::move(out)};
}

Connection first_canonical_expanded(const HermitianTriple& t) {
  const LieAlgebra& g = t.algebra();
  if (!is_abelian_cs(g, t.j())) {
    throw PreconditionError("the closed form for the first canonical connection needs abelian J");
  }
  const std::size_t n = t.dim();
  const InnerProduct& m = t.metric();
  const Matrix quarter_inv = Scalar(1, 4) * inverse(m.gram());
  std::vector<Vector> e(n), je(n);
  for (std::size_t a = 0; a < n; ++a) {
    e[a] = unit_vector(n, a);
    je[a] = t.j().apply(e[a]);
  }
  Tensor3 out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector xy = g.bracket_basis(i, j);
      const Vector x_jy = g.bracket(e[i], je[j]);
      Vector rhs(n);
      for (std::size_t k = 0; k < n; ++k) {
        rhs[k] = m(xy, e[k]) + m(g.bracket_basis(k, i), e[j]) + m(x_jy, je[k]) +
                 m(g.bracket(je[k], e[i]), je[j]) - 2 * m(g.bracket_basis(j, k), e[i]);
      }
      out.set_fibre(i, j, quarter_inv.apply(rhs));
    }
  return Connection{std::move(out)};
}

Connection first_canonical(const HermitianTriple& t) {
  Connection c = bar_connection(t.j(), levi_civita(t.algebra(), t.metric()));
  if (is_abelian_cs(t.algebra(), t.j()) && first_canonical_expanded(t) != c) {
    throw VerificationError("first canonical connection disagrees with its closed form");
  }
  return c;
}

FlatMetricReport flat_metric_lemma_check(const LieAlgebra& g, const InnerProduct& metric,
                                         const Connection& c) {
  const std::size_t n = g.dim();
  if (!derived_and_central_series(g).is_solvable) {
    throw PreconditionError("flat_metric_lemma_check: g is not solvable");
  }
  std::vector<Matrix> ops(n);
  for (std::size_t i = 0; i < n; ++i) {
    ops[i] = c.op(i);
    const Matrix a = metric.gram() * ops[i];
    if (!(a + a.transpose()).is_zero()) {
      throw PreconditionError("flat_metric_lemma_check: connection is not metric");
    }
  }
  if (!is_flat(g, c)) throw PreconditionError("flat_metric_lemma_check: connection is not flat");
  FlatMetricReport r{true, true};
  for (std::size_t i = 0; i < n && r.commuting; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commutator(ops[i], ops[j]).is_zero()) {
        r.commuting = false;
        break;
      }
  const Subspace d = commutator_ideal(g);
  for (const auto& v : d.basis()) {
    Matrix nv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(v[i]) != 0) nv = nv + v[i] * ops[i];
    if (!nv.is_zero()) r.derived_parallel = false;
  }
  return r;
}

Scalar sectional_curvature(const LieAlgebra& g, const InnerProduct& metric, const Vector& x,
                           const Vector& y) {
  const Scalar denom = metric(x, x) * metric(y, y) - metric(x, y) * metric(x, y);
  if (sgn(denom) == 0) throw PreconditionError("sectional_curvature: degenerate plane");
  const Curvature r = curvature(g, levi_civita(g, metric));
  const Scalar num = metric(r.apply(x, y).apply(y), x);
  return num / denom;
}

}  // namespace abelcs
