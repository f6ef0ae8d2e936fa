#include "abelcs/assoc_algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace abelcs {

namespace {

constexpr int kGenericityRetries = 32;
constexpr double kFloatTolerance = 1e-9;
constexpr long long kDenominatorBound = 1000000;

std::vector<std::string> names_or_default(std::vector<std::string> names, std::size_t dim) {
  if (names.empty()) {
    for (std::size_t i = 0; i < dim; ++i) names.push_back("a" + std::to_string(i + 1));
  }
  if (names.size() != dim) throw DimensionError("basis name count differs from dimension");
  return names;
}

// --- polynomials over Q ----------------------------------------------------

void trim(Polynomial& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Polynomial sub(Polynomial a, const Polynomial& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q*b + r
std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
  trim(a);
  if (b.empty()) throw PreconditionError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Polynomial q(a.size() - b.size() + 1);
  const Scalar lead = b.back();
  for (std::size_t d = a.size(); d-- >= b.size();) {
    Scalar c = a[d] / lead;
    q[d - (b.size() - 1)] = c;
    if (sgn(c) != 0) {
      for (std::size_t k = 0; k < b.size(); ++k) a[d - (b.size() - 1) + k] -= c * b[k];
    }
    if (d == b.size() - 1) break;
  }
  trim(q);
  trim(a);
  return {q, a};
}

// s*a + t*b = 1 for coprime a, b.
std::pair<Polynomial, Polynomial> bezout(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  Polynomial s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = sub(s0, mul(q, s1));
    Polynomial t2 = sub(t0, mul(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw PreconditionError("bezout: polynomials are not coprime");
  const Scalar inv = 1 / r0[0];
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  return {s0, t0};
}

Matrix to_matrix_flat(const Matrix& m) {
  Matrix f(1, m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) f(0, r * m.cols() + c) = m(r, c);
  return f;
}

struct RationalFactor {
  Polynomial poly;  // monic, degree 1 or 2
};

Eigen::MatrixXd to_double(const Matrix& m) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
  return d;
}

std::vector<std::complex<double>> polynomial_roots(const Polynomial& monic) {
  const std::size_t deg = monic.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                               static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -monic[i].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

// Factor a squarefree minimal polynomial into rational linear factors and
// rational irreducible quadratics, certifying every factor exactly. Returns
// nullopt when some factor is not of that form.
std::optional<std::vector<RationalFactor>> factor_over_q(const Polynomial& mu) {
  std::vector<RationalFactor> factors;
  Polynomial rest = mu;
  for (const auto& z : polynomial_roots(mu)) {
    const double scale = std::max(1.0, std::abs(z));
    Polynomial f;
    if (std::abs(z.imag()) <= 1e-7 * scale) {
      f = {-rationalize(z.real(), kDenominatorBound), Scalar(1)};
    } else if (z.imag() > 0) {
      f = {rationalize(std::norm(z), kDenominatorBound),
           rationalize(-2.0 * z.real(), kDenominatorBound), Scalar(1)};
      if (sgn(f[1] * f[1] - 4 * f[0]) >= 0) return std::nullopt;
    } else {
      continue;  // conjugate handled with its partner
    }
    auto [q, r] = divmod(rest, f);
    if (!r.empty()) return std::nullopt;
    rest = std::move(q);
    factors.push_back({std::move(f)});
  }
  if (rest.size() != 1) return std::nullopt;
  return factors;
}

Vector random_integer_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-7, 7);
  Vector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void sort_idempotents(IdempotentSet& s) {
  std::vector<std::size_t> order(s.idempotents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s.types[a] != s.types[b]) return s.types[a] == FactorType::real;
    return s.idempotents[a] < s.idempotents[b];
  });
  IdempotentSet out;
  for (auto i : order) {
    out.idempotents.push_back(s.idempotents[i]);
    out.types.push_back(s.types[i]);
  }
  s = std::move(out);
}

bool certify_idempotents(const CommAssocAlgebra& a, const IdempotentSet& s, const Vector& unit) {
  Vector total(a.dim());
  for (std::size_t p = 0; p < s.idempotents.size(); ++p) {
    const Vector& e = s.idempotents[p];
    if (is_zero(e) || a.multiply(e, e) != e) return false;
    for (std::size_t q = p + 1; q < s.idempotents.size(); ++q) {
      if (!is_zero(a.multiply(e, s.idempotents[q]))) return false;
    }
    // block dimension: rank of ℓ_e must match the factor type
    const std::size_t expect = s.types[p] == FactorType::real ? 1 : 2;
    if (rank(left_mult(a, e)) != expect) return false;
    total += e;
  }
  return total == unit;
}

std::optional<IdempotentSet> exact_attempt(const CommAssocAlgebra& a, const Vector& x,
                                           const Vector& unit, bool& irrational) {
  const Matrix lx = left_mult(a, x);
  const Polynomial mu = minimal_polynomial(lx);
  auto factors = factor_over_q(mu);
  if (!factors) {
    irrational = true;
    return std::nullopt;
  }
  IdempotentSet s;
  for (const auto& f : *factors) {
    const Polynomial h = divmod(mu, f.poly).first;
    const auto [sf, th] = bezout(f.poly, h);
    const Polynomial proj = mul(th, h);
    const Matrix e_op = evaluate(proj, lx);
    const std::size_t deg = f.poly.size() - 1;
    if (rank(e_op) != deg) return std::nullopt;  // x not generic
    s.idempotents.push_back(e_op.apply(unit));
    s.types.push_back(deg == 1 ? FactorType::real : FactorType::complex);
  }
  return s;
}

std::optional<IdempotentSet> floating_attempt(const CommAssocAlgebra& a, const Vector& x,
                                              const Vector& unit) {
  using cd = std::complex<double>;
  const Eigen::MatrixXd m = to_double(left_mult(a, x));
  const auto n = m.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<cd> eig;
  for (Eigen::Index i = 0; i < n; ++i) eig.push_back(es.eigenvalues()(i));
  const double scale = std::max(1.0, m.norm());
  // distinct eigenvalues must be simple for generic x
  for (std::size_t i = 0; i < eig.size(); ++i)
    for (std::size_t j = i + 1; j < eig.size(); ++j)
      if (std::abs(eig[i] - eig[j]) <= kFloatTolerance * scale) return std::nullopt;

  Eigen::VectorXcd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = unit[static_cast<std::size_t>(i)].get_d();
  const Eigen::MatrixXcd mc = m.cast<cd>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  IdempotentSet s;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const bool real = std::abs(eig[i].imag()) <= kFloatTolerance * scale;
    if (!real && eig[i].imag() < 0) continue;
    auto projector = [&](cd lambda) {
      Eigen::MatrixXcd p = id;
      for (const auto& mu : eig) {
        if (std::abs(mu - lambda) <= kFloatTolerance * scale) continue;
        p = p * (mc - mu * id) / (lambda - mu);
      }
      return p;
    };
    Eigen::MatrixXcd p = projector(eig[i]);
    if (!real) p += projector(std::conj(eig[i]));
    const Eigen::VectorXcd e = p * u;
    Vector ev(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
      ev[static_cast<std::size_t>(k)] = rationalize(e(k).real(), kDenominatorBound);
    s.idempotents.push_back(std::move(ev));
    s.types.push_back(real ? FactorType::real : FactorType::complex);
  }
  return s;
}

}  // namespace

CommAssocAlgebra::CommAssocAlgebra(std::size_t dim, const std::vector<ProductEntry>& products,
                                   std::vector<std::string> basis_names)
    : dim_(dim), m_(dim), names_(names_or_default(std::move(basis_names), dim)) {
  for (const auto& p : products) {
    if (p.i >= dim || p.j >= dim || p.value.size() != dim) {
      throw DimensionError("product entry out of range");
    }
    m_.set_fibre(p.i, p.j, p.value);
    m_.set_fibre(p.j, p.i, p.value);
  }
}

CommAssocAlgebra CommAssocAlgebra::from_tensor(Tensor3 table, std::vector<std::string> basis_names) {
  const std::size_t n = table.extent0();
  if (table.extent1() != n || table.extent2() != n) {
    throw DimensionError("product table must be n x n x n");
  }
  CommAssocAlgebra a;
  a.dim_ = n;
  a.m_ = std::move(table);
  a.names_ = names_or_default(std::move(basis_names), n);
  return a;
}

CommAssocAlgebra CommAssocAlgebra::zero(std::size_t dim) { return CommAssocAlgebra(dim, {}); }

std::vector<ProductEntry> CommAssocAlgebra::products() const {
  std::vector<ProductEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j) {
      Vector v = m_.fibre(i, j);
      if (!is_zero(v)) out.push_back({i, j, std::move(v)});
    }
  return out;
}

Vector CommAssocAlgebra::multiply(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("multiply: vector length");
  return m_.contract(x, y);
}

CommAssocAlgebra real_line(const Scalar& scale) { return CommAssocAlgebra(1, {{0, 0, {scale}}}); }

CommAssocAlgebra complex_plane() {
  return CommAssocAlgebra(2, {{0, 0, {1, 0}}, {0, 1, {0, 1}}, {1, 1, {-1, 0}}});
}

CommAssocAlgebra truncated_polynomials(std::size_t k) {
  std::vector<ProductEntry> ps;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      if (i + j < k) ps.push_back({i, j, unit_vector(k, i + j)});
  return CommAssocAlgebra(k, ps);
}

CommAssocAlgebra direct_sum(const CommAssocAlgebra& a, const CommAssocAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  Tensor3 t(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) t(i, j, k) = a.table()(i, j, k);
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) t(o + i, o + j, o + k) = b.table()(i, j, k);
  return CommAssocAlgebra::from_tensor(std::move(t));
}

CommAssocAlgebra pushforward(const CommAssocAlgebra& a, const LinearMap& p) {
  if (!p.is_square() || p.rows() != a.dim()) throw DimensionError("pushforward: shape");
  const LinearMap q = inverse(p);
  const std::size_t n = a.dim();
  Tensor3 t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.set_fibre(i, j, p.apply(a.multiply(q.col(i), q.col(j))));
  return CommAssocAlgebra::from_tensor(std::move(t), a.basis_names());
}

std::optional<AxiomViolation> check_axioms(const CommAssocAlgebra& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector r = a.product_basis(i, j) - a.product_basis(j, i);
      if (!is_zero(r)) return AxiomViolation{AxiomViolation::Kind::commutativity, i, j, 0, r};
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vector ei = unit_vector(n, i), ek = unit_vector(n, k);
        Vector r = a.multiply(a.product_basis(i, j), ek) - a.multiply(ei, a.product_basis(j, k));
        if (!is_zero(r)) return AxiomViolation{AxiomViolation::Kind::associativity, i, j, k, r};
      }
  return std::nullopt;
}

std::optional<CompatibilityViolation> check_compatibility(const CommAssocAlgebra& dot,
                                                          const CommAssocAlgebra& star) {
  if (dot.dim() != star.dim()) throw PreconditionError("compatibility: dimensions differ");
  if (check_axioms(dot)) throw PreconditionError("compatibility: (A,·) fails the axioms");
  if (check_axioms(star)) throw PreconditionError("compatibility: (A,∗) fails the axioms");
  const std::size_t n = dot.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vector ei = unit_vector(n, i), ej = unit_vector(n, j);
        Vector r1 = star.multiply(ei, dot.product_basis(j, k)) -
                    star.multiply(ej, dot.product_basis(i, k));
        if (!is_zero(r1)) return CompatibilityViolation{1, i, j, k, r1};
        Vector r2 = dot.multiply(ei, star.product_basis(j, k)) -
                    dot.multiply(ej, star.product_basis(i, k));
        if (!is_zero(r2)) return CompatibilityViolation{2, i, j, k, r2};
      }
  return std::nullopt;
}

LinearMap left_mult(const CommAssocAlgebra& a, const Vector& x) {
  if (x.size() != a.dim()) throw DimensionError("left_mult: vector length");
  const std::size_t n = a.dim();
  LinearMap m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = a.table()(i, j, k);
        if (sgn(c) != 0) m(k, j) += x[i] * c;
      }
  }
  return m;
}

Nilradical nilradical(const CommAssocAlgebra& a) {
  if (check_axioms(a)) throw PreconditionError("nilradical: axioms fail");
  const std::size_t n = a.dim();
  Vector tr(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) tr[k] += a.table()(k, j, j);
  Matrix form(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) form(i, j) = dot(a.product_basis(i, j), tr);

  Subspace current = Subspace::whole(n);
  while (true) {
    // {x in current : b(x, y) = 0 for all y}
    Matrix m(n, current.dim());
    for (std::size_t c = 0; c < current.dim(); ++c) {
      Vector col = form.transpose().apply(current.basis()[c]);
      m.set_col(c, col);
    }
    std::vector<Vector> vs;
    for (const auto& k : nullspace(m)) vs.push_back(current.from_coordinates(k));
    Subspace next = Subspace::span(n, vs);
    if (next == current) break;
    current = std::move(next);
  }
  return {current, current.is_zero()};
}

Subspace square_span(const CommAssocAlgebra& a) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) vs.push_back(a.product_basis(i, j));
  return Subspace::span(a.dim(), vs);
}

std::optional<Vector> unit_element(const CommAssocAlgebra& a) {
  const std::size_t n = a.dim();
  // sum_i u_i m(i,j,k) = delta_jk
  Matrix m(n * n, n);
  Vector rhs(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) m(j * n + k, i) = a.table()(i, j, k);
      rhs[j * n + k] = j == k ? 1 : 0;
    }
  return solve(m, rhs);
}

IdempotentSet primitive_idempotents(const CommAssocAlgebra& a, std::mt19937_64& rng,
                                    SpectralMode mode) {
  if (!nilradical(a).is_semisimple) {
    throw PreconditionError("primitive_idempotents: algebra is not semisimple");
  }
  if (a.dim() == 0) return {};
  const auto unit = unit_element(a);
  if (!unit) throw VerificationError("semisimple algebra without a unit");

  bool irrational = false;
  for (int attempt = 0; attempt < kGenericityRetries; ++attempt) {
    const Vector x = random_integer_vector(a.dim(), rng);
    std::optional<IdempotentSet> s = mode == SpectralMode::exact
                                         ? exact_attempt(a, x, *unit, irrational)
                                         : floating_attempt(a, x, *unit);
    if (!s) continue;
    if (!certify_idempotents(a, *s, *unit)) {
      if (mode == SpectralMode::floating) {
        throw IrrationalSpectrumError("rounded idempotents failed exact certification");
      }
      throw VerificationError("eigenprojection idempotents failed certification");
    }
    sort_idempotents(*s);
    return *s;
  }
  if (irrational) {
    throw IrrationalSpectrumError(
        "spectrum does not split over Q into linear and irreducible quadratic factors");
  }
  throw VerificationError("no generic element found after retries");
}

Polynomial minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("minimal polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Matrix> powers{Matrix::identity(n)};
  while (true) {
    Matrix next = powers.back() * m;
    // Solve sum_k c_k M^k = M^d in flattened form.
    Matrix sys(n * n, powers.size());
    for (std::size_t k = 0; k < powers.size(); ++k) {
      Matrix f = to_matrix_flat(powers[k]);
      for (std::size_t e = 0; e < n * n; ++e) sys(e, k) = f(0, e);
    }
    Matrix nf = to_matrix_flat(next);
    if (auto c = solve(sys, nf.row(0))) {
      Polynomial p(powers.size() + 1);
      for (std::size_t k = 0; k < powers.size(); ++k) p[k] = -(*c)[k];
      p.back() = 1;
      return p;
    }
    powers.push_back(std::move(next));
  }
}

Matrix evaluate(const Polynomial& p, const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix r(n, n);
  for (std::size_t d = p.size(); d-- > 0;) {
    r = r * m;
    for (std::size_t i = 0; i < n; ++i) r(i, i) += p[d];
  }
  return r;
}

Scalar evaluate(const Polynomial& p, const Scalar& x) {
  Scalar r = 0;
  for (std::size_t d = p.size(); d-- > 0;) r = r * x + p[d];
  return r;
}

Scalar rationalize(double value, long long max_den) {
  if (!std::isfinite(value)) throw PreconditionError("rationalize: non-finite value");
  const bool neg = value < 0;
  long double x = std::fabs(static_cast<long double>(value));
  // continued-fraction convergents h/k
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_ld = std::floor(x);
    mpz_class a;
    mpz_set_d(a.get_mpz_t(), static_cast<double>(a_ld));
    mpz_class h2 = a * h1 + h0;
    mpz_class k2 = a * k1 + k0;
    if (k2 > static_cast<long>(max_den)) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double frac = x - a_ld;
    if (frac < 1e-12L) break;
    x = 1.0L / frac;
  }
  if (k1 == 0) return Scalar(0);
  Scalar r(h1, k1);
  r.canonicalize();
  return neg ? Scalar(-r) : r;
}

}  // namespace abelcs
