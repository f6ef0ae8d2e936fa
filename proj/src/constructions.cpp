#include "abelcs/constructions.hpp"

#include <sstream>

namespace abelcs {
namespace {

std::string describe(const AxiomViolation& v, const char* which) {
  std::ostringstream os;
  os << which << " product fails "
     << (v.kind == AxiomViolation::Kind::commutativity ? "commutativity" : "associativity")
     << " at (" << v.i << "," << v.j << "," << v.k << "): residual " << format_vector(v.residual);
  return os.str();
}

void require_axioms(const CommAssocAlgebra& a, const char* which) {
  if (auto v = check_axioms(a)) throw PreconditionError(describe(*v, which));
}

// Columns u_1..u_m, Ju_1..Ju_m.
Matrix adapted_basis(const Subspace& u, const ComplexStructure& j) {
  const std::size_t m = u.dim();
  std::vector<Vector> cols;
  cols.reserve(2 * m);
  for (const auto& b : u.basis()) cols.push_back(b);
  for (const auto& b : u.basis()) cols.push_back(j.apply(b));
  return Matrix::from_columns(cols, u.ambient_dim());
}

bool is_abelian_subalgebra(const LieAlgebra& g, const Subspace& u) {
  return bracket_subspaces(g, u, u).is_zero();
}

void require_dims(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u) {
  if (j.dim() != g.dim() || u.ambient_dim() != g.dim()) {
    throw DimensionError("algebra, complex structure and subspace differ in dimension");
  }
}

Subspace rational_random_subspace(std::size_t ambient, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Vector> vs(k, zero_vector(ambient));
  for (auto& v : vs)
    for (auto& x : v) x = coef(rng);
  return Subspace::span(ambient, vs);
}

}  // namespace

DoubleProduct double_product(const CommAssocAlgebra& dot, const CommAssocAlgebra& star) {
  if (dot.dim() != star.dim()) throw DimensionError("double_product: products differ in dimension");
  require_axioms(dot, "dot");
  require_axioms(star, "star");
  if (auto v = check_compatibility(dot, star)) {
    std::ostringstream os;
    os << "compatibility identity " << v->identity << " fails at (" << v->i << "," << v->j << ","
       << v->k << "): residual " << format_vector(v->residual);
    throw PreconditionError(os.str());
  }
  const std::size_t n = dot.dim();
  std::vector<BracketEntry> br;
  // [(e_i,0),(0,e_j)] = (-e_i*e_j, e_i.e_j); the other basis brackets vanish
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector s = star.product_basis(i, j);
      const Vector d = dot.product_basis(i, j);
      Vector value = zero_vector(2 * n);
      for (std::size_t k = 0; k < n; ++k) {
        value[k] = -s[k];
        value[n + k] = d[k];
      }
      if (!is_zero(value)) br.push_back({i, n + j, std::move(value)});
    }
  LieAlgebra g(2 * n, br);

  Matrix jm(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    jm(n + i, i) = 1;
    jm(i, n + i) = -1;
  }
  ComplexStructure j(std::move(jm));

  if (auto v = check_jacobi(g)) {
    throw VerificationError("double_product: Jacobi fails on a compatible pair");
  }
  if (!is_abelian_cs(g, j)) throw VerificationError("double_product: J is not abelian");

  std::vector<Vector> first;
  for (std::size_t i = 0; i < n; ++i) first.push_back(unit_vector(2 * n, i));
  return DoubleProduct{std::move(g), std::move(j), dot, star, Subspace::span(2 * n, first)};
}

DoubleProduct aff_algebra(const CommAssocAlgebra& a) {
  return double_product(a, CommAssocAlgebra::zero(a.dim()));
}

HolomorphicPair beta_iso(const CommAssocAlgebra& a) {
  const DoubleProduct src = double_product(a, a);
  const DoubleProduct dst = aff_algebra(a);
  const std::size_t n = a.dim();
  Matrix beta(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    beta(i, i) = 1;
    beta(n + i, i) = -1;
    beta(i, n + i) = 1;
    beta(n + i, n + i) = 1;
  }
  HolomorphicPair p{src.algebra, src.j, dst.algebra, dst.j, std::move(beta)};
  if (!is_holomorphic_iso(p)) throw VerificationError("beta_iso: certificate failed");
  return p;
}

bool witness_check(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u) {
  require_dims(g, j, u);
  const Subspace ju = image(j.matrix(), u);
  return 2 * u.dim() == g.dim() && intersect(u, ju).is_zero() && is_abelian_subalgebra(g, u) &&
         is_abelian_subalgebra(g, ju);
}

ExtractedProducts extract_products(const LieAlgebra& g, const ComplexStructure& j,
                                   const Subspace& u) {
  require_dims(g, j, u);
  const Subspace ju = image(j.matrix(), u);
  if (2 * u.dim() != g.dim() || !intersect(u, ju).is_zero()) {
    throw PreconditionError("extract_products: g is not U ⊕ JU");
  }
  if (!is_abelian_subalgebra(g, u)) throw PreconditionError("extract_products: U is not abelian");
  if (!is_abelian_subalgebra(g, ju)) throw PreconditionError("extract_products: JU is not abelian");
  if (!is_abelian_cs(g, j)) throw PreconditionError("extract_products: J is not abelian");

  const std::size_t m = u.dim();
  const Matrix basis = adapted_basis(u, j);
  const Matrix to_adapted = inverse(basis);
  Tensor3 dot(m), star(m);
  for (std::size_t a = 0; a < m; ++a) {
    const Vector jx = j.apply(u.basis()[a]);
    for (std::size_t b = 0; b < m; ++b) {
      const Vector c = to_adapted.apply(g.bracket(jx, u.basis()[b]));
      // J applied to the JU-part sum c_{m+i} J u_i gives -sum c_{m+i} u_i
      for (std::size_t k = 0; k < m; ++k) {
        star(a, b, k) = c[k];
        dot(a, b, k) = -c[m + k];
      }
    }
  }
  ExtractedProducts out{CommAssocAlgebra::from_tensor(std::move(dot)),
                        CommAssocAlgebra::from_tensor(std::move(star)), {}};
  if (auto v = check_axioms(out.dot)) throw VerificationError(describe(*v, "extracted dot"));
  if (auto v = check_axioms(out.star)) throw VerificationError(describe(*v, "extracted star"));

  const DoubleProduct dp = double_product(out.dot, out.star);
  out.identification = HolomorphicPair{dp.algebra, dp.j, g, j, basis};
  if (!is_holomorphic_iso(out.identification)) {
    throw VerificationError("extract_products: reconstruction is not a holomorphic isomorphism");
  }
  return out;
}

AffRecognition aff_from_abelian_ideal(const LieAlgebra& g, const ComplexStructure& j,
                                      const Subspace& v) {
  require_dims(g, j, v);
  const std::size_t m = v.dim();
  Tensor3 star(m);
  for (std::size_t a = 0; a < m; ++a) {
    const Vector jx = j.apply(v.basis()[a]);
    for (std::size_t b = 0; b < m; ++b) {
      auto c = v.coordinates(g.bracket(jx, v.basis()[b]));
      if (!c) throw VerificationError("aff recognition: [Jx,y] leaves the ideal");
      for (std::size_t k = 0; k < m; ++k) star(a, b, k) = (*c)[k];
    }
  }
  CommAssocAlgebra alg = CommAssocAlgebra::from_tensor(std::move(star));
  if (auto viol = check_axioms(alg)) throw VerificationError(describe(*viol, "recognised"));

  const DoubleProduct aff = aff_algebra(alg);
  // phi(x,y) = Jx - y
  std::vector<Vector> cols;
  for (const auto& b : v.basis()) cols.push_back(j.apply(b));
  for (const auto& b : v.basis()) cols.push_back(-b);
  HolomorphicPair iso{aff.algebra, aff.j, g, j, Matrix::from_columns(cols, g.dim())};
  if (!is_holomorphic_iso(iso)) {
    throw VerificationError("aff recognition: phi is not a holomorphic isomorphism");
  }
  return AffRecognition{std::move(alg), v, std::move(iso)};
}

std::optional<AffRecognition> recognize_aff(const LieAlgebra& g, const ComplexStructure& j) {
  if (j.dim() != g.dim()) throw DimensionError("recognize_aff: J and g differ in dimension");
  if (!is_abelian_cs(g, j)) throw PreconditionError("recognize_aff: J is not abelian");
  const Subspace d = commutator_ideal(g);
  const Subspace jd = image(j.matrix(), d);
  if (2 * d.dim() != g.dim() || !intersect(d, jd).is_zero()) return std::nullopt;
  AffRecognition r = aff_from_abelian_ideal(g, j, d);
  if (!square_span(r.algebra).is_whole()) {
    throw VerificationError("recognize_aff: A^2 != A");
  }
  return r;
}

Subspace greedy_j_split(const Subspace& z, const Subspace& base, const ComplexStructure& j) {
  if (!z.contains(base)) throw PreconditionError("greedy_j_split: base not inside z");
  std::vector<Vector> l;
  Subspace covered = base;
  for (const auto& v : z.basis()) {
    if (covered.contains(v)) continue;
    l.push_back(v);
    covered = sum(covered, Subspace::span(z.ambient_dim(), {v, j.apply(v)}));
  }
  if (covered != z) throw PreconditionError("greedy_j_split: z is not J-stable");
  return Subspace::span(z.ambient_dim(), l);
}

namespace {

struct Enlarged {
  Subspace u;  // U + z
  Subspace z;
};

Enlarged common_preconditions(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u,
                              bool need_ideal) {
  require_dims(g, j, u);
  if (!derived_and_central_series(g).is_solvable) {
    throw PreconditionError("g is not solvable");
  }
  if (!is_abelian_cs(g, j)) throw PreconditionError("J is not abelian");
  const SubspaceFlags flags = classify_subspace(g, u);
  if (!flags.is_abelian_subspace || !flags.is_subalgebra) {
    throw PreconditionError("U is not an abelian subalgebra");
  }
  if (need_ideal && !flags.is_ideal) throw PreconditionError("U is not an ideal");
  if (!sum(u, image(j.matrix(), u)).is_whole()) throw PreconditionError("g != U + JU");

  Enlarged e{sum(u, center(g)), center(g)};
  if (intersect(e.u, image(j.matrix(), e.u)) != e.z) {
    throw VerificationError("(U + z) ∩ J(U + z) != z");
  }
  return e;
}

}  // namespace

AffITheorem theorem_aff_i(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u,
                          const std::optional<Matrix>& gram) {
  const Enlarged e = common_preconditions(g, j, u, false);
  const Subspace h = complement(e.z, e.u, gram);
  const Subspace l = greedy_j_split(e.z, Subspace::zero(g.dim()), j);
  const Subspace a = sum(h, l);
  if (!witness_check(g, j, a)) throw VerificationError("theorem_aff_i: g != a ⊕ Ja with a abelian");
  return AffITheorem{a, e.u, h, l};
}

AffIITheorem theorem_aff_ii(const LieAlgebra& g, const ComplexStructure& j, const Subspace& u,
                            const std::optional<Matrix>& gram) {
  const Enlarged e = common_preconditions(g, j, u, true);
  const Subspace d = commutator_ideal(g);
  if (!intersect(d, image(j.matrix(), d)).is_zero()) {
    throw PreconditionError("g' ∩ Jg' != 0");
  }
  const Subspace dz = intersect(d, e.z);
  const Subspace h = complement(dz, d, gram);
  const Subspace k = complement(sum(d, e.z), e.u, gram);
  const Subspace l = greedy_j_split(e.z, sum(dz, image(j.matrix(), dz)), j);
  const Subspace v = sum(sum(k, h), sum(dz, l));

  if (!intersect(v, image(j.matrix(), v)).is_zero()) throw VerificationError("v ∩ Jv != 0");
  if (2 * v.dim() != g.dim()) throw VerificationError("dim v != dim g / 2");
  const SubspaceFlags vf = classify_subspace(g, v);
  if (!vf.is_ideal || !vf.is_abelian_subspace) throw VerificationError("v is not an abelian ideal");

  AffRecognition rec = aff_from_abelian_ideal(g, j, v);
  return AffIITheorem{v, k, h, dz, l, std::move(rec)};
}

std::pair<LieAlgebra, ComplexStructure> example52_family(std::size_t n, const LinearMap& t) {
  if (n == 0) throw PreconditionError("example52_family: n must be positive");
  if (t.rows() != 2 * n || t.cols() != 2 * n) {
    throw DimensionError("example52_family: T must be 2n x 2n");
  }
  const ComplexStructure jv = standard_complex_structure(2 * n);
  if (rank(t) != 2 * n) throw PreconditionError("example52_family: T is singular");
  if (t * jv.matrix() != jv.matrix() * t) {
    throw PreconditionError("example52_family: T does not commute with J on v");
  }
  const std::size_t dim = 2 * n + 2;
  const Matrix tj = t * jv.matrix();
  std::vector<BracketEntry> br;
  for (std::size_t c = 0; c < 2 * n; ++c) {
    Vector v1 = zero_vector(dim), v2 = zero_vector(dim);
    for (std::size_t r = 0; r < 2 * n; ++r) {
      v1[2 + r] = tj(r, c);
      v2[2 + r] = t(r, c);
    }
    if (!is_zero(v1)) br.push_back({0, 2 + c, std::move(v1)});
    if (!is_zero(v2)) br.push_back({1, 2 + c, std::move(v2)});
  }
  std::vector<std::string> names{"f1", "f2"};
  for (std::size_t i = 1; i <= 2 * n; ++i) names.push_back("v" + std::to_string(i));
  return {LieAlgebra(dim, br, std::move(names)), standard_complex_structure(dim)};
}

WitnessSearch random_witness_search(const LieAlgebra& g, const ComplexStructure& j,
                                    std::size_t trials, std::mt19937_64& rng) {
  WitnessSearch out;
  if (g.dim() % 2 != 0) return out;
  for (; out.trials < trials; ++out.trials) {
    Subspace u = rational_random_subspace(g.dim(), g.dim() / 2, rng);
    if (witness_check(g, j, u)) {
      out.found = std::move(u);
      ++out.trials;
      break;
    }
  }
  return out;
}

}  // namespace abelcs
