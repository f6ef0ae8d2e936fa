#include "abelcs/theorem_lab.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace abelcs {

KahlerStepError::KahlerStepError(int step, const std::string& what)
    : VerificationError("kahler_decompose step " + std::to_string(step) + ": " + what),
      step_(step) {}

namespace {

[[noreturn]] void step_failed(int step, const std::string& what) {
  throw KahlerStepError(step, what);
}

// Restriction of g to the subalgebra spanned by the columns of b.
LieAlgebra restrict_to(const LieAlgebra& g, const Matrix& b) {
  const std::size_t m = b.cols();
  Tensor3 c(m);
  std::vector<Vector> cols(m);
  for (std::size_t a = 0; a < m; ++a) cols[a] = b.col(a);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t k = a + 1; k < m; ++k) {
      auto x = solve(b, g.bracket(cols[a], cols[k]));
      if (!x) step_failed(4, "g'_J is not a subalgebra");
      c.set_fibre(a, k, *x);
      c.set_fibre(k, a, -*x);
    }
  return LieAlgebra::from_tensor(std::move(c));
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Basis l_1, J l_1, l_2, J l_2, ... of a J-stable subspace, pairwise orthogonal.
std::vector<Vector> j_adapted_orthogonal_basis(const Subspace& z, const ComplexStructure& j,
                                               const InnerProduct& m) {
  std::vector<Vector> out;
  std::vector<Scalar> norms;
  for (const auto& v : z.basis()) {
    Vector w = v;
    for (std::size_t k = 0; k < out.size(); ++k) axpy(w, -(m(w, out[k]) / norms[k]), out[k]);
    if (is_zero(w)) continue;
    const Vector jw = j.apply(w);
    const Scalar nw = m(w, w);
    out.push_back(w);
    norms.push_back(nw);
    out.push_back(jw);
    norms.push_back(nw);
    if (out.size() == z.dim()) break;
  }
  return out;
}

}  // namespace

KahlerDecomposition kahler_decompose(const HermitianTriple& t) {
  const LieAlgebra& g = t.algebra();
  const ComplexStructure& j = t.j();
  const InnerProduct& metric = t.metric();
  const std::size_t n = g.dim();
  if (!is_abelian_cs(g, j)) throw PreconditionError("kahler_decompose: J is not abelian");
  if (!is_kahler(t)) throw PreconditionError("kahler_decompose: triple is not Kähler");

  // 1
  if (!kahler_identity_check(t)) step_failed(1, "cyclic identity fails");

  // 2
  const Subspace d = commutator_ideal(g);
  const Subspace jd = image(j.matrix(), d);
  const Subspace dj = sum(d, jd);
  const Subspace z = center(g);
  if (orthogonal_complement(dj, metric.gram()) != z) step_failed(2, "z != (g'_J)^perp");
  if (!sum(dj, z).is_whole() || !intersect(dj, z).is_zero()) step_failed(2, "g != g'_J ⊕ z");

  // 3
  if (!intersect(d, jd).is_zero()) step_failed(3, "g' ∩ Jg' != 0");

  const std::size_t m = d.dim();
  const Matrix dmat = d.basis_matrix();
  IdempotentSet ids;
  if (m > 0) {
    // 4
    std::vector<Vector> bcols(d.basis());
    for (const auto& v : d.basis()) bcols.push_back(j.apply(v));
    const LieAlgebra restricted = restrict_to(g, Matrix::from_columns(bcols, n));
    Matrix jr(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      jr(m + i, i) = 1;
      jr(i, m + i) = -1;
    }
    std::optional<AffRecognition> rec;
    try {
      rec = recognize_aff(restricted, ComplexStructure(jr));
    } catch (const Error& e) {
      step_failed(4, e.what());
    }
    if (!rec) step_failed(4, "g'_J is not g' ⊕ Jg'");
    for (std::size_t i = 0; i < m; ++i)
      if (rec->v.basis()[i] != unit_vector(2 * m, i)) step_failed(4, "unexpected basis of g'");
    const CommAssocAlgebra& a = rec->algebra;

    // 5
    if (!nilradical(a).is_semisimple) step_failed(5, "A has a nonzero nilradical");
    const Matrix ga = dmat.transpose() * metric.gram() * dmat;
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix s = ga * left_mult(a, unit_vector(m, i));
      if (s != s.transpose()) step_failed(5, "multiplication is not symmetric");
    }

    // 6
    try {
      std::mt19937_64 rng(0x5eed);
      ids = primitive_idempotents(a, rng);
    } catch (const Error& e) {
      step_failed(6, e.what());
    }
    for (auto ty : ids.types)
      if (ty != FactorType::real) step_failed(6, "A has a complex factor");
  }

  // 7
  std::vector<KahlerFactor> factors;
  for (const auto& e : ids.idempotents) {
    const Vector v = dmat.apply(e);
    const Scalar r2 = metric(v, v);
    factors.push_back({v, r2, Scalar(0), Subspace::span(n, {v, j.apply(v)})});
  }
  std::sort(factors.begin(), factors.end(), [](const KahlerFactor& x, const KahlerFactor& y) {
    if (x.norm_sq != y.norm_sq) return x.norm_sq > y.norm_sq;
    return lex_less(x.idempotent, y.idempotent);
  });
  for (std::size_t p = 0; p < factors.size(); ++p) {
    for (std::size_t q = p + 1; q < factors.size(); ++q) {
      const Matrix cross = factors[p].plane.basis_matrix().transpose() * metric.gram() *
                           factors[q].plane.basis_matrix();
      if (!cross.is_zero()) step_failed(7, "factor planes are not orthogonal");
      if (!bracket_subspaces(g, factors[p].plane, factors[q].plane).is_zero()) {
        step_failed(7, "factor planes do not commute");
      }
    }
    const Matrix cz = factors[p].plane.basis_matrix().transpose() * metric.gram() *
                      z.basis_matrix();
    if (!z.is_zero() && !cz.is_zero()) step_failed(7, "factor plane not orthogonal to z");
  }
  const std::vector<Vector> zb = j_adapted_orthogonal_basis(z, j, metric);
  if (zb.size() != z.dim()) step_failed(7, "center is not J-stable");

  std::vector<Vector> pcols;
  Matrix model_g(n, n);
  std::vector<BracketEntry> model_br;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    pcols.push_back(j.apply(factors[k].idempotent));
    pcols.push_back(-factors[k].idempotent);
    model_g(2 * k, 2 * k) = factors[k].norm_sq;
    model_g(2 * k + 1, 2 * k + 1) = factors[k].norm_sq;
    model_br.push_back({2 * k, 2 * k + 1, unit_vector(n, 2 * k + 1)});
  }
  for (std::size_t k = 0; k < zb.size(); ++k) {
    const std::size_t idx = 2 * factors.size() + k;
    pcols.push_back(zb[k]);
    model_g(idx, idx) = metric(zb[k], zb[k]);
  }
  if (pcols.size() != n) step_failed(7, "factors and center do not span g");
  const Matrix p = Matrix::from_columns(pcols, n);
  if (rank(p) != n) step_failed(7, "factors and center do not span g");
  LieAlgebra model(n, model_br);
  ComplexStructure model_j = standard_complex_structure(n);
  if (pushforward(model, p) != g) step_failed(7, "rebuilt brackets differ");
  if (p.transpose() * metric.gram() * p != model_g) step_failed(7, "rebuilt metric differs");
  if (p * model_j.matrix() != j.matrix() * p) step_failed(7, "rebuilt J differs");

  // 8
  for (auto& f : factors) {
    if (sgn(f.norm_sq) <= 0) step_failed(8, "non-positive norm");
    const Vector je = j.apply(f.idempotent);
    if (metric(je, je) != f.norm_sq) step_failed(8, "|Je| != |e|");
    f.curvature = 1 / f.norm_sq;
  }
  return KahlerDecomposition{std::move(factors), z, p, std::move(model), std::move(model_j),
                             InnerProduct(std::move(model_g))};
}

const char* family_name(Family f) {
  switch (f) {
    case Family::trivial_star:
      return "trivial-star";
    case Family::equal_products:
      return "equal-products";
    case Family::diagonal_pair:
      return "diagonal-pair";
  }
  return "?";
}

namespace {

CommAssocAlgebra scaled(const CommAssocAlgebra& a, const Scalar& s) {
  Tensor3 t(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t.set_fibre(i, j, s * a.product_basis(i, j));
  return CommAssocAlgebra::from_tensor(std::move(t));
}

// t R[t]/(t^{k+1}), basis t, ..., t^k
CommAssocAlgebra nilpotent_block(std::size_t k) {
  std::vector<ProductEntry> pr;
  for (std::size_t a = 1; a <= k; ++a)
    for (std::size_t b = a; a + b <= k; ++b) pr.push_back({a - 1, b - 1, unit_vector(k, a + b - 1)});
  return CommAssocAlgebra(k, pr);
}

CommAssocAlgebra random_piece(std::size_t room, std::mt19937_64& rng) {
  static const Scalar scales[] = {Scalar(1), Scalar(2), Scalar(-1), Scalar(1, 2), Scalar(3),
                                  Scalar(-2, 3)};
  std::uniform_int_distribution<int> kind(0, 3);
  for (;;) {
    switch (kind(rng)) {
      case 0:
        return real_line(scales[std::uniform_int_distribution<int>(0, 5)(rng)]);
      case 1:
        if (room >= 2) return complex_plane();
        break;
      case 2:
        if (room >= 2) {
          return truncated_polynomials(
              std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(room, 3))(rng));
        }
        break;
      default:
        return nilpotent_block(
            std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(room, 3))(rng));
    }
  }
}

std::vector<CommAssocAlgebra> random_pieces(std::size_t dim, std::mt19937_64& rng) {
  std::vector<CommAssocAlgebra> out;
  std::size_t used = 0;
  while (used < dim) {
    out.push_back(random_piece(dim - used, rng));
    used += out.back().dim();
  }
  return out;
}

CommAssocAlgebra sum_of(const std::vector<CommAssocAlgebra>& pieces) {
  CommAssocAlgebra acc = CommAssocAlgebra::zero(0);
  for (const auto& p : pieces) acc = direct_sum(acc, p);
  return acc;
}

Matrix transport_metric(const Matrix& gram, const Matrix& p) {
  const Matrix q = inverse(p);
  return q.transpose() * gram * q;
}

}  // namespace

Matrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  Matrix p = Matrix::identity(n);
  if (n < 2) return p;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (std::size_t step = 0; step < n + 2; ++step) {
    const std::size_t r = idx(rng);
    std::size_t s = idx(rng);
    if (s == r) s = (s + 1) % n;
    const Scalar c = sign(rng) ? 1 : -1;
    for (std::size_t col = 0; col < n; ++col) p(r, col) += c * p(s, col);
  }
  return p;
}

InnerProduct random_hermitian_metric(const ComplexStructure& j, std::mt19937_64& rng) {
  const std::size_t n = j.dim();
  std::uniform_int_distribution<int> off(-2, 2), extra(1, 3);
  Matrix g0(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) g0(r, c) = g0(c, r) = off(rng);
  for (std::size_t r = 0; r < n; ++r) {
    Scalar s = extra(rng);
    for (std::size_t c = 0; c < n; ++c)
      if (c != r) s += abs(g0(r, c));
    g0(r, r) = s;
  }
  const Matrix& jm = j.matrix();
  return InnerProduct(Scalar(1, 2) * (g0 + jm.transpose() * g0 * jm));
}

CommAssocAlgebra random_comm_assoc(std::size_t dim, std::mt19937_64& rng, bool disguise) {
  CommAssocAlgebra a = sum_of(random_pieces(dim, rng));
  if (disguise) a = pushforward(a, random_unimodular(dim, rng));
  return a;
}

std::pair<CommAssocAlgebra, CommAssocAlgebra> random_compatible_pair(Family f, std::size_t dim,
                                                                     std::mt19937_64& rng,
                                                                     bool disguise) {
  switch (f) {
    case Family::trivial_star:
      return {random_comm_assoc(dim, rng, disguise), CommAssocAlgebra::zero(dim)};
    case Family::equal_products: {
      CommAssocAlgebra a = random_comm_assoc(dim, rng, disguise);
      return {a, a};
    }
    case Family::diagonal_pair: {
      static const Scalar weights[] = {Scalar(0), Scalar(1), Scalar(2), Scalar(-1), Scalar(1, 2)};
      std::uniform_int_distribution<int> w(0, 4);
      std::vector<CommAssocAlgebra> dots, stars;
      for (const auto& piece : random_pieces(dim, rng)) {
        dots.push_back(scaled(piece, weights[w(rng)]));
        stars.push_back(scaled(piece, weights[w(rng)]));
      }
      CommAssocAlgebra dot = sum_of(dots), star = sum_of(stars);
      if (disguise) {
        const Matrix p = random_unimodular(dim, rng);
        dot = pushforward(dot, p);
        star = pushforward(star, p);
      }
      return {dot, star};
    }
  }
  throw PreconditionError("unknown family");
}

RandomInstance random_instance(std::uint64_t seed, std::size_t dim_a, Family family,
                               bool disguise, bool metric) {
  if (dim_a == 0 || dim_a > 8) throw PreconditionError("random_instance: dim_A must be in 1..8");
  std::mt19937_64 rng(seed);
  auto [dot, star] = random_compatible_pair(family, dim_a, rng, disguise);
  DoubleProduct dp = double_product(dot, star);
  RandomInstance r{family, dot, star, Matrix::identity(2 * dim_a), dp.algebra, dp.j, {}};
  if (disguise) {
    r.disguise = random_unimodular(2 * dim_a, rng);
    r.algebra = pushforward(dp.algebra, r.disguise);
    r.j = transport(dp.j, r.disguise);
  }
  if (metric) r.metric = random_hermitian_metric(r.j, rng);
  if (check_jacobi(r.algebra)) throw VerificationError("random_instance: Jacobi fails");
  if (!is_abelian_cs(r.algebra, r.j)) throw VerificationError("random_instance: J not abelian");
  return r;
}

KahlerInstance random_kahler_instance(std::uint64_t seed, std::size_t max_dim) {
  if (max_dim < 2) throw PreconditionError("random_kahler_instance: max_dim < 2");
  std::mt19937_64 rng(seed);
  const std::size_t half = max_dim / 2;
  const std::size_t nf = std::uniform_int_distribution<std::size_t>(1, half)(rng);
  const std::size_t s = std::uniform_int_distribution<std::size_t>(0, half - nf)(rng);
  const std::size_t n = 2 * (nf + s);
  std::uniform_int_distribution<int> num(1, 4), den(1, 3);

  std::vector<Scalar> norms;
  Matrix gram(n, n);
  std::vector<BracketEntry> br;
  for (std::size_t k = 0; k < nf; ++k) {
    Scalar r2(num(rng), den(rng));
    r2.canonicalize();
    norms.push_back(r2);
    gram(2 * k, 2 * k) = r2;
    gram(2 * k + 1, 2 * k + 1) = r2;
    br.push_back({2 * k, 2 * k + 1, unit_vector(n, 2 * k + 1)});
  }
  if (s > 0) {
    const InnerProduct gc = random_hermitian_metric(standard_complex_structure(2 * s), rng);
    for (std::size_t r = 0; r < 2 * s; ++r)
      for (std::size_t c = 0; c < 2 * s; ++c) gram(2 * nf + r, 2 * nf + c) = gc.gram()(r, c);
  }
  const LieAlgebra model(n, br);
  const ComplexStructure model_j = standard_complex_structure(n);
  const Matrix p = random_unimodular(n, rng);
  return KahlerInstance{HermitianTriple(pushforward(model, p), transport(model_j, p),
                                        InnerProduct(transport_metric(gram, p))),
                        std::move(norms), s};
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Outcome {
  std::vector<std::pair<std::string, bool>> results;
  std::vector<Counterexample> failures;
};

void run_trial(std::uint64_t seed, std::size_t trial, std::size_t max_dim, Outcome& out) {
  std::mt19937_64 rng(trial_seed(seed, trial));
  const std::uint64_t inst_seed = rng();
  const std::size_t kind = trial % 4;

  std::optional<HermitianTriple> t;
  std::string instance_text;
  auto record = [&](const std::string& name, bool ok, const std::string& msg = {}) {
    out.results.emplace_back(name, ok);
    if (!ok) out.failures.push_back({name, trial, msg, instance_text});
  };

  try {
    if (kind == 3) {
      t = random_kahler_instance(inst_seed, max_dim).triple;
    } else {
      const std::size_t half = std::max<std::size_t>(1, std::min<std::size_t>(max_dim / 2, 8));
      const std::size_t dim_a = std::uniform_int_distribution<std::size_t>(1, half)(rng);
      const bool disguise = rng() % 2 == 0;
      RandomInstance r =
          random_instance(inst_seed, dim_a, static_cast<Family>(kind), disguise, true);
      t = HermitianTriple(r.algebra, r.j, *r.metric);
    }
    instance_text = emit_instance(Instance{t->algebra(), t->j(), t->metric()});
  } catch (const Error& e) {
    record("instance_generation", false, e.what());
    return;
  }

  const LieAlgebra& g = t->algebra();
  const ComplexStructure& j = t->j();
  const InnerProduct& metric = t->metric();
  const bool abelian = is_abelian(g);

  try {
    record("lemma_cap", lemma_cap_report(g, j).all());
    record("abelian_implies_integrable", is_integrable(g, j));

    const Connection lc = levi_civita(g, metric);
    const ConnectionFlags lf = connection_flags(g, j, metric, lc);
    record("levi_civita_torsion_free_metric", lf.is_metric && is_torsion_free(g, lc));

    const Connection n1 = bar_connection(j, lc);
    const ConnectionFlags f1 = connection_flags(g, j, metric, n1);
    record("first_canonical_flags", f1.is_metric && f1.is_complex && f1.torsion_type_11);
    record("first_canonical_expansion", first_canonical_expanded(*t) == n1);

    const bool zero = n1.is_zero();
    record("first_canonical_zero_implies_abelian", !zero || abelian);
    record("vip_when_first_canonical_zero", !zero || vip_identity(*t));

    const bool flat = is_flat(g, n1);
    record("first_canonical_flat_implies_abelian", !flat || abelian);
    if (flat) {
      const Subspace d = commutator_ideal(g);
      const Subspace dj = j_stable_commutator(g, j);
      const Subspace perp = orthogonal_complement(dj, metric.gram());
      const bool cap1 = intersect(center(g), d).is_zero();
      const bool proper = bracket_subspaces(g, dj, dj).is_zero() &&
                          bracket_subspaces(g, perp, perp).is_zero();
      const bool previous = is_stable(j.matrix(), d);
      const bool lemma = flat_metric_lemma_check(g, metric, n1).ok();
      record("flat_instance_lemmas", cap1 && proper && previous && lemma);
    } else {
      record("flat_instance_lemmas", true);
    }

    const SeriesReport series = derived_and_central_series(g);
    record("nilpotent_nonabelian_not_flat", !(series.is_nilpotent && !abelian) || !flat);

    const bool kahler = is_kahler(*t);
    record("kahler_identity_matches", kahler_identity_check(*t) == kahler);
    if (kahler) {
      bool ok = true;
      std::string msg;
      try {
        const KahlerDecomposition kd = kahler_decompose(*t);
        ok = kd.n() == commutator_ideal(g).dim();
        if (!ok) msg = "number of factors differs from dim g'";
        for (const auto& f : kd.factors) {
          if (sectional_curvature(g, metric, f.idempotent, j.apply(f.idempotent)) !=
              -f.curvature) {
            ok = false;
            msg = "factor sectional curvature differs from -c";
          }
        }
      } catch (const Error& e) {
        ok = false;
        msg = e.what();
      }
      record("kahler_decomposition", ok, msg);
    } else {
      record("kahler_decomposition", true);
    }
    record("kahler_unimodular_implies_abelian", !(kahler && is_unimodular(g)) || abelian);
  } catch (const Error& e) {
    record("trial_execution", false, e.what());
  }
}

}  // namespace

TrialReport theorem_suite(std::uint64_t seed, std::size_t trials, std::size_t max_dim,
                          bool parallel) {
  if (max_dim < 2) throw PreconditionError("theorem_suite: max_dim must be at least 2");
  std::vector<Outcome> outcomes(trials);
  const long nt = static_cast<long>(trials);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nt; ++i) {
      run_trial(seed, static_cast<std::size_t>(i), max_dim, outcomes[static_cast<std::size_t>(i)]);
    }
  } else {
    for (long i = 0; i < nt; ++i) {
      run_trial(seed, static_cast<std::size_t>(i), max_dim, outcomes[static_cast<std::size_t>(i)]);
    }
  }
  TrialReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.max_dim = max_dim;
  for (auto& o : outcomes) {
    for (const auto& [name, ok] : o.results) {
      auto& tally = rep.theorems[name];
      (ok ? tally.pass : tally.fail) += 1;
    }
    for (auto& f : o.failures) rep.counterexamples.push_back(std::move(f));
  }
  return rep;
}

std::string TrialReport::to_json() const {
  using nlohmann::json;
  json doc;
  doc["seed"] = seed;
  doc["trials"] = trials;
  doc["max_dim"] = max_dim;
  json th = json::object();
  for (const auto& [name, t] : theorems) th[name] = {{"pass", t.pass}, {"fail", t.fail}};
  doc["theorems"] = std::move(th);
  json ce = json::array();
  for (const auto& c : counterexamples) {
    json entry{{"theorem", c.theorem}, {"trial", c.trial}, {"message", c.message}};
    entry["instance"] = c.instance.empty() ? json(nullptr) : json::parse(c.instance);
    ce.push_back(std::move(entry));
  }
  doc["counterexamples"] = std::move(ce);
  return doc.dump(2) + "\n";
}

}  // namespace abelcs
