// abelcs command-line front end.
//
// Exit codes: 0 pass, 1 check failure, 2 input error.

#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "abelcs/constructions.hpp"
#include "abelcs/hermitian.hpp"
#include "abelcs/instance_io.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

const std::set<std::string> kRequirable{"kahler",    "abelian-cs", "integrable",
                                         "unimodular", "nilpotent", "solvable",
                                         "flat-first-canonical"};

json vector_json(const Vector& v) {
  json o = json::object();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) o[std::to_string(k)] = format_scalar(v[k]);
  return o;
}

json tensor_json(const Tensor3& t) {
  json list = json::array();
  for (std::size_t i = 0; i < t.extent0(); ++i)
    for (std::size_t j = 0; j < t.extent1(); ++j) {
      const Vector f = t.fibre(i, j);
      if (!is_zero(f)) list.push_back({{"pair", {i, j}}, {"value", vector_json(f)}});
    }
  return list;
}

json dims_json(const std::vector<Subspace>& series) {
  json a = json::array();
  for (const auto& s : series) a.push_back(s.dim());
  return a;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// nonzero nabla_{e_i} e_j, one per line
void print_connection(const Connection& c, const std::vector<std::string>& names) {
  const std::size_t n = c.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector v = c.gamma.fibre(i, j);
      if (!is_zero(v)) {
        std::cout << "  nabla_" << names[i] << " " << names[j] << " = " << format_vector(v) << "\n";
      }
    }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << "wrote " << out << "\n";
  }
}

struct CheckOptions {
  std::string instance;
  bool complex = false;
  bool hermitian = false;
  std::vector<std::string> require;
  std::string json_out;
};

int run_check(const CheckOptions& o) {
  for (const auto& r : o.require) {
    if (!kRequirable.count(r)) throw InstanceError("unknown --require property '" + r + "'");
  }
  const Instance inst = load_instance(o.instance);
  const LieAlgebra& g = inst.algebra;
  std::set<std::string> want(o.require.begin(), o.require.end());
  const bool need_j = o.complex || o.hermitian || want.count("abelian-cs") ||
                      want.count("integrable") || want.count("kahler") ||
                      want.count("flat-first-canonical");
  const bool need_metric = o.hermitian || want.count("kahler") ||
                           want.count("flat-first-canonical");
  if (need_j) inst.require_j();
  if (need_metric) inst.require_metric();

  std::map<std::string, bool> props;
  json doc;
  doc["instance"] = o.instance;
  doc["dim"] = g.dim();

  const SeriesReport s = derived_and_central_series(g);
  props["solvable"] = s.is_solvable;
  props["nilpotent"] = s.is_nilpotent;
  props["unimodular"] = is_unimodular(g);
  std::cout << "dim: " << g.dim() << "\n"
            << "jacobi: ok\n"
            << "abelian: " << yes(is_abelian(g)) << "\n"
            << "solvable: " << yes(s.is_solvable)
            << (s.is_solvable ? " (derived length " + std::to_string(s.derived.size() - 1) + ")"
                              : std::string())
            << "\n"
            << "2-step solvable: " << yes(s.is_2step_solvable) << "\n"
            << "nilpotent: " << yes(s.is_nilpotent)
            << (s.nilpotency_class ? " (class " + std::to_string(*s.nilpotency_class) + ")"
                                   : std::string())
            << "\n"
            << "unimodular: " << yes(props["unimodular"]) << "\n"
            << "center dim: " << center(g).dim() << "\n"
            << "commutator dim: " << commutator_ideal(g).dim() << "\n";
  doc["lie"] = {{"jacobi", true},
                {"abelian", is_abelian(g)},
                {"solvable", s.is_solvable},
                {"two_step_solvable", s.is_2step_solvable},
                {"nilpotent", s.is_nilpotent},
                {"nilpotency_class", s.nilpotency_class ? json(*s.nilpotency_class) : json()},
                {"unimodular", props["unimodular"]},
                {"center_dim", center(g).dim()},
                {"commutator_dim", commutator_ideal(g).dim()},
                {"derived_series_dims", dims_json(s.derived)},
                {"lower_central_dims", dims_json(s.lower_central)}};

  if (inst.j) {
    const ComplexStructure& j = *inst.j;
    const auto nw = nijenhuis_witness(g, j);
    const bool abelian_cs = is_abelian_cs(g, j);
    props["integrable"] = !nw;
    props["abelian-cs"] = abelian_cs;
    std::cout << "integrable: " << yes(!nw);
    if (nw) std::cout << " (N(e" << nw->i + 1 << ",e" << nw->j + 1 << ") = " << format_vector(nw->residual) << ")";
    std::cout << "\nabelian J: " << yes(abelian_cs) << "\n";
    json cj{{"integrable", !nw}, {"abelian", abelian_cs}};
    cj["nijenhuis_witness"] =
        nw ? json{{"pair", {nw->i, nw->j}}, {"value", vector_json(nw->residual)}} : json();
    if (abelian_cs) {
      const CapReport cap = lemma_cap_report(g, j);
      std::cout << "cap: center J-stable " << yes(cap.center_j_stable) << ", ad_Jx = -ad_x J "
                << yes(cap.ad_j_anticommutes) << ", g' abelian " << yes(cap.commutator_abelian)
                << ", Jg' abelian " << yes(cap.j_commutator_abelian_subalgebra)
                << ", g' ∩ Jg' central in g'_J " << yes(cap.intersection_in_center) << "\n";
      cj["cap"] = {{"center_j_stable", cap.center_j_stable},
                   {"ad_j_anticommutes", cap.ad_j_anticommutes},
                   {"commutator_abelian", cap.commutator_abelian},
                   {"j_commutator_abelian_subalgebra", cap.j_commutator_abelian_subalgebra},
                   {"intersection_in_center", cap.intersection_in_center}};
    } else {
      cj["cap"] = json();
    }
    doc["complex"] = std::move(cj);
  }

  if (inst.j && inst.metric) {
    const HermitianTriple t = inst.triple();
    const auto dw = d_omega_witness(t);
    props["kahler"] = !dw;
    std::cout << "kahler: " << yes(!dw);
    if (dw) {
      std::cout << " (d omega(e" << dw->i + 1 << ",e" << dw->j + 1 << ",e" << dw->k + 1
                << ") = " << format_scalar(dw->value) << ")";
    }
    std::cout << "\n";
    json hj;
    hj["kahler"] = !dw;
    hj["d_omega_witness"] =
        dw ? json{{"triple", {dw->i, dw->j, dw->k}}, {"value", format_scalar(dw->value)}} : json();

    const Connection lc = levi_civita(g, t.metric());
    const Connection n1 = bar_connection(t.j(), lc);
    const Curvature rlc = curvature(g, lc);
    const Curvature r1 = curvature(g, n1);
    const ConnectionFlags flc = connection_flags(g, t.j(), t.metric(), lc);
    const ConnectionFlags f1 = connection_flags(g, t.j(), t.metric(), n1);
    props["flat-first-canonical"] = r1.is_zero();
    auto flags_json = [](const ConnectionFlags& f, bool torsion_free) {
      return json{{"metric", f.is_metric},
                  {"complex", f.is_complex},
                  {"torsion_type_11", f.torsion_type_11},
                  {"torsion_free", torsion_free}};
    };
    hj["levi_civita"] = tensor_json(lc.gamma);
    hj["first_canonical"] = tensor_json(n1.gamma);
    hj["levi_civita_flags"] = flags_json(flc, is_torsion_free(g, lc));
    hj["first_canonical_flags"] = flags_json(f1, is_torsion_free(g, n1));
    hj["curvature_norms"] = {{"levi_civita", format_scalar(rlc.squared_norm())},
                             {"first_canonical", format_scalar(r1.squared_norm())}};
    hj["first_canonical_zero"] = n1.is_zero();
    hj["first_canonical_flat"] = r1.is_zero();
    hj["vip"] = vip_identity(t);
    if (is_abelian_cs(g, t.j())) {
      hj["kahler_identity"] = kahler_identity_check(t);
      hj["first_canonical_closed_form_agrees"] = first_canonical_expanded(t) == n1;
    }
    std::cout << "levi-civita: metric " << yes(flc.is_metric) << ", torsion-free "
              << yes(is_torsion_free(g, lc)) << ", |R|^2 = " << format_scalar(rlc.squared_norm())
              << "\n";
    print_connection(lc, g.basis_names());
    std::cout << "first canonical: metric " << yes(f1.is_metric) << ", complex "
              << yes(f1.is_complex) << ", torsion (1,1) " << yes(f1.torsion_type_11)
              << ", zero " << yes(n1.is_zero()) << ", |R|^2 = " << format_scalar(r1.squared_norm())
              << "\n";
    print_connection(n1, g.basis_names());
    doc["hermitian"] = std::move(hj);
  }

  json failed = json::array();
  for (const auto& r : o.require) {
    if (!props.at(r)) failed.push_back(r);
  }
  doc["required"] = o.require;
  doc["failed"] = failed;
  doc["ok"] = failed.empty();
  for (const auto& f : failed) std::cout << "required property failed: " << f.get<std::string>() << "\n";
  if (!o.json_out.empty()) write_file(o.json_out, doc.dump(2) + "\n");
  return failed.empty() ? kPass : kCheckFailed;
}

int run_decompose(const std::string& path, const std::string& report) {
  const Instance inst = load_instance(path);
  const HermitianTriple t = inst.triple();
  json doc;
  doc["instance"] = path;
  int code = kPass;
  try {
    const KahlerDecomposition kd = kahler_decompose(t);
    json factors = json::array();
    std::cout << "n = " << kd.n() << ", s = " << kd.s() << "\n";
    for (const auto& f : kd.factors) {
      factors.push_back({{"idempotent", vector_json(f.idempotent)},
                         {"norm_sq", format_scalar(f.norm_sq)},
                         {"curvature", format_scalar(f.curvature)}});
      std::cout << "factor: e = " << format_vector(f.idempotent) << ", r^2 = "
                << format_scalar(f.norm_sq) << ", c = " << format_scalar(f.curvature) << "\n";
    }
    json p = json::array();
    for (std::size_t r = 0; r < kd.change_of_basis.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < kd.change_of_basis.cols(); ++c)
        row.push_back(format_scalar(kd.change_of_basis(r, c)));
      p.push_back(std::move(row));
    }
    doc["ok"] = true;
    doc["n"] = kd.n();
    doc["s"] = kd.s();
    doc["factors"] = std::move(factors);
    doc["change_of_basis"] = std::move(p);
  } catch (const KahlerStepError& e) {
    std::cout << e.what() << "\n";
    doc["ok"] = false;
    doc["failed_step"] = e.step();
    doc["error"] = e.what();
    code = kCheckFailed;
  } catch (const PreconditionError& e) {
    std::cout << e.what() << "\n";
    doc["ok"] = false;
    doc["error"] = e.what();
    code = kCheckFailed;
  }
  if (!report.empty()) write_file(report, doc.dump(2) + "\n");
  return code;
}

int run_report(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceError("report must be a JSON object");
  if (doc.contains("theorems")) {
    std::cout << "seed " << doc.value("seed", 0ULL) << ", trials " << doc.value("trials", 0ULL)
              << "\n";
    for (const auto& [name, t] : doc["theorems"].items()) {
      std::cout << "  " << name << ": " << t.value("pass", 0) << " pass, " << t.value("fail", 0)
                << " fail\n";
    }
    const std::size_t n = doc.value("counterexamples", json::array()).size();
    std::cout << "counterexamples: " << n << "\n";
    return n == 0 ? kPass : kCheckFailed;
  }
  if (doc.contains("ok")) {
    const bool ok = doc["ok"].get<bool>();
    if (doc.contains("n")) {
      std::cout << "kahler decomposition: n = " << doc["n"] << ", s = " << doc["s"] << "\n";
    }
    if (doc.contains("failed") && !doc["failed"].empty()) {
      std::cout << "failed: " << doc["failed"].dump() << "\n";
    }
    std::cout << (ok ? "ok" : "not ok") << "\n";
    return ok ? kPass : kCheckFailed;
  }
  throw InstanceError("unrecognised report format");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelian complex structures: exact checks and constructions"};
  app.require_subcommand(1);

  CheckOptions chk;
  auto* check = app.add_subcommand("check", "Structural report for an instance file");
  check->add_option("--instance", chk.instance, "instance JSON")->required();
  check->add_flag("--complex", chk.complex, "require J and report complex checks");
  check->add_flag("--hermitian", chk.hermitian, "require J and metric and report geometry");
  check->add_option("--require", chk.require, "properties that must hold")->delimiter(',');
  check->add_option("--json", chk.json_out, "write the report as JSON");

  auto* construct = app.add_subcommand("construct", "Build an instance file");
  construct->require_subcommand(1);
  std::string out, dot_path, star_path, algebra_path, t_path;
  std::size_t n52 = 0;
  auto* dp = construct->add_subcommand("double-product", "Double product of a compatible pair");
  dp->add_option("--dot", dot_path)->required();
  dp->add_option("--star", star_path)->required();
  dp->add_option("--out", out);
  auto* aff = construct->add_subcommand("aff", "Affine Lie algebra aff(A)");
  aff->add_option("--algebra", algebra_path)->required();
  aff->add_option("--out", out);
  auto* ex = construct->add_subcommand("example52", "The span{f1,f2} ⊕ v family");
  ex->add_option("--n", n52)->required();
  ex->add_option("--t", t_path, "2n x 2n matrix commuting with J")->required();
  ex->add_option("--out", out);

  std::string dk_instance, dk_report;
  auto* dk = app.add_subcommand("decompose-kahler", "Kähler decomposition of an abelian-J triple");
  dk->add_option("--instance", dk_instance)->required();
  dk->add_option("--report", dk_report);

  std::uint64_t seed = 0;
  std::size_t trials = 500, max_dim = 12;
  std::string fuzz_report;
  bool serial = false;
  auto* fuzz = app.add_subcommand("fuzz", "Randomised theorem suite");
  fuzz->add_option("--seed", seed)->required();
  fuzz->add_option("--trials", trials);
  fuzz->add_option("--max-dim", max_dim)->check(CLI::Range(2, 16));
  fuzz->add_option("--report", fuzz_report);
  fuzz->add_flag("--serial", serial, "run trials without OpenMP");

  std::string report_in;
  auto* report = app.add_subcommand("report", "Summarise a fuzz, check or decompose report");
  report->add_option("--input", report_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return run_check(chk);
    if (*construct) {
      Instance inst;
      if (*dp) {
        const DoubleProduct d =
            double_product(load_assoc_algebra(dot_path), load_assoc_algebra(star_path));
        inst = Instance{d.algebra, d.j, std::nullopt};
      } else if (*aff) {
        const DoubleProduct d = aff_algebra(load_assoc_algebra(algebra_path));
        inst = Instance{d.algebra, d.j, std::nullopt};
      } else {
        auto [g, j] = example52_family(n52, load_matrix_file(t_path));
        inst = Instance{std::move(g), std::move(j), std::nullopt};
      }
      emit(emit_instance(inst), out);
      return kPass;
    }
    if (*dk) return run_decompose(dk_instance, dk_report);
    if (*fuzz) {
      const TrialReport rep = theorem_suite(seed, trials, max_dim, !serial);
      for (const auto& [name, t] : rep.theorems) {
        std::cout << name << ": " << t.pass << " pass, " << t.fail << " fail\n";
      }
      std::cout << "counterexamples: " << rep.counterexamples.size() << "\n";
      if (!fuzz_report.empty()) write_file(fuzz_report, rep.to_json());
      return rep.ok() ? kPass : kCheckFailed;
    }
    if (*report) return run_report(report_in);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}
