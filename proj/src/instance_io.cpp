#include "abelcs/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace abelcs {

using nlohmann::json;

namespace {

Scalar scalar_field(const json& v) {
  if (v.is_string()) {
    try {
      return parse_scalar(v.get<std::string>());
    } catch (const ParseError& e) {
      throw InstanceError(e.what());
    }
  }
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw InstanceError("scalar must be a rational string or an integer");
}

std::size_t index_field(const json& v, std::size_t dim, const char* what) {
  if (!v.is_number_unsigned() && !v.is_number_integer()) {
    throw InstanceError(std::string(what) + ": index must be an integer");
  }
  const long i = v.get<long>();
  if (i < 0 || static_cast<std::size_t>(i) >= dim) {
    throw InstanceError(std::string(what) + ": index " + std::to_string(i) + " out of range");
  }
  return static_cast<std::size_t>(i);
}

Vector sparse_value(const json& v, std::size_t dim) {
  if (!v.is_object()) throw InstanceError("value must be an object {index: scalar}");
  Vector out = zero_vector(dim);
  for (const auto& [key, val] : v.items()) {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InstanceError("value key '" + key + "' is not an index");
    }
    if (k >= dim) throw InstanceError("value key " + key + " out of range");
    out[k] = scalar_field(val);
  }
  return out;
}

json sparse_json(const Vector& v) {
  json o = json::object();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) o[std::to_string(k)] = format_scalar(v[k]);
  return o;
}

Matrix matrix_field(const json& v, std::size_t dim, const char* what) {
  if (!v.is_array() || v.size() != dim) {
    throw InstanceError(std::string(what) + " must be a " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " matrix");
  }
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!v[r].is_array() || v[r].size() != dim) {
      throw InstanceError(std::string(what) + ": row " + std::to_string(r) + " has wrong length");
    }
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = scalar_field(v[r][c]);
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
}

std::size_t dim_field(const json& doc) {
  if (!doc.is_object()) throw InstanceError("top level must be an object");
  if (!doc.contains("dim")) throw InstanceError("missing field 'dim'");
  const json& d = doc["dim"];
  if (!d.is_number_integer() || d.get<long>() < 0) {
    throw InstanceError("'dim' must be a non-negative integer");
  }
  return d.get<std::size_t>();
}

std::vector<std::string> names_field(const json& doc, std::size_t dim, const std::string& prefix) {
  if (!doc.contains("basis")) return default_basis_names(dim, prefix);
  const json& b = doc["basis"];
  if (!b.is_array() || b.size() != dim) {
    throw InstanceError("'basis' must list " + std::to_string(dim) + " names");
  }
  std::vector<std::string> names;
  for (const auto& x : b) {
    if (!x.is_string()) throw InstanceError("basis names must be strings");
    names.push_back(x.get<std::string>());
  }
  return names;
}

struct PairEntry {
  std::size_t i, j;
  Vector value;
};

std::vector<PairEntry> pair_list(const json& doc, const char* field, std::size_t dim) {
  std::vector<PairEntry> out;
  if (!doc.contains(field)) return out;
  const json& list = doc[field];
  if (!list.is_array()) throw InstanceError(std::string("'") + field + "' must be an array");
  for (const auto& e : list) {
    if (!e.is_object() || !e.contains("pair") || !e.contains("value")) {
      throw InstanceError(std::string(field) + " entries need 'pair' and 'value'");
    }
    const json& p = e["pair"];
    if (!p.is_array() || p.size() != 2) throw InstanceError("'pair' must have two indices");
    out.push_back({index_field(p[0], dim, field), index_field(p[1], dim, field),
                   sparse_value(e["value"], dim)});
  }
  return out;
}

}  // namespace

const ComplexStructure& Instance::require_j() const {
  if (!j) throw PreconditionError("instance has no complex structure (missing field 'J')");
  return *j;
}

const InnerProduct& Instance::require_metric() const {
  if (!metric) throw PreconditionError("instance has no metric (missing field 'metric')");
  return *metric;
}

HermitianTriple Instance::triple() const {
  return HermitianTriple(algebra, require_j(), require_metric());
}

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  const std::size_t dim = dim_field(doc);
  auto names = names_field(doc, dim, "e");

  Tensor3 c(dim);
  std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
  for (auto& e : pair_list(doc, "brackets", dim)) {
    if (e.i == e.j) {
      if (!is_zero(e.value)) throw InstanceError("bracket [e_i,e_i] must vanish");
      continue;
    }
    std::size_t a = e.i, b = e.j;
    Vector v = std::move(e.value);
    if (a > b) {
      std::swap(a, b);
      v = -v;
    }
    if (seen[a][b]) throw InstanceError("bracket pair given twice");
    seen[a][b] = true;
    c.set_fibre(a, b, v);
    c.set_fibre(b, a, -v);
  }
  Instance inst{LieAlgebra::from_tensor(std::move(c), std::move(names)), {}, {}};
  if (auto v = check_jacobi(inst.algebra)) {
    throw InstanceError("Jacobi identity fails on (" + std::to_string(v->i) + "," +
                        std::to_string(v->j) + "," + std::to_string(v->k) + ")");
  }
  if (doc.contains("J")) {
    Matrix jm = matrix_field(doc["J"], dim, "J");
    if (jm * jm != -Matrix::identity(dim)) throw InstanceError("J does not satisfy J^2 = -I");
    inst.j = ComplexStructure(std::move(jm));
  }
  if (doc.contains("metric")) {
    Matrix gm = matrix_field(doc["metric"], dim, "metric");
    if (!is_symmetric_positive_definite(gm)) {
      throw InstanceError("metric is not symmetric positive definite");
    }
    inst.metric = InnerProduct(std::move(gm));
  }
  if (inst.j && inst.metric && !is_hermitian(*inst.j, *inst.metric)) {
    throw InstanceError("metric is not Hermitian for J");
  }
  return inst;
}

std::string emit_instance(const Instance& inst) {
  json doc;
  doc["dim"] = inst.algebra.dim();
  doc["basis"] = inst.algebra.basis_names();
  json br = json::array();
  for (const auto& e : inst.algebra.brackets()) {
    br.push_back({{"pair", {e.i, e.j}}, {"value", sparse_json(e.value)}});
  }
  doc["brackets"] = std::move(br);
  if (inst.j) doc["J"] = matrix_json(inst.j->matrix());
  if (inst.metric) doc["metric"] = matrix_json(inst.metric->gram());
  return doc.dump(2) + "\n";
}

CommAssocAlgebra parse_assoc_algebra(const std::string& text) {
  const json doc = parse_json(text);
  const std::size_t dim = dim_field(doc);
  auto names = names_field(doc, dim, "a");
  Tensor3 m(dim);
  std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
  for (auto& e : pair_list(doc, "products", dim)) {
    const std::size_t a = std::min(e.i, e.j), b = std::max(e.i, e.j);
    if (seen[a][b]) throw InstanceError("product pair given twice");
    seen[a][b] = true;
    m.set_fibre(a, b, e.value);
    m.set_fibre(b, a, e.value);
  }
  CommAssocAlgebra alg = CommAssocAlgebra::from_tensor(std::move(m), std::move(names));
  if (auto v = check_axioms(alg)) {
    throw InstanceError(std::string("product is not ") +
                        (v->kind == AxiomViolation::Kind::commutativity ? "commutative"
                                                                         : "associative") +
                        " at (" + std::to_string(v->i) + "," + std::to_string(v->j) + "," +
                        std::to_string(v->k) + ")");
  }
  return alg;
}

std::string emit_assoc_algebra(const CommAssocAlgebra& a) {
  json doc;
  doc["dim"] = a.dim();
  doc["basis"] = a.basis_names();
  json pr = json::array();
  for (const auto& e : a.products()) {
    pr.push_back({{"pair", {e.i, e.j}}, {"value", sparse_json(e.value)}});
  }
  doc["products"] = std::move(pr);
  return doc.dump(2) + "\n";
}

Matrix parse_matrix_file(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_array()) throw InstanceError("matrix file must be an array of rows");
  return matrix_field(doc, doc.size(), "matrix");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write " + path);
  out << text;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
CommAssocAlgebra load_assoc_algebra(const std::string& path) {
  return parse_assoc_algebra(read_file(path));
}
Matrix load_matrix_file(const std::string& path) { return parse_matrix_file(read_file(path)); }

}  // namespace abelcs
