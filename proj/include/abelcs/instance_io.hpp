#pragma once

#include <optional>
#include <string>

#include "abelcs/assoc_algebra.hpp"
#include "abelcs/complex_structure.hpp"
#include "abelcs/hermitian.hpp"
#include "abelcs/lie_algebra.hpp"

namespace abelcs {

/// A Lie algebra with optional complex structure and metric, as stored in
/// instance files:
///   {"dim": n, "basis": [...], "brackets": [{"pair": [i,j], "value": {"k": "p/q"}}],
///    "J": [[...]], "metric": [[...]]}
/// Indices are 0-based; matrices are row lists of rational strings.
struct Instance {
  LieAlgebra algebra;
  std::optional<ComplexStructure> j;
  std::optional<InnerProduct> metric;

  /// Throws PreconditionError naming the missing field.
  const ComplexStructure& require_j() const;
  const InnerProduct& require_metric() const;
  HermitianTriple triple() const;
};

/// Missing file, malformed JSON or a field of the wrong shape.
class InstanceError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Parses and validates: Jacobi, J^2 = -I, SPD metric, Hermitian when both
/// J and metric are present. All failures raise InstanceError with a named
/// reason.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string emit_instance(const Instance& inst);

/// {"dim": n, "basis": [...], "products": [{"pair": [i,j], "value": {...}}]}, i <= j.
/// Validated with check_axioms.
CommAssocAlgebra parse_assoc_algebra(const std::string& text);
CommAssocAlgebra load_assoc_algebra(const std::string& path);
std::string emit_assoc_algebra(const CommAssocAlgebra& a);

/// Square matrix of rational strings, as used for J, metric and T files.
Matrix parse_matrix_file(const std::string& text);
Matrix load_matrix_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace abelcs
