#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "abelcs/instance_io.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;

namespace {

std::string data(const std::string& name) { return std::string(ABELCS_DATA_DIR) + "/" + name; }

const char* kMinimal = R"({"dim": 2, "brackets": [{"pair": [0, 1], "value": {"1": "1"}}]})";

}  // namespace

TEST_CASE("fixtures round-trip byte for byte") {
  for (const char* f : {"aff_c_j1.json", "aff_c_j2.json", "abelian_r4.json", "kahler_2haff.json",
                        "kahler_2haff_scaled.json", "aff_c_no_j.json"}) {
    const std::string text = read_file(data(f));
    CHECK_MESSAGE(emit_instance(parse_instance(text)) == text, f);
  }
  for (const char* f : {"complex.json", "real.json", "zero2.json", "complex_bad_star.json"}) {
    const std::string text = read_file(data(f));
    CHECK_MESSAGE(emit_assoc_algebra(parse_assoc_algebra(text)) == text, f);
  }
}

TEST_CASE("parsed fixture contents") {
  const Instance a = load_instance(data("aff_c_j1.json"));
  CHECK(a.algebra.dim() == 4);
  CHECK(a.algebra.bracket_basis(1, 3) == Vector{0, 0, -1, 0});
  CHECK(a.require_j().apply(unit_vector(4, 0)) == Vector{0, -1, 0, 0});
  CHECK(a.require_metric().gram() == Matrix::identity(4));
  CHECK(a.algebra.basis_names()[2] == "e3");

  const Instance m = parse_instance(kMinimal);
  CHECK_FALSE(m.j.has_value());
  CHECK_FALSE(m.metric.has_value());
  CHECK(m.algebra.basis_names() == std::vector<std::string>{"e1", "e2"});
  CHECK_THROWS_WITH_AS(m.require_j(), doctest::Contains("missing field 'J'"), PreconditionError);
  CHECK_THROWS_AS(m.require_metric(), PreconditionError);

  CHECK(load_assoc_algebra(data("complex.json")) == complex_plane());
  CHECK(load_assoc_algebra(data("real.json")) == real_line());
  CHECK(load_matrix_file(data("skew_t.json")) == Matrix::from_rows({{1, 0}, {0, 2}}));
}

TEST_CASE("generated instances round-trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomInstance r = random_instance(seed, 1 + seed % 4, static_cast<Family>(seed % 3), true, true);
    const std::string text = emit_instance(r.as_instance());
    const Instance back = parse_instance(text);
    CHECK(back.algebra.constants() == r.algebra.constants());
    CHECK(back.require_j().matrix() == r.j.matrix());
    CHECK(back.require_metric() == *r.metric);
    CHECK(emit_instance(back) == text);
  }
}

TEST_CASE("named input errors") {
  auto fails_with = [](const std::string& text, const char* reason) {
    CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains(reason), InstanceError);
  };
  fails_with("{", "");
  fails_with(R"({"brackets": []})", "dim");
  fails_with(R"({"dim": 2, "brackets": [{"pair": [0, 1], "value": {"1": "1/0"}}]})", "zero");
  fails_with(R"({"dim": 2, "brackets": [{"pair": [0, 2], "value": {"1": "1"}}]})", "out of range");
  fails_with(R"({"dim": 2, "brackets": [{"pair": [0, 1], "value": {"x": "1"}}]})", "not an index");
  fails_with(R"({"dim": 3, "brackets": [{"pair": [0, 1], "value": {"2": "1"}}, {"pair": [0, 2], "value": {"0": "1"}}]})",
             "Jacobi identity fails on (0,1,2)");
  fails_with(R"({"dim": 2, "brackets": [], "J": [["1", "0"], ["0", "1"]]})", "J^2 = -I");
  fails_with(R"({"dim": 2, "brackets": [], "metric": [["1", "2"], ["2", "1"]]})", "positive definite");
  fails_with(R"({"dim": 2, "brackets": [], "J": [["1", "-2"], ["1", "-1"]], "metric": [["1", "0"], ["0", "1"]]})",
             "not Hermitian");
  fails_with(R"({"dim": 2, "brackets": [], "J": [["0", "1"]]})", "J");
  CHECK_THROWS_AS(load_instance(data("bad_zero_denominator.json")), InstanceError);
  CHECK_THROWS_WITH_AS(load_instance(data("bad_jacobi.json")), doctest::Contains("Jacobi"), InstanceError);
  CHECK_THROWS_AS(load_instance(data("does_not_exist.json")), InstanceError);
  CHECK_THROWS_AS(parse_assoc_algebra(R"({"dim": 2, "products": [{"pair": [0, 0], "value": {"1": "1"}}, {"pair": [1, 1], "value": {"0": "1"}}]})"),
                  InstanceError);
  CHECK_THROWS_AS(parse_matrix_file(R"([["1", "2"], ["3"]])"), InstanceError);
}
