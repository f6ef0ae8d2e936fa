// Times the OpenMP kernels against their serial references on random
// Hermitian instances and checks that both produce identical tensors.
//
//   bench_kernels [reps] [seed]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "abelcs/kernels.hpp"
#include "abelcs/theorem_lab.hpp"

using namespace abelcs;

namespace {

template <class F>
double millis(int reps, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  std::cout << "threads: " << kernels::max_threads() << "\n";
  std::cout << std::left << std::setw(6) << "dim" << std::setw(14) << "kernel" << std::right
            << std::setw(12) << "serial ms" << std::setw(12) << "omp ms" << std::setw(9)
            << "speedup" << "\n";
  bool all_equal = true;
  for (std::size_t dim_a : {4, 5, 6}) {
    const RandomInstance r = random_instance(seed + dim_a, dim_a, Family::diagonal_pair, true, true);
    const Tensor3& c = r.algebra.constants();
    const Matrix& gram = r.metric->gram();

    Tensor3 g_ser, g_par;
    const double lc_s = millis(reps, [&] { g_ser = kernels::serial::levi_civita_christoffel(c, gram); });
    const double lc_p = millis(reps, [&] { g_par = kernels::levi_civita_christoffel(c, gram); });
    all_equal = all_equal && g_ser == g_par;

    std::vector<Matrix> r_ser, r_par;
    const double cu_s = millis(reps, [&] { r_ser = kernels::serial::curvature(g_par, c); });
    const double cu_p = millis(reps, [&] { r_par = kernels::curvature(g_par, c); });
    all_equal = all_equal && r_ser == r_par;

    std::optional<JacobiViolation> j_ser, j_par;
    const double ja_s = millis(reps, [&] { j_ser = kernels::serial::first_jacobi_violation(r.algebra); });
    const double ja_p = millis(reps, [&] { j_par = kernels::first_jacobi_violation(r.algebra); });
    all_equal = all_equal && j_ser.has_value() == j_par.has_value();

    auto row = [&](const char* name, double s, double p) {
      std::cout << std::left << std::setw(6) << 2 * dim_a << std::setw(14) << name << std::right
                << std::fixed << std::setprecision(2) << std::setw(12) << s << std::setw(12) << p
                << std::setw(9) << (p > 0 ? s / p : 0.0) << "\n";
    };
    row("christoffel", lc_s, lc_p);
    row("curvature", cu_s, cu_p);
    row("jacobi", ja_s, ja_p);
  }
  std::cout << (all_equal ? "serial and parallel results identical\n"
                          : "MISMATCH between serial and parallel results\n");
  return all_equal ? 0 : 1;
}
