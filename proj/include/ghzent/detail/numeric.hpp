#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Small numeric utilities shared across the library: a robust real-root
// cubic solver, a deterministic Nelder-Mead minimizer, reproducible RNG
// helpers (bit-identical across standard libraries), and fixed-precision
// number formatting for reproducible output.

namespace ghzent::detail {

// All real roots of c3 x^3 + c2 x^2 + c1 x + c0 in ascending order.
// Degenerate leading coefficients fall back to the quadratic/linear case.
// Roots are Newton-polished on the original polynomial.
std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0);

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0;
  int evals = 0;
};

// Deterministic Nelder-Mead minimization (standard reflection/expansion/
// contraction/shrink with fixed coefficients). The initial simplex is
// x0 plus `scale` steps along each coordinate.
NelderMeadResult nelder_mead(const std::function<double(const double*)>& f,
                             std::vector<double> x0, double scale,
                             int max_iter = 4000, double f_tol = 1e-13,
                             double x_tol = 1e-11);

// xorshift-free uniform in [0,1) from a raw 64-bit engine draw; identical
// on every platform, unlike std::uniform_real_distribution.
inline double uniform01(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

// %.12g formatting: 12 significant digits, '.' decimal separator.
std::string format_sig12(double v);

}  // namespace ghzent::detail
