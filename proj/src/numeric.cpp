#include "ghzent/detail/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ghzent::detail {

namespace {

double eval_cubic(double c3, double c2, double c1, double c0, double x) {
  return ((c3 * x + c2) * x + c1) * x + c0;
}

double eval_cubic_deriv(double c3, double c2, double c1, double x) {
  return (3.0 * c3 * x + 2.0 * c2) * x + c1;
}

// Guarded Newton steps tighten the analytic roots against rounding in
// the trigonometric/Cardano formulas; a step is kept only if it reduces
// the residual (near double roots the derivative collapses).
double polish(double c3, double c2, double c1, double c0, double x) {
  double f = eval_cubic(c3, c2, c1, c0, x);
  for (int it = 0; it < 3; ++it) {
    const double df = eval_cubic_deriv(c3, c2, c1, x);
    if (df == 0.0) break;
    const double step = f / df;
    if (!std::isfinite(step)) break;
    const double x_next = x - step;
    const double f_next = eval_cubic(c3, c2, c1, c0, x_next);
    if (!(std::abs(f_next) < std::abs(f))) break;
    x = x_next;
    f = f_next;
  }
  return x;
}

}  // namespace

std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
  std::vector<double> roots;
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return roots;  // identically zero: no isolated roots
  if (std::abs(c3) < 1e-14 * scale) {
    // Quadratic c2 x^2 + c1 x + c0, solved with the cancellation-safe form.
    if (std::abs(c2) < 1e-14 * scale) {
      if (c1 != 0.0) roots.push_back(-c0 / c1);
      return roots;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c1 + std::copysign(sq, c1));
    roots.push_back(q / c2);
    if (q != 0.0)
      roots.push_back(c0 / q);
    else
      roots.push_back(0.0);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  // Monic x^3 + a x^2 + b x + c, depressed via x = t - a/3.
  const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  // Route borderline discriminants (double roots blurred by rounding) to
  // the trigonometric branch, which degrades gracefully there.
  const double disc_scale = std::max(q * q / 4.0, std::abs(p * p * p) / 27.0);

  if (disc > 1e-14 * disc_scale) {
    // One real root; stable Cardano using the larger-magnitude cube root.
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + (q <= 0.0 ? sq : -sq));
    const double v = (u != 0.0) ? -p / (3.0 * u) : std::cbrt(-q);
    roots.push_back(polish(c3, c2, c1, c0, u + v - shift));
  } else {
    // Three real roots (possibly repeated): trigonometric form for the
    // depressed cubic t^3 + p t + q, with
    //   t_k = 2 sqrt(-p/3) cos( acos(3q/(2p) sqrt(-3/p))/3 - 2 pi k/3 ).
    const double mp = std::max(-p, 0.0);
    const double r = 2.0 * std::sqrt(mp / 3.0);
    double arg = 0.0;
    if (mp > 0.0 && r > 0.0) {
      arg = -3.0 * q / (mp * r);  // equals 3q/(2p) * sqrt(-3/p)
      arg = std::clamp(arg, -1.0, 1.0);
    }
    const double phi = std::acos(arg) / 3.0;
    constexpr double two_pi_3 = 2.0943951023931953;  // 2*pi/3
    for (int k = 0; k < 3; ++k)
      roots.push_back(polish(c3, c2, c1, c0, r * std::cos(phi - two_pi_3 * k) - shift));
    std::sort(roots.begin(), roots.end());
    // Collapse numerically coincident repeated roots (the multiplicity is
    // not reported; callers see distinct values in ascending order).
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                roots.end());
  }
  return roots;
}

NelderMeadResult nelder_mead(const std::function<double(const double*)>& f,
                             std::vector<double> x0, double scale, int max_iter,
                             double f_tol, double x_tol) {
  const std::size_t n = x0.size();
  const std::size_t m = n + 1;
  std::vector<std::vector<double>> simplex(m, x0);
  std::vector<double> fv(m);
  for (std::size_t i = 1; i < m; ++i) simplex[i][i - 1] += scale;
  for (std::size_t i = 0; i < m; ++i) fv[i] = f(simplex[i].data());
  int evals = static_cast<int>(m);

  std::vector<std::size_t> order(m);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return fv[i] < fv[j] || (fv[i] == fv[j] && i < j);
    });
    const std::size_t best = order[0], worst = order[m - 1], second = order[m - 2];

    // Convergence: simplex collapsed in both value and extent.
    double fspread = std::abs(fv[worst] - fv[best]);
    double xspread = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      xspread = std::max(xspread, std::abs(simplex[worst][i] - simplex[best][i]));
    if (fspread <= f_tol && xspread <= x_tol) break;

    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != worst) acc += simplex[j][i];
      centroid[i] = acc / static_cast<double>(n);
    }

    auto blend = [&](std::vector<double>& out, double t) {
      for (std::size_t i = 0; i < n; ++i)
        out[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
    };

    blend(xr, -1.0);  // reflection
    const double fr = f(xr.data());
    ++evals;
    if (fr < fv[order[0]]) {
      blend(xe, -2.0);  // expansion
      const double fe = f(xe.data());
      ++evals;
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      blend(xc, outside ? -0.5 : 0.5);  // contraction
      const double fc = f(xc.data());
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t j = 0; j < m; ++j) {
          if (j == best) continue;
          for (std::size_t i = 0; i < n; ++i)
            simplex[j][i] = simplex[best][i] + 0.5 * (simplex[j][i] - simplex[best][i]);
          fv[j] = f(simplex[j].data());
          ++evals;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (fv[i] < fv[best]) best = i;
  return {simplex[best], fv[best], evals};
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace ghzent::detail
