#include "ghzent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ghzent/detail/numeric.hpp"

namespace ghzent {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

struct CycleAngles {
  std::array<double, 4> theta{};
  double sum = 0;
  int argmax = 0;
  int argmin = 0;
};

CycleAngles cycle_angles(const DensityEntries& d, double kappa) {
  CycleAngles c;
  for (int i = 0; i < 4; ++i) {
    const double t = std::acos(clamp_unit(d.off[static_cast<std::size_t>(i)] / kappa));
    c.theta[static_cast<std::size_t>(i)] = t;
    c.sum += t;
    if (t > c.theta[static_cast<std::size_t>(c.argmax)]) c.argmax = i;
    if (t < c.theta[static_cast<std::size_t>(c.argmin)]) c.argmin = i;
  }
  return c;
}

double max_abs_off(const DensityEntries& d) {
  double m = 0.0;
  for (double v : d.off) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double WitnessVector::component(int i) const {
  switch (i) {
    case 0: return delta;
    case 1: return alpha;
    case 2: return beta;
    default: return gamma;
  }
}

double WitnessVector::norm1() const {
  return std::abs(delta) + std::abs(alpha) + std::abs(beta) + std::abs(gamma);
}

double mu(const PauliCoefficients& c) {
  const double l5 = c.lam[3], l6 = c.lam[4], l7 = c.lam[5], l8 = c.lam[6];
  const double prod = l5 * l6 * l7 * l8;
  if (!(prod > 0.0))
    throw DomainError("mu requires a positive product of the four off-diagonal correlations");
  const double f1 = l5 * l6 + l7 * l8;
  const double f2 = l5 * l7 + l6 * l8;
  const double f3 = l5 * l8 + l6 * l7;
  // The triple product is nonnegative whenever the denominator is positive;
  // clamp away rounding noise before the square root.
  const double num = std::max(f1 * f2 * f3, 0.0);
  return std::sqrt(num / prod);
}

double separability_margin(const DensityEntries& d) {
  const double kappa = d.kappa();
  const double maxabs = max_abs_off(d);
  if (kappa <= 1e-300) return maxabs == 0.0 ? 0.0 : -maxabs;
  const double cube = kappa - maxabs;
  const CycleAngles c = cycle_angles(d, kappa);
  const double low = kappa * (c.sum - 2.0 * c.theta[static_cast<std::size_t>(c.argmax)]);
  const double up = kappa * (2.0 * kPi + 2.0 * c.theta[static_cast<std::size_t>(c.argmin)] - c.sum);
  return std::min(cube, std::min(low, up));
}

bool is_ppt(const DensityEntries& d, double eps) { return max_abs_off(d) <= d.kappa() + eps; }

bool is_ppt(const GhzDiagonalState& s, double eps) { return is_ppt(to_density_entries(s), eps); }

bool sufficient_linear(const PauliCoefficients& c, double eps) {
  const double sum = std::abs(c.lam[3]) + std::abs(c.lam[4]) + std::abs(c.lam[5]) + std::abs(c.lam[6]);
  // 1 - |lambda_minus| equals 8*kappa; compare in probability units.
  return sum / 8.0 <= c.kappa() + eps;
}

SeparabilityReport is_fully_separable(const GhzDiagonalState& s, double eps) {
  const DensityEntries d = to_density_entries(s);
  const PauliCoefficients c = to_pauli_coefficients(s);
  SeparabilityReport r;
  r.lambda_minus = c.lambda_minus();
  r.kappa = d.kappa();
  const double prod = c.tail_product();
  // A product indistinguishable from zero sits on the PPT-exact boundary
  // between the sign classes; route it to the PPT branch.
  r.branch = prod > 1e-15 ? Branch::MuBranch : Branch::PptBranch;
  if (r.branch == Branch::MuBranch) r.mu = mu(c);
  r.ppt = is_ppt(d, eps);
  r.margin = separability_margin(d);
  r.fully_separable = r.margin >= -eps;
  return r;
}

double witness_value(const DensityEntries& d, const WitnessVector& x) {
  return x.delta * d.off[0] + x.alpha * d.off[1] + x.beta * d.off[2] + x.gamma * d.off[3];
}

namespace {

struct GridCandidate {
  double value = -1e300;
  double a = 0, b = 0, c = 0;
};

// Objective of h(a,b,c) = delta cos(a+b+c) + alpha cos a + beta cos b
// + gamma cos c.
struct WitnessObjective {
  double delta, alpha, beta, gamma;

  double value(double a, double b, double c) const {
    return delta * std::cos(a + b + c) + alpha * std::cos(a) + beta * std::cos(b) +
           gamma * std::cos(c);
  }

  void gradient(double a, double b, double c, double g[3]) const {
    const double sd = std::sin(a + b + c);
    g[0] = -delta * sd - alpha * std::sin(a);
    g[1] = -delta * sd - beta * std::sin(b);
    g[2] = -delta * sd - gamma * std::sin(c);
  }

  // Exact maximization over one angle with the other two fixed:
  //   delta cos(t + rest) + x cos t = R cos(t + phi),
  // maximized at t = -phi. Returns false (angle untouched) on a flat
  // direction, where the total influence R of the angle is negligible.
  bool argmax_coordinate(double x, double rest, double& t, double floor_r) const {
    const double px = delta * std::cos(rest) + x;
    const double py = delta * std::sin(rest);
    const double r = std::hypot(px, py);
    if (r <= floor_r) return false;
    t = -std::atan2(py, px);
    return true;
  }

  void hessian(double a, double b, double c, double h[3][3]) const {
    const double cd = std::cos(a + b + c);
    h[0][0] = -delta * cd - alpha * std::cos(a);
    h[1][1] = -delta * cd - beta * std::cos(b);
    h[2][2] = -delta * cd - gamma * std::cos(c);
    h[0][1] = h[0][2] = h[1][0] = h[1][2] = h[2][0] = h[2][1] = -delta * cd;
  }
};

bool solve3(const double h[3][3], const double g[3], double out[3]) {
  const double det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                     h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                     h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
  if (std::abs(det) < 1e-14) return false;
  const double inv = 1.0 / det;
  out[0] = inv * (g[0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                  h[0][1] * (g[1] * h[2][2] - h[1][2] * g[2]) +
                  h[0][2] * (g[1] * h[2][1] - h[1][1] * g[2]));
  out[1] = inv * (h[0][0] * (g[1] * h[2][2] - h[1][2] * g[2]) -
                  g[0] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                  h[0][2] * (h[1][0] * g[2] - g[1] * h[2][0]));
  out[2] = inv * (h[0][0] * (h[1][1] * g[2] - g[1] * h[2][1]) -
                  h[0][1] * (h[1][0] * g[2] - g[1] * h[2][0]) +
                  g[0] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]));
  return true;
}

}  // namespace

WitnessBound witness_bound(const WitnessVector& x, bool fast) {
  const double scale = x.norm1();
  if (!(scale > 0.0)) throw DomainError("witness must be nonzero");
  const WitnessObjective obj{x.delta, x.alpha, x.beta, x.gamma};

  // Sign-uniform witnesses peak exactly at the corners of the angle cube.
  if (x.delta >= 0 && x.alpha >= 0 && x.beta >= 0 && x.gamma >= 0)
    return {scale, {0.0, 0.0, 0.0}};
  if (x.delta <= 0 && x.alpha <= 0 && x.beta <= 0 && x.gamma <= 0)
    return {scale, {kPi, kPi, kPi}};

  const int n = fast ? 12 : 24;
  std::vector<double> ang(static_cast<std::size_t>(n)), ca(static_cast<std::size_t>(n)),
      sa(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ang[static_cast<std::size_t>(i)] = -kPi + (2.0 * kPi * i) / n;
    ca[static_cast<std::size_t>(i)] = std::cos(ang[static_cast<std::size_t>(i)]);
    sa[static_cast<std::size_t>(i)] = std::sin(ang[static_cast<std::size_t>(i)]);
  }

  const std::size_t top_n = fast ? 4 : 12;
  std::vector<GridCandidate> top(top_n);
  auto offer = [&](double value, double a, double b, double c) {
    if (value <= top.back().value) return;
    top.back() = {value, a, b, c};
    for (std::size_t i = top.size() - 1; i > 0 && top[i].value > top[i - 1].value; --i)
      std::swap(top[i], top[i - 1]);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double cab = ca[static_cast<std::size_t>(i)] * ca[static_cast<std::size_t>(j)] -
                         sa[static_cast<std::size_t>(i)] * sa[static_cast<std::size_t>(j)];
      const double sab = sa[static_cast<std::size_t>(i)] * ca[static_cast<std::size_t>(j)] +
                         ca[static_cast<std::size_t>(i)] * sa[static_cast<std::size_t>(j)];
      const double base = x.alpha * ca[static_cast<std::size_t>(i)] +
                          x.beta * ca[static_cast<std::size_t>(j)];
      for (int l = 0; l < n; ++l) {
        const double cd = cab * ca[static_cast<std::size_t>(l)] -
                          sab * sa[static_cast<std::size_t>(l)];
        const double val = x.delta * cd + base + x.gamma * ca[static_cast<std::size_t>(l)];
        offer(val, ang[static_cast<std::size_t>(i)], ang[static_cast<std::size_t>(j)],
              ang[static_cast<std::size_t>(l)]);
      }
    }
  }
  // Corner candidates cost nothing and anchor the sign-mixed cases.
  offer(obj.value(0, 0, 0), 0, 0, 0);
  offer(obj.value(kPi, kPi, kPi), kPi, kPi, kPi);
  const double grid_best = top.front().value;

  const double resid_tol = 1e-9 * std::max(1.0, scale);
  // Cyclic exact coordinate maximization: monotone ascent from each grid
  // candidate, so the refined optimum can never fall below the grid one.
  // Flat directions (negligible coupling) are left at their grid angles.
  const double floor_r = 1e-14 * std::max(1.0, scale);
  WitnessBound best;
  best.value = -1e300;
  const int max_sweeps = fast ? 160 : 400;
  for (const auto& cand : top) {
    if (cand.value < -1e299) continue;
    double ang[3] = {cand.a, cand.b, cand.c};
    const double comp[3] = {x.alpha, x.beta, x.gamma};
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double moved = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double rest = ang[(i + 1) % 3] + ang[(i + 2) % 3];
        double t = ang[i];
        if (obj.argmax_coordinate(comp[i], rest, t, floor_r)) {
          moved = std::max(moved, std::abs(t - ang[i]));
          ang[i] = t;
        }
      }
      if (moved < 1e-15) break;
    }
    // Quadratic tail: Newton steps sharpen the linear-rate ascent result,
    // accepted only while stationarity improves and value is not lost.
    double g[3];
    obj.gradient(ang[0], ang[1], ang[2], g);
    double val = obj.value(ang[0], ang[1], ang[2]);
    double gn = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    for (int iter = 0; iter < 12 && gn > 1e-13 * std::max(1.0, scale); ++iter) {
      double h[3][3], step[3];
      obj.hessian(ang[0], ang[1], ang[2], h);
      if (!solve3(h, g, step)) break;
      const double len = std::max({std::abs(step[0]), std::abs(step[1]), std::abs(step[2])});
      const double damp = len > 0.5 ? 0.5 / len : 1.0;
      const double na[3] = {ang[0] - damp * step[0], ang[1] - damp * step[1],
                            ang[2] - damp * step[2]};
      double ng[3];
      obj.gradient(na[0], na[1], na[2], ng);
      const double ngn = std::max({std::abs(ng[0]), std::abs(ng[1]), std::abs(ng[2])});
      const double nval = obj.value(na[0], na[1], na[2]);
      if (ngn >= gn || nval < val - resid_tol) break;
      ang[0] = na[0];
      ang[1] = na[1];
      ang[2] = na[2];
      g[0] = ng[0];
      g[1] = ng[1];
      g[2] = ng[2];
      gn = ngn;
      val = nval;
    }
    if (val > best.value) best = {val, {ang[0], ang[1], ang[2]}};
  }

  if (!(best.value >= grid_best - resid_tol))
    throw ConvergenceFailure("witness bound refinement lost the grid optimum");
  return best;
}

namespace {

WitnessVector normalized_inf(const WitnessVector& x) {
  const double m = std::max({std::abs(x.delta), std::abs(x.alpha), std::abs(x.beta),
                             std::abs(x.gamma), 1e-30});
  return {x.delta / m, x.alpha / m, x.beta / m, x.gamma / m};
}

// Violation functional L(rho, X) - C(X)*kappa with infinity-normalized X.
double violation(const DensityEntries& d, double kappa, const WitnessVector& raw, bool fast) {
  const WitnessVector x = normalized_inf(raw);
  if (!(x.norm1() > 1e-12)) return -1e300;
  return witness_value(d, x) - witness_bound(x, fast).value * kappa;
}

}  // namespace

bool necessary_check(const GhzDiagonalState& s, int n_random, unsigned seed) {
  const DensityEntries d = to_density_entries(s);
  const double kappa = d.kappa();
  const double maxabs = max_abs_off(d);
  if (kappa <= 1e-300) return maxabs <= eps_crit;

  std::vector<WitnessVector> cands;
  // Coordinate witnesses aligned with each off-diagonal sign.
  for (int i = 0; i < 4; ++i) {
    WitnessVector x;
    const double sgn = d.off[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
    (i == 0 ? x.delta : i == 1 ? x.alpha : i == 2 ? x.beta : x.gamma) = sgn;
    cands.push_back(x);
  }
  // All sign patterns of (+-1, +-1, +-1, +-1).
  for (int mask = 0; mask < 16; ++mask)
    cands.push_back({(mask & 1) ? -1.0 : 1.0, (mask & 2) ? -1.0 : 1.0,
                     (mask & 4) ? -1.0 : 1.0, (mask & 8) ? -1.0 : 1.0});
  // Face candidates from the state's own chain angles: components
  // proportional to 1/sin(theta_i), with the extremal slot opposed.
  const CycleAngles c = cycle_angles(d, kappa);
  auto face_candidate = [&](int m, double orient) {
    WitnessVector x;
    for (int i = 0; i < 4; ++i) {
      const double mag = 1.0 / std::max(std::sin(c.theta[static_cast<std::size_t>(i)]), 1e-3);
      const double v = orient * (i == m ? -mag : mag);
      (i == 0 ? x.delta : i == 1 ? x.alpha : i == 2 ? x.beta : x.gamma) = v;
    }
    return x;
  };
  cands.push_back(face_candidate(c.argmax, +1.0));  // short-chain face
  cands.push_back(face_candidate(c.argmin, -1.0));  // wrapped face
  // Seeded random directions (platform-independent draw).
  std::mt19937_64 rng(seed);
  for (int r = 0; r < n_random; ++r) {
    WitnessVector x;
    auto gauss = [&]() {
      const double u1 = std::max(detail::uniform01(rng()), 1e-16);
      const double u2 = detail::uniform01(rng());
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    x.delta = gauss();
    x.alpha = gauss();
    x.beta = gauss();
    x.gamma = gauss();
    cands.push_back(x);
  }

  WitnessVector best = cands.front();
  double best_v = -1e300;
  for (const auto& cand : cands) {
    const double v = violation(d, kappa, cand, /*fast=*/true);
    if (v > best_v) {
      best_v = v;
      best = cand;
    }
  }

  // Local ascent from the best candidate.
  const WitnessVector start = normalized_inf(best);
  auto objective = [&](const double* p) {
    const WitnessVector x{p[0], p[1], p[2], p[3]};
    return -violation(d, kappa, x, /*fast=*/true);
  };
  const auto nm = detail::nelder_mead(objective, {start.delta, start.alpha, start.beta, start.gamma},
                                      0.15, 250, 1e-12, 1e-9);
  const WitnessVector refined{nm.x[0], nm.x[1], nm.x[2], nm.x[3]};
  if (-nm.f > best_v) best = refined;

  // Confirm against the full-precision bound before declaring violation.
  const WitnessVector final_x = normalized_inf(best);
  const double L = witness_value(d, final_x);
  const double C = witness_bound(final_x, /*fast=*/false).value;
  return L <= C * kappa + 1e-8;
}

namespace {

DensityEntries assemble_boundary(const AngleSet& ang, double kappa,
                                 const std::array<double, 4>& diag) {
  DensityEntries d;
  d.diag = diag;
  d.off = {kappa * std::cos(ang.d()), kappa * std::cos(ang.b), kappa * std::cos(ang.a),
           kappa * std::cos(ang.c)};
  return d;
}

}  // namespace

DensityEntries boundary_point(const AngleSet& angles, double kappa) {
  if (!(kappa > 0.0) || kappa > 0.125 + eps_num)
    throw InvalidKappa("kappa must lie in (0, 1/8]");
  kappa = std::min(kappa, 0.125);
  std::array<double, 4> diag{};
  if (0.125 - kappa <= eps_num) {
    diag = {0.125, 0.125, 0.125, 0.125};
  } else {
    const double rest = (0.5 - kappa) / 3.0;  // >= kappa, so the minimum stays at kappa
    diag = {rest, rest, rest, kappa};
  }
  return assemble_boundary(angles, kappa, diag);
}

DensityEntries boundary_point(const AngleSet& angles, double kappa,
                              const std::array<double, 4>& diag) {
  if (!(kappa > 0.0) || kappa > 0.125 + eps_num)
    throw InvalidKappa("kappa must lie in (0, 1/8]");
  double total = 0.0, dmin = diag[0];
  for (double v : diag) {
    if (!(v >= -eps_pos)) throw InvalidKappa("diagonal entries must be nonnegative");
    total += v;
    dmin = std::min(dmin, v);
  }
  if (std::abs(2.0 * total - 1.0) > eps_norm)
    throw InvalidKappa("diagonal entries must sum to 1/2");
  if (std::abs(dmin - kappa) > eps_norm)
    throw InvalidKappa("kappa must equal the smallest diagonal entry");
  return assemble_boundary(angles, kappa, diag);
}

std::vector<std::array<double, 3>> symmetric_border_curve(int n_samples) {
  if (n_samples < 2) throw DomainError("need at least two samples");
  std::vector<std::array<double, 3>> rows;
  rows.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double a = (kPi / 3.0) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    const double u = std::cos(a);
    const double v = 4.0 * u * u * u - 3.0 * u;
    rows.push_back({a, u, v});
  }
  return rows;
}

}  // namespace ghzent
