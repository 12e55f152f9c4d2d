#include "ghzent/ree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ghzent/detail/numeric.hpp"

namespace ghzent {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_ratio(double p, double q) { return std::log2(p / q); }

double entropy_term(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

// S(p || q) on raw arrays; +inf (as 1e300 to stay NaN-free inside
// optimizers) when support is violated.
double safe_rel_entropy(const std::array<double, 8>& p, const std::array<double, 8>& q) {
  double acc = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    if (p[k] > 1e-300) {
      if (q[k] <= 1e-300) return 1e300;
      acc += p[k] * log2_ratio(p[k], q[k]);
    }
  }
  return acc;
}

DensityEntries entries_of(const std::array<double, 8>& q) {
  DensityEntries d;
  for (int i = 0; i < 4; ++i) {
    d.diag[static_cast<std::size_t>(i)] = (q[static_cast<std::size_t>(i)] + q[static_cast<std::size_t>(7 - i)]) / 2.0;
    d.off[static_cast<std::size_t>(i)] = (q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(7 - i)]) / 2.0;
  }
  return d;
}

bool is_flat_symmetric(const DensityEntries& d) {
  for (double v : d.diag)
    if (std::abs(v - 0.125) > 1e-9) return false;
  return std::abs(d.off[0] - d.off[1]) <= 1e-9 && std::abs(d.off[0] - d.off[2]) <= 1e-9;
}

bool is_type2(const GhzDiagonalState& s) {
  return std::abs(s.p[0] - s.p[1]) <= 1e-9 && std::abs(s.p[0] - s.p[2]) <= 1e-9 &&
         s.p[3] <= 1e-9 && s.p[5] <= 1e-9 && s.p[6] <= 1e-9 && s.p[7] <= 1e-9 &&
         s.p[0] > 1e-9;
}

GhzDiagonalState state_from_entries_raw(const std::array<double, 4>& diag,
                                        const std::array<double, 4>& off) {
  DensityEntries d;
  d.diag = diag;
  d.off = off;
  return from_density_entries(d);
}

}  // namespace

const char* ree_method_name(ReeMethod m) {
  switch (m) {
    case ReeMethod::SeparableInput: return "separable_input";
    case ReeMethod::ClosedFormPiOver4: return "closed_form_pi_over_4";
    case ReeMethod::FlatDiagonalCubic: return "flat_diagonal_cubic";
    case ReeMethod::Type2CandidateI: return "type2_candidate_i";
    case ReeMethod::Type2CandidateII: return "type2_candidate_ii";
    case ReeMethod::NumericBoundary: return "numeric_boundary";
    case ReeMethod::PptFace: return "ppt_face";
  }
  return "unknown";
}

double relative_entropy(const GhzDiagonalState& p, const GhzDiagonalState& q) {
  double acc = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    if (p.p[k] > 1e-300) {
      if (q.p[k] <= 0.0) return kInf;
      acc += p.p[k] * log2_ratio(p.p[k], q.p[k]);
    }
  }
  return acc;
}

BiseparabilityReport biseparability_report(const GhzDiagonalState& s, double eps) {
  const DensityEntries d = to_density_entries(s);
  BiseparabilityReport r;
  r.max_p = s.max_p();
  r.half_slack = 0.5 - r.max_p;
  double total = 0.0;
  for (double v : d.diag) total += v;
  r.pair_slack = kInf;
  for (int i = 0; i < 4; ++i) {
    const double bound = total - d.diag[static_cast<std::size_t>(i)];
    r.pair_slack = std::min(r.pair_slack, bound - std::abs(d.off[static_cast<std::size_t>(i)]));
  }
  r.biseparable = r.max_p <= 0.5 + eps;
  return r;
}

bool is_biseparable(const GhzDiagonalState& s, double eps) {
  return biseparability_report(s, eps).biseparable;
}

namespace {

double genuine_entropy(double max_p) {
  return 1.0 + entropy_term(max_p) + entropy_term(1.0 - max_p);
}

}  // namespace

double genuine_ree(const GhzDiagonalState& s, double eps) {
  const double p_max = s.max_p();
  if (p_max <= 0.5 + eps) return 0.0;
  return genuine_entropy(p_max);
}

GhzNoiseSummary ghz_noise_family(int n_qubits, double p) {
  if (n_qubits < 2) throw DomainError("need at least two qubits");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixing weight must lie in [0,1]");
  GhzNoiseSummary g;
  g.n_qubits = n_qubits;
  g.p = p;
  const double leak = 1.0 - std::ldexp(1.0, -n_qubits);  // 1 - 2^-N
  g.max_p = 1.0 - p * leak;
  g.genuine_threshold = 1.0 / (2.0 * leak);
  g.genuine = g.max_p > 0.5 + eps_crit;
  g.e_genuine = g.genuine ? genuine_entropy(g.max_p) : 0.0;
  return g;
}

GhzDiagonalState SymmetricReduction::sigma(double theta, double xi) const {
  const double s1 = 0.125 + xi / 3.0;
  const double s4 = 0.125 - xi;
  if (s1 < 0.0 || s4 < 0.0) throw DomainError("diagonal shift outside the simplex");
  const double kc = std::min(s1, s4);
  const double ct = std::cos(theta);
  const double c3 = std::cos(3.0 * theta);
  return state_from_entries_raw({s1, s1, s1, s4}, {kc * ct, kc * ct, kc * ct, kc * c3});
}

double SymmetricReduction::objective(double theta, double xi) const {
  return relative_entropy(input, sigma(theta, xi));
}

ReeResult SymmetricReduction::minimize() const {
  // Coarse grid over the admissible rectangle, then local polish.
  double best_theta = 0.0, best_xi = 0.0, best_e = kInf;
  const int nt = 73, nx = 49;
  for (int i = 0; i <= nt; ++i) {
    const double theta = (2.0 * kPi / 3.0) * i / nt;
    for (int j = 0; j <= nx; ++j) {
      const double xi = -0.37 + (0.49) * j / nx;
      if (0.125 + xi / 3.0 < 0.0 || 0.125 - xi < 0.0) continue;
      const double e = objective(theta, xi);
      if (e < best_e) {
        best_e = e;
        best_theta = theta;
        best_xi = xi;
      }
    }
  }
  auto penalized = [&](const double* v) {
    const double theta = v[0], xi = v[1];
    if (xi >= 0.125 || xi <= -0.375 || theta < -0.1 || theta > 2.0 * kPi / 3.0 + 0.1)
      return 1e300;
    return objective(theta, std::clamp(xi, -0.374999, 0.124999));
  };
  auto nm = detail::nelder_mead(penalized, {best_theta, best_xi}, 0.02, 2000, 1e-14, 1e-12);
  ReeResult r;
  r.value = nm.f;
  r.closest = sigma(nm.x[0], std::clamp(nm.x[1], -0.374999, 0.124999));
  r.method = ReeMethod::NumericBoundary;
  r.evals = nm.evals;
  return r;
}

SymmetricReduction symmetric_closest_reduction(const GhzDiagonalState& s) {
  const DensityEntries d = to_density_entries(s);
  if (std::abs(d.off[0] - d.off[1]) > 1e-9 || std::abs(d.off[0] - d.off[2]) > 1e-9 ||
      std::abs(d.diag[0] - d.diag[1]) > 1e-9 || std::abs(d.diag[0] - d.diag[2]) > 1e-9)
    throw PreconditionViolated("symmetric reduction requires slots 1-3 to match");
  return SymmetricReduction{s};
}

ReeResult ree_flat_diagonal(const GhzDiagonalState& s) {
  const DensityEntries d = to_density_entries(s);
  if (!is_flat_symmetric(d))
    throw PreconditionViolated("flat symmetric family required (diagonals 1/8, equal off slots 1-3)");
  if (is_fully_separable(s).fully_separable)
    throw PreconditionViolated("state is separable; its distance is zero");

  // Work in the orientation with positive symmetric slots; a global sign
  // flip of all off-diagonals is an exact local conjugation.
  GhzDiagonalState work = s;
  const bool flipped = d.off[0] < 0.0;
  const LocalOp zflip{LocalOp::Kind::PhaseZ, 0, 0};
  if (flipped) work = apply_local_op(work, zflip);
  const DensityEntries wd = to_density_entries(work);
  const double r1 = (wd.off[0] + wd.off[1] + wd.off[2]) / 3.0;
  const double r4 = wd.off[3];

  const SymmetricReduction red{work};
  ReeResult out;
  if (std::abs(r4 + r1) <= 1e-12) {
    // cos(3*theta) = -cos(theta) pins theta = pi/4 in closed form.
    out.method = ReeMethod::ClosedFormPiOver4;
    out.closest = red.sigma(kPi / 4.0, 0.0);
    out.value = relative_entropy(work, out.closest);
    out.residual = 0.0;
  } else {
    const auto roots = detail::cubic_real_roots(0.125, -r1, -0.25, r1 - r4);
    double best_e = kInf, best_theta = 0.0, best_resid = 0.0;
    for (double t : roots) {
      if (std::abs(t) > 2.0 + 1e-12) continue;
      const double theta = std::acos(std::clamp(t / 2.0, -1.0, 1.0));
      if (theta <= kPi / 6.0 - 1e-9 || theta > kPi / 3.0 + 1e-9) continue;
      // The diagonal pinch must be a one-sided minimum in the reduced
      // problem; reject roots where the shifted diagonal improves.
      const double h = 1e-6;
      const double e0 = red.objective(theta, 0.0);
      if (red.objective(theta, h) < e0 - 1e-10 || red.objective(theta, -h) < e0 - 1e-10)
        continue;
      if (e0 < best_e) {
        best_e = e0;
        best_theta = theta;
        const double in = 2.0 * std::cos(theta);
        best_resid = std::abs(((0.125 * in - r1) * in - 0.25) * in + (r1 - r4));
      }
    }
    if (!std::isfinite(best_e))
      throw NoValidRoot("no admissible reduced-cubic root; use the numeric solver");
    out.method = ReeMethod::FlatDiagonalCubic;
    out.closest = red.sigma(best_theta, 0.0);
    out.value = best_e;
    out.residual = best_resid;
  }
  if (flipped) out.closest = apply_local_op(out.closest, zflip);
  return out;
}

namespace {

void require_type2(const GhzDiagonalState& s) {
  if (!is_type2(s))
    throw PreconditionViolated("type-2 family required (three equal weights, one partner weight)");
}

}  // namespace

double type2_candidate_ii_cosine() {
  static const double value = [] {
    for (double r : detail::cubic_real_roots(4.0, 6.0, 0.0, -3.0))
      if (r > 0.0 && r < 1.0) return r;
    throw ConvergenceFailure("candidate-(ii) cubic lost its root");
  }();
  return value;
}

double type2_crossover_p0() {
  const double c = type2_candidate_ii_cosine();
  const double c3 = 4.0 * c * c * c - 3.0 * c;
  return (3.0 + c3) / 12.0;
}

ReeResult ree_type2_candidate_i(const GhzDiagonalState& s) {
  require_type2(s);
  const double p1 = (s.p[0] + s.p[1] + s.p[2]) / 3.0;
  const double p5 = s.p[4];
  const double delta = (p5 - p1) / (p5 + p1);
  const double ct = (std::sqrt(8.0 + delta * delta) - delta) / 4.0;
  const double c3 = 4.0 * ct * ct * ct - 3.0 * ct;
  ReeResult out;
  out.method = ReeMethod::Type2CandidateI;
  out.closest = state_from_entries_raw({0.125, 0.125, 0.125, 0.125},
                                       {ct / 8.0, ct / 8.0, ct / 8.0, c3 / 8.0});
  out.value = relative_entropy(s, out.closest);
  return out;
}

ReeResult ree_type2_candidate_ii(const GhzDiagonalState& s) {
  require_type2(s);
  const double p1 = (s.p[0] + s.p[1] + s.p[2]) / 3.0;
  const double c = type2_candidate_ii_cosine();
  const double c3 = 4.0 * c * c * c - 3.0 * c;
  const double kc = 3.0 * p1 / (2.0 * (3.0 + c3));
  // The triple diagonal is the smallest entry only up to the crossover
  // weight; beyond it this candidate's geometry breaks down.
  if (kc > 0.125 + 1e-6)
    throw PreconditionViolated("candidate (ii) leaves its regime for this weight");
  const double s4 = 0.5 - 3.0 * kc;
  ReeResult out;
  out.method = ReeMethod::Type2CandidateII;
  out.closest = state_from_entries_raw({kc, kc, kc, s4}, {kc * c, kc * c, kc * c, kc * c3});
  out.value = relative_entropy(s, out.closest);
  return out;
}

ReeResult ree_type2(const GhzDiagonalState& s) {
  require_type2(s);
  const double p1 = (s.p[0] + s.p[1] + s.p[2]) / 3.0;
  if (p1 <= type2_crossover_p0()) return ree_type2_candidate_ii(s);
  return ree_type2_candidate_i(s);
}

double ree_type2_facet_candidate(const GhzDiagonalState& s) {
  require_type2(s);
  const std::array<double, 8> p = s.p;
  // Closest state pinned to the facet off_4 = -kappa, symmetric in the
  // first three slots: parameters (t = sigma_44, w = off/kappa in [0,1/2]).
  auto objective = [&](const double* v) {
    const double t = v[0], w = v[1];
    if (t <= 1e-8 || t > 0.125 || w < 0.0 || w > 0.5) return 1e300;
    const double s1 = (1.0 - 2.0 * t) / 6.0;
    const double kc = std::min(s1, t);
    std::array<double, 8> q{};
    for (int i = 0; i < 3; ++i) {
      q[static_cast<std::size_t>(i)] = s1 + kc * w;
      q[static_cast<std::size_t>(7 - i)] = s1 - kc * w;
    }
    q[3] = t - kc;
    q[4] = t + kc;
    return safe_rel_entropy(p, q);
  };
  double best = kInf;
  for (double t0 : {0.04, 0.08, 0.12})
    for (double w0 : {0.1, 0.3, 0.49}) {
      auto nm = detail::nelder_mead(objective, {t0, w0}, 0.02, 1500, 1e-14, 1e-12);
      best = std::min(best, nm.f);
    }
  return best;
}

namespace {

// ---- general numeric solver ----------------------------------------------

struct FamilySpec {
  enum class Kind { ClosureShort, ClosureWrapped, FacetPlus, FacetMinus };
  Kind kind = Kind::ClosureShort;
  int slot = 0;  // extremal (closure) or pinned (facet) off-diagonal slot
};

// Smooth fold of an unconstrained variable into [0, pi].
double fold_angle(double v) { return kPi * (1.0 - std::cos(v)) / 2.0; }
double unfold_angle(double theta) {
  return std::acos(std::clamp(1.0 - 2.0 * theta / kPi, -1.0, 1.0));
}

// v[0..2]: free angles; v[3..6]: diagonal weight parameters.
std::array<double, 8> assemble_family(const double* v, const FamilySpec& fam) {
  std::array<double, 4> theta{};
  int vi = 0;
  double free_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (i == fam.slot) continue;
    theta[static_cast<std::size_t>(i)] = fold_angle(v[vi++]);
    free_sum += theta[static_cast<std::size_t>(i)];
  }
  switch (fam.kind) {
    case FamilySpec::Kind::ClosureShort: theta[static_cast<std::size_t>(fam.slot)] = free_sum; break;
    case FamilySpec::Kind::ClosureWrapped: theta[static_cast<std::size_t>(fam.slot)] = free_sum - 2.0 * kPi; break;
    case FamilySpec::Kind::FacetPlus: theta[static_cast<std::size_t>(fam.slot)] = 0.0; break;
    case FamilySpec::Kind::FacetMinus: theta[static_cast<std::size_t>(fam.slot)] = kPi; break;
  }

  std::array<double, 4> s{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    s[static_cast<std::size_t>(i)] = v[3 + i] * v[3 + i] + 1e-12;
    total += s[static_cast<std::size_t>(i)];
  }
  const double scale = 0.5 / total;
  double kc = 1e300;
  for (double& w : s) {
    w *= scale;
    kc = std::min(kc, w);
  }

  std::array<double, 8> q{};
  for (int i = 0; i < 4; ++i) {
    const double off = kc * std::cos(theta[static_cast<std::size_t>(i)]);
    q[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] + off;
    q[static_cast<std::size_t>(7 - i)] = s[static_cast<std::size_t>(i)] - off;
  }
  return q;
}

double family_objective(const std::array<double, 8>& p, const double* v, const FamilySpec& fam) {
  // The closure slot must stay a genuine angle.
  double free_sum = 0.0;
  int vi = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == fam.slot) continue;
    free_sum += fold_angle(v[vi++]);
  }
  double oob = 0.0;
  if (fam.kind == FamilySpec::Kind::ClosureShort && free_sum > kPi)
    oob = free_sum - kPi;
  if (fam.kind == FamilySpec::Kind::ClosureWrapped) {
    if (free_sum < 2.0 * kPi) oob = 2.0 * kPi - free_sum;
    if (free_sum > 3.0 * kPi) oob = free_sum - 3.0 * kPi;
  }
  if (oob > 0.0) return 50.0 + 100.0 * oob;

  const auto q = assemble_family(v, fam);
  const double margin = separability_margin(entries_of(q));
  double value = safe_rel_entropy(p, q);
  if (margin < -1e-12) value += 1e4 * (-margin - 1e-12) + 1.0;
  return value;
}

struct ScoutOutcome {
  std::array<double, 8> q{};
  double value = kInf;
  int evals = 0;
};

ScoutOutcome scout_interior(const std::array<double, 8>& p, int starts, unsigned seed) {
  ScoutOutcome best;
  std::mt19937_64 rng(seed);
  auto softmax = [](const double* w) {
    std::array<double, 8> q{};
    double wmax = w[0];
    for (int i = 1; i < 8; ++i) wmax = std::max(wmax, w[i]);
    double total = 0.0;
    for (int i = 0; i < 8; ++i) {
      q[static_cast<std::size_t>(i)] = std::exp(w[i] - wmax);
      total += q[static_cast<std::size_t>(i)];
    }
    for (double& v : q) v /= total;
    return q;
  };

  for (int s = 0; s < starts; ++s) {
    std::vector<double> w(8, 0.0);
    if (s == 1) {
      // Blend toward the target to seed the support pattern.
      for (int i = 0; i < 8; ++i) w[static_cast<std::size_t>(i)] = std::log(p[static_cast<std::size_t>(i)] * 0.7 + 0.0375);
    } else if (s >= 2) {
      for (int i = 0; i < 8; ++i)
        w[static_cast<std::size_t>(i)] = 2.0 * (detail::uniform01(rng()) - 0.5);
    }
    for (double t : {1e2, 1e4, 1e6, 1e8}) {
      auto objective = [&](const double* wv) {
        const auto q = softmax(wv);
        const double margin = separability_margin(entries_of(q));
        const double s_val = safe_rel_entropy(p, q);
        if (margin <= 1e-12) return s_val + 10.0 + 1e4 * (1e-12 - margin);
        return s_val - std::log(margin) / t;
      };
      auto nm = detail::nelder_mead(objective, w, 0.4, 900, 1e-13, 1e-11);
      w = nm.x;
      best.evals += nm.evals;
    }
    const auto q = softmax(w.data());
    if (separability_margin(entries_of(q)) >= -1e-12) {
      const double val = safe_rel_entropy(p, q);
      if (val < best.value) {
        best.value = val;
        best.q = q;
      }
    }
  }
  return best;
}

}  // namespace

ReeResult ree_numeric(const GhzDiagonalState& s, const ReeNumericOptions& opts) {
  const SeparabilityReport rep = is_fully_separable(s);
  if (rep.fully_separable) {
    ReeResult r;
    r.value = 0.0;
    r.closest = s;
    r.method = ReeMethod::SeparableInput;
    return r;
  }
  const std::array<double, 8> p = s.p;

  const ScoutOutcome scout = scout_interior(p, opts.scout_starts, opts.seed);
  int evals = scout.evals;

  // Convert the scout point into start coordinates for the face families.
  std::array<double, 4> scout_theta{kPi / 2, kPi / 2, kPi / 2, kPi / 2};
  std::array<double, 4> scout_w{0.35355339059327373, 0.35355339059327373,
                                0.35355339059327373, 0.35355339059327373};
  if (std::isfinite(scout.value)) {
    const DensityEntries sd = entries_of(scout.q);
    const double kc = std::max(sd.kappa(), 1e-12);
    for (int i = 0; i < 4; ++i) {
      scout_theta[static_cast<std::size_t>(i)] =
          std::acos(std::clamp(sd.off[static_cast<std::size_t>(i)] / kc, -1.0, 1.0));
      scout_w[static_cast<std::size_t>(i)] =
          std::sqrt(std::max(sd.diag[static_cast<std::size_t>(i)], 1e-12));
    }
  }

  double best_value = scout.value;
  std::array<double, 8> best_q = scout.q;
  bool best_is_facet = false;
  bool found = std::isfinite(scout.value);

  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<FamilySpec> families;
  for (int slot = 0; slot < 4; ++slot) {
    families.push_back({FamilySpec::Kind::ClosureShort, slot});
    families.push_back({FamilySpec::Kind::ClosureWrapped, slot});
    families.push_back({FamilySpec::Kind::FacetPlus, slot});
    families.push_back({FamilySpec::Kind::FacetMinus, slot});
  }

  for (const auto& fam : families) {
    for (int start = 0; start < opts.family_starts; ++start) {
      std::vector<double> v(7, 0.0);
      int vi = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == fam.slot) continue;
        double theta = scout_theta[static_cast<std::size_t>(i)];
        if (start == 1) theta = kPi / 2.0;
        if (start >= 2) theta = kPi * detail::uniform01(rng());
        v[static_cast<std::size_t>(vi++)] = unfold_angle(theta);
      }
      for (int i = 0; i < 4; ++i) {
        double w = scout_w[static_cast<std::size_t>(i)];
        if (start == 1) w = 0.35355339059327373;
        if (start >= 2) w *= 0.5 + detail::uniform01(rng());
        v[static_cast<std::size_t>(3 + i)] = w;
      }
      auto objective = [&](const double* vv) { return family_objective(p, vv, fam); };
      auto nm = detail::nelder_mead(objective, v, 0.25, 2500, opts.f_tol, 1e-11);
      // Tight second pass around the found point.
      nm = detail::nelder_mead(objective, nm.x, 0.01, 1500, opts.f_tol, 1e-12);
      evals += nm.evals;
      if (nm.f >= 1e290) continue;
      const auto q = assemble_family(nm.x.data(), fam);
      if (separability_margin(entries_of(q)) < -1e-9) continue;
      const double val = safe_rel_entropy(p, q);
      if (val < best_value) {
        best_value = val;
        best_q = q;
        best_is_facet = fam.kind == FamilySpec::Kind::FacetPlus ||
                        fam.kind == FamilySpec::Kind::FacetMinus;
        found = true;
      }
    }
  }

  if (!found || !std::isfinite(best_value))
    throw ConvergenceFailure("no feasible closest-state candidate found");

  ReeResult out;
  out.value = best_value;
  out.closest = from_probabilities(best_q);
  out.method = best_is_facet ? ReeMethod::PptFace : ReeMethod::NumericBoundary;
  out.evals = evals;
  out.residual = std::isfinite(scout.value) ? scout.value - best_value : 0.0;
  return out;
}

ReeResult ree_auto(const GhzDiagonalState& s, const ReeNumericOptions& opts) {
  if (is_fully_separable(s).fully_separable) {
    ReeResult r;
    r.value = 0.0;
    r.closest = s;
    r.method = ReeMethod::SeparableInput;
    return r;
  }
  const DensityEntries d = to_density_entries(s);
  if (is_flat_symmetric(d)) {
    try {
      return ree_flat_diagonal(s);
    } catch (const NoValidRoot&) {
      // fall through to the numeric solver
    }
  }
  if (is_type2(s)) return ree_type2(s);
  return ree_numeric(s, opts);
}

}  // namespace ghzent
