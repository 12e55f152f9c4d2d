#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ghzent/state.hpp"

// Full-separability criterion and entanglement-witness machinery.
//
// Geometry in brief: write the off-diagonal slots as x_i = off_i / kappa
// with kappa the smallest diagonal entry. The state is fully separable
// exactly when the cube bound |x_i| <= 1 holds and the four angles
// theta_i = arccos(x_i) close into a (possibly degenerate) cyclic chain:
//
//     2 * max_i theta_i  <=  sum_i theta_i  <=  2*pi + 2 * min_i theta_i.
//
// Equivalently, (x_1, x_2, x_3, x_4) lies in the convex hull of the curve
// (cos(a+b+c), cos a, cos b, cos c), which is the set of off-diagonal
// patterns reachable by mixtures of product states. Excess diagonal weight
// above kappa is separable on its own, which is why only the smallest
// diagonal entry matters. The margin reported below is the minimum slack
// of the three constraint groups, scaled by kappa (probability units).

namespace ghzent {

// Witness coefficient vector; components pair with the off-diagonal slots
// (rho_18, rho_27, rho_36, rho_54) in this order.
struct WitnessVector {
  double delta = 0, alpha = 0, beta = 0, gamma = 0;

  double component(int i) const;  // slot order above
  double norm1() const;
};

// Angle triple parameterizing extremal product states; the fourth angle is
// the sum d = a + b + c.
struct AngleSet {
  double a = 0, b = 0, c = 0;

  double d() const { return a + b + c; }
};

// Which exactness regime the classifier operated in, decided by the sign
// of the product lambda_5 * lambda_6 * lambda_7 * lambda_8.
enum class Branch {
  PptBranch,  // product <= 0: separability coincides with the PPT test
  MuBranch,   // product  > 0: nonlinear regime, mu is reported
};

struct SeparabilityReport {
  Branch branch = Branch::PptBranch;
  double lambda_minus = 0;   // minimal signed diagonal combination, <= 0
  double kappa = 0;          // smallest diagonal entry, (1 + lambda_minus)/8
  std::optional<double> mu;  // nonlinear off-diagonal bound; MuBranch only
  bool ppt = false;          // |off_i| <= kappa for all slots
  // Signed feasibility margin in probability units; >= 0 (up to the
  // tolerance) iff fully separable. Exact zero on the boundary.
  double margin = 0;
  bool fully_separable = false;
};

// Nonlinear off-diagonal bound
//   mu = sqrt((l5 l6 + l7 l8)(l5 l7 + l6 l8)(l5 l8 + l6 l7) / (l5 l6 l7 l8)),
// defined only when the product in the denominator is positive; otherwise
// DomainError. mu <= 1 - |lambda_minus| is a sufficient separability
// condition, with equality on the generating boundary family.
double mu(const PauliCoefficients& c);

// Minimum constraint slack of the criterion, in probability units:
//   min( kappa - max_i |off_i|,
//        kappa * (sum theta - 2 max theta),
//        kappa * (2 pi + 2 min theta - sum theta) ).
// kappa == 0 degenerates to -max|off| (separable iff no off-diagonal mass).
double separability_margin(const DensityEntries& d);

// Partial-transpose test in closed form: max_i |off_i| <= kappa + eps.
bool is_ppt(const DensityEntries& d, double eps = eps_crit);
bool is_ppt(const GhzDiagonalState& s, double eps = eps_crit);

// Linear sufficient condition: sum_i |lambda_{5..8}| <= 1 - |lambda_minus|.
// Implies full separability but is not necessary.
bool sufficient_linear(const PauliCoefficients& c, double eps = eps_crit);

// The complete classifier. `eps` loosens the margin comparison only.
SeparabilityReport is_fully_separable(const GhzDiagonalState& s, double eps = eps_crit);

// Witness functional L(rho, X) = delta*rho_18 + alpha*rho_27 + beta*rho_36
// + gamma*rho_54. Separability requires L <= C(X) * kappa for every X.
double witness_value(const DensityEntries& d, const WitnessVector& x);

struct WitnessBound {
  double value = 0;  // C(X): max over product states of the witness functional
  AngleSet angles;   // maximizing angles
};

// C(X) = max over (a,b,c) of delta*cos(a+b+c) + alpha*cos a + beta*cos b
// + gamma*cos c. Deterministic: dense angle grid plus cyclic exact
// coordinate maximization (each 1D slice is R*cos(t + phi), so ascent is
// monotone and degenerate directions are benign); returned angles satisfy
// the stationarity system to 1e-9 (relative to the witness scale) whenever
// no direction is flat. `fast` uses a coarser grid for inner loops. Throws
// ConvergenceFailure if refinement cannot match the grid optimum (cannot
// happen for finite inputs; kept as a guard). X must not be the zero vector.
WitnessBound witness_bound(const WitnessVector& x, bool fast = false);

// Searches for a violated witness: coordinate vectors, sign patterns, the
// analytic face candidates built from the state's own angles, seeded random
// directions, and a local ascent. Returns false only when a violation is
// confirmed against the full-precision bound (sound: false implies
// entangled); true means no violation was found.
bool necessary_check(const GhzDiagonalState& s, int n_random = 48,
                     unsigned seed = 20240901u);

// Boundary family generator: off-diagonals kappa*(cos d, cos b, cos a,
// cos c) with d = a+b+c. The default diagonal is flat (all 1/8) when
// kappa = 1/8; for smaller kappa the remaining weight is spread equally
// over the first three slots so the minimum diagonal entry is exactly
// kappa (keeping the boundary identity mu = 1 - |lambda_minus| intact).
// kappa outside (0, 1/8] raises InvalidKappa.
DensityEntries boundary_point(const AngleSet& angles, double kappa);

// Same with an explicit diagonal; requires min(diag) == kappa (within
// eps_norm) and normalization 2*sum(diag) == 1, else InvalidKappa.
DensityEntries boundary_point(const AngleSet& angles, double kappa,
                              const std::array<double, 4>& diag);

// Border curve of the symmetric slice off = kappa*(u, u, u, v): rows
// (a, u, v) with a uniform on [0, pi/3], u = cos a, v = 4u^3 - 3u.
// n_samples >= 2 (endpoints included), else DomainError.
std::vector<std::array<double, 3>> symmetric_border_curve(int n_samples);

}  // namespace ghzent
