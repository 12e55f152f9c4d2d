#pragma once

#include <array>
#include <optional>

#include "ghzent/separability.hpp"
#include "ghzent/state.hpp"

// Relative entropy of entanglement (REE): the minimum of S(p || q) over
// fully separable q, together with the minimizing "closest" state. Closed
// forms cover two structured families; everything else goes through a
// two-stage numeric solver whose final stage searches the boundary of the
// separable set directly (the minimizer of an entangled input always sits
// on that boundary).

namespace ghzent {

enum class ReeMethod {
  SeparableInput,      // input already separable: E = 0, closest = input
  ClosedFormPiOver4,   // flat-diagonal family with off_4 = -off_1
  FlatDiagonalCubic,   // flat-diagonal family, root of the reduced cubic
  Type2CandidateI,     // three equal weights + one, smallest diagonal 1/8
  Type2CandidateII,    // same family, smallest diagonal below 1/8
  NumericBoundary,     // numeric optimum on a chain-closure face
  PptFace,             // numeric optimum on a cube facet |off_i| = kappa
};

const char* ree_method_name(ReeMethod m);

struct ReeResult {
  double value = 0;  // bits
  GhzDiagonalState closest;
  ReeMethod method = ReeMethod::SeparableInput;
  int evals = 0;        // objective evaluations spent (0 for closed forms)
  double residual = 0;  // numeric diagnostics: stage disagreement or root slack
};

// S(p || q) = sum_k p_k log2(p_k / q_k); +infinity when some p_k > 0 meets
// q_k = 0 (support mismatch). Zero weights contribute nothing.
double relative_entropy(const GhzDiagonalState& p, const GhzDiagonalState& q);

struct BiseparabilityReport {
  bool biseparable = false;
  double max_p = 0;
  // The two equivalent readings of the condition, reported for audit:
  // every pair bound |off_i| <= sum of the other diagonals, and
  // max_k p_k <= 1/2. `pair_slack` is the smallest pair-bound slack.
  double pair_slack = 0;
  double half_slack = 0;  // 1/2 - max_p
};

BiseparabilityReport biseparability_report(const GhzDiagonalState& s, double eps = eps_crit);
bool is_biseparable(const GhzDiagonalState& s, double eps = eps_crit);

// Genuine-multipartite REE: 0 for biseparable states, otherwise
// 1 + P log2 P + (1-P) log2(1-P) with P = max_k p_k.
double genuine_ree(const GhzDiagonalState& s, double eps = eps_crit);

// N-qubit GHZ + white noise summary: P = 1 - p(1 - 2^-N); genuinely
// entangled iff p < threshold = 2^(N-1) / (2^N - 1).
struct GhzNoiseSummary {
  int n_qubits = 3;
  double p = 0;
  double max_p = 0;
  double genuine_threshold = 0;
  bool genuine = false;
  double e_genuine = 0;
};

GhzNoiseSummary ghz_noise_family(int n_qubits, double p);  // DomainError: N < 2 or p outside [0,1]

// Closed form for entangled flat-diagonal symmetric states (all diagonal
// entries 1/8, off_1 = off_2 = off_3). The reduced boundary angle solves
//   (1/8) t^3 - off_1 t^2 - (1/4) t + (off_1 - off_4) = 0,   t = 2 cos(theta),
// with theta restricted to (pi/6, pi/3] and kept only when the diagonal
// pinch is a one-sided minimum. PreconditionViolated if the state is not
// of this family or not entangled; NoValidRoot when no admissible root
// survives (callers fall back to ree_numeric).
ReeResult ree_flat_diagonal(const GhzDiagonalState& s);

// Closed form for the family (p1, p1, p1, 0, p5, 0, 0, 0), always
// entangled. Candidate I pins the closest state's smallest diagonal at
// 1/8; candidate II lets it drop below 1/8 and applies for p1 <= p0 with
// p0 = (3 + cos 3*theta*)/12, cos theta* the root of 4c^3 + 6c^2 - 3 = 0.
ReeResult ree_type2(const GhzDiagonalState& s);
ReeResult ree_type2_candidate_i(const GhzDiagonalState& s);
ReeResult ree_type2_candidate_ii(const GhzDiagonalState& s);

// Crossover weight p0 between the two candidates, and the candidate-(ii)
// angle cosine, both produced by the cubic solver.
double type2_candidate_ii_cosine();
double type2_crossover_p0();

// Diagnostic: best value over closest states pinned to a cube facet for a
// type-2 input. Never better than the two candidates (checked in tests).
double ree_type2_facet_candidate(const GhzDiagonalState& s);

struct ReeNumericOptions {
  int scout_starts = 8;    // softmax interior multistarts
  int family_starts = 3;   // per boundary family
  unsigned seed = 1234u;
  double f_tol = 1e-13;
};

// General solver. Stage A scouts the interior with a softmax-parameterized
// penalty descent; stage B polishes on each boundary family (chain-closure
// faces and cube facets) with the diagonal weights free. Deterministic for
// a fixed seed. ConvergenceFailure only if no finite feasible value is
// found.
ReeResult ree_numeric(const GhzDiagonalState& s, const ReeNumericOptions& opts = {});

// Reduced search space for symmetric inputs (off_1 = off_2 = off_3,
// diagonals equal on the first three slots): closest-state candidates
//   sigma(theta, xi):  diag = (1/8 + xi/3, x3, 1/8 - xi),
//                      off  = kappa(xi) * (cos theta, x3, cos 3*theta),
// with kappa(xi) = min diagonal. The full-state optimum of such inputs is
// attained inside this two-parameter family (orbit-averaging argument,
// exercised in the tests).
struct SymmetricReduction {
  GhzDiagonalState input;

  GhzDiagonalState sigma(double theta, double xi) const;
  double objective(double theta, double xi) const;  // S(input || sigma)
  // Grid + local minimization over (theta, xi); returns E and minimizer.
  ReeResult minimize() const;
};

SymmetricReduction symmetric_closest_reduction(const GhzDiagonalState& s);  // PreconditionViolated

// Dispatch: separable -> 0; flat-diagonal family -> closed form (cubic or
// pi/4); type-2 family -> closed form; otherwise ree_numeric.
ReeResult ree_auto(const GhzDiagonalState& s, const ReeNumericOptions& opts = {});

}  // namespace ghzent
