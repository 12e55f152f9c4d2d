#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ghzent/errors.hpp"

// Core state types for three-qubit states diagonal in the maximally
// entangled (GHZ) basis, plus the exact linear maps between the three
// equivalent parameterizations:
//
//   probabilities p_1..p_8   <->   correlations lambda_2..lambda_8
//                            <->   density entries (diag, offdiag)
//
// Basis convention (0-based index i = k-1, computational kets |q1 q2 q3>):
//   k = 1..4:  |GHZ_k> = (|0 x2 x3> + |1 ~x2 ~x3>)/sqrt(2),  (x2 x3) = bits of k-1
//   k = 5..8:  |GHZ_k> = the '-' partner of k' = 9-k, so pairs (k, 9-k)
//              share computational support and differ by the relative sign.
// Hence GHZ_1 = (|000>+|111>)/sqrt(2), GHZ_8 = (|000>-|111>)/sqrt(2),
// GHZ_4 = (|011>+|100>)/sqrt(2), GHZ_5 = (|011>-|100>)/sqrt(2).

namespace ghzent {

// Validation tolerances (shared across the library).
inline constexpr double eps_pos = 1e-9;   // negativity allowance on inputs
inline constexpr double eps_norm = 1e-9;  // normalization allowance on inputs
inline constexpr double eps_num = 1e-12;  // internal linear-identity tolerance
inline constexpr double eps_crit = 1e-9;  // default criterion tolerance

// Probability vector over the 8 GHZ basis states. p[i] is the weight of
// basis state k = i+1. Always normalized with nonnegative entries once
// constructed through from_probabilities / the other factory functions.
struct GhzDiagonalState {
  std::array<double, 8> p{};

  double operator[](std::size_t i) const { return p[i]; }
  double& operator[](std::size_t i) { return p[i]; }
  double max_p() const;
  double sum() const;
};

// Correlation coefficients lambda_2..lambda_8; lam[j] = lambda_{j+2}.
// lambda_1 = 1 is implicit (trace normalization). The first three entries
// are the ZZ-type diagonal correlations, the last four the X/Y-type
// off-diagonal ones.
struct PauliCoefficients {
  std::array<double, 7> lam{};

  double lambda(int index) const;  // index in [2, 8]
  // Product lambda_5 * lambda_6 * lambda_7 * lambda_8; its sign selects the
  // classification branch.
  double tail_product() const;
  // Most negative of the four signed combinations of (lambda_2, lambda_3,
  // lambda_4) appearing in the diagonal entries. Always <= 0.
  double lambda_minus() const;
  // Smallest diagonal density entry, equal to (1 - |lambda_minus|) / 8.
  double kappa() const;
};

// The eight nonzero entries of the density matrix in the computational
// basis: four diagonal pair-values and four anti-diagonal entries.
//   diag[i] = rho_{i+1,i+1} = rho_{8-i,8-i}   (1-based pairs (1,8)..(4,5))
//   off[i]  = (rho_18, rho_27, rho_36, rho_54)[i]
// Note the last slot is rho_54, not rho_45: with the sign convention above
// rho_54 = (p_4 - p_5)/2, keeping all four slots on the same footing.
struct DensityEntries {
  std::array<double, 4> diag{};
  std::array<double, 4> off{};

  double kappa() const;  // min diagonal entry
};

// One local unitary conjugation used by canonicalize. Every op acts on the
// probability vector as an exact entry permutation, so replaying a record
// is free of floating-point error.
//   FlipX     : Pauli X on qubit `qubit_a`
//   PhaseZ    : Pauli Z on qubit `qubit_a` (swaps every sign pair)
//   PhasePair : diag(1, i) on qubit `qubit_a` and diag(1, -i) on `qubit_b`;
//               flips the sign of exactly two off-diagonal slots
struct LocalOp {
  enum class Kind { FlipX, PhaseZ, PhasePair };
  Kind kind = Kind::FlipX;
  int qubit_a = 0;
  int qubit_b = 0;

  std::string label() const;
};

// Sequence of local ops, applied left to right.
struct LocalOpRecord {
  std::vector<LocalOp> ops;
};

struct CanonicalForm {
  GhzDiagonalState state;   // representative with off[0..2] >= 0
  LocalOpRecord record;     // ops mapping the input onto `state`
};

// Validating constructor. Entries below -eps_pos raise NegativeProbability;
// small negatives are clamped to zero. A sum farther than eps_norm from 1
// raises NotNormalized; otherwise the vector is renormalized exactly.
GhzDiagonalState from_probabilities(const std::array<double, 8>& raw);

// Pure basis state k (1-based), e.g. ghz_basis_state(1) = GHZ_1.
GhzDiagonalState ghz_basis_state(int k);

PauliCoefficients to_pauli_coefficients(const GhzDiagonalState& s);

// Inverse map; raises NotPositiveSemidefinite when the coefficients do not
// produce a valid probability vector (within eps_pos).
GhzDiagonalState from_pauli_coefficients(const PauliCoefficients& c);

DensityEntries to_density_entries(const GhzDiagonalState& s);

// Inverse map; validates positivity/normalization like from_probabilities.
GhzDiagonalState from_density_entries(const DensityEntries& d);

// Sign table sgn[k-1][j] = lambda_{j+2} of the pure basis state k; the
// linear transforms above are contractions against this table.
const std::array<std::array<int, 7>, 8>& lambda_sign_table();

// Permutation of p realized by conjugating with the given local op:
// result.p[i] = input.p[perm[i]]. All ops here are involutions.
std::array<int, 8> local_op_permutation(const LocalOp& op);

GhzDiagonalState apply_local_op(const GhzDiagonalState& s, const LocalOp& op);

// Applies every op of the record in order.
GhzDiagonalState apply_record(const GhzDiagonalState& s, const LocalOpRecord& r);

// Replays the record backwards (each op is involutive), recovering the
// exact original entries of the canonicalization input.
GhzDiagonalState undo_record(const GhzDiagonalState& canonical, const LocalOpRecord& r);

// Deterministic canonical representative under the group generated by the
// X conjugations (which permute off-diagonal slots) and the phase
// conjugations (which flip pairs of off-diagonal signs): the element with
// off[0], off[1], off[2] >= 0 and lexicographically largest
// (off[0], off[1], off[2], off[3], diag...) wins. Exactly zero entries
// count as nonnegative. The group has 32 elements; membership and action
// are verified against dense-matrix conjugation in the audit tests.
CanonicalForm canonicalize(const GhzDiagonalState& s);

// Exact permutation action of a single-qubit Pauli conjugation on the
// basis weights; axis is 'X', 'Y' or 'Z', qubit in {0,1,2}.
// Z gives the same permutation for every qubit (it swaps each sign pair).
std::array<int, 8> pauli_permutation(int qubit, char axis);

}  // namespace ghzent
