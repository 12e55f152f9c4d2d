#pragma once

#include <array>

#include "ghzent/state.hpp"

namespace ghzent {

// rho -> (1-p) rho + p I/8 on the probability vector.
GhzDiagonalState white_noise_mixture(const GhzDiagonalState& s, double p);

// Per-qubit Pauli channel weights. Slightly negative entries within
// eps_pos are clamped; the four weights are renormalized to one when
// their sum is within eps_norm.
struct QubitPauliWeights {
  double p_i = 1.0;
  double p_x = 0.0;
  double p_y = 0.0;
  double p_z = 0.0;
};

struct PauliChannelSpec {
  std::array<QubitPauliWeights, 3> qubits{};
};

// Applies the three single-qubit Pauli channels in sequence. Each Pauli
// acts as an exact permutation of the probability vector, so the channel
// is a convex mixture of permutations and keeps the family closed.
GhzDiagonalState apply_pauli_channel(const GhzDiagonalState& s, const PauliChannelSpec& channel);

}  // namespace ghzent
