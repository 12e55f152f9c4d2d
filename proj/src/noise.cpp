#include "ghzent/noise.hpp"

#include <cmath>

#include "ghzent/errors.hpp"

namespace ghzent {

GhzDiagonalState white_noise_mixture(const GhzDiagonalState& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixing weight must lie in [0,1]");
  std::array<double, 8> q{};
  for (std::size_t k = 0; k < 8; ++k) q[k] = (1.0 - p) * s.p[k] + p / 8.0;
  return from_probabilities(q);
}

namespace {

std::array<double, 4> validated_weights(const QubitPauliWeights& w, int qubit) {
  std::array<double, 4> v{w.p_i, w.p_x, w.p_y, w.p_z};
  double total = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x)) throw InputError("channel weight is not finite");
    if (x < -eps_pos) throw NegativeProbability("channel weight below zero on qubit " + std::to_string(qubit));
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (std::abs(total - 1.0) > eps_norm)
    throw NotNormalized("channel weights on qubit " + std::to_string(qubit) + " do not sum to one");
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

GhzDiagonalState apply_pauli_channel(const GhzDiagonalState& s, const PauliChannelSpec& channel) {
  static constexpr std::array<char, 3> kAxes{'X', 'Y', 'Z'};
  std::array<double, 8> p = s.p;
  for (int qubit = 0; qubit < 3; ++qubit) {
    const auto w = validated_weights(channel.qubits[static_cast<std::size_t>(qubit)], qubit);
    std::array<double, 8> next{};
    for (std::size_t k = 0; k < 8; ++k) next[k] = w[0] * p[k];
    for (int axis = 0; axis < 3; ++axis) {
      const double weight = w[static_cast<std::size_t>(axis + 1)];
      if (weight == 0.0) continue;
      const auto perm = pauli_permutation(qubit, kAxes[static_cast<std::size_t>(axis)]);
      for (std::size_t k = 0; k < 8; ++k)
        next[k] += weight * p[static_cast<std::size_t>(perm[k])];
    }
    p = next;
  }
  return from_probabilities(p);
}

}  // namespace ghzent
