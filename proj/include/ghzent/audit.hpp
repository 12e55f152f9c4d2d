#pragma once

#include <array>
#include <complex>

#include "ghzent/separability.hpp"
#include "ghzent/state.hpp"

// Independent dense-matrix oracles used by the audit tests and the `audit`
// CLI subcommand. Everything here is built from first principles (basis
// vectors, dense eigensolves, explicit product-state mixtures) rather than
// from the closed forms it is checking.

namespace ghzent {
namespace audit {

using DenseMatrix = std::array<std::array<double, 8>, 8>;
using Unitary2 = std::array<std::array<std::complex<double>, 2>, 2>;

// rho = sum_k p_k |GHZ_k><GHZ_k| assembled from the basis vectors.
DenseMatrix build_dense(const GhzDiagonalState& s);

// Eigenvalues of a symmetric matrix, ascending.
std::array<double, 8> dense_eigenvalues(const DenseMatrix& m);

// Smallest eigenvalue of the partial transpose over one qubit (0..2).
double ppt_min_eigenvalue(const GhzDiagonalState& s, int cut);

struct PptAudit {
  std::array<double, 3> min_eigenvalue{};  // per cut
  double worst = 0;
  bool all_nonnegative = false;
};

PptAudit ppt_all_cuts(const GhzDiagonalState& s, double tol = 1e-12);

// Conjugates the dense matrix by U0 (x) U1 (x) U2 and reads the result
// back as basis weights. Throws PreconditionViolated when the conjugated
// matrix has any off-diagonal element above 1e-12 in the GHZ basis, i.e.
// when the unitary does not preserve the family.
GhzDiagonalState conjugate_and_extract(const GhzDiagonalState& s, const Unitary2& u0,
                                       const Unitary2& u1, const Unitary2& u2);

// Standard single-qubit gates for building conjugation checks.
Unitary2 pauli_x();
Unitary2 pauli_y();
Unitary2 pauli_z();
Unitary2 identity2();
Unitary2 phase_gate(double angle);  // diag(1, e^{i angle})

// Brute-force witness ceiling: max of
//   delta cos(a+b+c) + alpha cos a + beta cos b + gamma cos c
// over a uniform grid with the given angular resolution (radians,
// 0 < resolution <= 0.01). Lower-bounds the exact ceiling within the
// Lipschitz error (|delta|+|alpha|+|beta|+|gamma|) * resolution.
double grid_witness_bound(const WitnessVector& x, double resolution);

// GHZ-dephasing of the pure product state
//   prod_q (cos(u_q)|0> + e^{i phi_q} sin(u_q)|1>).
// Dephasing in the GHZ basis averages over local Pauli conjugations, so
// the output (and any mixture of such outputs) is separable by
// construction; used to probe the soundness side of the classifier.
GhzDiagonalState dephased_product_state(const std::array<double, 3>& u,
                                        const std::array<double, 3>& phi);

// Upper bound on the relative entropy of entanglement by projected
// random-walk descent over probability vectors, with membership decided
// by the full separability criterion. Deterministic for a fixed seed.
double random_search_ree(const GhzDiagonalState& s, int n_starts, int iters, unsigned seed);

}  // namespace audit
}  // namespace ghzent
