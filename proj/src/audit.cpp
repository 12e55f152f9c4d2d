#include "ghzent/audit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ghzent/detail/numeric.hpp"
#include "ghzent/errors.hpp"

namespace ghzent {
namespace audit {

namespace {

using Cplx = std::complex<double>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;
using CMatrix8 = Eigen::Matrix<Cplx, 8, 8>;
using CVector8 = Eigen::Matrix<Cplx, 8, 1>;

// Real basis vectors; column k-1 is |GHZ_k>.
Eigen::Matrix<double, 8, 8> basis_matrix() {
  Eigen::Matrix<double, 8, 8> b = Eigen::Matrix<double, 8, 8>::Zero();
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= 4; ++k) {
    b(k - 1, k - 1) = r;
    b(8 - k, k - 1) = r;
  }
  for (int k = 5; k <= 8; ++k) {
    const int base = 8 - k;
    b(base, k - 1) = r;
    b(7 - base, k - 1) = -r;
  }
  return b;
}

Matrix8 dense_from_state(const GhzDiagonalState& s) {
  static const Eigen::Matrix<double, 8, 8> basis = basis_matrix();
  Matrix8 rho = Matrix8::Zero();
  for (int k = 0; k < 8; ++k)
    rho += s.p[static_cast<std::size_t>(k)] * basis.col(k) * basis.col(k).transpose();
  return rho;
}

// Qubit q occupies bit position 2-q of the computational index |q1 q2 q3>.
int bit_of(int index, int qubit) { return (index >> (2 - qubit)) & 1; }
int with_bit(int index, int qubit, int value) {
  const int mask = 1 << (2 - qubit);
  return value ? (index | mask) : (index & ~mask);
}

}  // namespace

DenseMatrix build_dense(const GhzDiagonalState& s) {
  const Matrix8 rho = dense_from_state(s);
  DenseMatrix out{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rho(i, j);
  return out;
}

std::array<double, 8> dense_eigenvalues(const DenseMatrix& m) {
  Matrix8 a;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Matrix8> solver(a, Eigen::EigenvaluesOnly);
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end());
  return out;
}

double ppt_min_eigenvalue(const GhzDiagonalState& s, int cut) {
  if (cut < 0 || cut > 2) throw DomainError("cut qubit must be 0, 1 or 2");
  const Matrix8 rho = dense_from_state(s);
  Matrix8 pt;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const int rr = with_bit(r, cut, bit_of(c, cut));
      const int cc = with_bit(c, cut, bit_of(r, cut));
      pt(r, c) = rho(rr, cc);
    }
  Eigen::SelfAdjointEigenSolver<Matrix8> solver(pt, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

PptAudit ppt_all_cuts(const GhzDiagonalState& s, double tol) {
  PptAudit a;
  a.worst = 1.0;
  for (int cut = 0; cut < 3; ++cut) {
    a.min_eigenvalue[static_cast<std::size_t>(cut)] = ppt_min_eigenvalue(s, cut);
    a.worst = std::min(a.worst, a.min_eigenvalue[static_cast<std::size_t>(cut)]);
  }
  a.all_nonnegative = a.worst >= -tol;
  return a;
}

Unitary2 pauli_x() { return {{{Cplx(0, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(0, 0)}}}; }
Unitary2 pauli_y() { return {{{Cplx(0, 0), Cplx(0, -1)}, {Cplx(0, 1), Cplx(0, 0)}}}; }
Unitary2 pauli_z() { return {{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(-1, 0)}}}; }
Unitary2 identity2() { return {{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(1, 0)}}}; }
Unitary2 phase_gate(double angle) {
  return {{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), std::polar(1.0, angle)}}};
}

GhzDiagonalState conjugate_and_extract(const GhzDiagonalState& s, const Unitary2& u0,
                                       const Unitary2& u1, const Unitary2& u2) {
  CMatrix8 u = CMatrix8::Zero();
  const std::array<const Unitary2*, 3> us{&u0, &u1, &u2};
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      Cplx v(1, 0);
      for (int q = 0; q < 3; ++q)
        v *= (*us[static_cast<std::size_t>(q)])[static_cast<std::size_t>(bit_of(r, q))]
                                                [static_cast<std::size_t>(bit_of(c, q))];
      u(r, c) = v;
    }

  const CMatrix8 rho = dense_from_state(s).cast<Cplx>();
  const CMatrix8 conj = u * rho * u.adjoint();

  static const Eigen::Matrix<double, 8, 8> basis = basis_matrix();
  const CMatrix8 in_ghz = basis.cast<Cplx>().transpose() * conj * basis.cast<Cplx>();

  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j && std::abs(in_ghz(i, j)) > 1e-12)
        throw PreconditionViolated("conjugation leaves the GHZ-diagonal family");

  std::array<double, 8> p{};
  for (int i = 0; i < 8; ++i) p[static_cast<std::size_t>(i)] = in_ghz(i, i).real();
  return from_probabilities(p);
}

double grid_witness_bound(const WitnessVector& x, double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.01 + 1e-15))
    throw DomainError("resolution must lie in (0, 0.01] radians");
  const double kPi = 3.141592653589793238462643383279502884;
  const int n = static_cast<int>(std::ceil(2.0 * kPi / resolution));
  const double h = 2.0 * kPi / n;
  // Lookup tables keep the n^3 sweep cheap: the sum angle a+b+c walks the
  // arithmetic progression -3*pi + (i+j+k)*h.
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = std::cos(-kPi + i * h);
  std::vector<double> sum_tab(static_cast<std::size_t>(3 * n - 2));
  for (int m = 0; m < 3 * n - 2; ++m) sum_tab[static_cast<std::size_t>(m)] = std::cos(-3.0 * kPi + m * h);

  double best = -1e300;
  for (int i = 0; i < n; ++i) {
    const double vi = x.alpha * axis[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const double vij = vi + x.beta * axis[static_cast<std::size_t>(j)];
      const double* sum_row = sum_tab.data() + i + j;
      for (int k = 0; k < n; ++k) {
        const double v = vij + x.gamma * axis[static_cast<std::size_t>(k)] + x.delta * sum_row[k];
        if (v > best) best = v;
      }
    }
  }
  return best;
}

GhzDiagonalState dephased_product_state(const std::array<double, 3>& u,
                                        const std::array<double, 3>& phi) {
  std::array<Cplx, 8> amp{};
  for (int idx = 0; idx < 8; ++idx) {
    Cplx v(1, 0);
    for (int q = 0; q < 3; ++q) {
      if (bit_of(idx, q))
        v *= std::polar(std::sin(u[static_cast<std::size_t>(q)]), phi[static_cast<std::size_t>(q)]);
      else
        v *= Cplx(std::cos(u[static_cast<std::size_t>(q)]), 0);
    }
    amp[static_cast<std::size_t>(idx)] = v;
  }
  const double r = 1.0 / std::sqrt(2.0);
  std::array<double, 8> p{};
  for (int k = 1; k <= 4; ++k)
    p[static_cast<std::size_t>(k - 1)] =
        std::norm(r * (amp[static_cast<std::size_t>(k - 1)] + amp[static_cast<std::size_t>(8 - k)]));
  for (int k = 5; k <= 8; ++k) {
    const int base = 8 - k;
    p[static_cast<std::size_t>(k - 1)] =
        std::norm(r * (amp[static_cast<std::size_t>(base)] - amp[static_cast<std::size_t>(7 - base)]));
  }
  return from_probabilities(p);
}

namespace {

bool feasible_q(const std::array<double, 8>& q) {
  DensityEntries d;
  for (int i = 0; i < 4; ++i) {
    d.diag[static_cast<std::size_t>(i)] =
        (q[static_cast<std::size_t>(i)] + q[static_cast<std::size_t>(7 - i)]) / 2.0;
    d.off[static_cast<std::size_t>(i)] =
        (q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(7 - i)]) / 2.0;
  }
  return separability_margin(d) >= -1e-12;
}

}  // namespace

double random_search_ree(const GhzDiagonalState& s, int n_starts, int iters, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return detail::uniform01(rng()); };

  auto evaluate = [&](const std::array<double, 8>& q) {
    double acc = 0.0;
    for (int k = 0; k < 8; ++k) {
      if (s.p[static_cast<std::size_t>(k)] > 1e-300) {
        if (q[static_cast<std::size_t>(k)] <= 1e-300) return 1e300;
        acc += s.p[static_cast<std::size_t>(k)] *
               std::log2(s.p[static_cast<std::size_t>(k)] / q[static_cast<std::size_t>(k)]);
      }
    }
    return acc;
  };

  auto normalize = [](std::array<double, 8>& q) {
    double total = 0.0;
    for (double& v : q) {
      if (v < 1e-12) v = 1e-12;
      total += v;
    }
    for (double& v : q) v /= total;
  };

  // Blend toward the uniform mixture until the membership test accepts;
  // the uniform mixture is strictly inside the separable set.
  auto project = [&](std::array<double, 8> q, const std::array<double, 8>& anchor) {
    if (feasible_q(q)) return q;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 42; ++it) {
      const double mid = (lo + hi) / 2.0;
      std::array<double, 8> blend{};
      for (int k = 0; k < 8; ++k)
        blend[static_cast<std::size_t>(k)] = (1.0 - mid) * q[static_cast<std::size_t>(k)] +
                                             mid * anchor[static_cast<std::size_t>(k)];
      if (feasible_q(blend))
        hi = mid;
      else
        lo = mid;
    }
    std::array<double, 8> out{};
    for (int k = 0; k < 8; ++k)
      out[static_cast<std::size_t>(k)] =
          (1.0 - hi) * q[static_cast<std::size_t>(k)] + hi * anchor[static_cast<std::size_t>(k)];
    return out;
  };

  const std::array<double, 8> uniform_q{0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125};
  double best = 1e300;
  for (int start = 0; start < n_starts; ++start) {
    std::array<double, 8> q{};
    if (start == 0) {
      q = project(s.p, uniform_q);
    } else {
      for (double& v : q) v = -std::log(std::max(uniform(), 1e-12));
      normalize(q);
      q = project(q, uniform_q);
    }
    double current = evaluate(q);
    double step = 0.08;
    for (int it = 0; it < iters; ++it) {
      std::array<double, 8> trial = q;
      for (double& v : trial) v += step * 2.0 * (uniform() - 0.5) * 0.125;
      normalize(trial);
      trial = project(trial, q);
      const double value = evaluate(trial);
      if (value < current) {
        current = value;
        q = trial;
      }
      step *= 0.999;
      if (step < 1e-5) step = 0.01;  // periodic reheat
    }
    best = std::min(best, current);
  }
  return best;
}

}  // namespace audit
}  // namespace ghzent
