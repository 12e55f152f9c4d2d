#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <ghzent/errors.hpp>
#include <ghzent/state.hpp>

using namespace ghzent;

namespace {

std::array<double, 8> random_simplex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 8> p{};
  double tot = 0.0;
  for (auto& v : p) {
    v = -std::log(u(rng));
    tot += v;
  }
  for (auto& v : p) v /= tot;
  return p;
}

bool bitwise_equal(const GhzDiagonalState& a, const GhzDiagonalState& b) {
  for (int i = 0; i < 8; ++i)
    if (a.p[static_cast<std::size_t>(i)] != b.p[static_cast<std::size_t>(i)]) return false;
  return true;
}

}  // namespace

// Signs computed by hand from the basis convention: ZZI/ZIZ/IZZ read the
// bit pattern of the computational support, XXX maps |x> to its bitwise
// complement, and each Y contributes a factor i (so YYX/YXY/XYY pick up
// i^2 = -1 relative to XXX on the same support).
TEST_CASE("pure basis states carry the expected correlation signs") {
  struct Row {
    int k;
    std::array<double, 7> lam;
  };
  const Row rows[] = {
      {1, {1, 1, 1, 1, -1, -1, -1}},
      {2, {1, -1, -1, 1, -1, 1, 1}},
      {4, {-1, -1, 1, 1, 1, 1, -1}},
      {5, {-1, -1, 1, -1, -1, -1, 1}},
      {8, {1, 1, 1, -1, 1, 1, 1}},
  };
  for (const auto& row : rows) {
    const PauliCoefficients c = to_pauli_coefficients(ghz_basis_state(row.k));
    for (int j = 0; j < 7; ++j) {
      CAPTURE(row.k);
      CAPTURE(j);
      CHECK(c.lam[static_cast<std::size_t>(j)] ==
            doctest::Approx(row.lam[static_cast<std::size_t>(j)]).epsilon(1e-15));
    }
  }

  // Structural facts that hold for every basis state: the three ZZ-type
  // signs multiply to +1 (they are products of an even number of Z
  // eigenvalues), the four X/Y-type signs multiply to -1 (three Y pairs),
  // and partner states k, 9-k share the diagonal signs and flip the rest.
  const auto& table = lambda_sign_table();
  for (int k = 1; k <= 8; ++k) {
    const auto& r = table[static_cast<std::size_t>(k - 1)];
    CHECK(r[0] * r[1] * r[2] == 1);
    CHECK(r[3] * r[4] * r[5] * r[6] == -1);
    const auto& partner = table[static_cast<std::size_t>(8 - k)];
    for (int j = 0; j < 3; ++j) CHECK(r[static_cast<std::size_t>(j)] == partner[static_cast<std::size_t>(j)]);
    for (int j = 3; j < 7; ++j) CHECK(r[static_cast<std::size_t>(j)] == -partner[static_cast<std::size_t>(j)]);
    // Pure states: tail product is exactly -1, kappa is 0 (some diagonal
    // signed combination reaches -1).
    const PauliCoefficients c = to_pauli_coefficients(ghz_basis_state(k));
    CHECK(c.tail_product() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(c.lambda_minus() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(c.kappa() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("uniform mixture is the maximally mixed state") {
  std::array<double, 8> p{};
  p.fill(0.125);
  const GhzDiagonalState s = from_probabilities(p);
  const PauliCoefficients c = to_pauli_coefficients(s);
  for (double l : c.lam) CHECK(l == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.lambda_minus() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.kappa() == doctest::Approx(0.125).epsilon(1e-15));
  const DensityEntries d = to_density_entries(s);
  for (double v : d.diag) CHECK(v == doctest::Approx(0.125).epsilon(1e-15));
  for (double v : d.off) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.kappa() == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("parameterization round trips are exact to 1e-14") {
  std::mt19937_64 rng(20240811u);
  for (int t = 0; t < 2000; ++t) {
    const GhzDiagonalState s = from_probabilities(random_simplex(rng));

    const GhzDiagonalState via_pauli = from_pauli_coefficients(to_pauli_coefficients(s));
    const GhzDiagonalState via_entries = from_density_entries(to_density_entries(s));
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(via_pauli.p[static_cast<std::size_t>(i)] - s.p[static_cast<std::size_t>(i)]) <= 1e-14);
      CHECK(std::abs(via_entries.p[static_cast<std::size_t>(i)] - s.p[static_cast<std::size_t>(i)]) <= 1e-14);
    }

    // Pair formulas of the entry map.
    const DensityEntries d = to_density_entries(s);
    for (int i = 0; i < 4; ++i) {
      const double pi = s.p[static_cast<std::size_t>(i)];
      const double pj = s.p[static_cast<std::size_t>(7 - i)];
      CHECK(d.diag[static_cast<std::size_t>(i)] == doctest::Approx((pi + pj) / 2).epsilon(1e-15));
      CHECK(d.off[static_cast<std::size_t>(i)] == doctest::Approx((pi - pj) / 2).epsilon(1e-15));
    }

    // kappa agrees between the two derived views.
    const PauliCoefficients c = to_pauli_coefficients(s);
    CHECK(std::abs(c.kappa() - d.kappa()) <= 1e-14);
    CHECK(c.lambda_minus() <= 1e-15);
    CHECK(c.kappa() == doctest::Approx((1.0 + c.lambda_minus()) / 8.0).epsilon(1e-13));
  }
}

TEST_CASE("input validation") {
  SUBCASE("negative entry beyond the allowance") {
    std::array<double, 8> p{};
    p.fill(0.143);
    p[0] = -1e-3;
    CHECK_THROWS_AS((void)from_probabilities(p), NegativeProbability);
  }
  SUBCASE("sum far from one") {
    std::array<double, 8> p{};
    p.fill(0.2);
    CHECK_THROWS_AS((void)from_probabilities(p), NotNormalized);
  }
  SUBCASE("tiny negatives are clamped and the vector renormalized") {
    std::array<double, 8> p{};
    p.fill(0.125);
    p[0] = -5e-10;
    p[1] = 0.25 + 5e-10;
    const GhzDiagonalState s = from_probabilities(p);
    CHECK(s.p[0] == 0.0);
    CHECK(std::abs(s.sum() - 1.0) <= 1e-15);
    for (double v : s.p) CHECK(v >= 0.0);
  }
  SUBCASE("coefficients outside the state body") {
    PauliCoefficients c{};
    c.lam[0] = 2.0;  // would force a negative diagonal entry
    CHECK_THROWS_AS((void)from_pauli_coefficients(c), NotPositiveSemidefinite);
  }
  SUBCASE("basis index range") {
    CHECK_THROWS_AS((void)ghz_basis_state(0), DomainError);
    CHECK_THROWS_AS((void)ghz_basis_state(9), DomainError);
  }
  SUBCASE("entries with an off-diagonal exceeding its pair weight") {
    DensityEntries d;
    d.diag = {0.125, 0.125, 0.125, 0.125};
    d.off = {0.2, 0.0, 0.0, 0.0};  // p_8 would be (0.125 - 0.2) < 0
    CHECK_THROWS_AS((void)from_density_entries(d), NotPositiveSemidefinite);
  }
}

TEST_CASE("single-qubit Pauli conjugations act as the expected permutations") {
  // X on qubit q complements the corresponding bit of the computational
  // support; Z swaps each sign pair regardless of the qubit.
  const std::array<int, 8> x0 = {3, 2, 1, 0, 7, 6, 5, 4};
  const std::array<int, 8> x1 = {2, 3, 0, 1, 6, 7, 4, 5};
  const std::array<int, 8> x2 = {1, 0, 3, 2, 5, 4, 7, 6};
  const std::array<int, 8> z = {7, 6, 5, 4, 3, 2, 1, 0};
  CHECK(pauli_permutation(0, 'X') == x0);
  CHECK(pauli_permutation(1, 'X') == x1);
  CHECK(pauli_permutation(2, 'X') == x2);
  for (int q = 0; q < 3; ++q) CHECK(pauli_permutation(q, 'Z') == z);

  // Y = (phase) * X * Z, and conjugation kills the phase: the Y permutation
  // is the composition of the X and Z permutations (in either order, as
  // they commute here).
  for (int q = 0; q < 3; ++q) {
    const auto px = pauli_permutation(q, 'X');
    const auto pz = pauli_permutation(q, 'Z');
    const auto py = pauli_permutation(q, 'Y');
    for (int i = 0; i < 8; ++i) {
      CHECK(py[static_cast<std::size_t>(i)] == px[static_cast<std::size_t>(pz[static_cast<std::size_t>(i)])]);
      CHECK(py[static_cast<std::size_t>(i)] == pz[static_cast<std::size_t>(px[static_cast<std::size_t>(i)])]);
    }
  }

  // Every permutation used anywhere is an involution.
  for (int q = 0; q < 3; ++q) {
    for (char axis : {'X', 'Y', 'Z'}) {
      const auto perm = pauli_permutation(q, axis);
      for (int i = 0; i < 8; ++i)
        CHECK(perm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] == i);
    }
  }
}

TEST_CASE("local ops are exact involutions on the weights") {
  std::mt19937_64 rng(7u);
  std::vector<LocalOp> ops;
  for (int q = 0; q < 3; ++q) {
    ops.push_back({LocalOp::Kind::FlipX, q, 0});
    ops.push_back({LocalOp::Kind::PhaseZ, q, 0});
  }
  ops.push_back({LocalOp::Kind::PhasePair, 0, 1});
  ops.push_back({LocalOp::Kind::PhasePair, 0, 2});
  ops.push_back({LocalOp::Kind::PhasePair, 1, 2});

  for (const auto& op : ops) {
    const auto perm = local_op_permutation(op);
    for (int i = 0; i < 8; ++i)
      CHECK(perm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] == i);
    for (int t = 0; t < 50; ++t) {
      const GhzDiagonalState s = from_probabilities(random_simplex(rng));
      const GhzDiagonalState twice = apply_local_op(apply_local_op(s, op), op);
      CHECK(bitwise_equal(twice, s));
      // Weight multiset is preserved exactly.
      auto a = s.p, b = apply_local_op(s, op).p;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
    CHECK(!op.label().empty());
  }
}

TEST_CASE("canonicalize: invariants over random states") {
  std::mt19937_64 rng(20240812u);
  std::uniform_int_distribution<int> pick_kind(0, 2);
  std::uniform_int_distribution<int> pick_q(0, 2);
  for (int t = 0; t < 10000; ++t) {
    const GhzDiagonalState s = from_probabilities(random_simplex(rng));
    const CanonicalForm cf = canonicalize(s);

    // Sign normalization of the first three slots.
    const DensityEntries d = to_density_entries(cf.state);
    CHECK(d.off[0] >= 0.0);
    CHECK(d.off[1] >= 0.0);
    CHECK(d.off[2] >= 0.0);

    // The record replays the input onto the representative bit for bit,
    // and undoes back to the input bit for bit.
    CHECK(bitwise_equal(apply_record(s, cf.record), cf.state));
    CHECK(bitwise_equal(undo_record(cf.state, cf.record), s));

    // Idempotence.
    const CanonicalForm again = canonicalize(cf.state);
    CHECK(bitwise_equal(again.state, cf.state));

    // Weight multiset preserved exactly.
    auto a = s.p, b = cf.state.p;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);

    // The conjugation group cannot change the sign of the tail product.
    const double tp_in = to_pauli_coefficients(s).tail_product();
    const double tp_out = to_pauli_coefficients(cf.state).tail_product();
    if (std::abs(tp_in) > 1e-18) CHECK(tp_in * tp_out > 0.0);

    // Orbit invariance: conjugating first cannot change the representative.
    if (t % 10 == 0) {
      LocalOp op;
      op.kind = static_cast<LocalOp::Kind>(pick_kind(rng));
      op.qubit_a = pick_q(rng);
      if (op.kind == LocalOp::Kind::PhasePair) {
        op.qubit_b = (op.qubit_a + 1 + pick_q(rng) % 2) % 3;
        if (op.qubit_a > op.qubit_b) std::swap(op.qubit_a, op.qubit_b);
      }
      const CanonicalForm other = canonicalize(apply_local_op(s, op));
      CHECK(bitwise_equal(other.state, cf.state));
    }
  }
}

TEST_CASE("canonicalize: literal sign example") {
  DensityEntries d;
  d.diag = {0.125, 0.125, 0.125, 0.125};
  d.off = {-0.1, 0.05, -0.02, 0.03};
  const CanonicalForm cf = canonicalize(from_density_entries(d));
  const DensityEntries out = to_density_entries(cf.state);
  CHECK(out.off[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(out.off[1] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(out.off[2] == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(out.off[3] == doctest::Approx(0.03).epsilon(1e-15));
  for (double v : out.diag) CHECK(v == doctest::Approx(0.125).epsilon(1e-15));

  // A slot-permuted cousin lands on the same representative.
  DensityEntries d2;
  d2.diag = {0.125, 0.125, 0.125, 0.125};
  d2.off = {0.05, 0.1, 0.03, 0.02};
  // The two inputs differ by final-ulp renormalization noise (the entry
  // sums round differently), so the representatives agree to 1e-15 rather
  // than bit for bit.
  const CanonicalForm cf2 = canonicalize(from_density_entries(d2));
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(cf2.state.p[static_cast<std::size_t>(i)] - cf.state.p[static_cast<std::size_t>(i)]) <= 1e-15);
}

TEST_CASE("max_p picks the dominant weight") {
  std::array<double, 8> p{};
  p.fill(0.1);
  p[3] = 0.3;
  const GhzDiagonalState s = from_probabilities(p);
  CHECK(s.max_p() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-15));
}
