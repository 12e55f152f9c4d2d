#include "ghzent/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ghzent {

namespace {

std::string describe(double v, const char* what, std::size_t i) {
  std::ostringstream os;
  os << what << " at index " << i << " (value " << v << ")";
  return os.str();
}

// Pair partner of 0-based index i: states i and 7-i share computational
// support and differ by the relative sign.
constexpr int partner(int i) { return 7 - i; }

}  // namespace

double GhzDiagonalState::max_p() const { return *std::max_element(p.begin(), p.end()); }

double GhzDiagonalState::sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }

double PauliCoefficients::lambda(int index) const { return lam[static_cast<std::size_t>(index - 2)]; }

double PauliCoefficients::tail_product() const { return lam[3] * lam[4] * lam[5] * lam[6]; }

double PauliCoefficients::lambda_minus() const {
  const double l2 = lam[0], l3 = lam[1], l4 = lam[2];
  // The four diagonal entries are (1 + combo)/8 with these combinations;
  // they sum to zero, so the minimum is always <= 0.
  const double combos[4] = {l2 + l3 + l4, l2 - l3 - l4, -l2 + l3 - l4, -l2 - l3 + l4};
  return *std::min_element(std::begin(combos), std::end(combos));
}

double PauliCoefficients::kappa() const { return (1.0 + lambda_minus()) / 8.0; }

double DensityEntries::kappa() const { return *std::min_element(diag.begin(), diag.end()); }

const std::array<std::array<int, 7>, 8>& lambda_sign_table() {
  static const std::array<std::array<int, 7>, 8> table = [] {
    std::array<std::array<int, 7>, 8> t{};
    for (int k = 1; k <= 8; ++k) {
      const int sign = k <= 4 ? +1 : -1;
      const int base = k <= 4 ? k - 1 : 8 - k;  // shared support index (x2 x3)
      const int x2 = (base >> 1) & 1;
      const int x3 = base & 1;
      const int l2 = x2 ? -1 : +1;
      const int l3 = x3 ? -1 : +1;
      const int l4 = l2 * l3;
      t[static_cast<std::size_t>(k - 1)] = {l2,        l3,        l4,       sign,
                                            -l2 * sign, -l3 * sign, -l4 * sign};
    }
    return t;
  }();
  return table;
}

GhzDiagonalState from_probabilities(const std::array<double, 8>& raw) {
  GhzDiagonalState s;
  for (std::size_t i = 0; i < 8; ++i) {
    const double v = raw[i];
    if (!std::isfinite(v)) throw InputError(describe(v, "non-finite probability", i));
    if (v < -eps_pos) throw NegativeProbability(describe(v, "negative probability", i));
    s.p[i] = std::max(v, 0.0);
  }
  const double total = s.sum();
  if (std::abs(total - 1.0) > eps_norm)
    throw NotNormalized("probabilities sum to " + std::to_string(total));
  for (double& v : s.p) v /= total;
  return s;
}

GhzDiagonalState ghz_basis_state(int k) {
  if (k < 1 || k > 8) throw DomainError("basis index out of range");
  GhzDiagonalState s;
  s.p[static_cast<std::size_t>(k - 1)] = 1.0;
  return s;
}

PauliCoefficients to_pauli_coefficients(const GhzDiagonalState& s) {
  const auto& t = lambda_sign_table();
  PauliCoefficients c;
  for (std::size_t j = 0; j < 7; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) acc += s.p[i] * t[i][j];
    c.lam[j] = acc;
  }
  return c;
}

GhzDiagonalState from_pauli_coefficients(const PauliCoefficients& c) {
  for (std::size_t j = 0; j < 7; ++j)
    if (!std::isfinite(c.lam[j])) throw InputError(describe(c.lam[j], "non-finite coefficient", j));
  const auto& t = lambda_sign_table();
  GhzDiagonalState s;
  for (std::size_t i = 0; i < 8; ++i) {
    double acc = 1.0;
    for (std::size_t j = 0; j < 7; ++j) acc += c.lam[j] * t[i][j];
    const double v = acc / 8.0;
    if (v < -eps_pos)
      throw NotPositiveSemidefinite(describe(v, "coefficients give negative weight", i));
    s.p[i] = std::max(v, 0.0);
  }
  const double total = s.sum();  // exactly 1 up to rounding: the sign rows sum to zero
  for (double& v : s.p) v /= total;
  return s;
}

DensityEntries to_density_entries(const GhzDiagonalState& s) {
  DensityEntries d;
  for (int i = 0; i < 4; ++i) {
    d.diag[static_cast<std::size_t>(i)] = (s.p[static_cast<std::size_t>(i)] + s.p[static_cast<std::size_t>(partner(i))]) / 2.0;
    d.off[static_cast<std::size_t>(i)] = (s.p[static_cast<std::size_t>(i)] - s.p[static_cast<std::size_t>(partner(i))]) / 2.0;
  }
  return d;
}

GhzDiagonalState from_density_entries(const DensityEntries& d) {
  std::array<double, 8> p{};
  for (int i = 0; i < 4; ++i) {
    const double a = d.diag[static_cast<std::size_t>(i)];
    const double b = d.off[static_cast<std::size_t>(i)];
    if (!std::isfinite(a) || !std::isfinite(b))
      throw InputError("non-finite density entry");
    if (std::abs(b) > a + eps_pos)
      throw NotPositiveSemidefinite(describe(b, "off-diagonal exceeds diagonal pair", static_cast<std::size_t>(i)));
    p[static_cast<std::size_t>(i)] = a + b;
    p[static_cast<std::size_t>(partner(i))] = a - b;
  }
  return from_probabilities(p);
}

std::string LocalOp::label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FlipX: os << "X" << qubit_a; break;
    case Kind::PhaseZ: os << "Z" << qubit_a; break;
    case Kind::PhasePair: os << "S" << qubit_a << qubit_b; break;
  }
  return os.str();
}

std::array<int, 8> pauli_permutation(int qubit, char axis) {
  if (qubit < 0 || qubit > 2) throw DomainError("qubit index out of range");
  auto from_pairs = [](std::array<std::array<int, 2>, 4> pairs) {
    std::array<int, 8> perm{};
    for (auto [a, b] : pairs) {
      perm[static_cast<std::size_t>(a)] = b;
      perm[static_cast<std::size_t>(b)] = a;
    }
    return perm;
  };
  // Derived once from dense conjugation and frozen; re-verified against the
  // dense oracle in the audit tests. X on a qubit permutes support pairs,
  // Z swaps every sign pair (independently of the qubit), Y composes both.
  switch (axis) {
    case 'X':
      if (qubit == 0) return from_pairs({{{0, 3}, {1, 2}, {4, 7}, {5, 6}}});
      if (qubit == 1) return from_pairs({{{0, 2}, {1, 3}, {4, 6}, {5, 7}}});
      return from_pairs({{{0, 1}, {2, 3}, {4, 5}, {6, 7}}});
    case 'Z':
      return from_pairs({{{0, 7}, {1, 6}, {2, 5}, {3, 4}}});
    case 'Y':
      if (qubit == 0) return from_pairs({{{0, 4}, {1, 5}, {2, 6}, {3, 7}}});
      if (qubit == 1) return from_pairs({{{0, 5}, {1, 4}, {2, 7}, {3, 6}}});
      return from_pairs({{{0, 6}, {1, 7}, {2, 4}, {3, 5}}});
    default:
      throw DomainError("axis must be X, Y or Z");
  }
}

std::array<int, 8> local_op_permutation(const LocalOp& op) {
  auto from_pairs = [](std::array<std::array<int, 2>, 2> pairs) {
    std::array<int, 8> perm{};
    for (int i = 0; i < 8; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (auto [a, b] : pairs) {
      perm[static_cast<std::size_t>(a)] = b;
      perm[static_cast<std::size_t>(b)] = a;
    }
    return perm;
  };
  switch (op.kind) {
    case LocalOp::Kind::FlipX:
      return pauli_permutation(op.qubit_a, 'X');
    case LocalOp::Kind::PhaseZ:
      return pauli_permutation(op.qubit_a, 'Z');
    case LocalOp::Kind::PhasePair: {
      // diag(1,i) x diag(1,-i) on the named qubits: swaps the sign pairs of
      // exactly the two off-diagonal slots not anchored by those qubits.
      const int a = op.qubit_a, b = op.qubit_b;
      if (a == 0 && b == 1) return from_pairs({{{2, 5}, {3, 4}}});
      if (a == 0 && b == 2) return from_pairs({{{1, 6}, {3, 4}}});
      if (a == 1 && b == 2) return from_pairs({{{1, 6}, {2, 5}}});
      throw DomainError("phase pair requires qubit_a < qubit_b in {0,1,2}");
    }
  }
  throw DomainError("unknown local op");
}

GhzDiagonalState apply_local_op(const GhzDiagonalState& s, const LocalOp& op) {
  const auto perm = local_op_permutation(op);
  GhzDiagonalState out;
  for (std::size_t i = 0; i < 8; ++i) out.p[i] = s.p[static_cast<std::size_t>(perm[i])];
  return out;
}

GhzDiagonalState apply_record(const GhzDiagonalState& s, const LocalOpRecord& r) {
  GhzDiagonalState out = s;
  for (const auto& op : r.ops) out = apply_local_op(out, op);
  return out;
}

GhzDiagonalState undo_record(const GhzDiagonalState& canonical, const LocalOpRecord& r) {
  GhzDiagonalState out = canonical;
  for (auto it = r.ops.rbegin(); it != r.ops.rend(); ++it) out = apply_local_op(out, *it);
  return out;
}

namespace {

struct GroupElement {
  std::array<int, 8> perm{};
  std::vector<LocalOp> word;
};

// The canonicalization group: generated by the three X conjugations (slot
// permutations) and the phase conjugations (even sign-flip patterns on the
// four off-diagonal slots). 4 slot permutations x 8 sign patterns = 32.
const std::vector<GroupElement>& canonical_group() {
  static const std::vector<GroupElement> group = [] {
    const std::vector<LocalOp> generators = {
        {LocalOp::Kind::FlipX, 0, 0},     {LocalOp::Kind::FlipX, 1, 0},
        {LocalOp::Kind::FlipX, 2, 0},     {LocalOp::Kind::PhaseZ, 0, 0},
        {LocalOp::Kind::PhasePair, 0, 1}, {LocalOp::Kind::PhasePair, 0, 2},
        {LocalOp::Kind::PhasePair, 1, 2}};
    std::vector<GroupElement> elems;
    GroupElement identity;
    for (int i = 0; i < 8; ++i) identity.perm[static_cast<std::size_t>(i)] = i;
    elems.push_back(identity);
    // Breadth-first closure; keeps the shortest op word per element.
    for (std::size_t head = 0; head < elems.size(); ++head) {
      const GroupElement cur = elems[head];
      for (const auto& gen : generators) {
        const auto gp = local_op_permutation(gen);
        GroupElement next;
        // Applying `gen` after `cur`: p -> p[cur.perm] -> (p[cur.perm])[gp]
        for (std::size_t i = 0; i < 8; ++i)
          next.perm[i] = cur.perm[static_cast<std::size_t>(gp[i])];
        next.word = cur.word;
        next.word.push_back(gen);
        const bool seen = std::any_of(elems.begin(), elems.end(),
                                      [&](const GroupElement& e) { return e.perm == next.perm; });
        if (!seen) elems.push_back(std::move(next));
      }
    }
    return elems;
  }();
  return group;
}

}  // namespace

CanonicalForm canonicalize(const GhzDiagonalState& s) {
  const auto& group = canonical_group();
  const GroupElement* best = nullptr;
  std::array<double, 8> best_key{};
  for (const auto& elem : group) {
    GhzDiagonalState cand;
    for (std::size_t i = 0; i < 8; ++i) cand.p[i] = s.p[static_cast<std::size_t>(elem.perm[i])];
    const DensityEntries d = to_density_entries(cand);
    if (d.off[0] < 0.0 || d.off[1] < 0.0 || d.off[2] < 0.0) continue;
    const std::array<double, 8> key = {d.off[0],  d.off[1],  d.off[2],  d.off[3],
                                       d.diag[0], d.diag[1], d.diag[2], d.diag[3]};
    if (best == nullptr || key > best_key) {
      best = &elem;
      best_key = key;
    }
  }
  // Always reachable: an even sign-flip pattern fixing the first three
  // signs exists for every input.
  CanonicalForm out;
  out.record.ops = best->word;
  out.state = apply_record(s, out.record);
  return out;
}

}  // namespace ghzent
