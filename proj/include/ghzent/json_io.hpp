#pragma once

#include <string>

#include "ghzent/noise.hpp"
#include "ghzent/state.hpp"

// JSON (de)serialization for states and channels. String-based so the
// JSON library stays an implementation detail of this translation unit.
//
// Accepted state schemas (the "format" key selects one):
//   {"format": "probabilities", "values": [p1..p8]}
//   {"format": "pauli",         "lambda": [l2..l8]}
//   {"format": "rho",           "diag": [d1..d4], "offdiag": [o1..o4]}
// Parse or schema problems raise InputError; the numeric validation of the
// corresponding factory function applies afterwards.

namespace ghzent {

GhzDiagonalState state_from_json_text(const std::string& text);

// Emits the probabilities schema, entries rounded to 12 significant digits.
std::string state_to_json_text(const GhzDiagonalState& s);

// {"qubits": [{"pI":..,"pX":..,"pY":..,"pZ":..} x3]}
PauliChannelSpec channel_from_json_text(const std::string& text);

}  // namespace ghzent
