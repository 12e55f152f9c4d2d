#include "ghzent/json_io.hpp"

#include <cmath>

#include <json.hpp>

#include "ghzent/detail/numeric.hpp"
#include "ghzent/errors.hpp"

namespace ghzent {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InputError("malformed JSON");
  return j;
}

template <std::size_t N>
std::array<double, N> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != N)
    throw InputError(std::string("expected \"") + key + "\" as an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const json& v = j[key][i];
    if (!v.is_number()) throw InputError(std::string("non-numeric entry in \"") + key + "\"");
    out[i] = v.get<double>();
    if (!std::isfinite(out[i])) throw InputError(std::string("non-finite entry in \"") + key + "\"");
  }
  return out;
}

}  // namespace

GhzDiagonalState state_from_json_text(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
    throw InputError("state JSON needs a string \"format\" key");
  const std::string format = j["format"].get<std::string>();
  if (format == "probabilities") {
    return from_probabilities(number_array<8>(j, "values"));
  }
  if (format == "pauli") {
    const auto lam = number_array<7>(j, "lambda");
    PauliCoefficients c;
    c.lam = lam;
    return from_pauli_coefficients(c);
  }
  if (format == "rho") {
    DensityEntries d;
    d.diag = number_array<4>(j, "diag");
    d.off = number_array<4>(j, "offdiag");
    return from_density_entries(d);
  }
  throw InputError("unknown state format \"" + format + "\"");
}

std::string state_to_json_text(const GhzDiagonalState& s) {
  json values = json::array();
  for (double v : s.p) values.push_back(json::parse(detail::format_sig12(v)));
  json j;
  j["format"] = "probabilities";
  j["values"] = values;
  return j.dump();
}

PauliChannelSpec channel_from_json_text(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("qubits") || !j["qubits"].is_array() || j["qubits"].size() != 3)
    throw InputError("channel JSON needs \"qubits\" as an array of 3 objects");
  PauliChannelSpec spec;
  for (std::size_t q = 0; q < 3; ++q) {
    const json& e = j["qubits"][q];
    if (!e.is_object()) throw InputError("channel entry is not an object");
    QubitPauliWeights w;
    auto read = [&](const char* key, double& slot) {
      if (!e.contains(key) || !e[key].is_number())
        throw InputError(std::string("channel entry needs numeric \"") + key + "\"");
      slot = e[key].get<double>();
      if (!std::isfinite(slot)) throw InputError(std::string("non-finite \"") + key + "\"");
    };
    read("pI", w.p_i);
    read("pX", w.p_x);
    read("pY", w.p_y);
    read("pZ", w.p_z);
    spec.qubits[q] = w;
  }
  return spec;
}

}  // namespace ghzent
