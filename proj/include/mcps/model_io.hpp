#pragma once

// Model export:
//   {"n_vars": n, "offset": c, "linear": {"i": h}, "quadratic": {"i,j": J},
//    "positions": [car position of each variable]}
// Integral coefficients are written as JSON integers; everything else as
// shortest round-trip doubles, so reading back yields the identical model.

#include <cmath>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "mcps/error.hpp"
#include "mcps/instance_io.hpp"
#include "mcps/ising.hpp"

namespace mcps {

namespace detail {

inline nlohmann::ordered_json coefficient_json(double v) {
  if (std::nearbyint(v) == v && std::abs(v) < 0x1.0p53) return static_cast<long long>(v);
  return v;
}

inline double coefficient_value(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number, got " + v.dump());
  return v.get<double>();
}

inline std::size_t index_value(std::string_view key, const std::string& where) {
  auto v = parse_uint(key);
  if (!v) throw InputError(where + ": '" + std::string(key) + "' is not a variable index");
  return static_cast<std::size_t>(*v);
}

}  // namespace detail

inline std::string model_to_json(const IsingModel& model) {
  nlohmann::ordered_json doc;
  doc["n_vars"] = model.n_vars();
  doc["offset"] = detail::coefficient_json(model.offset());
  nlohmann::ordered_json lin = nlohmann::ordered_json::object();
  for (const auto& [i, h] : model.linear()) lin[std::to_string(i)] = detail::coefficient_json(h);
  nlohmann::ordered_json quad = nlohmann::ordered_json::object();
  for (const auto& [ij, J] : model.quadratic()) {
    quad[std::to_string(ij.first) + "," + std::to_string(ij.second)] = detail::coefficient_json(J);
  }
  doc["linear"] = std::move(lin);
  doc["quadratic"] = std::move(quad);
  doc["positions"] =
      std::vector<std::size_t>(model.var_to_position().begin(), model.var_to_position().end());
  return doc.dump() + "\n";
}

// QUBO form: {"n_vars", "offset", "q": {"i,j": v} with i <= j, "positions"}.
// `positions` comes from the Ising model the QUBO was built from.
inline std::string qubo_to_json(const QuboModel& q, std::span<const std::size_t> positions) {
  nlohmann::ordered_json doc;
  doc["n_vars"] = q.n_vars();
  doc["offset"] = detail::coefficient_json(q.offset());
  nlohmann::ordered_json terms = nlohmann::ordered_json::object();
  for (const auto& [ij, v] : q.q()) {
    terms[std::to_string(ij.first) + "," + std::to_string(ij.second)] = detail::coefficient_json(v);
  }
  doc["q"] = std::move(terms);
  doc["positions"] = std::vector<std::size_t>(positions.begin(), positions.end());
  return doc.dump() + "\n";
}

inline IsingModel model_from_json(std::string_view text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object() || !doc.contains("n_vars") || !doc["n_vars"].is_number_unsigned()) {
    throw InputError("model: missing non-negative integer 'n_vars'");
  }
  IsingModel m(doc["n_vars"].get<std::size_t>());
  if (doc.contains("offset")) m.add_offset(detail::coefficient_value(doc["offset"], "offset"));
  if (doc.contains("linear")) {
    for (auto it = doc["linear"].begin(); it != doc["linear"].end(); ++it) {
      const std::string where = "linear[\"" + it.key() + "\"]";
      m.add_linear(detail::index_value(it.key(), where), detail::coefficient_value(it.value(), where));
    }
  }
  if (doc.contains("quadratic")) {
    for (auto it = doc["quadratic"].begin(); it != doc["quadratic"].end(); ++it) {
      const std::string where = "quadratic[\"" + it.key() + "\"]";
      const auto comma = it.key().find(',');
      if (comma == std::string::npos) throw InputError(where + ": key must be \"i,j\"");
      const std::size_t i = detail::index_value(std::string_view(it.key()).substr(0, comma), where);
      const std::size_t j = detail::index_value(std::string_view(it.key()).substr(comma + 1), where);
      if (i >= j) throw InputError(where + ": key must satisfy i < j");
      m.add_quadratic(i, j, detail::coefficient_value(it.value(), where));
    }
  }
  if (doc.contains("positions")) {
    m.set_var_to_position(doc["positions"].get<std::vector<std::size_t>>());
  }
  return m;
}

}  // namespace mcps
