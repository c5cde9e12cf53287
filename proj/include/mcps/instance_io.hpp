#pragma once

// Instance files: one JSON object per file,
//   {"name": "...", "word": [0, 1, 0, ...], "quotas": {"0": 1, "1": 0, ...}}
// Written in canonical form (fields in that order, quota keys ascending by
// numeric id, compact separators, trailing newline) so that load/save
// round-trips byte for byte.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mcps/core.hpp"
#include "mcps/error.hpp"

namespace mcps {

namespace detail {

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::vector<EnsembleId> read_word(const nlohmann::json& doc) {
  if (!doc.contains("word")) throw InputError("missing field 'word'");
  const auto& w = doc["word"];
  if (!w.is_array()) throw InputError("'word' must be an array of ensemble ids");
  std::vector<EnsembleId> word;
  word.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_number_unsigned() || w[i].get<std::uint64_t>() > UINT32_MAX) {
      throw InputError("word[" + std::to_string(i) + "]: expected a non-negative integer id, got " +
                       w[i].dump());
    }
    word.push_back(w[i].get<EnsembleId>());
  }
  return word;
}

inline std::string read_name(const nlohmann::json& doc) {
  if (!doc.contains("name")) return {};
  if (!doc["name"].is_string()) throw InputError("'name' must be a string");
  return doc["name"].get<std::string>();
}

}  // namespace detail

inline ProblemInstance instance_from_json(std::string_view text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  std::string name = detail::read_name(doc);
  auto word = detail::read_word(doc);

  if (!doc.contains("quotas")) throw InputError("missing field 'quotas'");
  const auto& q = doc["quotas"];
  if (!q.is_object()) throw InputError("'quotas' must be an object mapping ensemble id to count");
  std::map<std::uint64_t, std::size_t> entries;
  for (auto it = q.begin(); it != q.end(); ++it) {
    auto id = detail::parse_uint(it.key());
    if (!id) throw InputError("quotas[\"" + it.key() + "\"]: key is not a non-negative integer");
    if (!it.value().is_number_unsigned()) {
      throw InputError("quotas[\"" + it.key() + "\"]: expected a non-negative integer, got " +
                       it.value().dump());
    }
    entries[*id] = it.value().get<std::size_t>();
  }
  std::vector<std::size_t> quotas;
  quotas.reserve(entries.size());
  for (const auto& [id, k] : entries) {
    if (id != quotas.size()) {
      throw InputError("quotas: missing entry for ensemble " + std::to_string(quotas.size()) +
                       " (ids must be dense)");
    }
    quotas.push_back(k);
  }
  return ProblemInstance(std::move(name), std::move(word), std::move(quotas));
}

inline std::string instance_to_json(const ProblemInstance& instance) {
  nlohmann::ordered_json doc;
  doc["name"] = instance.name();
  doc["word"] = std::vector<EnsembleId>(instance.word().begin(), instance.word().end());
  nlohmann::ordered_json quotas = nlohmann::ordered_json::object();
  for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
    quotas[std::to_string(e)] = instance.quota(e);
  }
  doc["quotas"] = std::move(quotas);
  return doc.dump() + "\n";
}

inline ProblemInstance load_instance(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return instance_from_json(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  detail::write_file(path, instance_to_json(instance));
}

// Stream files: {"name": "...", "word": [...], "colors": "BWWB..."}.
inline LabeledStream stream_from_json(std::string_view text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object()) throw InputError("stream must be a JSON object");
  LabeledStream s;
  s.word = detail::read_word(doc);
  if (!doc.contains("colors") || !doc["colors"].is_string()) {
    throw InputError("missing string field 'colors'");
  }
  s.colors = parse_coloring(doc["colors"].get<std::string>());
  if (s.colors.size() != s.word.size()) {
    throw InputError("colors length " + std::to_string(s.colors.size()) +
                     " does not match word length " + std::to_string(s.word.size()));
  }
  return s;
}

inline std::string stream_to_json(const LabeledStream& stream, std::string_view name) {
  nlohmann::ordered_json doc;
  doc["name"] = std::string(name);
  doc["word"] = stream.word;
  doc["colors"] = to_string(stream.colors);
  return doc.dump() + "\n";
}

}  // namespace mcps
