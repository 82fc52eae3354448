#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "switchstab/linalg.hpp"

namespace switchstab {

/// Formats a double with 17 significant digits (round-trips exactly).
std::string format_double(double v);

/// FNV-1a 64-bit hash, hex-encoded; used as the input content digest.
std::string fnv1a_hex(const std::string& data);

/// Canonical matrix-set JSON text: {"dim", "matrices", "labels"} with entries
/// at 17 significant digits. parse(serialize(s)) is bit-identical.
std::string serialize_matrix_set(const MatrixSet& set);

/// Parses the matrix-set file format; throws input_error with the offending
/// field name on malformed input.
MatrixSet parse_matrix_set(const std::string& json_text);

/// Certification status attached to every numeric payload field.
enum class ValueStatus { certified, empirical, diagnostic };

nlohmann::ordered_json tagged_value(double v, ValueStatus status);

/// Assembles the report envelope; the payload is command-specific. All
/// run-varying data lives under the single trailing "timing" key so
/// determinism checks can drop it.
nlohmann::ordered_json make_report(const std::string& command,
                                   const nlohmann::ordered_json& args_echo,
                                   const std::string& input_source,
                                   const std::string& input_digest,
                                   const nlohmann::ordered_json& payload,
                                   double wall_ms);

/// CSV with a header row; every cell printed at 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

} // namespace switchstab
