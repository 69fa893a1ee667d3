#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "maxrec/equation.hpp"

namespace maxrec {

// Config document (JSON):
//   {
//     "t": 2,
//     "delays": [1, 2],                        optional, default 1..t
//     "coefficients": [{"delay": 1, "period": 1, "values": ["1"]}, ...],
//     "initial": ["1", "3/2"],                 x_{b}, ..., x_{b+t-1}
//     "index_base": -1,                        optional, default 1-t
//     "seed": 7                                optional
//   }
// Rationals are "p/q" or integer strings; bare positive integers are
// accepted too. "period" is optional but must match the value count.

nlohmann::ordered_json to_json(const EquationConfig& config);

/// Throws ConfigError naming the offending field.
EquationConfig config_from_json(const nlohmann::json& doc);

/// Throws ConfigError with line/column for syntax errors.
EquationConfig parse_config(std::string_view text);

std::string serialize_config(const EquationConfig& config);

EquationConfig load_config(const std::filesystem::path& path);

/// Parses a JSON document, reporting syntax errors with line and column.
nlohmann::json parse_json_document(std::string_view text, std::string_view what);

}  // namespace maxrec
