#include "maxrec/config_io.hpp"

#include <fstream>
#include <sstream>

#include "maxrec/errors.hpp"

namespace maxrec {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ConfigError("field '" + field + "': " + message);
}

PositiveRational rational_field(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return PositiveRational::parse(v.get<std::string>());
    } catch (const Error& e) {
      field_error(field, e.what());
    }
  }
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0)
    return PositiveRational::parse(std::to_string(v.get<std::uint64_t>()));
  field_error(field, "expected a positive rational string \"p/q\"");
}

std::int64_t integer_field(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "expected an integer");
  return v.get<std::int64_t>();
}

const json& required(const json& doc, const char* key) {
  if (!doc.contains(key)) field_error(key, "missing");
  return doc.at(key);
}

}  // namespace

nlohmann::ordered_json to_json(const EquationConfig& c) {
  nlohmann::ordered_json doc;
  doc["t"] = c.t;
  doc["delays"] = c.delays;
  auto coefficients = nlohmann::ordered_json::array();
  for (const auto& s : c.schedules) {
    nlohmann::ordered_json entry;
    entry["delay"] = s.delay;
    entry["period"] = s.period();
    auto values = nlohmann::ordered_json::array();
    for (const auto& v : s.values) values.push_back(v.to_string());
    entry["values"] = std::move(values);
    coefficients.push_back(std::move(entry));
  }
  doc["coefficients"] = std::move(coefficients);
  auto initial = nlohmann::ordered_json::array();
  for (const auto& v : c.initial) initial.push_back(v.to_string());
  doc["initial"] = std::move(initial);
  doc["index_base"] = c.index_base;
  if (c.seed) doc["seed"] = *c.seed;
  return doc;
}

EquationConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be an object");
  EquationConfig c;
  const std::int64_t t = integer_field(required(doc, "t"), "t");
  if (t < 1 || t > 1'000'000) field_error("t", "must be a positive integer");
  c.t = static_cast<int>(t);

  if (doc.contains("delays")) {
    const json& delays = doc.at("delays");
    if (!delays.is_array()) field_error("delays", "expected a list of integers");
    for (std::size_t i = 0; i < delays.size(); ++i)
      c.delays.push_back(
          static_cast<int>(integer_field(delays[i], "delays[" + std::to_string(i) + "]")));
  } else {
    for (int k = 1; k <= c.t; ++k) c.delays.push_back(k);
  }

  const json& coefficients = required(doc, "coefficients");
  if (!coefficients.is_array()) field_error("coefficients", "expected a list");
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    const json& entry = coefficients[i];
    if (!entry.is_object()) field_error(where, "expected an object");
    if (!entry.contains("delay")) field_error(where + ".delay", "missing");
    if (!entry.contains("values")) field_error(where + ".values", "missing");
    CoefficientSchedule s;
    s.delay = static_cast<int>(integer_field(entry.at("delay"), where + ".delay"));
    const json& values = entry.at("values");
    if (!values.is_array() || values.empty())
      field_error(where + ".values", "expected a nonempty list of rationals");
    for (std::size_t k = 0; k < values.size(); ++k)
      s.values.push_back(
          rational_field(values[k], where + ".values[" + std::to_string(k) + "]"));
    if (entry.contains("period")) {
      const std::int64_t p = integer_field(entry.at("period"), where + ".period");
      if (p < 1 || static_cast<std::size_t>(p) != s.values.size())
        field_error(where + ".period", "period " + std::to_string(p) + " does not match " +
                                           std::to_string(s.values.size()) + " values");
    }
    c.schedules.push_back(std::move(s));
  }

  const json& initial = required(doc, "initial");
  if (!initial.is_array()) field_error("initial", "expected a list of rationals");
  for (std::size_t i = 0; i < initial.size(); ++i)
    c.initial.push_back(rational_field(initial[i], "initial[" + std::to_string(i) + "]"));

  c.index_base = doc.contains("index_base") ? integer_field(doc.at("index_base"), "index_base")
                                            : 1 - c.t;
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_unsigned()) field_error("seed", "expected a nonnegative integer");
    c.seed = seed.get<std::uint64_t>();
  }
  validate(c);
  return c;
}

json parse_json_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') { ++line; column = 1; }
      else ++column;
    }
    std::ostringstream msg;
    msg << what << " syntax error at line " << line << ", column " << column << ": "
        << e.what();
    throw ConfigError(msg.str());
  }
}

EquationConfig parse_config(std::string_view text) {
  return config_from_json(parse_json_document(text, "config"));
}

std::string serialize_config(const EquationConfig& config) {
  return to_json(config).dump(2) + "\n";
}

EquationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace maxrec
