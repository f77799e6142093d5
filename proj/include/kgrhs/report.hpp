#pragma once

#include <string>

#include <json.hpp>

namespace kgrhs {

// printf-style %.{digits}g in the C locale; non-finite values become "nan"/"inf".
std::string format_number(double value, int digits);

// JSON text with floating-point values at 17 significant digits; non-finite values become null.
std::string dump_json(const nlohmann::json& value);

// Structural check of a report document produced by the CLI.
bool validate_report(const nlohmann::json& document, std::string* reason = nullptr);

}  // namespace kgrhs
