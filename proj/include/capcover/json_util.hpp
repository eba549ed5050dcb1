#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "capcover/rational.hpp"

namespace capcover {

/// Parses JSON text; syntax errors become InputError.
nlohmann::json parse_document(std::string_view text);

/// Accepts JSON numbers (read through their shortest decimal form) and strings like "7/4".
Rational rational_from_json(const nlohmann::json& value, const std::string& where);

/// Integers and exactly representable decimals become JSON numbers, anything else a "p/q" string.
nlohmann::json rational_to_json(const Rational& value);

/// {"exact": "p/q", "decimal": "0.123456789"}.
nlohmann::json rational_report(const Rational& value);

}  // namespace capcover
