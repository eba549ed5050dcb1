#include "capcover/json_util.hpp"

#include <stdexcept>

#include "capcover/errors.hpp"

namespace capcover {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const json& value, const std::string& where) {
  try {
    if (value.is_number_integer()) return Rational(value.dump());
    if (value.is_number_float() || value.is_string()) {
      return parse_rational(value.is_string() ? value.get<std::string>() : value.dump());
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": number expected");
}

json rational_to_json(const Rational& value) {
  if (value.get_den() == 1) {
    if (value.get_num().fits_slong_p()) return value.get_num().get_si();
    return to_string(value);
  }
  double d = value.get_d();
  Rational back;
  try {
    back = parse_rational(json(d).dump());
  } catch (const std::invalid_argument&) {
    return to_string(value);
  }
  if (back == value) return d;
  return to_string(value);
}

json rational_report(const Rational& value) {
  return json{{"exact", to_string(value)}, {"decimal", to_decimal(value, 9)}};
}

}  // namespace capcover
