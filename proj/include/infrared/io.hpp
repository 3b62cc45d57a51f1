#pragma once

#include "infrared/coeff.hpp"
#include "infrared/subdivision.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ir {

using Json = nlohmann::ordered_json;

// Malformed input; the message names the line (syntax errors) or the field path.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct InputDocument {
    PointConfig config;
    std::optional<CoefficientSystem> coefficients;
};

// {"dimension": d, "points": [{"label", "coords": [rat-str]}], "infinity": {"direction": [...]},
//  "coefficients": {"edges": [{"from", "to", "graded_dims": {deg: dim}, "pairing": [[...]]}]}}
InputDocument parse_input(std::string_view text);

Json rational_json(const Rational& q);
Json rationals_json(const VecQ& v);
Json labels_json(const PointConfig& c, Mask m);
Json cells_json(const PointConfig& c, const std::vector<Mask>& cells);
Json subdivision_json(const PointConfig& c, const Subdivision& s);
Json config_json(const PointConfig& c, const CoefficientSystem* cs = nullptr);

// Inverse of subdivision_json; the certificate, if present, is kept.
Subdivision parse_subdivision(const PointConfig& c, const Json& j);

std::string sha256_hex(std::string_view data);

} // namespace ir
