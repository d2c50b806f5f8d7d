#pragma once

#include <optional>
#include <string>
#include <string_view>

// Decimal-digit helpers. Rounding here works on the shortest round-trip
// decimal representation of a double, so 0.0375 rounds to 0.04 at two places
// even though the nearest binary value is slightly below 0.0375.
namespace mdendro::decimal {

// Shortest fixed-notation text that parses back to exactly `value`.
std::string shortest(double value);

// Fixed-notation text with exactly `places` digits after the point.
std::string fixed(double value, int places);

// Number of digits after the decimal point in the shortest representation.
int places_of(double value);

// Number of digits after the decimal point in a numeric token as written
// (exponent notation is accounted for, e.g. "1.5e-2" has 3).
int places_of_token(std::string_view token);

// Round half away from zero to `places` decimals. Idempotent.
double round(double value, int places);

// Comparison key used for tie detection: the value itself, or its rounding
// when a precision is attached.
inline double tie_key(double value, std::optional<int> precision) {
  return precision ? round(value, *precision) : value;
}

// Height formatting for text output: fixed decimals when a precision is known,
// shortest representation otherwise.
std::string format(double value, std::optional<int> places);

}  // namespace mdendro::decimal
