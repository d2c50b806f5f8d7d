#include "mdendro/decimal.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

namespace mdendro::decimal {

namespace {

// Large enough for the fixed form of any finite double, subnormals included.
constexpr std::size_t kBufferSize = 1200;

}  // namespace

std::string shortest(double value) {
  std::array<char, kBufferSize> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf.data(), end);
}

std::string fixed(double value, int places) {
  if (places < 0) places = 0;
  std::array<char, kBufferSize> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                 round(value, places), std::chars_format::fixed,
                                 places);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf.data(), end);
}

int places_of(double value) {
  if (!std::isfinite(value)) return 0;
  const std::string s = shortest(value);
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

int places_of_token(std::string_view token) {
  int exponent = 0;
  const auto e = token.find_first_of("eE");
  std::string_view mantissa = token.substr(0, e);
  if (e != std::string_view::npos) {
    std::string_view exp_text = token.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
  }
  int frac = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    frac = static_cast<int>(mantissa.size() - dot - 1);
  }
  const int places = frac - exponent;
  return places > 0 ? places : 0;
}

double round(double value, int places) {
  if (!std::isfinite(value) || places < 0 || places > 340) return value;
  const bool negative = std::signbit(value);
  const std::string s = shortest(std::fabs(value));
  const auto dot = s.find('.');
  if (dot == std::string::npos) return value;
  const std::size_t frac_len = s.size() - dot - 1;
  if (frac_len <= static_cast<std::size_t>(places)) return value;

  std::string digits = s.substr(0, dot) + s.substr(dot + 1, places);
  const bool up = s[dot + 1 + places] >= '5';
  if (up) {
    std::size_t k = digits.size();
    while (k > 0) {
      --k;
      if (digits[k] == '9') {
        digits[k] = '0';
      } else {
        ++digits[k];
        break;
      }
      if (k == 0) digits.insert(digits.begin(), '1');
    }
  }
  const std::size_t int_len = digits.size() - places;
  std::string text = digits.substr(0, int_len);
  if (places > 0) text += "." + digits.substr(int_len);

  double result = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), result);
  if (result == 0.0) return 0.0;
  return negative ? -result : result;
}

std::string format(double value, std::optional<int> places) {
  return places ? fixed(value, *places) : shortest(value);
}

}  // namespace mdendro::decimal
