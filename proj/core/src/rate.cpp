#include "mtsim/rate.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace mtsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Exact decimal with `scale_digits` implied fractional digits.
std::string decimal(std::int64_t value, int scale_digits) {
  const bool negative = value < 0;
  std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(value + 1)) + 1 : static_cast<std::uint64_t>(value);
  std::uint64_t pow10 = 1;
  for (int i = 0; i < scale_digits; ++i) pow10 *= 10;
  std::string out = std::to_string(mag / pow10);
  std::uint64_t frac = mag % pow10;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, static_cast<std::size_t>(scale_digits) - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  if (negative && mag != 0) out.insert(0, 1, '-');
  return out;
}

}  // namespace

Rate Rate::from_fraction(double fraction) {
  const double scaled = std::round(fraction * static_cast<double>(kScale));
  if (!std::isfinite(scaled) || std::abs(scaled) > 9.0e18) {
    throw std::invalid_argument("rate out of range");
  }
  return Rate{static_cast<std::int64_t>(scaled)};
}

Rate Rate::parse(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  int scale_digits = 9;
  if (!s.empty() && s.back() == '%') {
    s.remove_suffix(1);
    s = trim(s);
    scale_digits = 7;
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rate: '" + original + "'");

  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed rate: '" + original + "'");
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rate: '" + original + "'");
    seen_digit = true;
    const int d = c - '0';
    if (!seen_point) {
      if (whole > 1'000'000) throw std::invalid_argument("rate out of range: '" + original + "'");
      whole = whole * 10 + d;
    } else if (frac_digits < scale_digits) {
      frac = frac * 10 + d;
      ++frac_digits;
    } else if (d != 0) {
      throw std::invalid_argument("rate finer than 1e-9 of the fundamental price: '" + original + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed rate: '" + original + "'");
  for (int i = frac_digits; i < scale_digits; ++i) frac *= 10;
  std::int64_t unit = 1;
  for (int i = 0; i < scale_digits; ++i) unit *= 10;
  const std::int64_t nanos = whole * unit + frac;
  return Rate{negative ? -nanos : nanos};
}

std::string Rate::to_string() const { return decimal(nanos_, 9); }

std::string Rate::to_percent_string() const { return decimal(nanos_, 7) + "%"; }

}  // namespace mtsim
