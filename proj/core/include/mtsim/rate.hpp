#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mtsim {

/// A fraction of the fundamental price held as an exact count of 1e-9 units,
/// so fee algebra (C_T = R_EX + R_M, theta_M = Re_M - 2 R_M) is exact.
class Rate {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;

  constexpr Rate() = default;

  static constexpr Rate from_nanos(std::int64_t nanos) noexcept { return Rate{nanos}; }
  /// Nearest representable rate; use parse() for exact decimal input.
  static Rate from_fraction(double fraction);
  /// Accepts "0.05%" (percent) or "0.0005" (fraction). Throws std::invalid_argument
  /// on malformed input or more precision than 1e-9 of P_f.
  static Rate parse(std::string_view text);

  [[nodiscard]] constexpr std::int64_t nanos() const noexcept { return nanos_; }
  [[nodiscard]] constexpr double fraction() const noexcept {
    return static_cast<double>(nanos_) / static_cast<double>(kScale);
  }
  /// Exact decimal fraction, e.g. "0.0005" or "-0.001".
  [[nodiscard]] std::string to_string() const;
  /// Exact decimal percent, e.g. "0.05%".
  [[nodiscard]] std::string to_percent_string() const;

  constexpr Rate operator+(Rate o) const noexcept { return Rate{nanos_ + o.nanos_}; }
  constexpr Rate operator-(Rate o) const noexcept { return Rate{nanos_ - o.nanos_}; }
  constexpr Rate operator-() const noexcept { return Rate{-nanos_}; }
  constexpr Rate operator*(std::int64_t k) const noexcept { return Rate{nanos_ * k}; }

  friend constexpr auto operator<=>(Rate, Rate) noexcept = default;

 private:
  constexpr explicit Rate(std::int64_t nanos) noexcept : nanos_(nanos) {}
  std::int64_t nanos_ = 0;
};

/// Literal helper: percent_rate(5, 100) == 0.05%.
constexpr Rate percent_rate(std::int64_t numerator, std::int64_t denominator = 1) noexcept {
  return Rate::from_nanos(numerator * (Rate::kScale / 100) / denominator);
}

}  // namespace mtsim
