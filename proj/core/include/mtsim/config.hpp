#pragma once

#include "mtsim/rate.hpp"
#include "mtsim/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtsim {

/// Model parameters. Defaults are the reference parameter set of the model.
struct SimConfig {
  std::int64_t n = 990;            // normal agents
  std::int64_t m = 10;             // algorithm agents
  double w1_max = 1.0;             // fundamental weight cap
  double w2_max = 10.0;            // technical weight cap
  double u_max = 1.0;              // noise weight cap
  std::int64_t tau_max = 10'000;   // max chartist horizon
  double sigma_epsilon = 0.06;     // noise std-dev
  double est = 0.003;              // order price variation coefficient
  double delta_p = 1.0;            // tick size
  double p_f = 10'000.0;           // fundamental price
  std::int64_t t_l = 10'000;       // learning lookback
  std::int64_t t_c = 20'000;       // order effective period
  double k_l = 4.0;                // learning gain
  double delta_l = 0.01;           // weight reset probability
  double w_m = 5.0e-8;             // maker position coefficient
  Rate re_m = percent_rate(3, 10);   // maker expected return, 0.300%
  Rate r_ex = percent_rate(1, 10);   // exchange fee, 0.100%
  Step t_end = 1'000'000;
  std::uint64_t seed = 1;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  /// Sets one field from its textual value. Key names match the field names.
  /// Throws ConfigError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);

  /// Field names in declaration order.
  static const std::vector<std::string_view>& keys();

  /// Textual value of a field, round-trippable through set().
  [[nodiscard]] std::string get(std::string_view key) const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Applies a flat key=value file onto `base`. Blank lines and lines starting
/// with '#' are ignored. Throws ConfigError (including for unreadable files).
SimConfig load_config_file(const std::filesystem::path& path, SimConfig base = {});

/// Parses key=value text (the config file body).
SimConfig parse_config(std::string_view text, SimConfig base = {});

}  // namespace mtsim
