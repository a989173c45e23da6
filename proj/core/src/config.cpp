#include "mtsim/config.hpp"

#include "mtsim/csv.hpp"
#include "mtsim/fees.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

namespace mtsim {

namespace {

using Field = std::variant<std::int64_t SimConfig::*, double SimConfig::*, Rate SimConfig::*,
                           std::uint64_t SimConfig::*>;

struct Entry {
  std::string_view key;
  Field field;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {"n", &SimConfig::n},
      {"m", &SimConfig::m},
      {"w1_max", &SimConfig::w1_max},
      {"w2_max", &SimConfig::w2_max},
      {"u_max", &SimConfig::u_max},
      {"tau_max", &SimConfig::tau_max},
      {"sigma_epsilon", &SimConfig::sigma_epsilon},
      {"est", &SimConfig::est},
      {"delta_p", &SimConfig::delta_p},
      {"p_f", &SimConfig::p_f},
      {"t_l", &SimConfig::t_l},
      {"t_c", &SimConfig::t_c},
      {"k_l", &SimConfig::k_l},
      {"delta_l", &SimConfig::delta_l},
      {"w_m", &SimConfig::w_m},
      {"re_m", &SimConfig::re_m},
      {"r_ex", &SimConfig::r_ex},
      {"t_end", &SimConfig::t_end},
      {"seed", &SimConfig::seed},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  std::string_view v = value;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  // Integers may be written with digit separators: 1_000_000.
  std::string cleaned;
  if constexpr (std::is_integral_v<T>) {
    for (char c : v)
      if (c != '_') cleaned += c;
    v = cleaned;
  }
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "'");
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void SimConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  for (const auto& e : entries()) {
    if (e.key != key) continue;
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(this->*member)>;
          if constexpr (std::is_same_v<T, Rate>) {
            try {
              this->*member = Rate::parse(value);
            } catch (const std::invalid_argument& err) {
              throw ConfigError("invalid value for '" + std::string(key) + "': " + err.what());
            }
          } else {
            this->*member = parse_number<T>(key, value);
          }
        },
        e.field);
    return;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::string SimConfig::get(std::string_view key) const {
  for (const auto& e : entries()) {
    if (e.key != key) continue;
    return std::visit(
        [&](auto member) -> std::string {
          using T = std::remove_cvref_t<decltype(this->*member)>;
          if constexpr (std::is_same_v<T, Rate>) {
            return (this->*member).to_string();
          } else if constexpr (std::is_floating_point_v<T>) {
            return csv::format(this->*member);
          } else {
            return std::to_string(this->*member);
          }
        },
        e.field);
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

const std::vector<std::string_view>& SimConfig::keys() {
  static const std::vector<std::string_view> k = [] {
    std::vector<std::string_view> out;
    for (const auto& e : entries()) out.push_back(e.key);
    return out;
  }();
  return k;
}

void SimConfig::validate() const {
  auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
  require(n >= 1, "n must be >= 1");
  require(m >= 1 && m <= n, "m must satisfy 1 <= m <= n");
  require(finite_pos(w1_max), "w1_max must be positive");
  require(finite_pos(w2_max), "w2_max must be positive");
  require(finite_pos(u_max), "u_max must be positive");
  require(tau_max >= 1, "tau_max must be >= 1");
  require(finite_pos(sigma_epsilon), "sigma_epsilon must be positive");
  require(finite_pos(est) && est <= 1.0, "est must be in (0, 1]");
  require(finite_pos(delta_p), "delta_p must be positive");
  require(finite_pos(p_f), "p_f must be positive");
  require(t_l >= 1, "t_l must be >= 1");
  require(t_c >= 1, "t_c must be >= 1");
  require(finite_pos(k_l), "k_l must be positive");
  require(std::isfinite(delta_l) && delta_l >= 0.0 && delta_l <= 1.0, "delta_l must be in [0, 1]");
  require(finite_pos(w_m), "w_m must be positive");
  require(re_m > Rate{}, "re_m must be positive");
  require(r_ex > Rate{}, "r_ex must be positive");
  require(t_end >= 0, "t_end must be >= 0");
}

SimConfig parse_config(std::string_view text, SimConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      base.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config_file(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace mtsim
