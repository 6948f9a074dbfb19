#include "hphs/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "hphs/report.hpp"

namespace hphs {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is not available on every toolchain we build with.
  std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) {
    throw ConfigError("invalid number for " + std::string(key) + ": '" + s + "'");
  }
  return d;
}

long long to_int(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

struct Key {
  const char* name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define HPHS_DOUBLE_KEY(NAME, FIELD)                                                          \
  Key {                                                                                       \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_double(NAME, v); },             \
        [](const RunConfig& c) { return format_number(c.FIELD); }                             \
  }
#define HPHS_INT_KEY(NAME, FIELD, TYPE)                                                       \
  Key {                                                                                       \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = static_cast<TYPE>(to_int(NAME, v)); }, \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                            \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      HPHS_DOUBLE_KEY("map.resolution", resolution),
      HPHS_INT_KEY("sensor.beams", beams, int),
      HPHS_DOUBLE_KEY("sensor.max_range", max_range),
      HPHS_INT_KEY("planner.clearance", clearance, int),
      HPHS_DOUBLE_KEY("sampler.r_gap", sampler.r_gap),
      Key{"sampler.theta_inf_deg",
          [](RunConfig& c, std::string_view v) { c.sampler.theta_inf = to_double("sampler.theta_inf_deg", v) * kDeg; },
          [](const RunConfig& c) { return format_number(c.sampler.theta_inf / kDeg); }},
      HPHS_DOUBLE_KEY("sampler.d_s", sampler.d_s),
      HPHS_DOUBLE_KEY("sampler.clearance_radius", sampler.clearance_radius),
      HPHS_DOUBLE_KEY("sampler.dedup_radius", sampler.dedup_radius),
      HPHS_INT_KEY("subregion.n_w", n_w, int),
      HPHS_INT_KEY("subregion.n_h", n_h, int),
      HPHS_DOUBLE_KEY("sequence.lambda1", sequence.lambda1),
      HPHS_DOUBLE_KEY("sequence.lambda2", sequence.lambda2),
      HPHS_DOUBLE_KEY("sequence.lambda3", sequence.lambda3),
      HPHS_INT_KEY("sequence.exhaustive_limit", sequence_options.exhaustive_limit, std::size_t),
      Key{"sequence.force_heuristic",
          [](RunConfig& c, std::string_view v) {
            c.sequence_options.force_heuristic = to_bool("sequence.force_heuristic", v);
          },
          [](const RunConfig& c) { return std::string(c.sequence_options.force_heuristic ? "true" : "false"); }},
      HPHS_DOUBLE_KEY("weights.tau1", gains.tau1),
      HPHS_DOUBLE_KEY("weights.tau2", gains.tau2),
      HPHS_DOUBLE_KEY("weights.tau3", gains.tau3),
      HPHS_INT_KEY("weights.kernel_k", gains.kernel_k, int),
      HPHS_DOUBLE_KEY("weights.s_occupied", gains.s_occupied),
      HPHS_DOUBLE_KEY("weights.s_free", gains.s_free),
      HPHS_DOUBLE_KEY("weights.s_unknown", gains.s_unknown),
      HPHS_DOUBLE_KEY("run.speed", speed),
      HPHS_INT_KEY("run.replan_interval", replan_interval, int),
      HPHS_INT_KEY("run.max_steps", max_steps, int),
      HPHS_DOUBLE_KEY("run.start_jitter", start_jitter),
      Key{"run.log_gains", [](RunConfig& c, std::string_view v) { c.log_gains = to_bool("run.log_gains", v); },
          [](const RunConfig& c) { return std::string(c.log_gains ? "true" : "false"); }},
  };
  return table;
}

#undef HPHS_DOUBLE_KEY
#undef HPHS_INT_KEY

}  // namespace

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  for (const Key& k : keys()) {
    if (key == k.name) {
      k.set(config, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Key& k : keys()) out.emplace_back(k.name);
  return out;
}

std::string format_config(const RunConfig& config) {
  std::string out;
  for (const Key& k : keys()) out += std::string(k.name) + " = " + k.get(config) + "\n";
  return out;
}

}  // namespace hphs
