#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace comp2flex {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// What a pair falls back to when the scheme cannot serve its traffic mix:
// Standalone keeps both links alive without cooperation, Silent mutes them.
enum class BaselineFallback : std::uint8_t { Standalone, Silent };

// Model constants shared by the simulator and the analytic expressions.
// Powers are linear watts internally; the config layer speaks dBm/dB.
struct SystemParams {
  double lambda_b = 0.02;   // BS density [1/km^2]
  double delta = 0.5;       // P(a BS has DL traffic)
  double alpha = 4.0;       // path loss exponent
  double p_b = 10.0;        // BS transmit power [W]
  double p_m = 0.1;         // MS transmit power [W]
  double noise = dbm_to_watt(-174.0);  // noise power [W]
  double beta_u = 1.0;      // UL SINR threshold, linear
  double beta_d = 1.0;      // DL SINR threshold, linear
  double window_side = 150.0;  // simulation window side [km]
  int iterations = 10000;   // Monte Carlo drops
  std::uint64_t seed = 1;
  BaselineFallback baseline_fallback = BaselineFallback::Standalone;

  bool operator==(const SystemParams&) const = default;
};

inline void validate(const SystemParams& p) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config: " + key + " " + why);
  };
  if (!(p.lambda_b > 0)) fail("lambda_b", "must be > 0");
  if (!(p.delta >= 0 && p.delta <= 1)) fail("delta", "must be in [0, 1]");
  if (!(p.alpha > 2)) fail("alpha", "must be > 2");
  if (!(p.p_b > 0)) fail("pb", "must be > 0");
  if (!(p.p_m > 0)) fail("pm", "must be > 0");
  if (!(p.noise >= 0)) fail("noise", "must be >= 0");
  if (!(p.beta_u > 0)) fail("beta_u", "must be > 0");
  if (!(p.beta_d > 0)) fail("beta_d", "must be > 0");
  if (!(p.window_side > 0)) fail("window_km", "must be > 0");
  if (p.iterations < 1) fail("iterations", "must be >= 1");
}

inline SystemParams default_paper_params() { return SystemParams{}; }

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " has non-numeric value '" + v + "'");
  }
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: " + key + " has an empty list element");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config: " + key + " has an empty value");
  return out;
}

}  // namespace detail

// Flat "key = value" document with '#' comments. Returns key -> raw value;
// later duplicates win. Shared by from_config and the CLI, which also reads
// experiment keys (scheme, pairing, direction, beta_db lists) from the file.
inline std::map<std::string, std::string> parse_config_doc(const std::string& text) {
  static const char* known[] = {
      "lambda_b", "delta", "alpha", "pb_dbm", "pm_dbm", "noise_dbm",
      "pb_watt", "pm_watt", "noise_watt", "beta_db", "beta_u_db", "beta_d_db",
      "beta_u", "beta_d", "window_km", "iterations", "seed", "scheme",
      "pairing", "direction", "baseline_fallback"};
  std::map<std::string, std::string> doc;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config: unknown key '" + key + "'");
    if (val.empty()) throw ConfigError("config: key '" + key + "' has an empty value");
    doc[key] = val;
  }
  return doc;
}

// Build SystemParams from a config document. Keys not present keep the
// defaults. beta_db applies to both link directions; beta_u_db / beta_d_db
// override one direction, and the *_watt keys take powers in linear watts
// (these are what render() emits, so round-trips are exact).
inline SystemParams from_config(const std::string& text) {
  std::map<std::string, std::string> doc = parse_config_doc(text);
  SystemParams p = default_paper_params();
  auto has = [&](const char* k) { return doc.count(k) != 0; };
  auto num = [&](const char* k) { return detail::parse_double(k, doc.at(k)); };

  if (has("lambda_b")) p.lambda_b = num("lambda_b");
  if (has("delta")) p.delta = num("delta");
  if (has("alpha")) p.alpha = num("alpha");
  if (has("pb_dbm")) p.p_b = dbm_to_watt(num("pb_dbm"));
  if (has("pm_dbm")) p.p_m = dbm_to_watt(num("pm_dbm"));
  if (has("noise_dbm")) p.noise = dbm_to_watt(num("noise_dbm"));
  if (has("pb_watt")) p.p_b = num("pb_watt");
  if (has("pm_watt")) p.p_m = num("pm_watt");
  if (has("noise_watt")) p.noise = num("noise_watt");
  if (has("beta_db")) {
    std::vector<double> betas = detail::parse_double_list("beta_db", doc.at("beta_db"));
    p.beta_u = db_to_linear(betas.front());
    p.beta_d = p.beta_u;
  }
  if (has("beta_u_db")) p.beta_u = db_to_linear(num("beta_u_db"));
  if (has("beta_d_db")) p.beta_d = db_to_linear(num("beta_d_db"));
  if (has("beta_u")) p.beta_u = num("beta_u");
  if (has("beta_d")) p.beta_d = num("beta_d");
  if (has("window_km")) p.window_side = num("window_km");
  if (has("iterations")) {
    double it = num("iterations");
    if (it != std::floor(it)) throw ConfigError("config: iterations must be an integer");
    p.iterations = static_cast<int>(it);
  }
  if (has("seed")) {
    try {
      p.seed = std::stoull(doc.at("seed"));
    } catch (const std::exception&) {
      throw ConfigError("config: seed has non-integer value '" + doc.at("seed") + "'");
    }
  }
  if (has("baseline_fallback")) {
    const std::string& v = doc.at("baseline_fallback");
    if (v == "standalone") p.baseline_fallback = BaselineFallback::Standalone;
    else if (v == "silent") p.baseline_fallback = BaselineFallback::Silent;
    else throw ConfigError("config: baseline_fallback must be standalone|silent");
  }
  validate(p);
  return p;
}

inline std::string format_full(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Exact-round-trip serialization: from_config(render(p)) == p bitwise.
inline std::string render(const SystemParams& p) {
  std::ostringstream os;
  os << "lambda_b = " << format_full(p.lambda_b) << "\n"
     << "delta = " << format_full(p.delta) << "\n"
     << "alpha = " << format_full(p.alpha) << "\n"
     << "pb_watt = " << format_full(p.p_b) << "\n"
     << "pm_watt = " << format_full(p.p_m) << "\n"
     << "noise_watt = " << format_full(p.noise) << "\n"
     << "beta_u = " << format_full(p.beta_u) << "\n"
     << "beta_d = " << format_full(p.beta_d) << "\n"
     << "window_km = " << format_full(p.window_side) << "\n"
     << "iterations = " << p.iterations << "\n"
     << "seed = " << p.seed << "\n"
     << "baseline_fallback = "
     << (p.baseline_fallback == BaselineFallback::Standalone ? "standalone" : "silent")
     << "\n";
  return os.str();
}

}  // namespace comp2flex
