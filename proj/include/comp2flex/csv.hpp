#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "comp2flex/montecarlo.hpp"
#include "comp2flex/pairing.hpp"
#include "comp2flex/params.hpp"
#include "comp2flex/scenario.hpp"

namespace comp2flex {

using MetaExtras = std::vector<std::pair<std::string, std::string>>;

// First line of every artifact: the fully resolved config as key=value
// tokens, plus experiment-specific extras. Deliberately free of anything
// run-dependent (thread count, timestamps) so reruns are byte-identical.
inline std::string meta_line(const SystemParams& p, const MetaExtras& extras) {
  std::string line = "# meta:";
  std::istringstream config(render(p));
  std::string key, eq, value;
  while (config >> key >> eq >> value) line += " " + key + "=" + value;
  for (const auto& [k, v] : extras) line += " " + k + "=" + v;
  line += "\n";
  return line;
}

namespace detail {

inline std::string format_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace detail

inline std::string success_csv(const SuccessCurve& curve, const SystemParams& p,
                               const MetaExtras& extras = {}) {
  std::string out = meta_line(p, extras);
  out += "scheme,direction,beta_db,p_success,ci_low,ci_high,n_samples\n";
  for (const auto& r : curve) {
    out += to_string(r.scheme) + ',' + to_string(r.direction) + ',' +
           detail::format_g(r.beta_db) + ',' + detail::format_g(r.p_success) + ',' +
           detail::format_g(r.ci_low) + ',' + detail::format_g(r.ci_high) + ',' +
           std::to_string(r.n_samples) + '\n';
  }
  return out;
}

inline std::string throughput_csv(const ThroughputCurve& curve, const SystemParams& p,
                                  const MetaExtras& extras = {}) {
  std::string out = meta_line(p, extras);
  out += "scheme,direction,delta,throughput_bps_hz\n";
  for (const auto& r : curve) {
    out += to_string(r.scheme) + ',' + to_string(r.direction) + ',' +
           detail::format_g(r.delta) + ',' + detail::format_g(r.throughput_bps_hz) + '\n';
  }
  return out;
}

inline std::string timing_csv(const std::vector<TimingRow>& rows, const SystemParams& p,
                              const MetaExtras& extras = {}) {
  std::string out = meta_line(p, extras);
  out += "density,greedy_seconds,edmonds_seconds\n";
  for (const auto& r : rows) {
    out += detail::format_g(r.density) + ',' + detail::format_g(r.greedy_seconds) + ',' +
           detail::format_g(r.edmonds_seconds) + '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace comp2flex
