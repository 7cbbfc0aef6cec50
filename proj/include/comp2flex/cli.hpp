#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "comp2flex/analytic.hpp"
#include "comp2flex/csv.hpp"
#include "comp2flex/geometry.hpp"
#include "comp2flex/montecarlo.hpp"
#include "comp2flex/pairing.hpp"
#include "comp2flex/params.hpp"
#include "comp2flex/quadrature.hpp"
#include "comp2flex/scenario.hpp"

namespace comp2flex::cli {

namespace detail {

inline const std::vector<double> kBetaGrid = {-15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0};
inline const std::vector<double> kDeltaGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
inline const std::vector<double> kBenchDensities = {0.002, 0.0115, 0.021, 0.0305, 0.04};

inline std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError("bad value '" + token + "' in " + flag);
    }
  }
  if (values.empty()) throw ConfigError(flag + " needs at least one value");
  return values;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

// Option storage plus the CLI11 handles needed to tell explicit flags from
// defaults. One instance is attached per subcommand.
struct RawArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::string scheme;
  std::string pairing;
  std::string direction;
  std::string beta_list;
  std::string delta_list;
  std::string out;
  std::string preset;
  unsigned threads = 1;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* scheme_opt = nullptr;
  CLI::Option* pairing_opt = nullptr;
  CLI::Option* direction_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* preset_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key = value lines)");
    seed_opt = cmd->add_option("--seed", seed, "master RNG seed");
    iterations_opt = cmd->add_option("--iterations", iterations, "Monte Carlo drops");
    scheme_opt = cmd->add_option("--scheme", scheme,
                                 "comp2flex, comp-only, compflex-only or all");
    pairing_opt = cmd->add_option("--pairing", pairing, "greedy or edmonds");
    direction_opt = cmd->add_option("--direction", direction, "ul, dl or both");
    beta_opt = cmd->add_option("--beta-db", beta_list, "comma-separated thresholds in dB");
    delta_opt = cmd->add_option("--delta", delta_list, "comma-separated DL traffic ratios");
    out_opt = cmd->add_option("--out", out, "output CSV path");
    preset_opt = cmd->add_option("--preset", preset, "fig2, fig3, fig4, fig5 or table2");
    cmd->add_option("--threads", threads, "worker threads for Monte Carlo");
  }
};

// Everything a subcommand needs after defaults, config file, preset and
// explicit flags have been layered in that order.
struct Plan {
  SystemParams params;
  std::string scheme = "all";
  PairingAlgo pairing = PairingAlgo::Greedy;
  std::string direction = "both";
  std::vector<double> betas = kBetaGrid;
  std::vector<double> deltas = kDeltaGrid;
  std::string out;
  std::string preset;
  unsigned threads = 1;
  bool with_analytic = false;  // fig2/fig3 overlay rows
};

inline Plan resolve(const RawArgs& raw, const std::string& subcommand) {
  Plan plan;
  std::string config_text;
  if (!raw.config_path.empty()) config_text = read_text_file(raw.config_path);
  plan.params = from_config(config_text);

  // Keys the params parser recognizes but does not consume.
  const auto doc = parse_config_doc(config_text);
  if (auto it = doc.find("scheme"); it != doc.end()) plan.scheme = it->second;
  if (auto it = doc.find("pairing"); it != doc.end())
    plan.pairing = pairing_from_string(it->second);
  if (auto it = doc.find("direction"); it != doc.end()) plan.direction = it->second;

  if (!raw.preset.empty()) {
    plan.preset = raw.preset;
    const std::string expected = raw.preset == "fig2" || raw.preset == "fig3"
                                     ? "sweep-beta"
                                     : raw.preset == "fig4"   ? "compare-pairing"
                                       : raw.preset == "fig5" ? "sweep-delta"
                                       : raw.preset == "table2" ? "bench-pairing"
                                                                : "";
    if (expected.empty()) throw ConfigError("unknown preset '" + raw.preset + "'");
    if (expected != subcommand)
      throw ConfigError("preset '" + raw.preset + "' belongs to subcommand " + expected);
    if (raw.preset == "fig2" || raw.preset == "fig3") {
      plan.direction = raw.preset == "fig2" ? "ul" : "dl";
      plan.scheme = "all";
      plan.with_analytic = true;
    }
    plan.out = raw.preset + ".csv";
  }

  if (raw.seed_opt && raw.seed_opt->count()) plan.params.seed = raw.seed;
  if (raw.iterations_opt && raw.iterations_opt->count()) plan.params.iterations = raw.iterations;
  if (raw.scheme_opt && raw.scheme_opt->count()) plan.scheme = raw.scheme;
  if (raw.pairing_opt && raw.pairing_opt->count())
    plan.pairing = pairing_from_string(raw.pairing);
  if (raw.direction_opt && raw.direction_opt->count()) plan.direction = raw.direction;
  if (raw.beta_opt && raw.beta_opt->count())
    plan.betas = parse_list(raw.beta_list, "--beta-db");
  if (raw.delta_opt && raw.delta_opt->count())
    plan.deltas = parse_list(raw.delta_list, "--delta");
  if (raw.out_opt && raw.out_opt->count()) plan.out = raw.out;
  plan.threads = std::max(1u, raw.threads);

  if (plan.out.empty()) {
    plan.out = subcommand + ".csv";
    std::replace(plan.out.begin(), plan.out.end(), '-', '_');
  }
  if (plan.direction != "ul" && plan.direction != "dl" && plan.direction != "both")
    throw ConfigError("unknown direction '" + plan.direction + "' (expected ul, dl or both)");
  validate(plan.params);
  return plan;
}

inline bool direction_selected(const Plan& plan, Direction d) {
  return plan.direction == "both" || plan.direction == to_string(d);
}

inline std::vector<Scheme> selected_schemes(const Plan& plan) {
  if (plan.scheme == "all")
    return {Scheme::Comp2flex, Scheme::CompOnly, Scheme::CompflexOnly};
  return {scheme_from_string(plan.scheme)};
}

inline void erase_unselected(SuccessCurve& curve, const Plan& plan) {
  std::erase_if(curve, [&](const SuccessRow& r) { return !direction_selected(plan, r.direction); });
}

inline void print_curve_summaries(const SuccessCurve& curve, const std::string& label) {
  for (std::size_t i = 0; i < curve.size();) {
    std::size_t j = i;
    while (j < curve.size() && curve[j].scheme == curve[i].scheme &&
           curve[j].direction == curve[i].direction)
      ++j;
    const auto& first = curve[i];
    const auto& last = curve[j - 1];
    std::cout << label << " scheme=" << to_string(first.scheme)
              << " direction=" << to_string(first.direction) << " points=" << (j - i)
              << " p(" << first.beta_db << "dB)=" << first.p_success << " p(" << last.beta_db
              << "dB)=" << last.p_success << "\n";
    i = j;
  }
}

inline SuccessCurve analytic_curve(const SystemParams& base, const Plan& plan) {
  const QuadratureSpec spec;
  SuccessCurve rows;
  for (Direction dir : {Direction::Ul, Direction::Dl}) {
    if (!direction_selected(plan, dir)) continue;
    for (double beta_db : plan.betas) {
      SystemParams p = base;
      const double beta = db_to_linear(beta_db);
      p.beta_u = p.beta_d = beta;
      const double value = dir == Direction::Ul ? success_ul(p, spec) : success_dl(p, spec);
      rows.push_back({Scheme::Comp2flex, dir, beta_db, value, value, value, 0});
    }
  }
  return rows;
}

inline int run_sweep_beta(const Plan& plan) {
  SuccessCurve rows;
  for (Scheme scheme : selected_schemes(plan)) {
    SuccessCurve curve =
        estimate_success(plan.params, scheme, plan.pairing, plan.betas, plan.threads);
    erase_unselected(curve, plan);
    rows.insert(rows.end(), curve.begin(), curve.end());
  }
  print_curve_summaries(rows, "simulated");
  if (plan.with_analytic) {
    const SuccessCurve analytic = analytic_curve(plan.params, plan);
    print_curve_summaries(analytic, "analytic");
    rows.insert(rows.end(), analytic.begin(), analytic.end());
  }
  MetaExtras extras = {{"command", "sweep-beta"},
                       {"pairing", to_string(plan.pairing)},
                       {"direction", plan.direction}};
  if (!plan.preset.empty()) extras.emplace_back("preset", plan.preset);
  write_file(plan.out, success_csv(rows, plan.params, extras));
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

inline int run_analytic(const Plan& plan) {
  if (plan.scheme != "all" && plan.scheme != "comp2flex")
    throw ConfigError("the analytical model covers comp2flex only");
  const SuccessCurve rows = analytic_curve(plan.params, plan);
  print_curve_summaries(rows, "analytic");
  const MetaExtras extras = {{"command", "analytic"}, {"direction", plan.direction}};
  write_file(plan.out, success_csv(rows, plan.params, extras));
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

inline int run_sweep_delta(const Plan& plan) {
  if (plan.betas.size() != 1 && plan.betas != kBetaGrid)
    throw ConfigError("sweep-delta takes a single --beta-db value");
  const double beta_db = plan.betas.size() == 1 ? plan.betas[0] : 10.0;
  ThroughputCurve rows;
  for (Scheme scheme : selected_schemes(plan)) {
    ThroughputCurve curve = estimate_throughput(plan.params, scheme, plan.deltas, beta_db,
                                                plan.pairing, plan.threads);
    std::erase_if(curve,
                  [&](const ThroughputRow& r) { return !direction_selected(plan, r.direction); });
    rows.insert(rows.end(), curve.begin(), curve.end());
    for (std::size_t i = 0; i < curve.size();) {
      std::size_t j = i;
      while (j < curve.size() && curve[j].direction == curve[i].direction) ++j;
      std::cout << "throughput scheme=" << to_string(scheme)
                << " direction=" << to_string(curve[i].direction) << " points=" << (j - i)
                << " t(" << curve[i].delta << ")=" << curve[i].throughput_bps_hz << " t("
                << curve[j - 1].delta << ")=" << curve[j - 1].throughput_bps_hz << "\n";
      i = j;
    }
  }
  MetaExtras extras = {{"command", "sweep-delta"},
                       {"pairing", to_string(plan.pairing)},
                       {"direction", plan.direction},
                       {"beta_db", comp2flex::detail::format_g(beta_db)},
                       {"formula", "duty-indicator-log2-v1"}};
  if (!plan.preset.empty()) extras.emplace_back("preset", plan.preset);
  write_file(plan.out, throughput_csv(rows, plan.params, extras));
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

inline int run_compare_pairing(const Plan& plan) {
  const PairingSweep sweep = sweep_greedy_vs_edmonds(plan.params, plan.betas, plan.threads);
  SuccessCurve greedy = sweep.greedy;
  SuccessCurve edmonds = sweep.edmonds;
  erase_unselected(greedy, plan);
  erase_unselected(edmonds, plan);
  print_curve_summaries(greedy, "greedy");
  print_curve_summaries(edmonds, "edmonds");

  MetaExtras extras = {{"command", "compare-pairing"}, {"direction", plan.direction}};
  if (!plan.preset.empty()) extras.emplace_back("preset", plan.preset);
  std::string out = meta_line(plan.params, extras);
  out += "scheme,direction,beta_db,p_success,ci_low,ci_high,n_samples\n";
  const auto rows_of = [](const SuccessCurve& curve, const std::string& algo) {
    std::string text;
    for (const auto& r : curve) {
      text += to_string(r.scheme) + "/" + algo + ',' + to_string(r.direction) + ',' +
              comp2flex::detail::format_g(r.beta_db) + ',' + comp2flex::detail::format_g(r.p_success) + ',' +
              comp2flex::detail::format_g(r.ci_low) + ',' + comp2flex::detail::format_g(r.ci_high) + ',' +
              std::to_string(r.n_samples) + '\n';
    }
    return text;
  };
  out += rows_of(greedy, "greedy");
  out += rows_of(edmonds, "edmonds");
  write_file(plan.out, out);
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

inline int run_bench_pairing(const Plan& plan) {
  const auto rows =
      bench_pairing(kBenchDensities, 3, plan.params.window_side, plan.params.seed);
  for (const auto& r : rows)
    std::cout << "bench density=" << r.density << " greedy=" << r.greedy_seconds
              << "s edmonds=" << r.edmonds_seconds << "s\n";
  MetaExtras extras = {{"command", "bench-pairing"}, {"repetitions", "3"}};
  write_file(plan.out, timing_csv(rows, plan.params, extras));
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

inline int run_dump_deployment(const Plan& plan) {
  Rng geo = derive_stream(plan.params.seed, 0, Stream::Geometry);
  const PointSet bs = sample_ppp(plan.params.lambda_b, plan.params.window_side, geo);
  if (bs.coords.size() < 3)
    throw ConfigError("deployment draw produced fewer than 3 BSs; enlarge the window");
  const Deployment dep = build_deployment(bs, geo);
  std::size_t interior = 0;
  for (char f : dep.interior) interior += f != 0;
  const MetaExtras extras = {{"command", "dump-deployment"}};
  write_file(plan.out, meta_line(plan.params, extras) + deployment_csv(dep));
  std::cout << "deployment bs=" << dep.bs.coords.size() << " interior=" << interior << "\n";
  std::cout << "wrote " << plan.out << "\n";
  return 0;
}

}  // namespace detail

// Entry point shared by the binary and the tests: args exclude the program
// name. Returns 0 on success, 1 on configuration/usage errors, 2 when the
// quadrature fails to converge.
inline int run(std::vector<std::string> args) {
  CLI::App app{"CoMP2flex: user-centric two-BS cooperation, simulator and calculator",
               "comp2flex"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd = nullptr;
    detail::RawArgs raw;
  };
  const std::vector<std::pair<std::string, std::string>> names = {
      {"sweep-beta", "success probability vs SINR threshold"},
      {"sweep-delta", "throughput vs DL traffic ratio"},
      {"compare-pairing", "greedy vs blossom pairing on shared seeds"},
      {"bench-pairing", "pairing runtime over BS densities"},
      {"analytic", "numerical evaluation of the success expressions"},
      {"dump-deployment", "write one sampled deployment as CSV"},
  };
  std::vector<Sub> subs(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    subs[i].cmd = app.add_subcommand(names[i].first, names[i].second);
    subs[i].raw.attach(subs[i].cmd);
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i].cmd->parsed()) continue;
      const std::string& name = names[i].first;
      const detail::Plan plan = detail::resolve(subs[i].raw, name);
      if (name == "sweep-beta") return detail::run_sweep_beta(plan);
      if (name == "sweep-delta") return detail::run_sweep_delta(plan);
      if (name == "compare-pairing") return detail::run_compare_pairing(plan);
      if (name == "bench-pairing") return detail::run_bench_pairing(plan);
      if (name == "analytic") return detail::run_analytic(plan);
      return detail::run_dump_deployment(plan);
    }
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical non-convergence: " << e.what()
              << " (error estimate " << e.error_estimate << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace comp2flex::cli
