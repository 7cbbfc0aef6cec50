// Acceptance suite: end-to-end checks of the analytic model, the simulator,
// the pairing algorithms and the CLI against each other. Each criterion
// prints exactly one [PASS]/[FAIL] line; the process exits nonzero if any
// criterion fails. All tolerances and sample sizes are pinned below.

#include <comp2flex/analytic.hpp>
#include <comp2flex/cli.hpp>
#include <comp2flex/montecarlo.hpp>
#include <comp2flex/pairing.hpp>

#include "shotnoise_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace comp2flex;

constexpr std::uint64_t kSeed = 20240814;

// Machine-precision allowance for algebraic identities (a few ulp at the
// 0.0075/km^2 scale of the default densities).
constexpr double kIdentityTol = 5e-17;

// Closed form vs general quadrature, relative.
constexpr double kClosedFormRelTol = 1e-6;

// Shot-noise oracle agreement, in oracle standard errors. Truncation radii
// below keep the discarded-tail bias under ~0.4 standard errors.
constexpr double kOracleSigmas = 3.0;
constexpr std::size_t kOracleSamples = 120000;

// Analytic vs simulated success probability, absolute, at 2000 drops.
constexpr double kAnalyticSimTol = 0.10;
constexpr int kConsistencyDrops = 2000;

// DL scheme agreement (success probability, absolute).
constexpr double kDlSchemeGapTol = 0.05;

// Greedy vs Edmonds success gap under matched seeds, absolute.
constexpr double kPairingGapTol = 0.05;
constexpr int kPairingDrops = 600;

// Timing comparison.
constexpr double kBenchMinRatio = 10.0;

// Throughput sweep. The UL monotonicity allowance absorbs Monte Carlo
// noise at kThroughputDrops (about three standard errors of an
// adjacent-point difference); real upward drift would exceed it.
constexpr int kThroughputDrops = 800;
constexpr double kUlMonotoneTol = 0.015;
constexpr double kDlThroughputGapTol = 0.1;

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

SystemParams default_params() {
  SystemParams p;
  p.seed = kSeed;
  return p;
}

const std::vector<double> kBetaGridDb = {-15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0};
const std::vector<double> kDeltaGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

// ---- criterion 1: interferer density identities --------------------------

Outcome criterion_densities() {
  Outcome out;
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double delta = 0.1 * i;
    const double lambda = 0.02;
    const InterfererDensities d = interferer_densities(delta, lambda);
    // References written with a different association than the library.
    const double psi_ref = lambda * delta * (1.0 - 0.5 * delta);
    const double phi_ref = lambda * 0.5 * (1.0 - delta) * (1.0 + delta);
    worst = std::max({worst, std::abs(d.lambda_psi - psi_ref),
                      std::abs(d.lambda_phi - phi_ref)});
  }
  const InterfererDensities mid = interferer_densities(0.5, 0.02);
  worst = std::max({worst, std::abs(mid.lambda_psi - 0.0075),
                    std::abs(mid.lambda_phi - 0.0075)});
  if (worst > kIdentityTol)
    out.fail(fmt("max deviation %.3g exceeds %.3g", worst, kIdentityTol));
  else
    out.detail = fmt("max deviation %.3g over delta grid, both 0.0075 at delta=0.5", worst);
  return out;
}

// ---- criterion 2: closed forms vs general quadrature ----------------------

Outcome criterion_closed_forms() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const SystemParams p = default_params();
  const InterfererDensities dens = interferer_densities(p.delta, p.lambda_b);
  QuadratureSpec closed_spec;
  QuadratureSpec general_spec;
  general_spec.prefer_closed_forms = false;

  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0, 5.0}) {
    for (double beta : {0.1, 1.0, 10.0}) {
      SystemParams q = p;
      q.beta_u = q.beta_d = beta;
      const double pairs[3][2] = {
          {closed_form_dl_psi(r, q, dens), laplace_dl_psi(r, q, dens, general_spec)},
          {closed_form_dl_phi(r, q, dens), laplace_dl_phi(r, q, dens, general_spec)},
          {laplace_ul_phi(r, q, dens, closed_spec), laplace_ul_phi(r, q, dens, general_spec)},
      };
      for (const auto& pair : pairs)
        worst = std::max(worst, std::abs(pair[0] - pair[1]) / std::abs(pair[1]));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (worst > kClosedFormRelTol)
    out.fail(fmt("max relative gap %.3g exceeds %.3g", worst, kClosedFormRelTol));
  if (seconds >= 10.0) out.fail(fmt("runtime %.1fs exceeds the 10s budget", seconds));
  if (out.pass)
    out.detail = fmt("max relative gap %.3g over 12 (r, beta) points x 3 functionals", worst);
  return out;
}

// ---- criterion 3: shot-noise Monte Carlo oracle ---------------------------

Outcome criterion_shot_noise() {
  Outcome out;
  const SystemParams p = default_params();
  const InterfererDensities dens = interferer_densities(p.delta, p.lambda_b);
  const QuadratureSpec spec;
  Rng rng = derive_stream(kSeed, 0, Stream::Oracle);

  struct Config {
    const char* name;
    double r;
    bool psi;  // second-nearest exclusion + BS power ratio
    double truncation_radius;
  };
  // Radii keep the tail bias bound c * density * pi / R^2 at or below
  // ~0.4 oracle standard errors per configuration.
  const Config configs[] = {
      {"phi r=1", 1.0, false, 40.0},
      {"phi r=2", 2.0, false, 100.0},
      {"psi r=1", 1.0, true, 200.0},
      {"psi r=2", 2.0, true, 310.0},
  };

  double worst_z = 0.0;
  for (const Config& cfg : configs) {
    const double power_ratio = cfg.psi ? p.p_b / p.p_m : 1.0;
    const double c = power_ratio * p.beta_u * std::pow(cfg.r, p.alpha);
    const double density = cfg.psi ? dens.lambda_psi : dens.lambda_phi;
    const double analytic = cfg.psi ? laplace_ul_psi(cfg.r, p, dens, spec)
                                    : laplace_ul_phi(cfg.r, p, dens, spec);
    oracle::ShotNoiseEstimate mc;
    if (cfg.psi) {
      mc = oracle::laplace_shot_noise(
          density, c, p.alpha, cfg.truncation_radius, kOracleSamples, rng,
          [&] { return oracle::sample_second_nearest(p.lambda_b, rng); });
    } else {
      mc = oracle::laplace_shot_noise(density, c, p.alpha, cfg.truncation_radius,
                                      kOracleSamples, rng, [&] { return cfg.r; });
    }
    const double z = std::abs(mc.mean - analytic) / mc.std_error;
    worst_z = std::max(worst_z, z);
    if (z > kOracleSigmas)
      out.fail(fmt("%s: |%.6f - %.6f| = %.1f se", cfg.name, mc.mean, analytic, z));
  }
  if (out.pass)
    out.detail = fmt("max |z| %.2f se over 4 configurations, %zu samples each", worst_z,
                     kOracleSamples);
  return out;
}

// ---- criteria 4 and 5: success curves vs analytic and across schemes ------

struct SuccessTable {
  // per direction: beta -> (p, half-width)
  std::map<std::pair<int, double>, std::pair<double, double>> cells;

  void load(const SuccessCurve& curve) {
    for (const auto& row : curve) {
      const int dir = row.direction == Direction::Ul ? 0 : 1;
      cells[{dir, row.beta_db}] = {row.p_success, 0.5 * (row.ci_high - row.ci_low)};
    }
  }
  double p(int dir, double beta) const { return cells.at({dir, beta}).first; }
  double hw(int dir, double beta) const { return cells.at({dir, beta}).second; }
};

struct SchemeRuns {
  SuccessTable comp2flex, comp_only, compflex_only;
};

SchemeRuns run_success_curves() {
  SystemParams p = default_params();
  p.iterations = kConsistencyDrops;
  SchemeRuns runs;
  runs.comp2flex.load(estimate_success(p, Scheme::Comp2flex, PairingAlgo::Greedy, kBetaGridDb));
  runs.comp_only.load(estimate_success(p, Scheme::CompOnly, PairingAlgo::Greedy, kBetaGridDb));
  runs.compflex_only.load(
      estimate_success(p, Scheme::CompflexOnly, PairingAlgo::Greedy, kBetaGridDb));
  return runs;
}

Outcome criterion_analytic_vs_sim(const SchemeRuns& runs) {
  Outcome out;
  const QuadratureSpec spec;
  double worst = 0.0;
  std::vector<double> analytic[2], simulated[2];
  for (double beta : kBetaGridDb) {
    SystemParams q = default_params();
    q.beta_u = q.beta_d = db_to_linear(beta);
    analytic[0].push_back(success_ul(q, spec));
    analytic[1].push_back(success_dl(q, spec));
    simulated[0].push_back(runs.comp2flex.p(0, beta));
    simulated[1].push_back(runs.comp2flex.p(1, beta));
  }
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t i = 0; i < kBetaGridDb.size(); ++i) {
      worst = std::max(worst, std::abs(analytic[dir][i] - simulated[dir][i]));
      if (i > 0) {
        if (analytic[dir][i] > analytic[dir][i - 1])
          out.fail(fmt("analytic %s not monotone at %g dB", dir ? "dl" : "ul",
                       kBetaGridDb[i]));
        if (simulated[dir][i] > simulated[dir][i - 1])
          out.fail(fmt("simulated %s not monotone at %g dB", dir ? "dl" : "ul",
                       kBetaGridDb[i]));
      }
    }
  }
  if (worst > kAnalyticSimTol)
    out.fail(fmt("max |analytic - simulated| %.3f exceeds %.2f", worst, kAnalyticSimTol));
  if (out.pass)
    out.detail = fmt("max |analytic - simulated| %.3f over 14 points, both monotone", worst);
  return out;
}

Outcome criterion_scheme_ordering(const SchemeRuns& runs) {
  Outcome out;
  double worst_dl_gap = 0.0, min_ul_margin = 1.0;
  for (double beta : kBetaGridDb) {
    const double ul_c2f = runs.comp2flex.p(0, beta);
    const double ul_rival = std::max(runs.comp_only.p(0, beta), runs.compflex_only.p(0, beta));
    const double ul_margin = ul_c2f - (ul_rival - runs.comp2flex.hw(0, beta));
    min_ul_margin = std::min(min_ul_margin, ul_margin);
    if (ul_margin < 0.0)
      out.fail(fmt("ul ordering violated at %g dB (margin %.4f)", beta, ul_margin));

    const double dl_c2f = runs.comp2flex.p(1, beta);
    const double dl_co = runs.comp_only.p(1, beta);
    const double dl_cfo = runs.compflex_only.p(1, beta);
    worst_dl_gap = std::max(worst_dl_gap, std::abs(dl_c2f - dl_co));
    if (std::abs(dl_c2f - dl_co) > kDlSchemeGapTol)
      out.fail(fmt("dl gap %.3f at %g dB exceeds %.2f", std::abs(dl_c2f - dl_co), beta,
                   kDlSchemeGapTol));
    const double hw = runs.compflex_only.hw(1, beta);
    if (dl_c2f <= dl_cfo - hw || dl_co <= dl_cfo - hw)
      out.fail(fmt("dl comp2flex/comp-only do not exceed compflex-only at %g dB", beta));
  }
  if (out.pass)
    out.detail = fmt("min ul margin %.3f, max dl |comp2flex - comp-only| gap %.3f",
                     min_ul_margin, worst_dl_gap);
  return out;
}

// ---- criterion 6: matching algorithms vs oracle ----------------------------

Outcome criterion_matching() {
  Outcome out;
  Rng rng = derive_stream(kSeed, 1, Stream::Oracle);

  int graphs_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    WeightedGraph g;
    g.n = 2 + static_cast<int>(rng.uniform_int(7));  // 2..8 vertices
    const bool tie_heavy = trial % 2 == 1;
    for (int u = 0; u < g.n; ++u) {
      for (int v = u + 1; v < g.n; ++v) {
        if (rng.uniform01() < 0.5) continue;
        const double w = tie_heavy ? 0.1 * (1.0 + rng.uniform_int(10)) : rng.uniform01();
        g.edges.push_back({u, v, w});
      }
    }
    const Matching exact = brute_force_matching(g);
    const Matching blossom = edmonds_pair(g);
    if (!matching_is_valid(g, blossom)) {
      out.fail(fmt("edmonds produced an invalid matching on trial %d", trial));
      break;
    }
    if (blossom.pairs.size() != exact.pairs.size()) {
      out.fail(fmt("cardinality mismatch on trial %d (%zu vs %zu)", trial,
                   blossom.pairs.size(), exact.pairs.size()));
      break;
    }
    if (std::abs(matching_weight(g, blossom) - matching_weight(g, exact)) > 1e-8) {
      out.fail(fmt("weight mismatch on trial %d", trial));
      break;
    }
    ++graphs_checked;
  }

  // Geometric instances: greedy validity/maximality on the Delaunay graph
  // and the cardinality relation against Edmonds.
  int instances = 0;
  for (double lambda : {0.005, 0.02, 0.04}) {
    for (int drop = 0; drop < 20 && out.pass; ++drop) {
      Rng geo = derive_stream(kSeed, 100 + instances, Stream::Geometry);
      Rng pair_rng = derive_stream(kSeed, 100 + instances, Stream::Pairing);
      PointSet bs = sample_ppp(lambda, 80.0, geo);
      if (bs.size() < 3) continue;
      const Deployment dep = build_deployment(bs, geo);
      const WeightedGraph graph = delaunay_graph(dep);
      const Matching greedy = greedy_pair(dep, pair_rng);
      if (!matching_is_valid(graph, greedy)) {
        out.fail(fmt("greedy matching invalid at density %g drop %d", lambda, drop));
        break;
      }
      std::vector<char> paired(graph.n, 0);
      for (auto [u, v] : greedy.pairs) paired[u] = paired[v] = 1;
      for (const auto& e : graph.edges) {
        if (!paired[e.u] && !paired[e.v]) {
          out.fail(fmt("greedy matching not maximal at density %g drop %d", lambda, drop));
          break;
        }
      }
      const Matching blossom = edmonds_pair(graph);
      if (blossom.pairs.size() < greedy.pairs.size())
        out.fail(fmt("edmonds matched fewer pairs than greedy at density %g drop %d", lambda,
                     drop));
      ++instances;
    }
  }
  if (out.pass)
    out.detail = fmt("%d random graphs vs brute force, %d geometric instances", graphs_checked,
                     instances);
  return out;
}

// ---- criterion 7: greedy vs Edmonds success curves -------------------------

Outcome criterion_pairing_curves() {
  Outcome out;
  SystemParams p = default_params();
  p.iterations = kPairingDrops;
  const PairingSweep sweep = sweep_greedy_vs_edmonds(p, kBetaGridDb);
  SuccessTable greedy, edmonds;
  greedy.load(sweep.greedy);
  edmonds.load(sweep.edmonds);

  double worst = 0.0;
  for (int dir = 0; dir < 2; ++dir) {
    for (double beta : kBetaGridDb) {
      const double gap = std::abs(greedy.p(dir, beta) - edmonds.p(dir, beta));
      worst = std::max(worst, gap);
      if (gap > kPairingGapTol)
        out.fail(fmt("%s gap %.3f at %g dB exceeds %.2f", dir ? "dl" : "ul", gap, beta,
                     kPairingGapTol));
    }
  }
  if (out.pass) out.detail = fmt("max |greedy - edmonds| %.3f over 14 points", worst);
  return out;
}

// ---- criterion 8: pairing run-time comparison ------------------------------

Outcome criterion_bench() {
  Outcome out;
  const std::vector<double> densities = {0.002, 0.0115, 0.021, 0.0305, 0.04};
  const auto table = bench_pairing(densities, 3, 150.0, kSeed);

  double min_ratio_above = 1e300;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const TimingRow& row = table[i];
    if (row.greedy_seconds >= row.edmonds_seconds)
      out.fail(fmt("greedy not faster at density %g", row.density));
    if (row.density >= 0.0115) {
      const double ratio = row.edmonds_seconds / row.greedy_seconds;
      min_ratio_above = std::min(min_ratio_above, ratio);
      if (ratio < kBenchMinRatio)
        out.fail(fmt("ratio %.1f at density %g below %.0f", ratio, row.density,
                     kBenchMinRatio));
    }
    if (i > 0 && table[i].edmonds_seconds <= table[i - 1].edmonds_seconds)
      out.fail(fmt("edmonds time not increasing at density %g", row.density));
  }
  if (out.pass)
    out.detail = fmt("greedy faster at all 5 densities, min ratio %.0fx above 0.0115",
                     min_ratio_above);
  return out;
}

// ---- criterion 9: throughput sweep ----------------------------------------

Outcome criterion_throughput() {
  Outcome out;
  SystemParams p = default_params();
  p.iterations = kThroughputDrops;

  // tp[scheme][direction][delta index]
  std::vector<double> tp[3][2];
  const Scheme schemes[3] = {Scheme::Comp2flex, Scheme::CompOnly, Scheme::CompflexOnly};
  for (int s = 0; s < 3; ++s) {
    const ThroughputCurve curve =
        estimate_throughput(p, schemes[s], kDeltaGrid, 10.0, PairingAlgo::Greedy);
    for (std::size_t i = 0; i < kDeltaGrid.size(); ++i) {
      for (const auto& row : curve) {
        if (row.delta != kDeltaGrid[i]) continue;
        tp[s][row.direction == Direction::Ul ? 0 : 1].push_back(row.throughput_bps_hz);
      }
    }
  }

  // (a) UL non-increasing toward delta -> 1, within the noise allowance
  // (checked against the running minimum so drift cannot accumulate).
  double worst_rise = 0.0;
  for (int s = 0; s < 3; ++s) {
    double running_min = tp[s][0][0];
    for (std::size_t i = 1; i < kDeltaGrid.size(); ++i) {
      const double rise = tp[s][0][i] - running_min;
      worst_rise = std::max(worst_rise, rise);
      if (rise > kUlMonotoneTol)
        out.fail(fmt("%s ul rises %.4f above its minimum at delta=%.1f",
                     to_string(schemes[s]).c_str(), rise, kDeltaGrid[i]));
      running_min = std::min(running_min, tp[s][0][i]);
    }
  }

  // (b) UL compflex-only >= comp-only for small delta.
  for (std::size_t i = 0; i < 3; ++i) {  // delta 0.1, 0.2, 0.3
    if (tp[2][0][i] < tp[1][0][i])
      out.fail(fmt("ul compflex-only %.3f < comp-only %.3f at delta=%.1f", tp[2][0][i],
                   tp[1][0][i], kDeltaGrid[i]));
  }

  // (c) DL comp2flex vs comp-only agreement.
  double worst_dl_gap = 0.0;
  for (std::size_t i = 0; i < kDeltaGrid.size(); ++i) {
    const double gap = std::abs(tp[0][1][i] - tp[1][1][i]);
    worst_dl_gap = std::max(worst_dl_gap, gap);
    if (gap > kDlThroughputGapTol)
      out.fail(fmt("dl gap %.3f at delta=%.1f exceeds %.1f", gap, kDeltaGrid[i],
                   kDlThroughputGapTol));
  }

  // (d) a perpetually successful time-shared link carries exactly half a
  // CompFlex link's rate through the throughput formula.
  const double rate = std::log2(1.0 + db_to_linear(10.0));
  const double time_shared = duty_factor(PairModeKind::DlComp) * rate;
  const double full = duty_factor(PairModeKind::CompFlex) * rate;
  if (time_shared != 0.5 * full || duty_factor(PairModeKind::UlComp) * rate != 0.5 * full)
    out.fail("time-shared rate is not exactly half the full-duty rate");

  if (out.pass)
    out.detail = fmt("max ul rise %.4f, max dl gap %.3f, half-rate identity exact", worst_rise,
                     worst_dl_gap);
  return out;
}

// ---- criterion 10: byte-identical CSV output -------------------------------

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli_quiet(std::vector<std::string> args) {
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  const int code = cli::run(std::move(args));
  std::cout.rdbuf(old);
  return code;
}

Outcome criterion_reproducibility() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "comp2flex_acceptance";
  fs::create_directories(dir);

  struct Job {
    const char* label;
    std::vector<std::string> base;
  };
  const Job jobs[] = {
      {"sweep-beta",
       {"sweep-beta", "--scheme", "comp2flex", "--iterations", "150", "--seed", "4242",
        "--beta-db", "0,10"}},
      {"sweep-delta",
       {"sweep-delta", "--scheme", "compflex-only", "--iterations", "100", "--seed", "777",
        "--delta", "0.3,0.7"}},
  };

  for (const Job& job : jobs) {
    std::string content[3];
    const char* suffix[3] = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
      const fs::path file = dir / (std::string(job.label) + "_" + suffix[i] + ".csv");
      auto args = job.base;
      args.insert(args.end(), {"--out", file.string()});
      if (i == 2) args.insert(args.end(), {"--threads", "4"});
      if (run_cli_quiet(args) != 0) {
        out.fail(fmt("%s run %d exited nonzero", job.label, i));
        break;
      }
      content[i] = slurp(file);
    }
    if (!out.pass) break;
    if (content[0].empty() || content[0] != content[1])
      out.fail(fmt("%s: repeat run differs", job.label));
    if (content[0] != content[2]) out.fail(fmt("%s: threads=4 run differs", job.label));
  }

  std::error_code ec;
  fs::remove_all(dir, ec);
  if (out.pass)
    out.detail = "sweep-beta and sweep-delta byte-identical across reruns and threads=4";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::function<Outcome()> run;
  };

  SchemeRuns runs;  // shared by criteria 4 and 5 (one matched-seed batch)
  bool runs_ready = false;
  auto ensure_runs = [&] {
    if (!runs_ready) {
      runs = run_success_curves();
      runs_ready = true;
    }
  };

  const std::vector<Criterion> criteria = {
      {1, "interferer density identities", [] { return criterion_densities(); }},
      {2, "closed forms vs general quadrature", [] { return criterion_closed_forms(); }},
      {3, "shot-noise Monte Carlo oracle", [] { return criterion_shot_noise(); }},
      {4, "analytic vs simulated success curves",
       [&] {
         ensure_runs();
         return criterion_analytic_vs_sim(runs);
       }},
      {5, "scheme ordering at delta=0.5",
       [&] {
         ensure_runs();
         return criterion_scheme_ordering(runs);
       }},
      {6, "matching algorithms vs oracle", [] { return criterion_matching(); }},
      {7, "greedy vs edmonds success curves", [] { return criterion_pairing_curves(); }},
      {8, "pairing run-time comparison", [] { return criterion_bench(); }},
      {9, "throughput sweep", [] { return criterion_throughput(); }},
      {10, "byte-identical CSV reproducibility", [] { return criterion_reproducibility(); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = fmt("exception: %s", e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                c.number, c.title, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }

  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
