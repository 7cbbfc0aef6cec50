#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "comp2flex/geometry.hpp"
#include "comp2flex/pairing.hpp"
#include "comp2flex/params.hpp"
#include "comp2flex/rng.hpp"
#include "comp2flex/scenario.hpp"

namespace comp2flex {

enum class PairingAlgo { Greedy, Edmonds };

inline std::string to_string(PairingAlgo a) {
  return a == PairingAlgo::Greedy ? "greedy" : "edmonds";
}

inline PairingAlgo pairing_from_string(const std::string& s) {
  if (s == "greedy") return PairingAlgo::Greedy;
  if (s == "edmonds") return PairingAlgo::Edmonds;
  throw ConfigError("unknown pairing algorithm '" + s + "' (expected greedy or edmonds)");
}

struct SuccessRow {
  Scheme scheme = Scheme::Comp2flex;
  Direction direction = Direction::Ul;
  double beta_db = 0.0;
  double p_success = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n_samples = 0;
};

struct ThroughputRow {
  Scheme scheme = Scheme::Comp2flex;
  Direction direction = Direction::Ul;
  double delta = 0.0;
  double throughput_bps_hz = 0.0;
};

using SuccessCurve = std::vector<SuccessRow>;
using ThroughputCurve = std::vector<ThroughputRow>;

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval; stays inside [0,1] and behaves near p = 1, which
// the low-threshold end of the curves reaches.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.96) {
  if (n == 0) return {0.0, 1.0};
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  // The exact bounds at the degenerate estimates are 0 and 1; keep them
  // free of roundoff so threshold sweeps hit clean endpoints.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == n ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

namespace detail {

// Runs fn(drop) once for every drop index. Work is claimed through an
// atomic counter; callers store per-drop results into preallocated slots
// and fold them in index order afterwards, so the thread count never
// changes the outcome.
template <typename Fn>
void run_drops(std::uint64_t n_drops, unsigned threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::uint64_t d = 0; d < n_drops; ++d) fn(d);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t d = next.fetch_add(1);
      if (d >= n_drops) return;
      fn(d);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

struct DropScene {
  Deployment dep;
  std::vector<Direction> traffic;
  std::vector<PairMode> modes;
  std::vector<LinkSample> samples;
  bool valid = false;
};

// One full slot: deployment, pairing, traffic, mode classification, link
// evaluation. Every random input comes from a purpose-specific stream
// derived from (seed, drop), so drops are independent of each other and of
// the processing order, and runs that differ only in the pairing algorithm
// still share deployments, traffic and schedules.
inline DropScene simulate_drop(const SystemParams& p, Scheme scheme, PairingAlgo algo,
                               std::uint64_t drop) {
  DropScene scene;
  Rng geo = derive_stream(p.seed, drop, Stream::Geometry);
  PointSet bs = sample_ppp(p.lambda_b, p.window_side, geo);
  if (bs.coords.size() < 3) return scene;  // degenerate draw, skip the slot
  scene.dep = build_deployment(bs, geo);

  Matching matching;
  if (algo == PairingAlgo::Greedy) {
    Rng pairing_rng = derive_stream(p.seed, drop, Stream::Pairing);
    matching = greedy_pair(scene.dep, pairing_rng);
  } else {
    matching = edmonds_pair(delaunay_graph(scene.dep));
  }

  const std::size_t n = scene.dep.bs.coords.size();
  Rng traffic_rng = derive_stream(p.seed, drop, Stream::Traffic);
  scene.traffic = assign_traffic(n, p.delta, traffic_rng);
  Rng sched_rng = derive_stream(p.seed, drop, Stream::Scheduling);
  scene.modes =
      classify_pairs(n, matching, scene.traffic, scheme, sched_rng, p.baseline_fallback);
  Rng fading_rng = derive_stream(p.seed, drop, Stream::Fading);
  scene.samples = evaluate_links(scene.dep, scene.modes, scene.traffic, p, fading_rng);
  scene.valid = true;
  return scene;
}

inline int dir_index(Direction d) { return d == Direction::Ul ? 0 : 1; }

}  // namespace detail

// Estimates per-direction transmission success probabilities at each
// threshold. The SINR samples do not depend on the threshold, so one pass
// of params.iterations drops serves the whole beta list. Directions with no
// counted links (e.g. UL when delta = 1) produce no rows.
inline SuccessCurve estimate_success(const SystemParams& params, Scheme scheme,
                                     PairingAlgo algo, const std::vector<double>& beta_db,
                                     unsigned threads = 1) {
  validate(params);
  if (params.iterations < 100)
    throw ConfigError("iterations must be >= 100 for a meaningful confidence interval");
  if (beta_db.empty()) throw std::invalid_argument("estimate_success: empty threshold list");

  const std::size_t nb = beta_db.size();
  std::vector<double> beta_lin(nb);
  for (std::size_t b = 0; b < nb; ++b) beta_lin[b] = db_to_linear(beta_db[b]);

  struct Tally {
    std::vector<std::uint64_t> hits;  // indexed b * 2 + direction
    std::uint64_t counted[2] = {0, 0};
  };
  std::vector<Tally> slots(params.iterations);

  detail::run_drops(params.iterations, threads, [&](std::uint64_t d) {
    Tally t;
    t.hits.assign(nb * 2, 0);
    const auto scene = detail::simulate_drop(params, scheme, algo, d);
    if (scene.valid) {
      for (const auto& s : scene.samples) {
        if (!s.counted) continue;
        const int dir = detail::dir_index(s.direction);
        ++t.counted[dir];
        for (std::size_t b = 0; b < nb; ++b)
          if (s.sinr >= beta_lin[b]) ++t.hits[b * 2 + dir];
      }
    }
    slots[d] = std::move(t);
  });

  std::vector<std::uint64_t> hits(nb * 2, 0);
  std::uint64_t counted[2] = {0, 0};
  for (const auto& t : slots) {
    counted[0] += t.counted[0];
    counted[1] += t.counted[1];
    for (std::size_t k = 0; k < nb * 2; ++k) hits[k] += t.hits[k];
  }

  SuccessCurve curve;
  for (Direction dir : {Direction::Ul, Direction::Dl}) {
    const int di = detail::dir_index(dir);
    if (counted[di] == 0) continue;
    for (std::size_t b = 0; b < nb; ++b) {
      SuccessRow row;
      row.scheme = scheme;
      row.direction = dir;
      row.beta_db = beta_db[b];
      row.n_samples = counted[di];
      row.p_success =
          static_cast<double>(hits[b * 2 + di]) / static_cast<double>(counted[di]);
      const Interval ci = wilson_interval(hits[b * 2 + di], counted[di]);
      row.ci_low = ci.low;
      row.ci_high = ci.high;
      curve.push_back(row);
    }
  }
  return curve;
}

// Estimates per-direction throughput over a DL traffic ratio sweep at a
// fixed operating threshold. Every interior link counts: an interior BS
// whose link is silent this slot still sits in the denominator (and a
// time-shared member contributes through its duty factor), so the average
// charges for silence.
inline ThroughputCurve estimate_throughput(const SystemParams& params, Scheme scheme,
                                           const std::vector<double>& delta_list,
                                           double beta_db = 10.0,
                                           PairingAlgo algo = PairingAlgo::Greedy,
                                           unsigned threads = 1) {
  validate(params);
  if (params.iterations < 100)
    throw ConfigError("iterations must be >= 100 for a meaningful throughput estimate");
  if (delta_list.empty())
    throw std::invalid_argument("estimate_throughput: empty delta list");

  const double beta = db_to_linear(beta_db);
  const double rate = std::log2(1.0 + beta);

  struct Tally {
    double sum[2] = {0.0, 0.0};
    std::uint64_t links[2] = {0, 0};
  };

  ThroughputCurve curve;
  for (double delta : delta_list) {
    SystemParams p = params;
    p.delta = delta;
    validate(p);
    std::vector<Tally> slots(p.iterations);

    detail::run_drops(p.iterations, threads, [&](std::uint64_t d) {
      Tally t;
      const auto scene = detail::simulate_drop(p, scheme, algo, d);
      if (scene.valid) {
        for (std::size_t i = 0; i < scene.traffic.size(); ++i)
          if (scene.dep.interior[i]) ++t.links[detail::dir_index(scene.traffic[i])];
        for (const auto& s : scene.samples) {
          if (!scene.dep.interior[s.bs_index]) continue;
          if (s.sinr < beta) continue;
          t.sum[detail::dir_index(s.direction)] +=
              duty_factor(scene.modes[s.bs_index].kind) * rate;
        }
      }
      slots[d] = t;
    });

    Tally total;
    for (const auto& t : slots) {
      total.sum[0] += t.sum[0];
      total.sum[1] += t.sum[1];
      total.links[0] += t.links[0];
      total.links[1] += t.links[1];
    }
    for (Direction dir : {Direction::Ul, Direction::Dl}) {
      const int di = detail::dir_index(dir);
      if (total.links[di] == 0) continue;
      ThroughputRow row;
      row.scheme = scheme;
      row.direction = dir;
      row.delta = delta;
      row.throughput_bps_hz = total.sum[di] / static_cast<double>(total.links[di]);
      curve.push_back(row);
    }
  }
  return curve;
}

struct PairingSweep {
  SuccessCurve greedy;
  SuccessCurve edmonds;
};

// Runs the success sweep under both pairing algorithms on identical
// deployment seeds (geometry, traffic and scheduling streams are shared;
// only the matching differs).
inline PairingSweep sweep_greedy_vs_edmonds(const SystemParams& params,
                                            const std::vector<double>& beta_db,
                                            unsigned threads = 1) {
  PairingSweep sweep;
  sweep.greedy =
      estimate_success(params, Scheme::Comp2flex, PairingAlgo::Greedy, beta_db, threads);
  sweep.edmonds =
      estimate_success(params, Scheme::Comp2flex, PairingAlgo::Edmonds, beta_db, threads);
  return sweep;
}

}  // namespace comp2flex
