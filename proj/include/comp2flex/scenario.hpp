#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "comp2flex/geometry.hpp"
#include "comp2flex/pairing.hpp"
#include "comp2flex/params.hpp"
#include "comp2flex/rng.hpp"

namespace comp2flex {

enum class Direction { Ul, Dl };

enum class Scheme { Comp2flex, CompOnly, CompflexOnly };

// Operating mode of one BS for one slot. Same-direction pairs (DlComp,
// UlComp) time share, so exactly one member has active == true; the two
// members of a CompFlex pair and standalone BSs are always active.
enum class PairModeKind { DlComp, UlComp, CompFlex, Standalone, Silent };

struct PairMode {
  PairModeKind kind = PairModeKind::Standalone;
  int partner = -1;
  bool active = true;
};

// One evaluated link. counted marks links that enter the success statistic:
// the BS is inside the guard region and actually transmitting this slot.
// Time-shared members that are silent this slot still get a sample (their
// SINR is evaluated as if their pair had scheduled them instead), which the
// throughput estimate weights by the pair's duty factor.
struct LinkSample {
  int bs_index = -1;
  Direction direction = Direction::Ul;
  double sinr = 0.0;
  double serving_distance = 0.0;
  bool counted = false;
};

inline std::string to_string(Direction d) { return d == Direction::Ul ? "ul" : "dl"; }

inline Direction direction_from_string(const std::string& s) {
  if (s == "ul") return Direction::Ul;
  if (s == "dl") return Direction::Dl;
  throw ConfigError("unknown direction '" + s + "' (expected ul or dl)");
}

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Comp2flex: return "comp2flex";
    case Scheme::CompOnly: return "comp-only";
    case Scheme::CompflexOnly: return "compflex-only";
  }
  return "";
}

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "comp2flex") return Scheme::Comp2flex;
  if (s == "comp-only") return Scheme::CompOnly;
  if (s == "compflex-only") return Scheme::CompflexOnly;
  throw ConfigError("unknown scheme '" + s +
                    "' (expected comp2flex, comp-only or compflex-only)");
}

// Fraction of slots a BS in the given mode transmits.
inline double duty_factor(PairModeKind kind) {
  return (kind == PairModeKind::DlComp || kind == PairModeKind::UlComp) ? 0.5 : 1.0;
}

// Each BS independently holds DL traffic with probability delta, UL
// otherwise.
inline std::vector<Direction> assign_traffic(std::size_t n, double delta, Rng& traffic_rng) {
  std::vector<Direction> dir(n, Direction::Ul);
  for (std::size_t i = 0; i < n; ++i)
    if (traffic_rng.bernoulli(delta)) dir[i] = Direction::Dl;
  return dir;
}

// Turns a matching plus per-BS traffic into per-BS operating modes.
//
// comp2flex uses every pair: same-direction pairs time share (DlComp or
// UlComp, active member drawn uniformly), cross-direction pairs run
// simultaneously as CompFlex. comp-only rejects cross pairs and
// compflex-only rejects same-direction pairs; rejected pairs fall back to
// two standalone BSs (or go silent, per the fallback policy). Unmatched BSs
// are always standalone.
//
// The active-member coin is drawn for every same-direction pair in every
// scheme, even when the pair is about to be rejected, so runs that share a
// seed consume identical scheduling draws regardless of the scheme.
inline std::vector<PairMode> classify_pairs(std::size_t n, const Matching& matching,
                                            const std::vector<Direction>& traffic, Scheme scheme,
                                            Rng& scheduling_rng, BaselineFallback fallback) {
  if (traffic.size() != n)
    throw std::invalid_argument("classify_pairs: traffic size does not match BS count");
  std::vector<PairMode> modes(n);
  const PairMode rejected{fallback == BaselineFallback::Silent ? PairModeKind::Silent
                                                               : PairModeKind::Standalone,
                          -1, fallback != BaselineFallback::Silent};
  for (const auto& [u, v] : matching.pairs) {
    const bool same = traffic[u] == traffic[v];
    int active_member = -1;
    if (same) active_member = scheduling_rng.uniform_int(2) == 0 ? u : v;
    if (same && scheme != Scheme::CompflexOnly) {
      const PairModeKind kind =
          traffic[u] == Direction::Dl ? PairModeKind::DlComp : PairModeKind::UlComp;
      modes[u] = {kind, static_cast<int>(v), static_cast<int>(u) == active_member};
      modes[v] = {kind, static_cast<int>(u), static_cast<int>(v) == active_member};
    } else if (!same && scheme != Scheme::CompOnly) {
      modes[u] = {PairModeKind::CompFlex, static_cast<int>(v), true};
      modes[v] = {PairModeKind::CompFlex, static_cast<int>(u), true};
    } else {
      modes[u] = rejected;
      modes[v] = rejected;
    }
  }
  return modes;
}

// Evaluates the SINR of every non-silent link for one slot. The fading hook
// is called once per used channel coefficient and must return a fresh gain;
// draw order is fixed (BSs in index order; per link: serving channel, then
// DL interferers in index order, then UL interferers in index order) so a
// seeded hook gives reproducible results.
//
// A link whose BS is the silent member of a time-shared pair is evaluated
// as if the pair had scheduled it: its own transmitter replaces the
// partner's, every other pair keeps its sampled schedule. The UL member of
// a CompFlex pair does not see its partner's DL signal (the pair exchanges
// payloads over the backhaul, so that interferer is cancelled); the DL
// member has no such help against the partner's UL user.
template <typename FadingFn>
std::vector<LinkSample> evaluate_links(const Deployment& dep, const std::vector<PairMode>& modes,
                                       const std::vector<Direction>& traffic,
                                       const SystemParams& p, FadingFn&& fading) {
  const std::size_t n = dep.bs.coords.size();
  if (modes.size() != n || traffic.size() != n)
    throw std::invalid_argument("evaluate_links: modes/traffic size does not match BS count");

  const bool a4 = p.alpha == 4.0;
  const double half_alpha = 0.5 * p.alpha;
  const auto pathloss = [&](double d2) {
    return a4 ? 1.0 / (d2 * d2) : std::pow(d2, -half_alpha);
  };

  std::vector<LinkSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PairMode& mode = modes[i];
    if (mode.kind == PairModeKind::Silent) continue;

    const bool ul = traffic[i] == Direction::Ul;
    const Vec2 rx = ul ? dep.bs.coords[i] : dep.ms.coords[i];
    const double r2 = dist2(dep.bs.coords[i], dep.ms.coords[i]);
    const double tx_power = ul ? p.p_m : p.p_b;
    const double signal = tx_power * fading() * pathloss(r2);

    // Transmitter set seen by this link: every active BS's link, with this
    // link swapped in for its partner when it is the silent member.
    const auto transmits = [&](std::size_t j) {
      if (j == i) return false;  // own transmitter carries the signal
      if (!mode.active && static_cast<int>(j) == mode.partner) return false;
      return modes[j].active;
    };
    const bool cancel_partner_dl =
        ul && mode.kind == PairModeKind::CompFlex && traffic[mode.partner] == Direction::Dl;

    double interference = p.noise;
    for (std::size_t j = 0; j < n; ++j) {
      if (traffic[j] != Direction::Dl || !transmits(j)) continue;
      if (cancel_partner_dl && static_cast<int>(j) == mode.partner) continue;
      interference += p.p_b * fading() * pathloss(dist2(rx, dep.bs.coords[j]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (traffic[j] != Direction::Ul || !transmits(j)) continue;
      interference += p.p_m * fading() * pathloss(dist2(rx, dep.ms.coords[j]));
    }

    LinkSample s;
    s.bs_index = static_cast<int>(i);
    s.direction = traffic[i];
    s.sinr = interference > 0.0 ? signal / interference
                                : std::numeric_limits<double>::infinity();
    s.serving_distance = std::sqrt(r2);
    s.counted = dep.interior[i] != 0 && mode.active;
    out.push_back(s);
  }
  return out;
}

inline std::vector<LinkSample> evaluate_links(const Deployment& dep,
                                              const std::vector<PairMode>& modes,
                                              const std::vector<Direction>& traffic,
                                              const SystemParams& p, Rng& fading_rng) {
  return evaluate_links(dep, modes, traffic, p, [&] { return fading_rng.exp1(); });
}

}  // namespace comp2flex
