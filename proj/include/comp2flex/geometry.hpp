#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/polygon/voronoi.hpp>

#include "comp2flex/rng.hpp"

namespace comp2flex {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Vec2& a, const Vec2& b) { return std::sqrt(dist2(a, b)); }

// Points in [0, window_side]^2, coordinates in km.
struct PointSet {
  std::vector<Vec2> coords;
  double window_side = 0.0;

  std::size_t size() const { return coords.size(); }
};

// Homogeneous PPP on the square window: Poisson(density * side^2) points,
// i.i.d. uniform positions.
inline PointSet sample_ppp(double density, double window_side, Rng& rng) {
  if (!(density > 0) || !(window_side > 0))
    throw std::invalid_argument("sample_ppp: density and window_side must be > 0");
  PointSet ps;
  ps.window_side = window_side;
  const int n = rng.poisson(density * window_side * window_side);
  ps.coords.reserve(n);
  for (int i = 0; i < n; ++i)
    ps.coords.push_back({rng.uniform(0.0, window_side), rng.uniform(0.0, window_side)});
  return ps;
}

// Distance from a point of the plane to the nearest / second nearest point
// of a PPP of the given density.
inline double nearest_distance_pdf(double r, double lambda) {
  return 2.0 * M_PI * lambda * r * std::exp(-M_PI * lambda * r * r);
}

inline double second_nearest_distance_pdf(double d, double lambda) {
  const double pl = M_PI * lambda;
  return 2.0 * pl * pl * d * d * d * std::exp(-pl * d * d);
}

// Uniform bucket grid for exact nearest-point queries, ~1 point per cell.
class PointGrid {
 public:
  PointGrid(const std::vector<Vec2>& pts, double side) : pts_(pts), side_(side) {
    if (pts.empty()) throw std::invalid_argument("PointGrid: empty point set");
    m_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
    cell_ = side_ / m_;
    buckets_.assign(static_cast<std::size_t>(m_) * m_, {});
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
      buckets_[bucket_of(pts[i])].push_back(i);
  }

  // Index of the nearest point; equal distances resolve to the lower index.
  int nearest(const Vec2& q) const {
    const int ci = clamp_cell(q.x), cj = clamp_cell(q.y);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < 2 * m_; ++ring) {
      if (best >= 0) {
        const double reach = (ring - 1) * cell_;
        if (reach > 0 && reach * reach >= best_d2) break;
      }
      bool any_cell = false;
      for (int di = -ring; di <= ring; ++di) {
        const int i = ci + di;
        if (i < 0 || i >= m_) continue;
        const bool edge_row = (di == -ring || di == ring);
        const int step = edge_row ? 1 : 2 * ring;
        for (int dj = -ring; dj <= ring; dj += (step == 0 ? 1 : step)) {
          const int j = cj + dj;
          if (j < 0 || j >= m_) continue;
          any_cell = true;
          for (int idx : buckets_[static_cast<std::size_t>(j) * m_ + i]) {
            const double d2 = dist2(pts_[idx], q);
            if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
              best_d2 = d2;
              best = idx;
            }
          }
        }
      }
      if (!any_cell && best >= 0) break;
    }
    return best;
  }

 private:
  std::size_t bucket_of(const Vec2& p) const {
    return static_cast<std::size_t>(clamp_cell(p.y)) * m_ + clamp_cell(p.x);
  }
  int clamp_cell(double x) const {
    int c = static_cast<int>(x / cell_);
    return std::clamp(c, 0, m_ - 1);
  }

  const std::vector<Vec2>& pts_;
  double side_;
  int m_ = 1;
  double cell_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

// One mobile station per BS (same index), Delaunay adjacency over the BSs,
// and the guard-margin interior mask used to curb window edge effects.
struct Deployment {
  PointSet bs;
  PointSet ms;
  std::vector<std::vector<int>> delaunay;
  std::vector<char> interior;
  double guard_margin = 0.0;

  std::size_t size() const { return bs.size(); }
};

namespace detail {

constexpr double kSnapScale = 1.0e6;  // km -> integer units (1 mm)

struct CellBound {
  double radius = 0.0;   // max distance site -> finite Voronoi vertex
  bool bounded = false;  // no infinite edges
};

// Delaunay adjacency via the dual of the Voronoi diagram. Input coordinates
// are snapped to a 1e-6 km grid (with deterministic nudging of exact
// duplicates); the sweepline uses exact predicates, so collinear and
// cocircular inputs need no special casing.
inline void delaunay_adjacency(const PointSet& ps,
                               std::vector<std::vector<int>>& adj,
                               std::vector<CellBound>& bounds) {
  const int n = static_cast<int>(ps.size());
  if (ps.window_side * kSnapScale > 2.0e9)
    throw std::invalid_argument("delaunay_adjacency: window too large for the snap grid");
  std::vector<std::pair<std::int64_t, std::int64_t>> snapped(n);
  for (int i = 0; i < n; ++i)
    snapped[i] = {static_cast<std::int64_t>(std::llround(ps.coords[i].x * kSnapScale)),
                  static_cast<std::int64_t>(std::llround(ps.coords[i].y * kSnapScale))};
  // Nudge snapped duplicates apart so every site keeps its own cell.
  {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return snapped[a] < snapped[b]; });
    for (int k = 1; k < n; ++k) {
      int i = order[k];
      while (std::find_if(order.begin(), order.begin() + k,
                          [&](int j) { return snapped[j] == snapped[i]; }) !=
             order.begin() + k)
        snapped[i].first += 1;
    }
  }

  boost::polygon::voronoi_diagram<double> vd;
  {
    boost::polygon::voronoi_builder<std::int32_t> vb;
    for (int i = 0; i < n; ++i)
      vb.insert_point(static_cast<std::int32_t>(snapped[i].first),
                      static_cast<std::int32_t>(snapped[i].second));
    vb.construct(&vd);
  }

  adj.assign(n, {});
  bounds.assign(n, {});
  for (const auto& cell : vd.cells()) {
    const int i = static_cast<int>(cell.source_index());
    bounds[i].bounded = true;
    const auto* start = cell.incident_edge();
    if (!start) {
      bounds[i].bounded = false;
      continue;
    }
    const auto* e = start;
    do {
      if (e->is_primary()) {
        const int j = static_cast<int>(e->twin()->cell()->source_index());
        if (j != i) adj[i].push_back(j);
      }
      if (!e->is_finite()) bounds[i].bounded = false;
      if (e->vertex0()) {
        const double vx = e->vertex0()->x() / kSnapScale;
        const double vy = e->vertex0()->y() / kSnapScale;
        bounds[i].radius = std::max(bounds[i].radius, dist({vx, vy}, ps.coords[i]));
      }
      e = e->next();
    } while (e != start);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
}

}  // namespace detail

// MS placement: uniform in the BS's Voronoi cell by rejection against the
// exact nearest-BS test. Proposals are drawn from the cell's bounding box
// (whole window for hull cells), which leaves the accepted distribution
// unchanged. After attempt_cap failed proposals the MS falls back to a
// uniform draw in the disk of half the nearest-neighbor distance.
inline Deployment build_deployment(const PointSet& bs, Rng& rng, double guard_margin = -1.0,
                                   int attempt_cap = 10000) {
  const int n = static_cast<int>(bs.size());
  if (n < 3) throw std::invalid_argument("build_deployment: need at least 3 BSs");
  const double side = bs.window_side;

  Deployment dep;
  dep.bs = bs;
  dep.ms.window_side = side;
  dep.ms.coords.resize(n);

  std::vector<detail::CellBound> bounds;
  detail::delaunay_adjacency(bs, dep.delaunay, bounds);

  if (guard_margin < 0) {
    const double emp_lambda = n / (side * side);
    guard_margin = 2.0 / std::sqrt(emp_lambda);
  }
  dep.guard_margin = guard_margin;
  dep.interior.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec2& p = bs.coords[i];
    dep.interior[i] = p.x >= guard_margin && p.x <= side - guard_margin &&
                      p.y >= guard_margin && p.y <= side - guard_margin;
  }

  PointGrid grid(dep.bs.coords, side);
  for (int i = 0; i < n; ++i) {
    const Vec2& p = bs.coords[i];
    double x0 = 0.0, x1 = side, y0 = 0.0, y1 = side;
    if (bounds[i].bounded) {
      const double r = bounds[i].radius + 1e-3;
      x0 = std::max(0.0, p.x - r);
      x1 = std::min(side, p.x + r);
      y0 = std::max(0.0, p.y - r);
      y1 = std::min(side, p.y + r);
    }
    bool placed = false;
    for (int attempt = 0; attempt < attempt_cap; ++attempt) {
      Vec2 q{rng.uniform(x0, x1), rng.uniform(y0, y1)};
      if (grid.nearest(q) == i) {
        dep.ms.coords[i] = q;
        placed = true;
        break;
      }
    }
    if (!placed) {
      double nn = std::numeric_limits<double>::infinity();
      int nn_idx = -1;
      for (int j : dep.delaunay[i]) {
        const double d = dist(bs.coords[i], bs.coords[j]);
        if (d < nn) {
          nn = d;
          nn_idx = j;
        }
      }
      if (nn_idx < 0) throw std::runtime_error("build_deployment: isolated BS");
      const double radius = 0.5 * nn;
      placed = false;
      for (int attempt = 0; attempt < attempt_cap; ++attempt) {
        const double rr = radius * std::sqrt(rng.uniform01());
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        Vec2 q{p.x + rr * std::cos(th), p.y + rr * std::sin(th)};
        if (q.x < 0 || q.x > side || q.y < 0 || q.y > side) continue;
        dep.ms.coords[i] = q;
        placed = true;
        break;
      }
      if (!placed) {
        // Last resort: a quarter of the way toward the nearest neighbor is
        // inside the window and strictly closest to this BS.
        const Vec2& q2 = bs.coords[nn_idx];
        dep.ms.coords[i] = {p.x + 0.25 * (q2.x - p.x), p.y + 0.25 * (q2.y - p.y)};
      }
    }
  }
  return dep;
}

// CSV dump: "kind,x_km,y_km,index" rows for BSs then MSs.
inline std::string deployment_csv(const Deployment& dep) {
  std::string out = "kind,x_km,y_km,index\n";
  char buf[96];
  for (std::size_t i = 0; i < dep.bs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "bs,%.9f,%.9f,%zu\n", dep.bs.coords[i].x,
                  dep.bs.coords[i].y, i);
    out += buf;
  }
  for (std::size_t i = 0; i < dep.ms.size(); ++i) {
    std::snprintf(buf, sizeof buf, "ms,%.9f,%.9f,%zu\n", dep.ms.coords[i].x,
                  dep.ms.coords[i].y, i);
    out += buf;
  }
  return out;
}

}  // namespace comp2flex
