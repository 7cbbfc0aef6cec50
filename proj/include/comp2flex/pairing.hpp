#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "comp2flex/geometry.hpp"
#include "comp2flex/rng.hpp"

namespace comp2flex {

struct WeightedGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
  };
  int n = 0;
  std::vector<Edge> edges;
};

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (u, v) with u < v, sorted
  std::vector<int> unpaired;               // sorted
};

inline void validate_graph(const WeightedGraph& g) {
  std::vector<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.n || e.v >= g.n)
      throw std::invalid_argument("WeightedGraph: endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("WeightedGraph: self loop");
    if (!(e.weight > 0)) throw std::invalid_argument("WeightedGraph: weight must be > 0");
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("WeightedGraph: duplicate undirected edge");
}

inline bool matching_is_valid(const WeightedGraph& g, const Matching& m) {
  std::vector<int> used(g.n, 0);
  for (auto [u, v] : m.pairs) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v) return false;
    if (used[u] || used[v]) return false;
    used[u] = used[v] = 1;
  }
  for (int u : m.unpaired) {
    if (u < 0 || u >= g.n || used[u]) return false;
    used[u] = 2;
  }
  for (int u = 0; u < g.n; ++u)
    if (!used[u]) return false;
  return true;
}

inline double matching_weight(const WeightedGraph& g, const Matching& m) {
  double total = 0.0;
  for (auto [u, v] : m.pairs) {
    bool found = false;
    for (const auto& e : g.edges) {
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
        total += e.weight;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("matching_weight: pair is not a graph edge");
  }
  return total;
}

// Delaunay adjacency as a weighted graph; weights are inter-BS distances.
inline WeightedGraph delaunay_graph(const Deployment& dep) {
  WeightedGraph g;
  g.n = static_cast<int>(dep.size());
  for (int u = 0; u < g.n; ++u)
    for (int v : dep.delaunay[u])
      if (u < v) g.edges.push_back({u, v, dist(dep.bs.coords[u], dep.bs.coords[v])});
  return g;
}

// Visit BSs in the given order; each still-unpaired BS grabs its nearest
// unpaired Delaunay neighbor (ties to the lowest index). One pass leaves no
// two unpaired neighbors, i.e. the matching is maximal on the Delaunay graph.
inline Matching greedy_pair_ordered(const Deployment& dep, const std::vector<int>& order) {
  const int n = static_cast<int>(dep.size());
  std::vector<int> mate(n, -1);
  Matching m;
  for (int i : order) {
    if (mate[i] >= 0) continue;
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int j : dep.delaunay[i]) {
      if (mate[j] >= 0) continue;
      const double d2 = dist2(dep.bs.coords[i], dep.bs.coords[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    if (best >= 0) {
      mate[i] = best;
      mate[best] = i;
      m.pairs.emplace_back(std::min(i, best), std::max(i, best));
    }
  }
  for (int i = 0; i < n; ++i)
    if (mate[i] < 0) m.unpaired.push_back(i);
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

// Uniformly random visit order drawn from the drop's pairing stream.
inline Matching greedy_pair(const Deployment& dep, Rng& rng) {
  const int n = static_cast<int>(dep.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(i + 1)]);
  return greedy_pair_ordered(dep, order);
}

namespace detail {

// Maximum weight matching on a general graph, the classical O(n^3)
// primal-dual blossom algorithm over an adjacency matrix with integer
// duals. Vertices are 1-indexed; ids above n are shrunken blossoms.
class MaxWeightMatcher {
 public:
  explicit MaxWeightMatcher(int n)
      : n_(n), dim_(n + n / 2 + 8), g_(static_cast<std::size_t>(dim_) * dim_),
        lab_(dim_, 0), match_(dim_, 0), slack_(dim_, 0), st_(dim_, 0), pa_(dim_, 0),
        s_(dim_, -1), vis_(dim_, 0), flower_(dim_),
        flower_from_(static_cast<std::size_t>(dim_) * dim_, 0) {
    for (int u = 0; u < dim_; ++u)
      for (int v = 0; v < dim_; ++v) edge(u, v) = {u, v, 0};
  }

  void add_edge(int u, int v, long long w) {
    edge(u, v).w = w;
    edge(v, u).w = w;
  }

  // Fills match() with the mate of each vertex (0 = exposed).
  void solve() {
    nx_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    long long w_max = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        flower_from(u, v) = (u == v ? u : 0);
        w_max = std::max(w_max, edge(u, v).w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (run_phase()) {
    }
  }

  int mate(int u) const { return match_[u]; }

 private:
  struct E {
    int u, v;
    long long w;
  };
  static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

  E& edge(int u, int v) { return g_[static_cast<std::size_t>(u) * dim_ + v]; }
  int& flower_from(int b, int x) {
    return flower_from_[static_cast<std::size_t>(b) * dim_ + x];
  }
  long long e_delta(const E& e) const { return lab_[e.u] + lab_[e.v] - 2 * e.w; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(edge(u, x)) < e_delta(edge(slack_[x], x))) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (edge(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
    } else {
      for (int i : flower_[x]) q_push(i);
    }
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int i : flower_[x]) set_st(i, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                              flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = edge(u, v).v;
    if (u <= n_) return;
    const E& e = edge(u, v);
    const int xr = flower_from(u, e.u);
    const int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      const int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      v = xnv;
      u = st_[pa_[xnv]];
    }
  }

  int get_lca(int u, int v) {
    for (++t_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == t_) return u;
      vis_[u] = t_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= nx_ && st_[b]) ++b;
    if (b > nx_) ++nx_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= nx_; ++x) {
      edge(b, x).w = 0;
      edge(x, b).w = 0;
    }
    for (int x = 1; x <= n_; ++x) flower_from(b, x) = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= nx_; ++x)
        if (edge(xs, x).w > 0 &&
            (edge(b, x).w == 0 || e_delta(edge(xs, x)) < e_delta(edge(b, x)))) {
          edge(b, x) = edge(xs, x);
          edge(x, b) = edge(x, xs);
        }
      for (int x = 1; x <= n_; ++x)
        if (flower_from(xs, x)) flower_from(b, x) = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int i : flower_[b]) set_st(i, i);
    const int xr = flower_from(b, edge(b, pa_[b]).u);
    const int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      const int xs = flower_[b][i];
      const int xns = flower_[b][i + 1];
      pa_[xs] = edge(xns, xs).u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (int i = pr + 1; i < static_cast<int>(flower_[b].size()); ++i) {
      s_[flower_[b][i]] = -1;
      set_slack(flower_[b][i]);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const E& e) {
    const int u = st_[e.u];
    const int v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      const int nu = st_[match_[v]];
      slack_[v] = 0;
      slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      const int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool run_phase() {
    std::fill(s_.begin(), s_.end(), -1);
    std::fill(slack_.begin(), slack_.end(), 0);
    q_.clear();
    for (int x = 1; x <= nx_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        const int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (edge(u, v).w > 0 && st_[u] != st_[v]) {
            if (e_delta(edge(u, v)) == 0) {
              if (on_found_edge(edge(u, v))) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      long long d = kInf;
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1)
            d = std::min(d, e_delta(edge(slack_[x], x)));
          else if (s_[x] == 0)
            d = std::min(d, e_delta(edge(slack_[x], x)) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b) {
          if (s_[b] == 0)
            lab_[b] += 2 * d;
          else if (s_[b] == 1)
            lab_[b] -= 2 * d;
        }
      q_.clear();
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            e_delta(edge(slack_[x], x)) == 0)
          if (on_found_edge(edge(slack_[x], x))) return true;
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_, dim_, nx_ = 0, t_ = 0;
  std::vector<E> g_;
  std::vector<long long> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<int> flower_from_;
  std::deque<int> q_;
};

constexpr double kWeightScale = 1.0e9;

}  // namespace detail

// Maximum-cardinality minimum-weight matching. Weights are quantized to
// 1e-9, then flipped to w' = C - w with C = 1 + n * max(w): a maximum
// weight matching under w' has maximum cardinality first and minimum
// total weight second.
inline Matching edmonds_pair(const WeightedGraph& g) {
  validate_graph(g);
  Matching m;
  if (g.n == 0) return m;
  if (g.edges.empty()) {
    for (int i = 0; i < g.n; ++i) m.unpaired.push_back(i);
    return m;
  }
  long long max_q = 1;
  std::vector<long long> q(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    q[i] = std::max<long long>(1, std::llround(g.edges[i].weight * detail::kWeightScale));
    max_q = std::max(max_q, q[i]);
  }
  const long long big = 1 + static_cast<long long>(g.n) * max_q;
  detail::MaxWeightMatcher solver(g.n);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    solver.add_edge(g.edges[i].u + 1, g.edges[i].v + 1, big - q[i]);
  solver.solve();
  for (int u = 1; u <= g.n; ++u) {
    const int v = solver.mate(u);
    if (v == 0)
      m.unpaired.push_back(u - 1);
    else if (u < v)
      m.pairs.emplace_back(u - 1, v - 1);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

// Exhaustive oracle for n <= 12: maximum cardinality, then minimum weight,
// then lexicographically smallest sorted pair list.
inline Matching brute_force_matching(const WeightedGraph& g) {
  validate_graph(g);
  if (g.n > 12) throw std::invalid_argument("brute_force_matching: n must be <= 12");
  std::vector<std::vector<double>> w(g.n, std::vector<double>(g.n, -1.0));
  for (const auto& e : g.edges) w[e.u][e.v] = w[e.v][e.u] = e.weight;

  std::vector<int> used(g.n, 0);
  std::vector<std::pair<int, int>> current, best_pairs;
  int best_card = -1;
  double best_weight = 0.0;
  bool have_best = false;

  auto consider = [&](double weight) {
    const int card = static_cast<int>(current.size());
    std::vector<std::pair<int, int>> sorted = current;
    std::sort(sorted.begin(), sorted.end());
    const bool better =
        !have_best || card > best_card ||
        (card == best_card &&
         (weight < best_weight - 1e-12 ||
          (std::abs(weight - best_weight) <= 1e-12 && sorted < best_pairs)));
    if (better) {
      have_best = true;
      best_card = card;
      best_weight = weight;
      best_pairs = std::move(sorted);
    }
  };

  auto rec = [&](auto&& self, int u, double weight) -> void {
    while (u < g.n && used[u]) ++u;
    if (u >= g.n) {
      consider(weight);
      return;
    }
    used[u] = 1;
    self(self, u + 1, weight);  // leave u unmatched
    for (int v = u + 1; v < g.n; ++v) {
      if (used[v] || w[u][v] < 0) continue;
      used[v] = 1;
      current.emplace_back(u, v);
      self(self, u + 1, weight + w[u][v]);
      current.pop_back();
      used[v] = 0;
    }
    used[u] = 0;
  };
  rec(rec, 0, 0.0);

  Matching m;
  m.pairs = best_pairs;
  std::vector<int> in_pair(g.n, 0);
  for (auto [u, v] : m.pairs) in_pair[u] = in_pair[v] = 1;
  for (int i = 0; i < g.n; ++i)
    if (!in_pair[i]) m.unpaired.push_back(i);
  return m;
}

struct TimingRow {
  double density = 0.0;
  double greedy_seconds = 0.0;
  double edmonds_seconds = 0.0;
};

// Wall-clock medians over `repetitions` fresh deployments per density.
// Only the matching calls are timed; deployment construction is not.
inline std::vector<TimingRow> bench_pairing(const std::vector<double>& densities,
                                            int repetitions, double window_side,
                                            std::uint64_t seed) {
  if (repetitions < 3) throw std::invalid_argument("bench_pairing: repetitions must be >= 3");
  using clock = std::chrono::steady_clock;
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
  };
  std::vector<TimingRow> table;
  for (std::size_t di = 0; di < densities.size(); ++di) {
    std::vector<double> greedy_t, edmonds_t;
    for (int rep = 0; rep < repetitions; ++rep) {
      Rng geo = derive_stream(seed, di * 1000 + rep, Stream::Geometry);
      Rng pair_rng = derive_stream(seed, di * 1000 + rep, Stream::Pairing);
      PointSet bs = sample_ppp(densities[di], window_side, geo);
      while (bs.size() < 3) bs = sample_ppp(densities[di], window_side, geo);
      Deployment dep = build_deployment(bs, geo);
      WeightedGraph graph = delaunay_graph(dep);

      auto t0 = clock::now();
      Matching mg = greedy_pair(dep, pair_rng);
      auto t1 = clock::now();
      Matching me = edmonds_pair(graph);
      auto t2 = clock::now();
      (void)mg;
      (void)me;
      greedy_t.push_back(std::chrono::duration<double>(t1 - t0).count());
      edmonds_t.push_back(std::chrono::duration<double>(t2 - t1).count());
    }
    table.push_back({densities[di], median(greedy_t), median(edmonds_t)});
  }
  return table;
}

}  // namespace comp2flex
