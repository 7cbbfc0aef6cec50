#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace comp2flex {

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double achieved)
      : std::runtime_error(msg + " (error estimate " + std::to_string(achieved) + ")"),
        error_estimate(achieved) {}
  double error_estimate;
};

// Tolerances and truncation controls for the analytic integrals. Inner
// integrals run at (rel_tol, abs_tol); the outermost success integral at
// outer_rel_tol. Semi-infinite ranges are cut where the point-process
// distance weight drops below ~1e-14 of its peak, i.e. at radius
// tail_sigma / sqrt(pi * lambda).
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double outer_rel_tol = 1e-8;
  double tail_sigma = 6.0;
  int max_segments = 4000;
  bool prefer_closed_forms = true;
};

namespace gk {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
inline void eval(const F& f, double a, double b, double& kronrod, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  kronrod = resk * h;
  err = std::abs((resk - resg) * h);
}

}  // namespace gk

// Globally adaptive G7-K15: split the segment with the largest error
// estimate until the summed estimate meets max(abs_tol, rel_tol * |I|).
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol, double abs_tol,
                 int max_segments = 4000) {
  if (a == b) return 0.0;
  struct Seg {
    double a, b, val, err;
  };
  std::vector<Seg> segs;
  Seg s{a, b, 0.0, 0.0};
  gk::eval(f, a, b, s.val, s.err);
  segs.push_back(s);
  for (;;) {
    double total = 0.0, errsum = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].val;
      errsum += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    if (errsum <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
    if (static_cast<int>(segs.size()) >= max_segments)
      throw QuadratureError("quadrature failed to converge", errsum);
    Seg old = segs[worst];
    double mid = 0.5 * (old.a + old.b);
    if (mid <= old.a || mid >= old.b)
      throw QuadratureError("quadrature interval collapsed", errsum);
    Seg left{old.a, mid, 0.0, 0.0}, right{mid, old.b, 0.0, 0.0};
    gk::eval(f, left.a, left.b, left.val, left.err);
    gk::eval(f, right.a, right.b, right.val, right.err);
    segs[worst] = left;
    segs.push_back(right);
  }
}

template <typename F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec) {
  return integrate(f, a, b, spec.rel_tol, spec.abs_tol, spec.max_segments);
}

}  // namespace comp2flex
