#pragma once

#include <cmath>
#include <stdexcept>

#include "comp2flex/params.hpp"
#include "comp2flex/quadrature.hpp"

namespace comp2flex {

// Densities of the two interferer processes seen by a typical link when
// every BS is paired: psi collects DL transmitters (whole DL-DL pairs time
// share, so they count once), phi collects transmitting UL mobiles.
struct InterfererDensities {
  double lambda_psi = 0.0;  // DL-BS interferers [1/km^2]
  double lambda_phi = 0.0;  // UL-MS interferers [1/km^2]
};

inline InterfererDensities interferer_densities(double delta, double lambda_b) {
  InterfererDensities d;
  d.lambda_psi = (delta - 0.5 * delta * delta) * lambda_b;
  d.lambda_phi = 0.5 * (1.0 - delta * delta) * lambda_b;
  return d;
}

namespace detail {

// J(t; c, alpha) = int_t^inf c x / (x^alpha + c) dx, the exponent of a
// Rayleigh-faded interference Laplace functional with exclusion radius t.
// alpha = 4 has the arctan closed form; otherwise substitute w = 1/x^2,
// giving (c/2) int_0^{1/t^2} w^{alpha/2 - 2} / (1 + c w^{alpha/2}) dw with
// an integrable endpoint for every alpha > 2.
inline double j_integral(double t, double c, double alpha, const QuadratureSpec& spec,
                         bool allow_closed_form = true) {
  if (c <= 0.0) return 0.0;
  if (alpha == 4.0 && allow_closed_form) {
    const double sc = std::sqrt(c);
    if (t == 0.0) return 0.5 * sc * M_PI_2;
    return 0.5 * sc * std::atan(sc / (t * t));
  }
  if (t <= 0.0) throw std::invalid_argument("j_integral: t must be > 0 for general alpha");
  const double half_alpha = 0.5 * alpha;
  const double upper = 1.0 / (t * t);
  return 0.5 * c *
         integrate(
             [&](double w) {
               return std::pow(w, half_alpha - 2.0) / (1.0 + c * std::pow(w, half_alpha));
             },
             0.0, upper, spec.rel_tol, spec.abs_tol, spec.max_segments);
}

}  // namespace detail

// Laplace functional of the DL-BS interference at a typical UL-BS. The
// nearest DL interferer is no closer than the second-nearest-BS distance
// (the paired DL-BS is cancelled), so the exclusion radius t is averaged
// over 2 (pi lambda_B)^2 t^3 exp(-pi lambda_B t^2); substituting v = t^2
// turns that weight into (pi lambda_B)^2 v exp(-pi lambda_B v).
inline double laplace_ul_psi(double r, const SystemParams& p, const InterfererDensities& dens,
                             const QuadratureSpec& spec) {
  if (dens.lambda_psi == 0.0) return 1.0;
  const double c = (p.p_b / p.p_m) * p.beta_u * std::pow(r, p.alpha);
  const double pl = M_PI * p.lambda_b;
  const double v_max = spec.tail_sigma * spec.tail_sigma / pl;
  return integrate(
      [&](double v) {
        const double j = detail::j_integral(std::sqrt(v), c, p.alpha, spec,
                                            spec.prefer_closed_forms);
        return std::exp(-2.0 * M_PI * dens.lambda_psi * j) * pl * pl * v * std::exp(-pl * v);
      },
      0.0, v_max, spec.rel_tol, spec.abs_tol, spec.max_segments);
}

// Laplace functional of the UL-MS interference at a typical UL-BS;
// transmitting mobiles are no closer than the serving distance r.
inline double laplace_ul_phi(double r, const SystemParams& p, const InterfererDensities& dens,
                             const QuadratureSpec& spec) {
  if (dens.lambda_phi == 0.0) return 1.0;
  const double c = p.beta_u * std::pow(r, p.alpha);
  const double j = detail::j_integral(r, c, p.alpha, spec, spec.prefer_closed_forms);
  return std::exp(-2.0 * M_PI * dens.lambda_phi * j);
}

// UL transmission success (SIR >= beta_u) of the typical uplink user,
// averaged over the nearest-BS serving distance.
inline double success_ul(const SystemParams& p, const QuadratureSpec& spec) {
  const InterfererDensities dens = interferer_densities(p.delta, p.lambda_b);
  const double pl = M_PI * p.lambda_b;
  const double u_max = spec.tail_sigma * spec.tail_sigma / pl;
  return integrate(
      [&](double u) {
        const double r = std::sqrt(u);
        return laplace_ul_psi(r, p, dens, spec) * laplace_ul_phi(r, p, dens, spec) * pl *
               std::exp(-pl * u);
      },
      0.0, u_max, spec.outer_rel_tol, spec.abs_tol, spec.max_segments);
}

// DL counterparts at the typical downlink user: DL-BS interferers and
// transmitting UL mobiles, both excluded inside the serving distance r.
// These always evaluate the general-alpha quadrature; the closed forms
// below are the alpha = 4 specializations used by success_dl.
inline double laplace_dl_psi(double r, const SystemParams& p, const InterfererDensities& dens,
                             const QuadratureSpec& spec) {
  if (dens.lambda_psi == 0.0) return 1.0;
  const double c = p.beta_d * std::pow(r, p.alpha);
  const double j = detail::j_integral(r, c, p.alpha, spec, false);
  return std::exp(-2.0 * M_PI * dens.lambda_psi * j);
}

inline double laplace_dl_phi(double r, const SystemParams& p, const InterfererDensities& dens,
                             const QuadratureSpec& spec) {
  if (dens.lambda_phi == 0.0) return 1.0;
  const double c = (p.p_m / p.p_b) * p.beta_d * std::pow(r, p.alpha);
  const double j = detail::j_integral(r, c, p.alpha, spec, false);
  return std::exp(-2.0 * M_PI * dens.lambda_phi * j);
}

inline double closed_form_dl_psi(double r, const SystemParams& p,
                                 const InterfererDensities& dens) {
  if (p.alpha != 4.0)
    throw std::invalid_argument("closed_form_dl_psi: requires alpha == 4");
  const double sb = std::sqrt(p.beta_d);
  return std::exp(-M_PI * dens.lambda_psi * sb * r * r * std::atan(sb));
}

inline double closed_form_dl_phi(double r, const SystemParams& p,
                                 const InterfererDensities& dens) {
  if (p.alpha != 4.0)
    throw std::invalid_argument("closed_form_dl_phi: requires alpha == 4");
  const double sb = std::sqrt((p.p_m / p.p_b) * p.beta_d);
  return std::exp(-M_PI * dens.lambda_phi * sb * r * r * std::atan(sb));
}

// DL transmission success (SIR >= beta_d) of the typical downlink user.
// Closed-form functionals when alpha == 4 (and prefer_closed_forms is set),
// general quadrature otherwise; both paths agree to ~1e-6 relative.
inline double success_dl(const SystemParams& p, const QuadratureSpec& spec) {
  const InterfererDensities dens = interferer_densities(p.delta, p.lambda_b);
  const bool closed = p.alpha == 4.0 && spec.prefer_closed_forms;
  const double pl = M_PI * p.lambda_b;
  const double u_max = spec.tail_sigma * spec.tail_sigma / pl;
  return integrate(
      [&](double u) {
        const double r = std::sqrt(u);
        const double lp = closed ? closed_form_dl_psi(r, p, dens)
                                 : laplace_dl_psi(r, p, dens, spec);
        const double lf = closed ? closed_form_dl_phi(r, p, dens)
                                 : laplace_dl_phi(r, p, dens, spec);
        return lp * lf * pl * std::exp(-pl * u);
      },
      0.0, u_max, spec.outer_rel_tol, spec.abs_tol, spec.max_segments);
}

}  // namespace comp2flex
