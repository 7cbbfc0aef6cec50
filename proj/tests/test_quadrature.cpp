#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "comp2flex/quadrature.hpp"

using namespace comp2flex;

TEST_CASE("polynomial and exponential integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12, 1e-14) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 60.0, 1e-10, 1e-14) ==
        Catch::Approx(1.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 2.0 * M_PI, 1e-10, 1e-12) ==
        Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("sharply peaked integrand is refined adaptively") {
  // int_{-1}^{1} exp(-1e4 x^2) dx = sqrt(pi)/100 erf(100) ~= sqrt(pi)/100
  const double v =
      integrate([](double x) { return std::exp(-1e4 * x * x); }, -1.0, 1.0, 1e-10, 1e-14);
  CHECK(v == Catch::Approx(std::sqrt(M_PI) / 100.0).epsilon(1e-9));
}

TEST_CASE("gamma-type weight used by the distance integrals") {
  // int_0^inf v exp(-v) dv = 1, truncated at v = 40
  const double v =
      integrate([](double x) { return x * std::exp(-x); }, 0.0, 40.0, 1e-10, 1e-14);
  CHECK(v == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("non-convergence raises with an error estimate") {
  try {
    integrate([](double x) { return 1.0 / std::sqrt(std::abs(x) + 1e-300); }, -1.0, 1.0,
              1e-14, 1e-16, 12);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.error_estimate > 0.0);
  }
}
