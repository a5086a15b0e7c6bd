#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdlib>

#include "cvpqc/special_functions.hpp"

using namespace cvpqc;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("bessel_i trivial arguments") {
  CHECK(bessel_i<double>(0, 0.0) == 1.0);
  CHECK(bessel_i<double>(1, 0.0) == 0.0);
  CHECK(bessel_i<double>(7, 0.0) == 0.0);
}

TEST_CASE("bessel_i(0, 2) against a 200-term extended-precision series") {
  Big sum = 0, term = 1;  // (x/2)^{2s} / (s!)^2 with x/2 = 1
  for (int s = 0; s < 200; ++s) {
    sum += term;
    term /= Big((s + 1) * (s + 1));
  }
  const double oracle = sum.convert_to<double>();
  CHECK(std::abs(bessel_i<double>(0, 2.0) - oracle) / oracle < 1e-13);
}

TEST_CASE("bessel_i matches Boost across orders and arguments") {
  for (int order : {0, 1, 2, 5, 13, 40, 120}) {
    for (double x : {0.1, 1.0, 5.0, 20.0, 80.0, 150.0}) {
      const double ours = bessel_i<double>(order, x);
      const double ref = boost::math::cyl_bessel_i(order, x);
      if (ref < 1e-280) continue;  // below double's comfortable range
      CAPTURE(order);
      CAPTURE(x);
      CHECK(std::abs(ours - ref) / ref < 1e-13);
    }
  }
}

TEST_CASE("templated bessel_i runs in extended precision") {
  SeriesTolerance tight;
  tight.eps_abs = 1e-45;
  for (int order : {0, 3, 11}) {
    const Big x = Big(7) / 3;
    const Big ours = bessel_i<Big>(order, x, tight);
    const Big ref = boost::math::cyl_bessel_i(order, x);
    CHECK(abs(ours - ref) / ref < Big(1e-40));
  }
}

TEST_CASE("bessel_i is positive and decreasing in order") {
  for (double x : {0.3, 2.0, 15.0}) {
    double previous = INFINITY;
    for (int n = 0; n < 30; ++n) {
      const double v = bessel_i<double>(n, x);
      CHECK(v > 0.0);
      CHECK(v < previous);
      previous = v;
    }
  }
}

TEST_CASE("bessel_i range and precondition errors") {
  CHECK_THROWS_AS(bessel_i<double>(0, 200.5), RangeError);
  CHECK_THROWS_AS(bessel_i<double>(501, 1.0), RangeError);
  CHECK_THROWS_AS(bessel_i<double>(-1, 1.0), PreconditionError);
  CHECK_THROWS_AS(bessel_i<double>(0, -1.0), PreconditionError);
  CHECK_NOTHROW(bessel_i<double>(500, 200.0));
}

TEST_CASE("bessel_sum identity and direct summation") {
  const double x = 4.0;
  CHECK(std::abs(std::exp(-x) * (bessel_i<double>(0, x) + 2.0 * bessel_sum<double>(1, x)) - 1.0) < 1e-12);
  for (int k : {1, 2, 7}) CHECK(bessel_sum<double>(k, 0.0) == 0.0);

  double direct = 0.0;
  for (int k = 1;; ++k) {
    const double term = bessel_i<double>(3 * k, 2.0);
    direct += term;
    if (term < 1e-15 * direct) break;
  }
  CHECK(std::abs(bessel_sum<double>(3, 2.0) - direct) < 1e-15);
}

TEST_CASE("bessel_sum is non-increasing in order_step") {
  for (double x : {0.5, 3.0, 30.0}) {
    double previous = INFINITY;
    for (int step = 1; step <= 12; ++step) {
      const double v = bessel_sum<double>(step, x);
      CHECK(v <= previous);
      previous = v;
    }
  }
  CHECK_THROWS_AS(bessel_sum<double>(0, 1.0), PreconditionError);
}

TEST_CASE("generalized identity with the exponent 2xy") {
  for (double x : {0.6, 1.2, 1.8, 2.4, 3.0})
    for (double y : {0.6, 1.2, 1.8, 2.4, 3.0}) {
      const double z = 2.0 * x * y;
      CHECK(std::abs(std::exp(-z) * (bessel_i<double>(0, z) + 2.0 * bessel_sum<double>(1, z)) - 1.0) < 1e-12);
    }
}

TEST_CASE("poisson_tail examples") {
  for (long n : {0L, 3L, 50L}) CHECK(poisson_tail<double>(n, 0.0) == 0.0);
  CHECK(std::abs(poisson_tail<double>(0, 1.0) - (1.0 - std::exp(-1.0))) < 1e-16);

  long double pmf = std::exp(-4.0L), lower = 0.0L;
  for (int m = 0; m <= 5; ++m) {
    lower += pmf;
    pmf *= 4.0L / (m + 1);
  }
  long double upper = 0.0L;
  for (int m = 6; m < 86; ++m) {
    upper += pmf;
    pmf *= 4.0L / (m + 1);
  }
  CHECK(std::abs(poisson_tail<double>(5, 4.0) - static_cast<double>(upper)) < 1e-14);
  CHECK(std::abs(static_cast<double>(1.0L - lower - upper)) < 1e-15);
}

TEST_CASE("poisson_tail matches the regularized incomplete gamma function") {
  // P(X > n) = P(n + 1, lambda)
  for (double lambda : {0.01, 0.7, 4.0, 25.0, 300.0})
    for (long n : {0L, 1L, 5L, 20L, 60L, 400L}) {
      const double ref = boost::math::gamma_p(static_cast<double>(n + 1), lambda);
      const double ours = poisson_tail<double>(n, lambda);
      CAPTURE(lambda);
      CAPTURE(n);
      if (ref > 1e-300) CHECK(std::abs(ours - ref) <= 1e-13 * ref + 1e-15);
    }
}

TEST_CASE("poisson_tail keeps relative accuracy for tiny means") {
  for (double lambda : {1e-12, 1e-8, 1e-4, 0.3})
    for (long n : {0L, 1L, 3L}) {
      const double ref = boost::math::gamma_p(static_cast<double>(n + 1), lambda);
      CHECK(std::abs(poisson_tail<double>(n, lambda) - ref) <= 1e-14 * ref);
    }
}

TEST_CASE("poisson_tail monotonicity") {
  for (double lambda : {0.5, 3.0, 40.0}) {
    double previous = 2.0;
    for (long n = 0; n < 120; ++n) {
      const double v = poisson_tail<double>(n, lambda);
      CHECK(v <= previous);
      previous = v;
    }
  }
  for (long n : {0L, 4L, 30L}) {
    double previous = -1.0;
    for (double lambda = 0.0; lambda < 60.0; lambda += 0.75) {
      const double v = poisson_tail<double>(n, lambda);
      CHECK(v >= previous);
      previous = v;
    }
  }
  CHECK_THROWS_AS(poisson_tail<double>(-1, 1.0), PreconditionError);
  CHECK_THROWS_AS(poisson_tail<double>(1, 701.0), RangeError);
}

TEST_CASE("SeriesTolerance validation and environment override") {
  SeriesTolerance bad;
  bad.eps_abs = 0.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad = {};
  bad.max_terms = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);

  ::setenv("CVPQC_EPS", "1e-12", 1);
  CHECK(SeriesTolerance::from_environment().eps_abs == 1e-12);
  ::unsetenv("CVPQC_EPS");
  CHECK(SeriesTolerance::from_environment().eps_abs == 1e-15);
}
