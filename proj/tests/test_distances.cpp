#include <doctest.h>

#include <cmath>

#include "cvpqc/distances.hpp"
#include "cvpqc/ensembles.hpp"

using namespace cvpqc;

namespace {

double trace_product(const FockOperator& a, const FockOperator& b) { return (a * b).trace().real(); }

}  // namespace

TEST_CASE("Tr(I_b^2)") {
  CHECK(std::abs(trace_unit_sq(1e-3) - 1.0) < 1e-5);

  double direct = 0.0;
  for (long n = 0;; ++n) {
    const double t = poisson_tail<double>(n, 1.0);
    direct += t * t;
    if (t * t < 1e-17) break;
  }
  CHECK(std::abs(trace_unit_sq(1.0) - direct) < 1e-14);

  const CutoffPolicy cutoff{1e-14, 2.0};
  const FockOperator unit = maximally_mixed(2.0, cutoff);
  CHECK(std::abs(trace_unit_sq(2.0) - trace_product(unit, unit)) < 1e-9);

  // Both branches of the series agree where they meet.
  CHECK(trace_unit_sq(std::sqrt(0.5) * (1 - 1e-12)) == doctest::Approx(trace_unit_sq(std::sqrt(0.5))).epsilon(1e-9));
}

TEST_CASE("Tr(I_b Phi_N)") {
  const double b = 1.7;
  const double n1 = std::exp(-2.0 * b * b) / (b * b) * bessel_sum<double>(1, 2.0 * b * b);
  CHECK(trace_cross(b, 1) == doctest::Approx(n1).epsilon(1e-12));

  const CutoffPolicy cutoff{1e-14, 1.0};
  CHECK(std::abs(trace_cross(1.0, 3) - trace_product(maximally_mixed(1.0, cutoff), phi_n({1.0, 3}, cutoff))) < 1e-9);
  for (double bb : {0.5, 1.0, 2.0, 4.0})
    for (int N : {1, 3, 9}) CHECK(trace_cross(bb, N) > 0.0);
}

TEST_CASE("Tr(Phi_N^2)") {
  for (double b : {0.4, 1.0, 3.0}) CHECK(trace_phi_sq(b, 1) == doctest::Approx(1.0).epsilon(1e-13));
  const CutoffPolicy cutoff{1e-14, 1.0};
  const FockOperator phi = phi_n({1.0, 3}, cutoff);
  CHECK(std::abs(trace_phi_sq(1.0, 3) - trace_product(phi, phi)) < 1e-9);
}

TEST_CASE("hs2_exact assembly and oracle") {
  const DistanceReport r = hs2_exact(2.0, 1);
  CHECK(r.d2_exact == doctest::Approx(1.0 + trace_unit_sq(2.0) - 2.0 * trace_cross(2.0, 1)).epsilon(1e-13));

  for (double b : {0.5, 1.0, 2.0})
    for (int N : {2, 5}) {
      const DistanceReport rep = hs2_exact(b, N);
      CHECK(rep.d2_exact == rep.tr_unit2 - 2.0 * rep.tr_cross + rep.tr_phi2);
      CHECK(rep.tr_unit2 == trace_unit_sq(b));
      CHECK(rep.tr_cross == trace_cross(b, N));
      CHECK(rep.tr_phi2 == trace_phi_sq(b, N));
    }

  DistanceReport five = hs2_exact(1.0, 5);
  CHECK_FALSE(five.discrepancy().has_value());
  attach_numeric_oracle(five, 1e-12);
  REQUIRE(five.discrepancy().has_value());
  CHECK(*five.discrepancy() < 1e-8);

  const CutoffPolicy cutoff{1e-12, 1.0};
  const FockOperator unit = maximally_mixed(1.0, cutoff), phi = phi_n({1.0, 5}, cutoff);
  CHECK(std::abs(five.tr_unit2 - trace_product(unit, unit)) < 1e-8);
  CHECK(std::abs(five.tr_cross - trace_product(unit, phi)) < 1e-8);
  CHECK(std::abs(five.tr_phi2 - trace_product(phi, phi)) < 1e-8);
}

TEST_CASE("hs2_exact decreases with N") {
  double previous = INFINITY;
  for (int N : {2, 4, 8, 16, 32}) {
    const double d2 = hs2_exact(2.0, N).d2_exact;
    CHECK(d2 >= 0.0);
    CHECK(d2 <= previous);
    previous = d2;
  }
}

TEST_CASE("guess and key bits") {
  CHECK(hs2_guess(9) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(hs2_guess(1) == 0.25);
  CHECK(key_bits(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(key_bits(0.01) == doctest::Approx(12.2877123795).epsilon(1e-10));
  for (int N = 10; N <= 200; N += 10)
    CHECK(std::abs(key_bits_exact(N) - key_bits(std::sqrt(hs2_guess(N)))) < 1.0);
  CHECK_THROWS_AS(key_bits(0.0), PreconditionError);
}

TEST_CASE("guess is an upper bound for large N") {
  for (double b : {1.0, 2.0})
    for (int N : {20, 40, 80}) CHECK(hs2_exact(b, N).d2_exact <= 1.2 * hs2_guess(N));
}

TEST_CASE("exact-to-guess ratio settles well below one") {
  // The ratio approaches a b-dependent constant (about 0.11 at b = 2)
  // rather than 1; see the acceptance report for the full numbers.
  double previous = 0.0;
  for (int N : {20, 40, 80}) {
    const double ratio = hs2_exact(2.0, N).d2_exact / hs2_guess(N);
    CHECK(ratio > 0.1);
    CHECK(ratio < 0.13);
    if (previous > 0.0) CHECK(std::abs(ratio - previous) < 0.01);
    previous = ratio;
  }
}

TEST_CASE("simplified protocol distance") {
  for (double b : {0.5, 1.0, 2.0})
    CHECK(hs2_simplified(b, 1, b) == doctest::Approx(hs2_exact(b, 1).d2_exact).epsilon(1e-12));

  const CutoffPolicy cutoff{1e-14, 2.0};
  const double d = hs_distance_numeric(maximally_mixed(2.0, cutoff), circle_mixture(4, 1.0, cutoff));
  CHECK(std::abs(hs2_simplified(2.0, 4, 1.0) - d * d) < 1e-8);

  for (double r = 0.1; r <= 2.0; r += 0.1) CHECK(std::abs(hs2_simplified(2.0, 200, r) - hs2_simplified(2.0, 400, r)) < 1e-10);

  CHECK_THROWS_AS(hs2_simplified(2.0, 4, 2.5), PreconditionError);
  CHECK_THROWS_AS(hs2_simplified(2.0, 0, 1.0), PreconditionError);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(hs2_exact(-1.0, 3), PreconditionError);
  CHECK_THROWS_AS(hs2_exact(1.0, 0), PreconditionError);
  CHECK_THROWS_AS(hs2_exact(11.0, 3), RangeError);  // 2 b^2 beyond the Bessel range
}
