#include "cvpqc/distances.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cvpqc/ensembles.hpp"

namespace cvpqc {

namespace {

void check_b(double b, const char* who) {
  require(std::isfinite(b) && b > 0.0, std::string(who) + ": b must be positive");
  if (2.0 * b * b > kMaxBesselArgument) throw RangeError(std::string(who) + ": b out of supported range (2b^2 <= 200)");
}

double finalize_d2(double d2, const char* who) {
  if (d2 >= 0.0) return d2;
  if (d2 >= -kNegativeD2Tolerance) return 0.0;
  throw ConsistencyError(std::string(who) + ": D^2 = " + std::to_string(d2) +
                         " is negative beyond roundoff; series truncation too loose");
}

}  // namespace

std::optional<double> DistanceReport::discrepancy() const {
  if (!d2_numeric) return std::nullopt;
  return std::abs(d2_exact - *d2_numeric);
}

double scaled_cross_series(double b, double r, const SeriesTolerance& tol) {
  const double x = 2.0 * r * b;
  const double log_ratio = std::log(b / r);
  const double shift = -b * b - r * r;
  double sum = 0.0;
  for (int k = 1; k <= std::min(tol.max_terms, kMaxBesselOrder); ++k) {
    const double ik = bessel_i<double>(k, x, tol);
    // Powers of b/r can overflow long before the product does.
    const double term = ik > 0.0 ? std::exp(k * log_ratio + std::log(ik) + shift) : 0.0;
    sum += term;
    if (k >= kBesselSumFloor && term < tol.eps_abs * sum) break;
  }
  return sum;
}

double scaled_stripe_sum(int step, double x, const SeriesTolerance& tol) {
  if (x == 0.0) return 1.0;
  const double i0 = bessel_i<double>(0, x, tol);
  const double tail = bessel_sum<double>(step, x, tol, kBesselSumFloor);
  return std::exp(-x) * (i0 + 2.0 * tail);
}

double trace_unit_sq(double b, const SeriesTolerance& tol) {
  check_b(b, "trace_unit_sq");
  const double x = 2.0 * b * b;
  const double scale = std::exp(-x);
  if (x >= 1.0)
    return (1.0 - scale * (bessel_i<double>(0, x, tol) + bessel_i<double>(1, x, tol))) / (b * b);
  // Equivalent form I_1 + 2 sum_{k>=2} I_k avoids cancelling e^x against I_0 + I_1.
  const double rest = bessel_sum<double>(1, x, tol, kBesselSumFloor) - bessel_i<double>(1, x, tol);
  return scale * (bessel_i<double>(1, x, tol) + 2.0 * rest) / (b * b);
}

double trace_cross(double b, int N, const SeriesTolerance& tol) {
  check_b(b, "trace_cross");
  require(N >= 1, "trace_cross: N must be >= 1");
  const ChannelSpec spec{b, N};
  double sum = 0.0;
  for (int p = 1; p <= N; ++p) sum += p * scaled_cross_series(b, spec.radius(p), tol);
  return sum / static_cast<double>(spec.key_count()) / (b * b);
}

double trace_phi_sq(double b, int N, const SeriesTolerance& tol) {
  check_b(b, "trace_phi_sq");
  require(N >= 1, "trace_phi_sq: N must be >= 1");
  const ChannelSpec spec{b, N};
  // Tr(rho_p1 rho_p2) keeps only m - n divisible by both periods, i.e. by lcm(p1, p2).
  double sum = 0.0;
  for (int p1 = 1; p1 <= N; ++p1) {
    for (int p2 = p1; p2 <= N; ++p2) {
      const double r1 = spec.radius(p1), r2 = spec.radius(p2);
      const double x = 2.0 * r1 * r2;
      const long period = std::lcm(static_cast<long>(p1), static_cast<long>(p2));
      // e^{-(r1^2+r2^2)} = e^{-x} e^{-(r1-r2)^2}
      const double stripe = period > kMaxBesselOrder
                                ? std::exp(-x) * bessel_i<double>(0, x, tol)
                                : scaled_stripe_sum(static_cast<int>(period), x, tol);
      const double term = static_cast<double>(p1) * p2 * std::exp(-(r1 - r2) * (r1 - r2)) * stripe;
      sum += p1 == p2 ? term : 2.0 * term;
    }
  }
  const double m = static_cast<double>(spec.key_count());
  return sum / (m * m);
}

DistanceReport hs2_exact(double b, int N, const SeriesTolerance& tol) {
  DistanceReport report;
  report.b = b;
  report.N = N;
  report.tr_unit2 = trace_unit_sq(b, tol);
  report.tr_cross = trace_cross(b, N, tol);
  report.tr_phi2 = trace_phi_sq(b, N, tol);
  report.d2_exact = finalize_d2(report.tr_unit2 - 2.0 * report.tr_cross + report.tr_phi2, "hs2_exact");
  report.d2_guess = hs2_guess(N);
  return report;
}

void attach_numeric_oracle(DistanceReport& report, double tail_budget) {
  const CutoffPolicy cutoff{tail_budget, report.b};
  const FockOperator unit = maximally_mixed(report.b, cutoff);
  const FockOperator phi = phi_n({report.b, report.N}, cutoff);
  const double d = hs_distance_numeric(unit, phi);
  report.d2_numeric = d * d;
}

double hs2_guess(int N) {
  require(N >= 1, "hs2_guess: N must be >= 1");
  const double n1 = N + 1.0;
  return 1.0 / (n1 * n1);
}

double key_bits(double d_hs) {
  require(d_hs > 0.0 && d_hs < 1.0, "key_bits: estimate only meaningful for 0 < d_hs < 1");
  return -1.0 - 2.0 * std::log2(d_hs);
}

double key_bits_exact(int N) {
  require(N >= 1, "key_bits_exact: N must be >= 1");
  return std::log2(static_cast<double>(ChannelSpec{1.0, N}.key_count()));
}

double hs2_simplified(double b, int p, double r, const SeriesTolerance& tol) {
  check_b(b, "hs2_simplified");
  require(p >= 1, "hs2_simplified: p must be >= 1");
  require(std::isfinite(r) && r > 0.0 && r <= b, "hs2_simplified: r must satisfy 0 < r <= b");
  const double x = 2.0 * r * r;
  const double stripe = p > kMaxBesselOrder ? std::exp(-x) * bessel_i<double>(0, x, tol) : scaled_stripe_sum(p, x, tol);
  const double d2 = trace_unit_sq(b, tol) - 2.0 / (b * b) * scaled_cross_series(b, r, tol) + stripe;
  return finalize_d2(d2, "hs2_simplified");
}

}  // namespace cvpqc
