// Closed-form Hilbert-Schmidt distances between the disk mixture I_b and the
// encryption ensembles, built from modified Bessel series.
#pragma once

#include <optional>

#include "cvpqc/special_functions.hpp"

namespace cvpqc {

struct DistanceReport {
  double b = 0.0;
  int N = 0;
  double d2_exact = 0.0;
  double d2_guess = 0.0;
  std::optional<double> d2_numeric;
  double tr_unit2 = 0.0;  // Tr(I_b^2)
  double tr_cross = 0.0;  // Tr(I_b Phi_N)
  double tr_phi2 = 0.0;   // Tr(Phi_N^2)

  std::optional<double> discrepancy() const;
};

/// Minimum number of Bessel terms taken by every k-sum in this module.
inline constexpr int kBesselSumFloor = 30;
/// D^2 in [-kNegativeD2Tolerance, 0) is roundoff and clamps to zero.
inline constexpr double kNegativeD2Tolerance = 1e-12;

double trace_unit_sq(double b, const SeriesTolerance& tol = {});
double trace_cross(double b, int N, const SeriesTolerance& tol = {});
double trace_phi_sq(double b, int N, const SeriesTolerance& tol = {});

DistanceReport hs2_exact(double b, int N, const SeriesTolerance& tol = {});

/// Fills d2_numeric from dense matrices truncated at `tail_budget`.
void attach_numeric_oracle(DistanceReport& report, double tail_budget = 1e-12);

/// 1 / (N+1)^2.
double hs2_guess(int N);

/// Key length estimate -1 - 2 log2(d_hs), for 0 < d_hs < 1.
double key_bits(double d_hs);
/// Exact key length log2(N(N+1)/2).
double key_bits_exact(int N);

/// D^2(I_b, rho_p(r)) for the simplified phase-shift protocol.
double hs2_simplified(double b, int p, double r, const SeriesTolerance& tol = {});

/// e^{-b^2-r^2} sum_{k>=1} (b/r)^k I_k(2 r b); the shared cross-term series.
double scaled_cross_series(double b, double r, const SeriesTolerance& tol = {});

/// e^{-x} (I_0(x) + 2 sum_{k>=1} I_{step k}(x)); equals 1 when step == 1.
double scaled_stripe_sum(int step, double x, const SeriesTolerance& tol = {});

}  // namespace cvpqc
