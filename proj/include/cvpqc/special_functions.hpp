// Modified Bessel functions of the first kind and Poisson tails, evaluated
// by their defining power series. Only real, non-negative arguments are
// supported. Everything is templated on the real type so the same code runs
// in double or long double.
#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "cvpqc/errors.hpp"

namespace cvpqc {

/// Truncation rule for infinite series.
struct SeriesTolerance {
  double eps_abs = 1e-15;
  int max_terms = 10'000;

  void validate() const {
    require(eps_abs > 0.0, "SeriesTolerance: eps_abs must be positive");
    require(max_terms >= 1, "SeriesTolerance: max_terms must be >= 1");
  }

  /// Default tolerance, honouring the CVPQC_EPS environment override.
  static SeriesTolerance from_environment() {
    SeriesTolerance tol;
    if (const char* env = std::getenv("CVPQC_EPS")) {
      char* end = nullptr;
      const double eps = std::strtod(env, &end);
      if (end != env && eps > 0.0) tol.eps_abs = eps;
    }
    return tol;
  }
};

inline constexpr double kMaxBesselArgument = 200.0;
inline constexpr int kMaxBesselOrder = 500;
inline constexpr double kMaxPoissonMean = 700.0;

/// I_order(x) = sum_s (x/2)^(order+2s) / ((order+s)! s!).
template <typename Real>
Real bessel_i(int order, Real x, const SeriesTolerance& tol = {}) {
  tol.validate();
  if (order < 0 || x < Real(0))
    throw PreconditionError("bessel_i: order and x must be non-negative");
  if (order > kMaxBesselOrder || x > Real(kMaxBesselArgument))
    throw RangeError("bessel_i: argument out of supported range (x <= 200, order <= 500), got order=" +
                     std::to_string(order) + " x=" + std::to_string(static_cast<double>(x)));
  if (x == Real(0)) return order == 0 ? Real(1) : Real(0);

  const Real half = x / Real(2);
  // Leading term (x/2)^order / order! built from ratios; peaks at e^(x/2).
  Real term = 1;
  for (int j = 1; j <= order; ++j) term *= half / Real(j);
  if (term == Real(0)) return Real(0);

  const Real quarter_sq = half * half;
  Real sum = term;
  for (int s = 1; s < tol.max_terms; ++s) {
    term *= quarter_sq / (Real(order + s) * Real(s));
    sum += term;
    if (term < Real(tol.eps_abs) * sum) break;
  }
  return sum;
}

/// sum_{k>=1} I_{order_step*k}(x). Stops once a term drops below
/// eps*(running sum + 1) and at least `min_terms` terms were taken. Orders
/// beyond kMaxBesselOrder are dropped: for x <= 200 they contribute below 1e-120.
template <typename Real>
Real bessel_sum(int order_step, Real x, const SeriesTolerance& tol = {}, int min_terms = 1) {
  tol.validate();
  if (order_step < 1) throw PreconditionError("bessel_sum: order_step must be >= 1");
  if (x < Real(0)) throw PreconditionError("bessel_sum: x must be non-negative");
  if (x > Real(kMaxBesselArgument)) throw RangeError("bessel_sum: x out of supported range (x <= 200)");
  if (x == Real(0)) return Real(0);

  Real sum = 0;
  for (int k = 1; k <= tol.max_terms; ++k) {
    const long order = static_cast<long>(order_step) * k;
    if (order > kMaxBesselOrder) break;
    const Real term = bessel_i<Real>(static_cast<int>(order), x, tol);
    sum += term;
    if (k >= min_terms && term < Real(tol.eps_abs) * (sum + Real(1))) break;
  }
  return sum;
}

/// P(Poisson(lambda) > n) = sum_{m>n} lambda^m e^-lambda / m!.
template <typename Real>
Real poisson_tail(long n, Real lambda) {
  if (n < 0) throw PreconditionError("poisson_tail: n must be non-negative");
  if (lambda < Real(0)) throw PreconditionError("poisson_tail: lambda must be non-negative");
  if (lambda > Real(kMaxPoissonMean)) throw RangeError("poisson_tail: lambda out of supported range (<= 700)");
  if (lambda == Real(0)) return Real(0);

  Real pmf = std::exp(-lambda);
  if (Real(n) + Real(1) < lambda) {
    // Complement of the lower sum, Neumaier-compensated. The tail is at
    // least about 1/3 here, so the subtraction loses no significant digits.
    Real sum = pmf, comp = 0;
    for (long m = 1; m <= n; ++m) {
      pmf *= lambda / Real(m);
      const Real t = sum + pmf;
      comp += std::abs(sum) >= std::abs(pmf) ? (sum - t) + pmf : (pmf - t) + sum;
      sum = t;
    }
    const Real tail = Real(1) - (sum + comp);
    return tail < Real(0) ? Real(0) : tail;
  }
  for (long m = 1; m <= n + 1; ++m) pmf *= lambda / Real(m);
  // All terms are positive; once m > lambda they decrease monotonically.
  Real sum = 0;
  for (long m = n + 1; pmf > Real(0); ++m) {
    sum += pmf;
    if (pmf < std::numeric_limits<Real>::epsilon() * sum * Real(1e-2)) break;
    pmf *= lambda / Real(m + 1);
  }
  return sum > Real(1) ? Real(1) : sum;
}

}  // namespace cvpqc
