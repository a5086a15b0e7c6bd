#include "cvpqc/optimizer.hpp"

#include <cmath>
#include <future>
#include <string>

#include "cvpqc/distances.hpp"

namespace cvpqc {

double stationarity(double b, double r, const SeriesTolerance& tol) {
  require(b > 0.0 && r > 0.0 && r <= b, "stationarity: requires 0 < r <= b");
  const double x = 2.0 * r * r;
  return r * bessel_i<double>(1, x, tol) - r * bessel_i<double>(0, x, tol) +
         std::exp(r * r - b * b) / b * bessel_i<double>(1, 2.0 * r * b, tol);
}

double stationarity_scaled(double b, double r, const SeriesTolerance& tol) {
  require(b > 0.0 && r > 0.0 && r <= b, "stationarity: requires 0 < r <= b");
  const double x = 2.0 * r * r;
  const double y = 2.0 * r * b;
  // e^{-2r^2} e^{r^2 - b^2} I1(2rb) = e^{-(b-r)^2} e^{-2rb} I1(2rb)
  return std::exp(-x) * r * (bessel_i<double>(1, x, tol) - bessel_i<double>(0, x, tol)) +
         std::exp(-(b - r) * (b - r) - y) * bessel_i<double>(1, y, tol) / b;
}

const char* to_string(RminMethod method) { return method == RminMethod::root_find ? "root_find" : "grid_min"; }

GridMinimum grid_minimize(double b, int p, const SeriesTolerance& tol, int points) {
  require(points >= 3, "grid_minimize: need at least 3 grid points");
  const double h = b / points;
  auto f = [&](double r) { return hs2_simplified(b, p, r, tol); };

  GridMinimum best{h, f(h)};
  for (int i = 2; i <= points; ++i) {
    const double r = i * h;
    const double v = f(r);
    if (v < best.d2) best = {r, v};
  }

  // Parabola through (r-s, r, r+s), shrinking s each pass.
  for (double s = h; s > 1e-9 * b; s /= 10.0) {
    const double lo = best.r - s, hi = best.r + s;
    if (lo <= 0.0 || hi > b) break;
    const double fl = f(lo), fc = best.d2, fh = f(hi);
    const double curvature = fl - 2.0 * fc + fh;
    if (!(curvature > 0.0)) break;
    const double r = best.r + 0.5 * s * (fl - fh) / curvature;
    if (r <= 0.0 || r > b) break;
    const double v = f(r);
    if (v <= best.d2) best = {r, v};
  }
  return best;
}

RminResult find_rmin(double b, const SeriesTolerance& tol) {
  require(std::isfinite(b) && b > 0.0 && b <= 7.0, "find_rmin: b must lie in (0, 7]");
  RminResult result;
  result.b = b;
  result.grid_r_min = grid_minimize(b, kLargeP, tol).r;

  auto g = [&](double r) { return stationarity_scaled(b, r, tol); };
  const double lo_edge = 0.01 * b;
  const double step = (b - lo_edge) / (kBracketPoints - 1);
  double lo = lo_edge, g_lo = g(lo);
  bool bracketed = false;
  double hi = lo, g_hi = g_lo;
  for (int i = 1; i < kBracketPoints; ++i) {
    hi = i == kBracketPoints - 1 ? b : lo_edge + i * step;
    g_hi = g(hi);
    if ((g_lo < 0.0) != (g_hi < 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    g_lo = g_hi;
  }

  if (!bracketed) {
    result.method = RminMethod::grid_min;
    result.r_min = result.grid_r_min;
    result.residual = g(result.r_min);
    return result;
  }

  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((g_lo < 0.0) == (g_mid < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  result.method = RminMethod::root_find;
  result.r_min = 0.5 * (lo + hi);
  result.residual = g(result.r_min);
  return result;
}

SaturationResult saturation_sweep(double b, int p_max, const SeriesTolerance& tol, double saturation_tol,
                                  int points) {
  require(p_max >= 2, "saturation_sweep: p_max must be >= 2");
  require(saturation_tol > 0.0, "saturation_sweep: saturation_tol must be positive");
  std::vector<std::future<GridMinimum>> jobs;
  for (int p = 1; p <= p_max; ++p)
    jobs.push_back(std::async(std::launch::async, [=] { return grid_minimize(b, p, tol, points); }));

  SaturationResult result;
  result.b = b;
  for (int p = 1; p <= p_max; ++p) {
    const GridMinimum m = jobs[p - 1].get();
    result.curve.push_back({p, m.r, m.d2});
  }
  const double floor = result.curve.back().d2;
  result.p_sat = p_max;
  for (const auto& point : result.curve) {
    if (point.d2 - floor < saturation_tol) {
      result.p_sat = point.p;
      break;
    }
  }
  return result;
}

}  // namespace cvpqc
