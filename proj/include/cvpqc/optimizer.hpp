// Optimal displacement radius for the simplified protocol and the
// phase-shift saturation sweep.
#pragma once

#include <vector>

#include "cvpqc/special_functions.hpp"

namespace cvpqc {

/// r I1(2r^2) - r I0(2r^2) + e^{r^2} / (b e^{b^2}) I1(2rb); its interior
/// root minimises D^2(I_b, rho_p(r)) as p -> infinity.
double stationarity(double b, double r, const SeriesTolerance& tol = {});

/// e^{-2r^2} * stationarity(b, r) = (1/4) dD^2/dr, evaluated without the
/// e^{2r^2}-sized intermediate terms.
double stationarity_scaled(double b, double r, const SeriesTolerance& tol = {});

enum class RminMethod { root_find, grid_min };

const char* to_string(RminMethod method);

struct RminResult {
  double b = 0.0;
  double r_min = 0.0;
  double residual = 0.0;  // stationarity_scaled at r_min
  RminMethod method = RminMethod::root_find;
  double grid_r_min = 0.0;  // independent argmin of hs2_simplified(b, 400, .)
};

struct GridMinimum {
  double r = 0.0;
  double d2 = 0.0;
};

inline constexpr int kLargeP = 400;
inline constexpr int kGridPoints = 2000;
inline constexpr int kBracketPoints = 200;

/// Minimises hs2_simplified(b, p, .) on a uniform grid over (0, b] followed
/// by repeated 3-point parabolic refinement around the best node.
GridMinimum grid_minimize(double b, int p, const SeriesTolerance& tol = {}, int points = kGridPoints);

/// Brackets the interior sign change of the stationarity expression on
/// (0.01 b, b) and bisects it; falls back to grid minimisation.
RminResult find_rmin(double b, const SeriesTolerance& tol = {});

struct SaturationPoint {
  int p = 0;
  double r = 0.0;
  double d2 = 0.0;
};

struct SaturationResult {
  double b = 0.0;
  int p_sat = 0;
  std::vector<SaturationPoint> curve;
};

inline constexpr double kDefaultSaturationTol = 1e-4;

SaturationResult saturation_sweep(double b, int p_max, const SeriesTolerance& tol = {},
                                  double saturation_tol = kDefaultSaturationTol, int points = kGridPoints);

}  // namespace cvpqc
