// Holevo bound of the encrypted channel: the total output state Lambda_2b is
// diagonal, its populations come from a triple integral over the input and
// key disks, and chi = S(Lambda_2b) - S(I_b).
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvpqc/fock_space.hpp"

namespace cvpqc {

struct QuadratureSettings {
  int radial_order = 64;     // Gauss-Legendre nodes in each radius
  int angular_points = 256;  // periodic trapezoid nodes in the relative angle
  double max_disagreement = 1e-6;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int order);

struct LambdaSpectrum {
  double b = 0.0;
  std::vector<double> weights;  // normalised lambda_n, n < dim
  double quad_error = 0.0;      // max_n |lambda_n(L) - lambda_n(2L)| plus mass past dim
  double captured_mass = 0.0;   // raw integral over n < dim divided by pi b^4 / 2
  double odd_power_mass = 0.0;  // same normalisation with R^{2n+1} in the integrand
  std::size_t dim = 0;
};

/// lambda_n proportional to int_0^b int_0^b int_0^{2pi} e^{-R^2} R^{2n}/n! x y dx dy dphi,
/// R^2 = x^2 + y^2 - 2xy cos(phi); evaluated at `quad` and at doubled
/// resolution, returning the refined weights.
LambdaSpectrum lambda_spectrum(double b, const QuadratureSettings& quad, const CutoffPolicy& cutoff);

struct OffDiagonalEstimate {
  double max_magnitude = 0.0;   // largest |mean| over m != n
  double standard_error = 0.0;  // standard error of that entry
  double max_z = 0.0;           // largest |mean| / SE over all off-diagonal entries
  std::vector<double> diagonal;
  std::size_t dim = 0;
  std::size_t samples = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20061103;

/// Monte Carlo estimate of the un-reordered double mixture
/// int D(alpha) (int |beta><beta| d^2beta) D(alpha)^dag d^2alpha with alpha and beta uniform
/// in the disk of radius b, at a cutoff of at most 20 levels.
OffDiagonalEstimate off_diagonal_check(double b, std::size_t samples, std::uint64_t seed = kDefaultSeed);

/// chi(b) in bits.
double holevo_bound(double b, const QuadratureSettings& quad, const CutoffPolicy& cutoff);

struct HolevoSample {
  double b = 0.0;
  double chi_bits = 0.0;
  LambdaSpectrum spectrum;
  std::optional<std::string> error;
};

struct HolevoCurve {
  std::vector<HolevoSample> samples;
};

/// One holevo_bound per grid point, cutoff radius 2b for each; failures are
/// recorded per sample.
HolevoCurve holevo_curve(std::span<const double> b_grid, const QuadratureSettings& quad, double tail_budget = 1e-10);

}  // namespace cvpqc
