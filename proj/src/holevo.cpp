#include "cvpqc/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "cvpqc/ensembles.hpp"

namespace cvpqc {

GaussLegendre gauss_legendre(int order) {
  require(order >= 1, "gauss_legendre: order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double pi = std::numbers::pi;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      derivative = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

struct RawSpectrum {
  std::vector<double> lambda;  // unnormalised, in units of the pi b^4 / 2 total
  double odd_power = 0.0;
};

// One pass over all (x, y, phi) nodes accumulating every lambda_n at once.
// x <-> y symmetry and phi -> 2pi - phi symmetry are folded into the weights.
RawSpectrum integrate(double b, int radial_order, int angular_points, std::size_t dim) {
  const GaussLegendre rule = gauss_legendre(radial_order);
  std::vector<double> r(radial_order), wr(radial_order);
  for (int i = 0; i < radial_order; ++i) {
    r[i] = 0.5 * b * (rule.nodes[i] + 1.0);
    wr[i] = 0.5 * b * rule.weights[i] * r[i];
  }
  const int half = angular_points / 2;
  std::vector<double> cosines(half + 1), wphi(half + 1);
  const double dphi = 2.0 * std::numbers::pi / angular_points;
  for (int j = 0; j <= half; ++j) {
    cosines[j] = std::cos(j * dphi);
    wphi[j] = (j == 0 || (angular_points % 2 == 0 && j == half)) ? dphi : 2.0 * dphi;
  }

  RawSpectrum raw;
  raw.lambda.assign(dim, 0.0);
  std::vector<double> poisson(dim);
  for (int i = 0; i < radial_order; ++i) {
    for (int k = i; k < radial_order; ++k) {
      const double wxy = wr[i] * wr[k] * (i == k ? 1.0 : 2.0);
      const double base = r[i] * r[i] + r[k] * r[k];
      const double cross = 2.0 * r[i] * r[k];
      for (int j = 0; j <= half; ++j) {
        const double r2 = std::max(0.0, base - cross * cosines[j]);
        const double w = wxy * wphi[j];
        double term = std::exp(-r2);
        for (std::size_t n = 0; n < dim; ++n) {
          raw.lambda[n] += w * term;
          term *= r2 / static_cast<double>(n + 1);
          if (term == 0.0) break;
        }
        raw.odd_power += w * std::sqrt(r2);
      }
    }
  }
  const double total = std::numbers::pi * std::pow(b, 4) / 2.0;
  for (double& l : raw.lambda) l /= total;
  raw.odd_power /= total;
  return raw;
}

}  // namespace

LambdaSpectrum lambda_spectrum(double b, const QuadratureSettings& quad, const CutoffPolicy& cutoff) {
  require(std::isfinite(b) && b > 0.0, "lambda_spectrum: b must be positive");
  require(quad.radial_order >= 2 && quad.angular_points >= 4, "lambda_spectrum: quadrature too coarse");
  cutoff.require_admits(2.0 * b, "lambda_spectrum");
  const std::size_t dim = cutoff.dim();

  const RawSpectrum coarse = integrate(b, quad.radial_order, quad.angular_points, dim);
  const RawSpectrum fine = integrate(b, 2 * quad.radial_order, 2 * quad.angular_points, dim);

  LambdaSpectrum out;
  out.b = b;
  out.dim = dim;
  double coarse_sum = 0.0, fine_sum = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    coarse_sum += coarse.lambda[n];
    fine_sum += fine.lambda[n];
  }
  out.captured_mass = fine_sum;
  out.odd_power_mass = fine.odd_power;
  double disagreement = 0.0;
  out.weights.resize(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    out.weights[n] = fine.lambda[n] / fine_sum;
    disagreement = std::max(disagreement, std::abs(out.weights[n] - coarse.lambda[n] / coarse_sum));
  }
  if (disagreement > quad.max_disagreement)
    throw ConvergenceError("lambda_spectrum: quadrature refinement disagreement " + std::to_string(disagreement) +
                           " at b=" + std::to_string(b));
  out.quad_error = disagreement + std::abs(1.0 - fine_sum);
  return out;
}

OffDiagonalEstimate off_diagonal_check(double b, std::size_t samples, std::uint64_t seed) {
  require(std::isfinite(b) && b > 0.0, "off_diagonal_check: b must be positive");
  require(samples >= 2, "off_diagonal_check: need at least 2 samples");
  const std::size_t dim = std::min<std::size_t>(20, CutoffPolicy{1e-10, 2.0 * b}.dim());
  const auto d = static_cast<Eigen::Index>(dim);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disk_point = [&] {
    const double radius = b * std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    return std::polar(radius, angle);
  };

  FockOperator mean = FockOperator::Zero(d, d);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);  // E|entry|^2
  for (std::size_t s = 0; s < samples; ++s) {
    // D(alpha)|beta><beta|D(alpha)^dag = |alpha+beta><alpha+beta|
    const Complex gamma = disk_point() + disk_point();
    const auto c = coherent_amplitudes<double>(gamma, dim);
    const FockOperator projector = c * c.adjoint();
    mean += projector;
    second += projector.cwiseAbs2();
  }
  const double n = static_cast<double>(samples);
  mean /= n;
  second /= n;

  OffDiagonalEstimate out;
  out.dim = dim;
  out.samples = samples;
  for (Eigen::Index m = 0; m < d; ++m) {
    out.diagonal.push_back(mean(m, m).real());
    for (Eigen::Index k = m + 1; k < d; ++k) {
      const double magnitude = std::abs(mean(m, k));
      const double variance = std::max(0.0, second(m, k) - std::norm(mean(m, k)));
      const double se = std::sqrt(variance / (n - 1.0));
      if (magnitude > out.max_magnitude) {
        out.max_magnitude = magnitude;
        out.standard_error = se;
      }
      if (se > 0.0) out.max_z = std::max(out.max_z, magnitude / se);
    }
  }
  return out;
}

double holevo_bound(double b, const QuadratureSettings& quad, const CutoffPolicy& cutoff) {
  const LambdaSpectrum spectrum = lambda_spectrum(b, quad, cutoff);
  Eigen::VectorXd unit = maximally_mixed_diagonal(b, spectrum.dim);
  unit /= unit.sum();
  const double chi = shannon_entropy_bits(spectrum.weights) - shannon_entropy_bits(unit);
  if (chi >= 0.0) return chi;
  if (chi >= -1e-6) return 0.0;
  throw ConsistencyError("holevo_bound: chi = " + std::to_string(chi) + " is negative at b=" + std::to_string(b));
}

HolevoCurve holevo_curve(std::span<const double> b_grid, const QuadratureSettings& quad, double tail_budget) {
  for (double b : b_grid) require(std::isfinite(b) && b > 0.0, "holevo_curve: every b must be positive");
  std::vector<std::future<HolevoSample>> jobs;
  for (double b : b_grid) {
    jobs.push_back(std::async(std::launch::async, [=] {
      HolevoSample sample;
      sample.b = b;
      try {
        const CutoffPolicy cutoff{tail_budget, 2.0 * b};
        sample.spectrum = lambda_spectrum(b, quad, cutoff);
        Eigen::VectorXd unit = maximally_mixed_diagonal(b, sample.spectrum.dim);
        unit /= unit.sum();
        sample.chi_bits = shannon_entropy_bits(sample.spectrum.weights) - shannon_entropy_bits(unit);
        if (sample.chi_bits < 0.0 && sample.chi_bits >= -1e-6) sample.chi_bits = 0.0;
        if (sample.chi_bits < 0.0) sample.error = "negative chi";
      } catch (const std::exception& e) {
        sample.chi_bits = std::nan("");
        sample.error = e.what();
      }
      return sample;
    }));
  }
  HolevoCurve curve;
  for (auto& job : jobs) curve.samples.push_back(job.get());
  return curve;
}

}  // namespace cvpqc
