// Truncated Fock-space operator algebra. Operators are dense complex Eigen
// matrices indexed by occupation number; this is the brute-force reference
// every analytic formula in the library is checked against.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "cvpqc/errors.hpp"
#include "cvpqc/special_functions.hpp"

namespace cvpqc {

template <typename Real>
using FockMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using FockVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using FockOperator = FockMatrix<double>;
using Complex = std::complex<double>;

/// Coherent-state amplitude in polar form, beta = r e^{i theta}.
struct CoherentLabel {
  double r = 0.0;
  double theta = 0.0;

  Complex amplitude() const { return std::polar(r, theta); }

  static CoherentLabel from_amplitude(Complex beta) {
    double theta = std::arg(beta);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    return {std::abs(beta), theta};
  }
};

/// Chooses the truncation dimension so that a coherent state of radius
/// max_radius loses less than tail_budget of its population.
struct CutoffPolicy {
  double tail_budget = 1e-10;
  double max_radius = 0.0;

  std::size_t dim() const {
    require(tail_budget > 0.0 && tail_budget < 1.0, "CutoffPolicy: tail_budget must be in (0, 1)");
    require(max_radius >= 0.0, "CutoffPolicy: max_radius must be non-negative");
    const double lambda = max_radius * max_radius;
    std::size_t n = 1;
    while (poisson_tail<double>(static_cast<long>(n) - 1, lambda) >= tail_budget) ++n;
    return n;
  }

  bool admits(double radius) const { return radius <= max_radius * (1.0 + 1e-12); }

  void require_admits(double radius, const char* who) const {
    if (!admits(radius))
      throw CutoffError(std::string(who) + ": radius " + std::to_string(radius) +
                        " exceeds cutoff max_radius " + std::to_string(max_radius));
  }
};

/// Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n < dim.
template <typename Real = double>
FockVector<Real> coherent_amplitudes(std::complex<Real> alpha, std::size_t dim) {
  FockVector<Real> c(static_cast<Eigen::Index>(dim));
  std::complex<Real> value = std::exp(-std::norm(alpha) / Real(2));
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    c(n) = value;
    value *= alpha / std::sqrt(Real(n + 1));
  }
  return c;
}

/// |alpha><alpha| truncated to cutoff.dim().
inline FockOperator coherent_projector(const CoherentLabel& label, const CutoffPolicy& cutoff) {
  cutoff.require_admits(label.r, "coherent_projector");
  const auto c = coherent_amplitudes<double>(label.amplitude(), cutoff.dim());
  return c * c.adjoint();
}

/// Truncated annihilation operator on `dim` levels.
inline FockOperator annihilation(std::size_t dim) {
  FockOperator a = FockOperator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index n = 1; n < a.rows(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// exp(beta a^dag - beta^* a) on `dim` levels. The last rows are inaccurate
/// because the ladder operators are truncated; callers pad the space.
inline FockOperator displacement_operator(Complex beta, std::size_t dim) {
  const FockOperator a = annihilation(dim);
  const FockOperator generator = beta * a.adjoint() - std::conj(beta) * a;
  return generator.exp();
}

/// Working dimension for a displacement whose output is cropped to `dim`.
inline std::size_t padded_dimension(std::size_t dim, double shift) {
  return 2 * dim + 20 + static_cast<std::size_t>(std::ceil(8.0 * shift));
}

/// Trace loss below this is floating-point noise, whatever the tail budget.
inline constexpr double kTraceRoundoff = 1e-12;

/// D(beta) rho D(beta)^dag. The displacement is exponentiated in a padded
/// space and the result cropped back to rho's dimension; any population
/// pushed past the cutoff shows up as lost trace and is reported as a
/// cutoff violation when it exceeds 10 * tail_budget (plus roundoff).
inline FockOperator displacement_conjugate(const FockOperator& rho, const CoherentLabel& label,
                                           const CutoffPolicy& cutoff) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  require(rho.rows() == rho.cols(), "displacement_conjugate: operator must be square");
  if (label.r == 0.0) return rho;
  cutoff.require_admits(label.r, "displacement_conjugate");
  if (dim != cutoff.dim())
    throw CutoffError("displacement_conjugate: operator dimension does not match the cutoff policy");

  const std::size_t work = padded_dimension(dim, label.r);
  const FockOperator d = displacement_operator(label.amplitude(), work);
  const auto top = d.topLeftCorner(static_cast<Eigen::Index>(work), static_cast<Eigen::Index>(dim));
  const FockOperator full = top * rho * top.adjoint();
  FockOperator out = full.topLeftCorner(rho.rows(), rho.cols());
  out = (out + out.adjoint().eval()) / 2.0;

  const double lost = rho.trace().real() - out.trace().real();
  if (lost > 10.0 * cutoff.tail_budget + kTraceRoundoff)
    throw CutoffError("displacement_conjugate: displaced support exceeds cutoff (trace lost " +
                      std::to_string(lost) + ")");
  return out;
}

/// U rho U^dag with U = diag(e^{i n angle}); rotates phase space by `angle`.
inline FockOperator phase_rotate(const FockOperator& rho, double angle) {
  FockOperator out = rho;
  for (Eigen::Index m = 0; m < rho.rows(); ++m)
    for (Eigen::Index n = 0; n < rho.cols(); ++n)
      out(m, n) *= std::polar(1.0, angle * static_cast<double>(m - n));
  return out;
}

/// sqrt(Tr((a-b)^2)), the Frobenius norm of a Hermitian difference.
template <typename DerivedA, typename DerivedB>
double hs_distance_numeric(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw PreconditionError("hs_distance_numeric: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                            std::to_string(b.rows()) + ")");
  return static_cast<double>((a - b).norm());
}

/// -sum p log2 p with 0 log 0 = 0.
template <typename Range>
double shannon_entropy_bits(const Range& probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

inline constexpr double kNegativeEigenvalueTolerance = 1e-10;

/// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0) are truncation
/// noise and are treated as zero.
template <typename Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix m = rho;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lambda = static_cast<double>(ev(i));
    if (lambda < -kNegativeEigenvalueTolerance)
      throw PreconditionError("von_neumann_entropy: eigenvalue " + std::to_string(lambda) + " < -1e-10, not a state");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

}  // namespace cvpqc
