// Density operators of the continuous-variable private channel: the disk
// mixture I_b, circle mixtures rho_p, the encryption ensemble Phi_N and the
// phase-shift ensemble of the simplified protocol.
#pragma once

#include <cstddef>

#include "cvpqc/fock_space.hpp"

namespace cvpqc {

/// Full protocol parameters: input disk radius b and circle count N.
/// Circle p in 1..N has radius p*b/N and carries p keys; M = N(N+1)/2.
struct ChannelSpec {
  double b = 1.0;
  int N = 1;

  void validate() const;
  long key_count() const { return static_cast<long>(N) * (N + 1) / 2; }
  double radius(int p) const { return p == N ? b : p * b / N; }
};

/// Simplified protocol: one displacement of radius r, p phase shifts 2*pi*q/p.
struct SimplifiedSpec {
  double b = 1.0;
  int p = 1;
  double r = 1.0;

  void validate() const;
  double rotation(int q) const;
};

struct Diagnostics {
  std::size_t dim = 0;
  double trace_deficit = 0.0;
};

Diagnostics diagnose(const FockOperator& rho);

/// Diagonal of I_b: poisson_tail(n, b^2) / b^2 for n < dim.
Eigen::VectorXd maximally_mixed_diagonal(double b, std::size_t dim);
FockOperator maximally_mixed(double b, const CutoffPolicy& cutoff);

/// Uniform mixture of p coherent states of the given radius at angles
/// 2*pi*q/p. Real, with nonzero entries only where p divides m - n.
FockOperator circle_mixture(int p, double radius, const CutoffPolicy& cutoff);

/// Phi_N = (1/M) sum_p p rho_p(p b / N).
FockOperator phi_n(const ChannelSpec& spec, const CutoffPolicy& cutoff);

/// E_N(|beta>) = D(beta) Phi_N D(beta)^dag.
FockOperator encrypt(const CoherentLabel& input, const ChannelSpec& spec, const CutoffPolicy& cutoff);

/// Canonical form of the phase-shift ensemble plus the rotation that maps
/// it back: direct mixture = phase_rotate(canonical, rotation).
struct PhaseShiftState {
  FockOperator canonical;
  double rotation = 0.0;
};

PhaseShiftState phase_shift_ensemble(const CoherentLabel& input, const SimplifiedSpec& spec,
                                     const CutoffPolicy& cutoff);

}  // namespace cvpqc
