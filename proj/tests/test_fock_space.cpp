#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvpqc/ensembles.hpp"
#include "cvpqc/fock_json.hpp"
#include "cvpqc/fock_space.hpp"

using namespace cvpqc;

namespace {

FockOperator random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal;
  FockOperator a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  FockOperator rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("cutoff rule picks the smallest admissible dimension") {
  for (double radius : {0.0, 0.5, 2.0, 4.5}) {
    const CutoffPolicy policy{1e-10, radius};
    const auto dim = static_cast<long>(policy.dim());
    CHECK(poisson_tail<double>(dim - 1, radius * radius) < 1e-10);
    if (dim > 1) CHECK(poisson_tail<double>(dim - 2, radius * radius) >= 1e-10);
  }
  CHECK(CutoffPolicy{1e-12, 2.0}.dim() > CutoffPolicy{1e-10, 2.0}.dim());
  CHECK_THROWS_AS(coherent_projector({3.0, 0.0}, CutoffPolicy{1e-10, 2.0}), CutoffError);
  CHECK_THROWS_AS((CutoffPolicy{0.0, 1.0}.dim()), PreconditionError);
}

TEST_CASE("coherent projector examples") {
  const FockOperator vacuum = coherent_projector({0.0, 0.0}, CutoffPolicy{1e-10, 1.0});
  CHECK(std::abs(vacuum(0, 0) - 1.0) == 0.0);
  CHECK(vacuum.norm() == doctest::Approx(1.0));

  const FockOperator one = coherent_projector({1.0, 0.0}, CutoffPolicy{1e-10, 1.0});
  double factorial = 1.0;
  for (Eigen::Index n = 0; n < one.rows(); ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    CHECK(std::abs(one(n, n).real() - std::exp(-1.0) / factorial) < 1e-15);
  }

  const FockOperator two = coherent_projector({2.0, 0.7}, CutoffPolicy{1e-10, 2.0});
  CHECK(std::abs(two.trace().real() - 1.0) < 1e-10);
  CHECK((two - two.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("displacement of the vacuum is a coherent state") {
  for (Complex beta : {Complex(0.4, 0.0), std::polar(1.0, 2.0), Complex(-0.3, 0.6)}) {
    const auto label = CoherentLabel::from_amplitude(beta);
    const CutoffPolicy cutoff{1e-18, 3.2};  // dim >= 40
    REQUIRE(cutoff.dim() >= 40);
    FockOperator vacuum = FockOperator::Zero(cutoff.dim(), cutoff.dim());
    vacuum(0, 0) = 1.0;
    const FockOperator shifted = displacement_conjugate(vacuum, label, cutoff);
    CHECK((shifted - coherent_projector(label, cutoff)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("zero displacement is the identity map") {
  std::mt19937_64 rng(7);
  const CutoffPolicy cutoff{1e-10, 1.0};
  const FockOperator rho = random_state(rng, static_cast<Eigen::Index>(cutoff.dim()));
  CHECK(displacement_conjugate(rho, {0.0, 1.3}, cutoff) == rho);
}

TEST_CASE("truncated displacement is unitary on the low block") {
  const std::size_t dim = 60;
  const FockOperator d = displacement_operator(std::polar(1.2, 0.4), dim);
  const FockOperator product = d * d.adjoint();
  const Eigen::Index block = 20;
  const FockOperator id = FockOperator::Identity(block, block);
  CHECK((product.topLeftCorner(block, block) - id).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("hs distance examples") {
  std::mt19937_64 rng(11);
  const FockOperator rho = random_state(rng, 6);
  CHECK(hs_distance_numeric(rho, rho) == 0.0);

  FockOperator e0 = FockOperator::Zero(2, 2), e1 = FockOperator::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  CHECK(hs_distance_numeric(e0, e1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  for (double r : {0.3, 1.0, 1.8}) {
    const CutoffPolicy cutoff{1e-14, r};
    const FockOperator alpha = coherent_projector({r, 0.9}, cutoff);
    const FockOperator vacuum = coherent_projector({0.0, 0.0}, cutoff);
    CHECK(std::abs(hs_distance_numeric(vacuum, alpha) - std::sqrt(2.0 * (1.0 - std::exp(-r * r)))) < 1e-7);
  }
  CHECK_THROWS_AS(hs_distance_numeric(FockOperator::Zero(2, 2), FockOperator::Zero(3, 3)), PreconditionError);
}

TEST_CASE("hs distance is a metric on random states") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const FockOperator a = random_state(rng, 8), b = random_state(rng, 8), c = random_state(rng, 8);
    CHECK(hs_distance_numeric(a, c) <= hs_distance_numeric(a, b) + hs_distance_numeric(b, c) + 1e-15);
    CHECK(hs_distance_numeric(a, b) == doctest::Approx(hs_distance_numeric(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("hs distance is invariant under displacement") {
  const CutoffPolicy cutoff{1e-12, 2.5};
  const FockOperator a = maximally_mixed(1.0, cutoff);
  const FockOperator b = circle_mixture(3, 0.8, cutoff);
  const CoherentLabel shift{0.9, 0.6};
  const double before = hs_distance_numeric(a, b);
  const double after = hs_distance_numeric(displacement_conjugate(a, shift, cutoff), displacement_conjugate(b, shift, cutoff));
  CHECK(std::abs(before - after) < 1e-8);
}

TEST_CASE("displacement preserves trace, positivity and entropy") {
  const double b = 1.2;
  const CutoffPolicy cutoff{1e-10, 2.0 * b};
  const FockOperator unit = maximally_mixed(b, cutoff);
  const FockOperator shifted = displacement_conjugate(unit, {b * 0.8, 2.2}, cutoff);
  CHECK(std::abs(shifted.trace().real() - unit.trace().real()) < 10.0 * cutoff.tail_budget);
  Eigen::SelfAdjointEigenSolver<FockOperator> solver(shifted, Eigen::EigenvaluesOnly);
  CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
  CHECK(std::abs(von_neumann_entropy(shifted) - von_neumann_entropy(unit)) < 1e-6);
}

TEST_CASE("displacement beyond the cutoff is reported") {
  const CutoffPolicy tight{1e-10, 1.0};
  const FockOperator unit = maximally_mixed(1.0, tight);
  CHECK_THROWS_AS(displacement_conjugate(unit, {2.0, 0.0}, tight), CutoffError);
  const CutoffPolicy loose{1e-10, 3.0};
  CHECK_THROWS_AS(displacement_conjugate(unit, {0.5, 0.0}, loose), CutoffError);  // dimension mismatch
}

TEST_CASE("von Neumann entropy examples") {
  const FockOperator pure = coherent_projector({1.1, 0.3}, CutoffPolicy{1e-12, 1.1});
  CHECK(std::abs(von_neumann_entropy(pure)) < 1e-9);

  FockOperator half = FockOperator::Zero(2, 2);
  half(0, 0) = half(1, 1) = 0.5;
  CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-15));

  // Disk-mixed state at b = 1 renormalised at dim 60 versus a direct sum.
  Eigen::VectorXd w = maximally_mixed_diagonal(1.0, 60);
  w /= w.sum();
  long double direct = 0.0L, pmf = std::exp(-1.0L), lower = 0.0L, total = 0.0L;
  std::vector<long double> weights;
  for (int n = 0; n < 60; ++n) {
    lower += pmf;
    weights.push_back(1.0L - lower);
    total += 1.0L - lower;
    pmf /= (n + 1);
  }
  for (long double v : weights)
    if (v > 0) direct -= (v / total) * std::log2(v / total);
  FockOperator diag = w.cast<Complex>().asDiagonal();
  CHECK(std::abs(von_neumann_entropy(diag) - static_cast<double>(direct)) < 1e-10);
  CHECK(std::abs(shannon_entropy_bits(w) - static_cast<double>(direct)) < 1e-10);

  FockOperator negative = FockOperator::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(von_neumann_entropy(negative), PreconditionError);
}

TEST_CASE("phase rotation turns coherent states") {
  const CutoffPolicy cutoff{1e-12, 1.5};
  const FockOperator a = coherent_projector({1.5, 0.2}, cutoff);
  const FockOperator b = coherent_projector({1.5, 1.1}, cutoff);
  CHECK((phase_rotate(a, 0.9) - b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("json debug dump round-trips") {
  const FockOperator a = coherent_projector({0.7, 0.4}, CutoffPolicy{1e-8, 0.7});
  const nlohmann::json j = to_json(a);
  CHECK(j["dim"] == a.rows());
  const FockOperator back = operator_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back == a);
}
