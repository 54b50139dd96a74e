#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "wellsim/dynamics.hpp"
#include "wellsim/errors.hpp"
#include "wellsim/fock.hpp"
#include "wellsim/lattice.hpp"

using namespace wellsim;
using std::numbers::pi;

namespace {

HermitianOperator random_hermitian(const FockBasis& basis, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j)
      a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  return HermitianOperator(basis, h);
}

QuantumState random_state(const FockBasis& basis, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amps(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    amps(i) = std::complex<double>(gauss(rng), gauss(rng));
  amps /= amps.norm();
  return QuantumState(basis, amps);
}

}  // namespace

TEST_CASE("diagonalizing the zero operator leaves every state alone") {
  FockBasis basis(2, 2);
  HermitianOperator zero(basis, Eigen::MatrixXcd::Zero(3, 3));
  Propagator prop = diagonalize(zero);
  CHECK(prop.eigenvalues().cwiseAbs().maxCoeff() == 0.0);
  QuantumState state = QuantumState::basis_state(basis, Configuration({1, 1}));
  QuantumState later = evolve(prop, state, 37.0);
  CHECK((later.amplitudes() - state.amplitudes()).norm() < 1e-14);
}

TEST_CASE("one particle in a double well splits into symmetric and antisymmetric modes") {
  const double lambda = 1.7;
  FockBasis basis(2, 1);
  Propagator prop = diagonalize(build_hamiltonian(double_well(lambda), basis));
  CHECK(prop.eigenvalues()(0) == doctest::Approx(-lambda).epsilon(1e-13));
  CHECK(prop.eigenvalues()(1) == doctest::Approx(lambda).epsilon(1e-13));
}

TEST_CASE("two free particles give equally spaced levels") {
  FockBasis basis(2, 2);
  HermitianOperator h = build_hamiltonian(double_well(1.0), basis);
  Propagator prop = diagonalize(h);
  Eigen::MatrixXd real_h = h.matrix().real();
  // brackets from the Gershgorin bound, roots found by determinant bisection
  CHECK(prop.eigenvalues()(0) ==
        doctest::Approx(testing::oracle_det_root(real_h, -3.0, -1.0)).epsilon(1e-9));
  CHECK(std::abs(prop.eigenvalues()(1)) < 1e-12);
  CHECK(prop.eigenvalues()(2) ==
        doctest::Approx(testing::oracle_det_root(real_h, 1.0, 3.0)).epsilon(1e-9));
}

TEST_CASE("free two-particle collision follows the closed form with phases") {
  FockBasis basis(2, 2);
  Propagator prop = diagonalize(build_hamiltonian(double_well(1.0), basis));
  QuantumState start = QuantumState::basis_state(basis, Configuration({1, 1}));
  for (double t : {0.0, 0.11, pi / 8.0, 0.5, pi / 4.0, 1.9, pi}) {
    QuantumState now = evolve(prop, start, t);
    std::complex<double> middle = now.amplitude(Configuration({1, 1}));
    std::complex<double> left = now.amplitude(Configuration({2, 0}));
    std::complex<double> right = now.amplitude(Configuration({0, 2}));
    std::complex<double> expected_side{0.0, std::sin(2.0 * t) / std::sqrt(2.0)};
    CHECK(std::abs(middle - std::cos(2.0 * t)) < 1e-12);
    CHECK(std::abs(left - expected_side) < 1e-12);
    CHECK(std::abs(right - expected_side) < 1e-12);
  }
  // balanced splitter and half-period revival
  QuantumState split = evolve(prop, start, pi / 8.0);
  CHECK(split.probability(Configuration({1, 1})) == doctest::Approx(0.5).epsilon(1e-12));
  QuantumState revived = evolve(prop, start, pi / 2.0);
  CHECK(revived.probability(Configuration({1, 1})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolution composes additively and reverses in time") {
  std::mt19937 rng(411);
  FockBasis basis(3, 3);
  HermitianOperator h = random_hermitian(basis, rng);
  Propagator prop = diagonalize(h);
  QuantumState start = random_state(basis, rng);
  QuantumState two_hops = evolve(prop, evolve(prop, start, 0.6), 1.1);
  QuantumState one_hop = evolve(prop, start, 1.7);
  CHECK((two_hops.amplitudes() - one_hop.amplitudes()).norm() < 1e-12);
  QuantumState back = evolve(prop, evolve(prop, start, 2.3), -2.3);
  CHECK((back.amplitudes() - start.amplitudes()).norm() < 1e-12);
}

TEST_CASE("norm and energy are conserved along the flow") {
  std::mt19937 rng(902);
  FockBasis basis(4, 2);
  HermitianOperator h = random_hermitian(basis, rng);
  Propagator prop = diagonalize(h);
  QuantumState start = random_state(basis, rng);
  double energy0 = expectation(h, start);
  for (double t : {0.3, 1.7, 12.0, 100.0}) {
    QuantumState now = evolve(prop, start, t);
    CHECK(std::abs(now.amplitudes().norm() - 1.0) < 1e-12);
    CHECK(expectation(h, now) == doctest::Approx(energy0).epsilon(1e-10));
  }
}

TEST_CASE("propagator construction rejects a broken spectral decomposition") {
  FockBasis basis(2, 1);
  HermitianOperator h = build_hamiltonian(double_well(1.0), basis);
  Propagator good = diagonalize(h);
  CHECK_THROWS_AS(Propagator(basis, good.eigenvalues(), 0.99 * good.eigenvectors(),
                             h.matrix()),
                  NumericalError);
}

TEST_CASE("integrator oracle agrees with the spectral propagator") {
  std::mt19937 rng(5150);
  for (int particles : {2, 3, 5}) {
    FockBasis basis(3, particles);  // dims 6, 10, 21
    HermitianOperator h = random_hermitian(basis, rng);
    QuantumState start = random_state(basis, rng);
    QuantumState exact = evolve(diagonalize(h), start, 1.0);
    QuantumState stepped = evolve_ode_oracle(h, start, 1.0, 1e-3);
    CHECK((exact.amplitudes() - stepped.amplitudes()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("integrator reproduces the collision closed form") {
  FockBasis basis(2, 2);
  HermitianOperator h = build_hamiltonian(double_well(1.0), basis);
  QuantumState start = QuantumState::basis_state(basis, Configuration({1, 1}));
  QuantumState state = evolve_ode_oracle(h, start, pi / 4.0, 1e-4);
  CHECK(std::abs(state.amplitude(Configuration({1, 1}))) < 1e-8);
  std::complex<double> side{0.0, 1.0 / std::sqrt(2.0)};
  CHECK(std::abs(state.amplitude(Configuration({2, 0})) - side) < 1e-8);
  CHECK(std::abs(state.amplitude(Configuration({0, 2})) - side) < 1e-8);
}

TEST_CASE("integrator validates its inputs") {
  FockBasis basis(2, 1);
  HermitianOperator h = build_hamiltonian(double_well(1.0), basis);
  QuantumState start = QuantumState::basis_state(basis, Configuration({1, 0}));
  CHECK_THROWS_AS(evolve_ode_oracle(h, start, 1.0, 0.0), std::invalid_argument);
  FockBasis other(2, 2);
  QuantumState mismatched = QuantumState::basis_state(other, Configuration({1, 1}));
  CHECK_THROWS_AS(evolve_ode_oracle(h, mismatched, 1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(diagonalize(h), mismatched, 1.0), std::invalid_argument);
}

TEST_CASE("mode matrix at the splitter time is the 50-50 beam splitter") {
  Eigen::MatrixXcd u = single_particle_matrix(double_well(1.0), pi / 4.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u(0, 0) - r) < 1e-13);
  CHECK(std::abs(u(1, 1) - r) < 1e-13);
  CHECK(std::abs(u(0, 1) - std::complex<double>(0.0, r)) < 1e-13);
  CHECK(std::abs(u(1, 0) - std::complex<double>(0.0, r)) < 1e-13);
}

TEST_CASE("mode matrix equals the exponential of the rate matrix") {
  std::mt19937 rng(333);
  std::uniform_real_distribution<double> rate(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    int wells = 2 + static_cast<int>(rng() % 3);
    WellGraph graph{wells, {}, 0.0, 0.0};
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(wells, wells);
    for (int a = 0; a < wells; ++a)
      for (int b = a + 1; b < wells; ++b)
        if (rng() % 2 == 0) {
          double r = rate(rng);
          graph.edges.push_back({a, b, r});
          h(a, b) = h(b, a) = r;
        }
    double t = rate(rng);
    Eigen::MatrixXcd u = single_particle_matrix(graph, t);
    CHECK((u - testing::oracle_mode_matrix(h, t)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(wells, wells))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("three-well revival matrix swaps the outer wells with a sign") {
  // at the revival time the mode matrix is minus the A-C swap, not the
  // identity; the pair state still revives because it is swap symmetric
  const double t_revival = pi / std::numbers::sqrt2;
  Eigen::MatrixXcd u = single_particle_matrix(three_well_line(1.0), t_revival);
  Eigen::MatrixXcd expected(3, 3);
  expected << 0, 0, -1, 0, -1, 0, -1, 0, 0;
  CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::MatrixXcd twice = single_particle_matrix(three_well_line(1.0), 2.0 * t_revival);
  CHECK((twice - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("interacting graphs have no factorized mode matrix") {
  CHECK_THROWS_AS(single_particle_matrix(double_well(1.0, 0.5), 1.0),
                  std::invalid_argument);
}

TEST_CASE("free occupations follow the one-body picture") {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> rate(-1.5, 1.5);
  for (int trial = 0; trial < 8; ++trial) {
    int wells = 2 + static_cast<int>(rng() % 3);
    int particles = 1 + static_cast<int>(rng() % 4);
    WellGraph graph{wells, {}, 0.0, 0.0};
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(wells, wells);
    for (int a = 0; a < wells; ++a)
      for (int b = a + 1; b < wells; ++b) {
        double r = rate(rng);
        graph.edges.push_back({a, b, r});
        h(a, b) = h(b, a) = r;
      }
    FockBasis basis(wells, particles);
    std::vector<int> occ(wells, 0);
    for (int p = 0; p < particles; ++p) occ[rng() % wells] += 1;
    Configuration start(occ);
    QuantumState evolved = evolve(diagonalize(build_hamiltonian(graph, basis)),
                                  QuantumState::basis_state(basis, start), 0.9);
    Eigen::MatrixXcd u = testing::oracle_mode_matrix(h, 0.9);
    for (int w = 0; w < wells; ++w) {
      double one_body = 0.0;
      for (int j = 0; j < wells; ++j) one_body += std::norm(u(w, j)) * occ[j];
      CHECK(number_expectation(evolved, w) == doctest::Approx(one_body).epsilon(1e-9));
    }
  }
}
