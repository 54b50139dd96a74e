#include "wellsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "wellsim/dynamics.hpp"
#include "wellsim/errors.hpp"
#include "wellsim/lattice.hpp"

namespace wellsim {

Distribution::Distribution(std::vector<Configuration> labels, Eigen::VectorXd probabilities)
    : labels_(std::move(labels)), probabilities_(std::move(probabilities)) {
  if (static_cast<int>(labels_.size()) != probabilities_.size())
    throw std::invalid_argument("labels and probabilities differ in length");
  for (int i = 0; i < probabilities_.size(); ++i)
    if (probabilities_(i) < -1e-12)
      throw std::invalid_argument("negative probability");
  if (std::abs(probabilities_.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("probabilities sum to " + std::to_string(probabilities_.sum()));
}

double Distribution::probability_of(const Configuration& c) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == c) return probabilities_(i);
  throw std::invalid_argument("configuration " + c.label() + " not in distribution");
}

namespace {

void check_hom_spec(const HomSpec& spec) {
  if (spec.n_a < 0 || spec.n_b < 0) throw std::invalid_argument("negative particle count");
  if (spec.n_a + spec.n_b < 1) throw std::invalid_argument("need at least one particle");
}

// Distribution over n_A with labels (n, N-n) for n ascending.
Distribution occupation_distribution(const QuantumState& state) {
  int total = state.basis().total_particles();
  std::vector<Configuration> labels;
  labels.reserve(total + 1);
  Eigen::VectorXd p(total + 1);
  for (int n = 0; n <= total; ++n) {
    Configuration cfg({n, total - n});
    labels.push_back(cfg);
    p(n) = state.probability(cfg);
  }
  return Distribution(std::move(labels), std::move(p));
}

Distribution basis_distribution(const QuantumState& state) {
  std::vector<Configuration> labels(state.basis().begin(), state.basis().end());
  return Distribution(std::move(labels), state.amplitudes().cwiseAbs2());
}

struct HomEvolution {
  FockBasis basis;
  Propagator propagator;
  QuantumState initial;

  explicit HomEvolution(const HomSpec& spec)
      : basis(2, spec.n_a + spec.n_b),
        propagator(diagonalize(build_hamiltonian(double_well(1.0, spec.gamma), basis))),
        initial(QuantumState::basis_state(basis, Configuration({spec.n_a, spec.n_b}))) {}
};

}  // namespace

Distribution run_hom(const HomSpec& spec) {
  check_hom_spec(spec);
  HomEvolution setup(spec);
  return occupation_distribution(evolve(setup.propagator, setup.initial, spec.measure_time));
}

std::vector<std::pair<double, Distribution>> hom_time_series(const HomSpec& spec,
                                                             double t_max, int num_points) {
  check_hom_spec(spec);
  if (t_max < 0.0) throw std::invalid_argument("negative time span");
  if (num_points < 2) throw std::invalid_argument("need at least two sample points");
  HomEvolution setup(spec);
  std::vector<std::pair<double, Distribution>> series;
  series.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    double t = t_max * static_cast<double>(i) / (num_points - 1);
    series.emplace_back(t, occupation_distribution(evolve(setup.propagator, setup.initial, t)));
  }
  return series;
}

double find_equal_probability_gamma(int n_a, int n_b, double gamma_lo, double gamma_hi) {
  if (gamma_hi <= gamma_lo) throw std::invalid_argument("empty interaction window");
  auto imbalance = [&](double gamma) {
    Distribution d = run_hom({n_a, n_b, gamma});
    return d.probabilities()(0) - d.probabilities()(1);
  };

  // coarse scan for a bracket, then bisection
  constexpr int kScanSteps = 60;
  double prev_gamma = gamma_lo;
  double prev_val = imbalance(prev_gamma);
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScanSteps && !bracketed; ++i) {
    double g = gamma_lo + (gamma_hi - gamma_lo) * static_cast<double>(i) / kScanSteps;
    double val = imbalance(g);
    if (prev_val == 0.0 || (prev_val < 0.0) != (val < 0.0)) {
      lo = prev_gamma;
      hi = g;
      bracketed = true;
    }
    prev_gamma = g;
    prev_val = val;
  }
  if (!bracketed)
    throw NumericalError("no equal-probability crossing in [" + std::to_string(gamma_lo) +
                         ", " + std::to_string(gamma_hi) + "]");

  double f_lo = imbalance(lo);
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    double f_mid = imbalance(mid);
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Distribution run_three_well(double t) {
  FockBasis basis(3, 2);
  Propagator prop = diagonalize(build_hamiltonian(three_well_line(1.0), basis));
  QuantumState initial = QuantumState::basis_state(basis, Configuration({1, 0, 1}));
  return basis_distribution(evolve(prop, initial, t));
}

Distribution run_four_well(double t) {
  FockBasis basis(4, 2);
  Propagator prop = diagonalize(build_hamiltonian(four_well_square(1.0), basis));
  QuantumState initial = QuantumState::basis_state(basis, Configuration({1, 0, 1, 0}));
  return basis_distribution(evolve(prop, initial, t));
}

double parity_expectation(const QuantumState& state, int well_a, int well_b) {
  const FockBasis& basis = state.basis();
  if (well_a < 0 || well_a >= basis.num_wells() || well_b < 0 || well_b >= basis.num_wells())
    throw std::invalid_argument("well index out of range");
  double acc = 0.0;
  for (int i = 0; i < basis.size(); ++i) {
    int exponent = basis.at(i)[well_a] + basis.at(i)[well_b];
    double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
    acc += sign * std::norm(state.amplitudes()(i));
  }
  return acc;
}

double bell_correlation(double r1, double r2, double gamma, double measure_time) {
  FockBasis basis(4, 2);
  WellGraph graph = bell_square(1.0, r1, r2, gamma);
  Propagator prop = diagonalize(build_hamiltonian(graph, basis));
  QuantumState initial = QuantumState::basis_state(basis, Configuration({1, 0, 1, 0}));
  return parity_expectation(evolve(prop, initial, measure_time), 1, 3);
}

namespace {

double checked_q(double xi, const BellSpec& spec) {
  double q = chsh_q(xi, spec);
  constexpr double kQuantumBound = 2.0 * std::numbers::sqrt2;
  if (std::abs(q) > kQuantumBound + 1e-6)
    throw NumericalError("correlation bound violated: Q(" + std::to_string(xi) + ") = " +
                         std::to_string(q));
  return q;
}

}  // namespace

double chsh_q(double xi, const BellSpec& spec) {
  auto corr = [&](double r1, double r2) {
    return bell_correlation(r1, r2, spec.gamma, spec.measure_time);
  };
  return corr(1.0, 1.0) + corr(1.0 + xi, 1.0) + corr(1.0, 1.0 - xi) -
         corr(1.0 + xi, 1.0 - xi);
}

std::vector<std::pair<double, double>> chsh_grid(const BellSpec& spec) {
  if (spec.xi_step <= 0.0 || spec.xi_max < spec.xi_min)
    throw std::invalid_argument("bad offset grid");
  std::vector<std::pair<double, double>> grid;
  long count = std::lround(std::floor((spec.xi_max - spec.xi_min) / spec.xi_step + 1e-9)) + 1;
  grid.reserve(count);
  for (long i = 0; i < count; ++i) {
    double xi = spec.xi_min + spec.xi_step * static_cast<double>(i);
    grid.emplace_back(xi, checked_q(xi, spec));
  }
  return grid;
}

ChshOptimum maximize_chsh(const BellSpec& spec) {
  auto grid = chsh_grid(spec);
  if (grid.size() < 3) throw std::invalid_argument("offset grid too small to optimize");

  std::size_t best = 0;
  double q_lo = grid[0].second, q_hi = grid[0].second;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i].second > grid[best].second) best = i;
    q_lo = std::min(q_lo, grid[i].second);
    q_hi = std::max(q_hi, grid[i].second);
  }
  if (q_hi - q_lo < 1e-12)
    throw NumericalError("correlation landscape is flat across the scan window");

  // golden-section around the best grid point
  double a = grid[best == 0 ? 0 : best - 1].first;
  double b = grid[best + 1 == grid.size() ? best : best + 1].first;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = checked_q(x1, spec);
  double f2 = checked_q(x2, spec);
  while (b - a > spec.refine_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = checked_q(x2, spec);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = checked_q(x1, spec);
    }
  }
  double xi_star = 0.5 * (a + b);
  double q_star = checked_q(xi_star, spec);
  if (q_star < grid[best].second) {
    xi_star = grid[best].first;
    q_star = grid[best].second;
  }
  return {q_star, xi_star};
}

}  // namespace wellsim
