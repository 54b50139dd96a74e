#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <utility>
#include <vector>

#include "wellsim/fock.hpp"

// The interference protocols: two-well Hong-Ou-Mandel style collisions,
// the three-well line and four-well square acting on a particle pair, and
// the parity-correlation optimization on the four-well square.

namespace wellsim {

// Probability distribution over the configurations of a FockBasis (or a
// labeled subset of them). Probabilities must be non-negative and sum to 1
// within 1e-9.
class Distribution {
 public:
  Distribution(std::vector<Configuration> labels, Eigen::VectorXd probabilities);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<Configuration>& labels() const { return labels_; }
  const Eigen::VectorXd& probabilities() const { return probabilities_; }
  double probability_of(const Configuration& c) const;

 private:
  std::vector<Configuration> labels_;
  Eigen::VectorXd probabilities_;
};

// Two wells colliding n_a against n_b particles at tunneling rate 1. The
// default measurement time pi/4 is the 50-50 splitter point.
struct HomSpec {
  int n_a = 1;
  int n_b = 1;
  double gamma = 0.0;
  double measure_time = std::numbers::pi / 4.0;
};

// p_n for n = 0..N particles found in well A, labels ascending in n.
Distribution run_hom(const HomSpec& spec);

// The same distribution sampled on a uniform time grid from 0 to t_max.
std::vector<std::pair<double, Distribution>> hom_time_series(const HomSpec& spec,
                                                             double t_max, int num_points);

// Interaction strength where the three outcome probabilities of the 1-on-1
// collision become equal. Scans [gamma_lo, gamma_hi] for a sign change of
// p_0 - p_1 at the splitter time, then bisects; raises NumericalError when
// the window brackets no crossing.
double find_equal_probability_gamma(int n_a = 1, int n_b = 1, double gamma_lo = 0.0,
                                    double gamma_hi = 6.0);

// One particle in each outer well of the A-B-C line (rate 1), evolved for
// time t. Balanced splitting happens at pi/(2 sqrt 2), revival at twice
// that.
Distribution run_three_well(double t);

// One particle on each diagonal of the A-B-C-D square (rate 1). Balanced
// splitting at pi/4, revival at pi/2.
Distribution run_four_well(double t);

// <(-1)^(n_a) * (-1)^(n_b)> for two wells of the given state.
double parity_expectation(const QuantumState& state, int well_a, int well_b);

struct BellSpec {
  double gamma = 0.0;
  double measure_time = std::numbers::pi / 4.0;
  double xi_min = 0.0;
  double xi_max = 5.0;
  double xi_step = 0.01;
  double refine_tol = 1e-4;
};

// Parity correlation E(r1, r2) between wells B and D of the square whose
// A-B rate is scaled by r1 and C-D rate by r2, starting from |1,0,1,0>.
double bell_correlation(double r1, double r2, double gamma = 0.0,
                        double measure_time = std::numbers::pi / 4.0);

// CHSH-style combination of four correlations, one tunneling-rate offset:
//   Q(xi) = E(1,1) + E(1+xi,1) + E(1,1-xi) - E(1+xi,1-xi).
double chsh_q(double xi, const BellSpec& spec = {});

// Q sampled on the spec's grid, as (xi, Q) pairs.
std::vector<std::pair<double, double>> chsh_grid(const BellSpec& spec = {});

struct ChshOptimum {
  double q_max;
  double xi_star;
};

// Grid scan plus golden-section refinement of Q. Every evaluated Q is
// checked against the quantum bound 2 sqrt 2 (plus rounding slack);
// a violation or a flat grid raises NumericalError.
ChshOptimum maximize_chsh(const BellSpec& spec = {});

}  // namespace wellsim
