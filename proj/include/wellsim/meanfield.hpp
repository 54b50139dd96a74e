#pragma once

#include <Eigen/Dense>
#include <vector>

// Two-mode mean-field dynamics of the double well and the exact traces it
// is benchmarked against. The mean-field population admits a closed form in
// Jacobi elliptic functions, implemented here directly so no math library
// beyond Eigen is needed.

namespace wellsim {

struct JacobiElliptic {
  double sn;
  double cn;
  double dn;
};

// sn, cn, dn at argument u and parameter m >= 0 (m = k^2 convention).
// Uses the arithmetic-geometric mean for 0 < m < 1 and the reciprocal
// parameter map for m > 1, where cn picks up dn's role and oscillation
// turns into libration.
JacobiElliptic jacobi_elliptic(double u, double m);
double jacobi_cn(double u, double m);

// Population of well A for N particles all starting in A:
//   N_A(t) = (N/2) * (1 + cn(2t | m)),  m = (N * gamma / 4)^2.
double closed_form_na(double t, int total_particles, double gamma);

// Interaction strength where the mean-field motion changes character
// (m = 1): gamma_c = 4 / N. Above it the population stays trapped on one
// side instead of swinging fully across.
double critical_gamma(int total_particles);

struct MeanFieldSpec {
  int total_particles = 0;
  double gamma = 0.0;
  double initial_na = 0.0;  // population of well A at t = 0, in [0, N]
  double t_max = 0.0;
  int num_points = 0;  // uniform samples including both endpoints
};

struct Trace {
  std::vector<double> times;
  std::vector<double> values;
  double max_norm_drift = 0.0;  // integrator diagnostics, 0 for exact traces
};

// Fixed-step RK4 integration of the two-mode amplitude equations
//   i dk1/dt = -k2 + gamma N |k1|^2 k1   (and 1 <-> 2),
// starting from real amplitudes sqrt(initial_na/N), sqrt(1-initial_na/N).
// Total population is monitored; drift beyond 1e-6 raises NumericalError.
Trace mean_field_trace(const MeanFieldSpec& spec);

// <n_A>(t) from exact propagation of the basis state |initial_na, rest>.
Trace exact_na_trace(int total_particles, double gamma, int initial_na, double t_max,
                     int num_points);

struct OccupationTraces {
  std::vector<double> times;
  // One row per time, column n holds the probability of configuration
  // (n, N - n).
  Eigen::MatrixXd probabilities;
};

// Full distribution over two-well configurations versus time, for watching
// an initial configuration lock in place at strong interaction.
OccupationTraces configuration_trapping_trace(int total_particles, double gamma,
                                              int initial_na, double t_max, int num_points);

}  // namespace wellsim
