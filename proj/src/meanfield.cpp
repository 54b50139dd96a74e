#include "wellsim/meanfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "wellsim/dynamics.hpp"
#include "wellsim/errors.hpp"
#include "wellsim/fock.hpp"
#include "wellsim/lattice.hpp"

namespace wellsim {

namespace {

// Ascending Landen ladder: run the AGM forward, then fold the amplitude
// phi back down (A&S 16.4). Valid for 0 < m < 1.
JacobiElliptic jacobi_agm(double u, double m) {
  constexpr int kMaxIter = 32;
  std::array<double, kMaxIter> a_seq, c_seq;
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  int n = 0;
  for (; n < kMaxIter; ++n) {
    a_seq[n] = a;
    c_seq[n] = c;
    if (std::abs(c) <= 1e-16 * a) break;
    double a_next = 0.5 * (a + b);
    double b_next = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = a_next;
    b = b_next;
  }
  if (n == kMaxIter) --n;

  double phi = std::ldexp(a * u, n);  // 2^n * a_n * u
  for (int i = n; i >= 1; --i)
    phi = 0.5 * (phi + std::asin(std::clamp(c_seq[i] / a_seq[i] * std::sin(phi), -1.0, 1.0)));

  double sn = std::sin(phi);
  double cn = std::cos(phi);
  double dn = std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
  return {sn, cn, dn};
}

}  // namespace

JacobiElliptic jacobi_elliptic(double u, double m) {
  if (m < 0.0) throw std::invalid_argument("elliptic parameter must be non-negative");
  if (std::abs(m - 1.0) < 1e-12) {
    double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (m > 1.0) {
    // reciprocal parameter map: scale the argument, swap cn and dn
    double k = std::sqrt(m);
    JacobiElliptic r = jacobi_elliptic(u * k, 1.0 / m);
    return {r.sn / k, r.dn, r.cn};
  }
  return jacobi_agm(u, m);
}

double jacobi_cn(double u, double m) { return jacobi_elliptic(u, m).cn; }

double closed_form_na(double t, int total_particles, double gamma) {
  if (total_particles < 1) throw std::invalid_argument("need at least one particle");
  double quarter = total_particles * gamma / 4.0;
  double m = quarter * quarter;
  return 0.5 * total_particles * (1.0 + jacobi_cn(2.0 * t, m));
}

double critical_gamma(int total_particles) {
  if (total_particles < 1) throw std::invalid_argument("need at least one particle");
  return 4.0 / total_particles;
}

namespace {

void check_spec(const MeanFieldSpec& spec) {
  if (spec.total_particles < 1) throw std::invalid_argument("need at least one particle");
  if (spec.initial_na < 0.0 || spec.initial_na > spec.total_particles)
    throw std::invalid_argument("initial population outside [0, N]");
  if (spec.t_max < 0.0) throw std::invalid_argument("negative time span");
  if (spec.num_points < 2) throw std::invalid_argument("need at least two sample points");
}

std::vector<double> sample_times(double t_max, int num_points) {
  std::vector<double> t(num_points);
  for (int i = 0; i < num_points; ++i)
    t[i] = t_max * static_cast<double>(i) / (num_points - 1);
  return t;
}

}  // namespace

Trace mean_field_trace(const MeanFieldSpec& spec) {
  check_spec(spec);
  constexpr double kStep = 1e-4;
  const double g_n = spec.gamma * spec.total_particles;
  const std::complex<double> i_unit{0.0, 1.0};

  using Pair = std::array<std::complex<double>, 2>;
  auto rhs = [&](const Pair& k) -> Pair {
    return {-i_unit * (-k[1] + g_n * std::norm(k[0]) * k[0]),
            -i_unit * (-k[0] + g_n * std::norm(k[1]) * k[1])};
  };

  Pair k{std::sqrt(spec.initial_na / spec.total_particles),
         std::sqrt(1.0 - spec.initial_na / spec.total_particles)};

  Trace trace;
  trace.times = sample_times(spec.t_max, spec.num_points);
  trace.values.reserve(spec.num_points);
  trace.values.push_back(spec.total_particles * std::norm(k[0]));

  for (int i = 1; i < spec.num_points; ++i) {
    double dt = trace.times[i] - trace.times[i - 1];
    long substeps = std::max(1L, std::lround(std::ceil(dt / kStep)));
    double h = dt / static_cast<double>(substeps);
    for (long s = 0; s < substeps; ++s) {
      Pair k1 = rhs(k);
      Pair k2 = rhs({k[0] + 0.5 * h * k1[0], k[1] + 0.5 * h * k1[1]});
      Pair k3 = rhs({k[0] + 0.5 * h * k2[0], k[1] + 0.5 * h * k2[1]});
      Pair k4 = rhs({k[0] + h * k3[0], k[1] + h * k3[1]});
      k[0] += (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      k[1] += (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    double drift = std::abs(std::norm(k[0]) + std::norm(k[1]) - 1.0);
    trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
    // the negated comparison also catches a drift that became NaN
    if (!(trace.max_norm_drift <= 1e-6))
      throw NumericalError("mean-field norm drift " + std::to_string(drift) + " at t = " +
                           std::to_string(trace.times[i]));
    trace.values.push_back(spec.total_particles * std::norm(k[0]));
  }
  return trace;
}

namespace {

// Shared exact-propagation setup for the two-well traces.
struct TwoWellEvolution {
  FockBasis basis;
  Propagator propagator;
  QuantumState initial;

  TwoWellEvolution(int total_particles, double gamma, int initial_na)
      : basis(2, total_particles),
        propagator(diagonalize(build_hamiltonian(double_well(1.0, gamma), basis))),
        initial(QuantumState::basis_state(
            basis, Configuration({initial_na, total_particles - initial_na}))) {}
};

}  // namespace

Trace exact_na_trace(int total_particles, double gamma, int initial_na, double t_max,
                     int num_points) {
  MeanFieldSpec bounds{total_particles, gamma, static_cast<double>(initial_na), t_max,
                       num_points};
  check_spec(bounds);
  TwoWellEvolution setup(total_particles, gamma, initial_na);

  Trace trace;
  trace.times = sample_times(t_max, num_points);
  trace.values.reserve(num_points);
  for (double t : trace.times)
    trace.values.push_back(number_expectation(evolve(setup.propagator, setup.initial, t), 0));
  return trace;
}

OccupationTraces configuration_trapping_trace(int total_particles, double gamma,
                                              int initial_na, double t_max, int num_points) {
  MeanFieldSpec bounds{total_particles, gamma, static_cast<double>(initial_na), t_max,
                       num_points};
  check_spec(bounds);
  TwoWellEvolution setup(total_particles, gamma, initial_na);

  OccupationTraces traces;
  traces.times = sample_times(t_max, num_points);
  traces.probabilities.resize(num_points, total_particles + 1);
  for (int i = 0; i < num_points; ++i) {
    QuantumState state = evolve(setup.propagator, setup.initial, traces.times[i]);
    for (int idx = 0; idx < setup.basis.size(); ++idx) {
      int na = setup.basis.at(idx)[0];
      traces.probabilities(i, na) = std::norm(state.amplitudes()(idx));
    }
  }
  return traces;
}

}  // namespace wellsim
