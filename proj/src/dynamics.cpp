#include "wellsim/dynamics.hpp"

#include <cmath>
#include <string>
#include <complex>
#include <stdexcept>
#include <utility>

namespace wellsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Propagator::Propagator(FockBasis basis, Eigen::VectorXd eigenvalues,
                       Eigen::MatrixXcd eigenvectors, const Eigen::MatrixXcd& original)
    : basis_(std::move(basis)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
  const auto n = eigenvectors_.rows();
  double unitary_defect =
      (eigenvectors_.adjoint() * eigenvectors_ - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  double reconstruction_defect =
      (eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint() - original)
          .cwiseAbs()
          .maxCoeff();
  if (unitary_defect > 1e-10 || reconstruction_defect > 1e-10)
    throw NumericalError("eigendecomposition defect: unitarity " +
                         std::to_string(unitary_defect) + ", reconstruction " +
                         std::to_string(reconstruction_defect));
}

Propagator diagonalize(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  return Propagator(op.basis(), solver.eigenvalues(), solver.eigenvectors(), op.matrix());
}

QuantumState evolve(const Propagator& prop, const QuantumState& state, double t) {
  if (!(prop.basis() == state.basis()))
    throw std::invalid_argument("propagator and state live on different bases");
  Eigen::VectorXcd modal = prop.eigenvectors().adjoint() * state.amplitudes();
  modal.array() *= (-kI * t * prop.eigenvalues().array().cast<std::complex<double>>()).exp();
  return QuantumState(state.basis(), prop.eigenvectors() * modal);
}

QuantumState evolve_ode_oracle(const HermitianOperator& op, const QuantumState& state,
                               double t, double step) {
  if (!(op.basis() == state.basis()))
    throw std::invalid_argument("operator and state live on different bases");
  if (step <= 0.0) throw std::invalid_argument("step must be positive");

  Eigen::VectorXcd c = state.amplitudes();
  if (t != 0.0) {
    const long steps = std::max(1L, std::lround(std::ceil(std::abs(t) / step)));
    const double h = t / static_cast<double>(steps);
    const Eigen::MatrixXcd rhs = -kI * op.matrix();
    Eigen::VectorXcd k1, k2, k3, k4;
    for (long s = 0; s < steps; ++s) {
      k1 = rhs * c;
      k2 = rhs * (c + 0.5 * h * k1);
      k3 = rhs * (c + 0.5 * h * k2);
      k4 = rhs * (c + h * k3);
      c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return QuantumState(state.basis(), std::move(c), 1e-4);
}

Eigen::MatrixXcd single_particle_matrix(const WellGraph& graph, double t) {
  validate(graph);
  if (graph.interaction != 0.0)
    throw std::invalid_argument("mode mixing matrix only exists for zero interaction");

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(graph.num_wells, graph.num_wells);
  for (const auto& e : graph.edges) {
    h(e.a, e.b) += e.rate;
    h(e.b, e.a) += e.rate;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  Eigen::VectorXcd phases =
      (kI * t * solver.eigenvalues().array().cast<std::complex<double>>()).exp();
  return solver.eigenvectors().cast<std::complex<double>>() * phases.asDiagonal() *
         solver.eigenvectors().transpose().cast<std::complex<double>>();
}

}  // namespace wellsim
