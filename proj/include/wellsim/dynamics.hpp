#pragma once

#include <Eigen/Dense>

#include "wellsim/errors.hpp"
#include "wellsim/fock.hpp"
#include "wellsim/lattice.hpp"

// Exact time evolution. The workhorse is a one-time eigendecomposition of
// the Hamiltonian; evolve() then costs two dense mat-vecs per time point
// with no accumulating error. A fixed-step Runge-Kutta integrator of the
// Schrodinger equation is kept alongside as an independent cross-check.

namespace wellsim {

// Spectral form of a Hamiltonian: H = V diag(E) V^dag. Construction checks
// reconstruction and unitarity of V to 1e-10.
class Propagator {
 public:
  Propagator(FockBasis basis, Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors,
             const Eigen::MatrixXcd& original);

  const FockBasis& basis() const { return basis_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

 private:
  FockBasis basis_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

Propagator diagonalize(const HermitianOperator& op);

// |state(t)> = exp(-iHt)|state>, any real t.
QuantumState evolve(const Propagator& prop, const QuantumState& state, double t);

// Classical 4th-order Runge-Kutta on i dc/dt = H c with fixed step size.
// Deliberately shares no code with evolve(). Norm drifts as step^4 and is
// not corrected, so the returned state is validated loosely; shrink the
// step when more accuracy is needed.
QuantumState evolve_ode_oracle(const HermitianOperator& op, const QuantumState& state,
                               double t, double step);

// One-body mode propagator U(t) = exp(+i h t) with h_ij the tunneling rate
// between wells i and j. Columns give the Heisenberg images of the creation
// operators, matching evolve() under the default sign convention. Only the
// non-interacting problem factorizes this way, so W != 0 is rejected.
Eigen::MatrixXcd single_particle_matrix(const WellGraph& graph, double t);

}  // namespace wellsim
