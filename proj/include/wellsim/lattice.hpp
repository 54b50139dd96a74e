#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wellsim/fock.hpp"

// Well-array geometry and the many-body operators built on it. A WellGraph
// lists tunnel couplings between wells plus the on-site interaction and
// energy; build_hamiltonian turns it into a dense Hermitian matrix over a
// FockBasis.

namespace wellsim {

struct WellGraph {
  struct Edge {
    int a;
    int b;
    double rate;  // tunneling rate lambda_ab, in the units that set the clock
  };

  int num_wells = 0;
  std::vector<Edge> edges;
  double interaction = 0.0;    // pair interaction W; gamma = W / lambda
  double onsite_energy = 0.0;  // uniform single-particle energy E0
};

// Rejects self-loops, out-of-range wells, and duplicate edges.
void validate(const WellGraph& graph);

WellGraph double_well(double tunneling_rate, double interaction = 0.0,
                      double onsite_energy = 0.0);
WellGraph three_well_line(double tunneling_rate, double interaction = 0.0);
WellGraph four_well_square(double tunneling_rate, double interaction = 0.0);

// Square A(0)-B(1)-C(2)-D(3) with tunable side rates: A-B carries
// alice_rate, C-D carries bob_rate, B-C and D-A carry arm_rate.
WellGraph bell_square(double arm_rate, double alice_rate, double bob_rate,
                      double interaction = 0.0);

// Sign placed on the tunneling term. `negative` gives
//   H = E0*N - sum_edges rate*(hop + h.c.) + (W/2) sum_i n_i(n_i - 1),
// `positive` flips the tunneling sign. The two differ by a local gauge on
// bipartite graphs, so every probability computed here is identical either
// way; `negative` is the default throughout.
enum class SignConvention { negative, positive };

// Dense Hermitian matrix over a FockBasis. Construction enforces
// hermiticity to 1e-12 so downstream eigensolves can assume it.
class HermitianOperator {
 public:
  HermitianOperator(FockBasis basis, Eigen::MatrixXcd matrix);

  const FockBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  FockBasis basis_;
  Eigen::MatrixXcd matrix_;
};

HermitianOperator build_hamiltonian(const WellGraph& graph, const FockBasis& basis,
                                    SignConvention sign = SignConvention::negative);

// Diagonal operator (-1)^(n_well).
HermitianOperator parity_operator(const FockBasis& basis, int well);

// Real expectation value <state|op|state>.
double expectation(const HermitianOperator& op, const QuantumState& state);

}  // namespace wellsim
