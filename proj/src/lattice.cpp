#include "wellsim/lattice.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace wellsim {

void validate(const WellGraph& graph) {
  if (graph.num_wells < 1) throw std::invalid_argument("graph needs at least one well");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : graph.edges) {
    if (e.a < 0 || e.a >= graph.num_wells || e.b < 0 || e.b >= graph.num_wells)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.a == e.b) throw std::invalid_argument("self-loop edge");
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
  }
}

WellGraph double_well(double tunneling_rate, double interaction, double onsite_energy) {
  return {2, {{0, 1, tunneling_rate}}, interaction, onsite_energy};
}

WellGraph three_well_line(double tunneling_rate, double interaction) {
  return {3, {{0, 1, tunneling_rate}, {1, 2, tunneling_rate}}, interaction, 0.0};
}

WellGraph four_well_square(double tunneling_rate, double interaction) {
  return {4,
          {{0, 1, tunneling_rate}, {1, 2, tunneling_rate}, {2, 3, tunneling_rate}, {3, 0, tunneling_rate}},
          interaction,
          0.0};
}

WellGraph bell_square(double arm_rate, double alice_rate, double bob_rate, double interaction) {
  return {4,
          {{0, 1, alice_rate}, {1, 2, arm_rate}, {2, 3, bob_rate}, {3, 0, arm_rate}},
          interaction,
          0.0};
}

HermitianOperator::HermitianOperator(FockBasis basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != basis_.size() || matrix_.cols() != basis_.size())
    throw std::invalid_argument("matrix dimension does not match basis");
  double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw std::invalid_argument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
}

HermitianOperator build_hamiltonian(const WellGraph& graph, const FockBasis& basis,
                                    SignConvention sign) {
  validate(graph);
  if (graph.num_wells != basis.num_wells())
    throw std::invalid_argument("graph and basis disagree on well count");

  const double hop_sign = (sign == SignConvention::negative) ? -1.0 : 1.0;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(basis.size(), basis.size());

  for (int j = 0; j < basis.size(); ++j) {
    const Configuration& cfg = basis.at(j);
    double diag = graph.onsite_energy * basis.total_particles();
    for (int w = 0; w < cfg.num_wells(); ++w)
      diag += 0.5 * graph.interaction * cfg[w] * (cfg[w] - 1);
    H(j, j) = diag;

    for (const auto& e : graph.edges) {
      for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        if (auto hopped = hop_element(cfg, from, to)) {
          int i = basis.index_of(hopped->first);
          H(i, j) += hop_sign * e.rate * hopped->second;
        }
      }
    }
  }
  return HermitianOperator(basis, std::move(H));
}

HermitianOperator parity_operator(const FockBasis& basis, int well) {
  if (well < 0 || well >= basis.num_wells())
    throw std::invalid_argument("well index out of range");
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int j = 0; j < basis.size(); ++j)
    P(j, j) = (basis.at(j)[well] % 2 == 0) ? 1.0 : -1.0;
  return HermitianOperator(basis, std::move(P));
}

double expectation(const HermitianOperator& op, const QuantumState& state) {
  if (!(op.basis() == state.basis()))
    throw std::invalid_argument("operator and state live on different bases");
  std::complex<double> val = state.amplitudes().adjoint() * op.matrix() * state.amplitudes();
  return val.real();
}

}  // namespace wellsim
