#include "wellsim/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wellsim {

Configuration::Configuration(std::vector<int> occupations)
    : occupations_(std::move(occupations)) {
  if (occupations_.empty())
    throw std::invalid_argument("configuration needs at least one well");
  for (int n : occupations_)
    if (n < 0) throw std::invalid_argument("negative occupation");
}

int Configuration::total() const {
  return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

std::string Configuration::label() const {
  bool wide = false;
  for (int n : occupations_)
    if (n > 9) wide = true;
  std::string out;
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (wide && i > 0) out += '-';
    out += std::to_string(occupations_[i]);
  }
  return out;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
  std::size_t h = 1469598103934665603ull;
  for (int n : c.occupations()) {
    h ^= static_cast<std::size_t>(n) + 0x9e3779b9ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void enumerate_into(int wells_left, int particles_left, std::vector<int>& prefix,
                    std::vector<Configuration>& out) {
  if (wells_left == 1) {
    prefix.push_back(particles_left);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int n = particles_left; n >= 0; --n) {
    prefix.push_back(n);
    enumerate_into(wells_left - 1, particles_left - n, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

FockBasis::FockBasis(int num_wells, int total_particles)
    : num_wells_(num_wells), total_particles_(total_particles) {
  if (num_wells < 1) throw std::invalid_argument("need at least one well");
  if (total_particles < 0) throw std::invalid_argument("negative particle count");
  std::vector<int> prefix;
  prefix.reserve(num_wells);
  enumerate_into(num_wells, total_particles, prefix, configurations_);
  index_.reserve(configurations_.size());
  for (int i = 0; i < size(); ++i) index_.emplace(configurations_[i], i);
}

int FockBasis::index_of(const Configuration& c) const {
  auto it = index_.find(c);
  if (it == index_.end())
    throw std::invalid_argument("configuration " + c.label() + " not in basis");
  return it->second;
}

FockBasis enumerate_basis(int num_wells, int total_particles) {
  return FockBasis(num_wells, total_particles);
}

QuantumState::QuantumState(FockBasis basis, Eigen::VectorXcd amplitudes, double norm_tol)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.size())
    throw std::invalid_argument("amplitude vector does not match basis dimension");
  double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > norm_tol)
    throw std::invalid_argument("state norm " + std::to_string(norm) + " is not 1");
}

QuantumState QuantumState::basis_state(FockBasis basis, const Configuration& c) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.size());
  amps(basis.index_of(c)) = 1.0;
  return QuantumState(std::move(basis), std::move(amps));
}

std::complex<double> QuantumState::amplitude(const Configuration& c) const {
  return amplitudes_(basis_.index_of(c));
}

double QuantumState::probability(const Configuration& c) const {
  return std::norm(amplitude(c));
}

double number_expectation(const QuantumState& state, int well) {
  if (well < 0 || well >= state.basis().num_wells())
    throw std::invalid_argument("well index out of range");
  double acc = 0.0;
  for (int i = 0; i < state.basis().size(); ++i)
    acc += state.basis().at(i)[well] * std::norm(state.amplitudes()(i));
  return acc;
}

std::optional<std::pair<Configuration, double>> hop_element(const Configuration& c,
                                                            int from_well, int to_well) {
  if (from_well < 0 || from_well >= c.num_wells() || to_well < 0 || to_well >= c.num_wells())
    throw std::invalid_argument("well index out of range");
  if (from_well == to_well)
    throw std::invalid_argument("hop source and destination coincide");
  if (c[from_well] == 0) return std::nullopt;
  std::vector<int> occ = c.occupations();
  double element = std::sqrt(static_cast<double>(occ[from_well]) * (occ[to_well] + 1));
  occ[from_well] -= 1;
  occ[to_well] += 1;
  return std::make_pair(Configuration(std::move(occ)), element);
}

}  // namespace wellsim
