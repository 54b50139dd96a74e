#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

// Number-conserving bosonic Fock space for a finite array of wells.
// A Configuration is one occupation pattern, a FockBasis enumerates all
// patterns with a fixed particle total, and a QuantumState is a normalized
// amplitude vector over such a basis.

namespace wellsim {

class Configuration {
 public:
  explicit Configuration(std::vector<int> occupations);

  int num_wells() const { return static_cast<int>(occupations_.size()); }
  int total() const;
  int operator[](int well) const { return occupations_.at(well); }
  const std::vector<int>& occupations() const { return occupations_; }

  // Compact label such as "1010"; wells holding 10 or more particles switch
  // the whole label to dash-separated counts so it stays unambiguous.
  std::string label() const;

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<int> occupations_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const;
};

// All configurations of `total_particles` bosons in `num_wells` wells, in
// descending lexicographic order, so (N,0,...) comes first and (...,0,N)
// last. The order is deterministic and indexable both ways.
class FockBasis {
 public:
  FockBasis(int num_wells, int total_particles);

  int num_wells() const { return num_wells_; }
  int total_particles() const { return total_particles_; }
  int size() const { return static_cast<int>(configurations_.size()); }

  const Configuration& at(int index) const { return configurations_.at(index); }
  int index_of(const Configuration& c) const;

  std::vector<Configuration>::const_iterator begin() const { return configurations_.begin(); }
  std::vector<Configuration>::const_iterator end() const { return configurations_.end(); }

  // Bases are interchangeable exactly when they span the same space.
  bool operator==(const FockBasis& other) const {
    return num_wells_ == other.num_wells_ && total_particles_ == other.total_particles_;
  }

 private:
  int num_wells_;
  int total_particles_;
  std::vector<Configuration> configurations_;
  std::unordered_map<Configuration, int, ConfigurationHash> index_;
};

FockBasis enumerate_basis(int num_wells, int total_particles);

// Normalized state over a FockBasis. Construction rejects amplitude vectors
// whose norm strays from 1 by more than norm_tol; exact propagation keeps
// the norm at machine precision, integrator output may need a looser bound.
class QuantumState {
 public:
  QuantumState(FockBasis basis, Eigen::VectorXcd amplitudes, double norm_tol = 1e-10);

  static QuantumState basis_state(FockBasis basis, const Configuration& c);

  const FockBasis& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  std::complex<double> amplitude(const Configuration& c) const;
  double probability(const Configuration& c) const;

 private:
  FockBasis basis_;
  Eigen::VectorXcd amplitudes_;
};

// <n_well> in the given state.
double number_expectation(const QuantumState& state, int well);

// Applies a_to^dag a_from to a single configuration. Returns the resulting
// configuration with its matrix element sqrt(n_from * (n_to + 1)), or
// nothing when the source well is empty. Hopping a well onto itself is a
// usage error, not a number operator.
std::optional<std::pair<Configuration, double>> hop_element(const Configuration& c,
                                                            int from_well, int to_well);

}  // namespace wellsim
