#pragma once

#include <vector>

#include "ninls/spectral.hpp"

namespace ninls {

// Time-stamped snapshots with conserved-quantity ledgers, one entry per state.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<double> mass_ledger;
  std::vector<double> energy_ledger;
  // Conserved Hamiltonian and the energy with unweighted |u_x|^2, see solver.hpp.
  std::vector<double> hamiltonian_ledger;
  std::vector<double> energy_unweighted_ledger;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }

  // Appends a snapshot and fills every ledger from it.
  void append(double t, const Field& f, const ModelParams& params);

  // Throws ConfigError unless times increase strictly and ledgers match states.
  void validate() const;
};

}  // namespace ninls
