#include "ninls/trajectory.hpp"

#include "ninls/error.hpp"
#include "ninls/solver.hpp"

namespace ninls {

void Trajectory::append(double t, const Field& f, const ModelParams& params) {
  times.push_back(t);
  states.push_back(f);
  mass_ledger.push_back(mass(f));
  energy_ledger.push_back(energy(f, params));
  hamiltonian_ledger.push_back(hamiltonian(f, params));
  energy_unweighted_ledger.push_back(energy_unweighted(f, params));
}

void Trajectory::validate() const {
  const auto n = times.size();
  if (states.size() != n || mass_ledger.size() != n || energy_ledger.size() != n ||
      hamiltonian_ledger.size() != n || energy_unweighted_ledger.size() != n)
    throw ConfigError("trajectory ledgers do not match the number of states");
  for (std::size_t k = 1; k < n; ++k)
    if (!(times[k] > times[k - 1])) throw ConfigError("trajectory times must increase strictly");
}

}  // namespace ninls
