#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symvqe/ansatz.hpp"
#include "symvqe/circuit.hpp"
#include "symvqe/hamio.hpp"
#include "symvqe/sim.hpp"

namespace symvqe {

struct VqeConfig {
  double fd_step = 1e-5;
  double energy_tol = 1e-9;
  double gradient_tol = 1e-6;
  std::size_t max_iterations = 500;
};

struct VqeIteration {
  std::vector<double> params;
  double energy = 0.0;
};

struct VqeResult {
  std::vector<double> params;  // radians
  double energy = 0.0;         // Hartree
  std::vector<VqeIteration> trace;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;  // infinity norm at the returned point
  bool converged = false;
};

/// E(theta) through the compiled ansatz circuit and the statevector simulator.
class AnsatzEnergy {
 public:
  AnsatzEnergy(const QubitHamiltonian& h, const AnsatzSpec& spec, const QubitMapping& mapping);

  double operator()(std::span<const double> params);
  Statevector state(std::span<const double> params) const;
  const Circuit& circuit() const { return circuit_; }
  std::size_t evaluations() const { return evaluations_; }
  std::size_t parameter_count() const { return circuit_.parameter_count(); }

 private:
  const QubitHamiltonian& h_;
  Circuit circuit_;
  std::size_t evaluations_ = 0;
};

/// Quasi-Newton (BFGS) minimization with central finite-difference gradients.
VqeResult optimize(const QubitHamiltonian& h, const AnsatzSpec& spec,
                   const QubitMapping& mapping, std::span<const double> init,
                   const VqeConfig& cfg = {});

struct SampledEvaluation {
  EnergyEstimate estimate;
  std::vector<MeasurementGroup> groups;
  std::vector<Histogram> histograms;
};

SampledEvaluation evaluate_sampled(const QubitHamiltonian& h, const AnsatzSpec& spec,
                                   const QubitMapping& mapping, std::span<const double> params,
                                   std::uint64_t shots, std::uint64_t seed,
                                   ShotAllocation mode = ShotAllocation::PerGroup);

}  // namespace symvqe
