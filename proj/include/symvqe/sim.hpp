#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "symvqe/circuit.hpp"
#include "symvqe/hamio.hpp"

namespace symvqe {

/// Hard cap on the simulated register.
inline constexpr std::size_t kMaxSimQubits = 24;

/// Dense state over n qubits; amplitude index bit q is qubit q.
class Statevector {
 public:
  explicit Statevector(std::size_t n_qubits, std::uint64_t basis_state = 0);

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  double norm() const;
  std::vector<double> probabilities() const;

  void apply(const Gate& g, std::span<const double> params);

 private:
  std::size_t n_;
  std::vector<cplx> amps_;
};

void apply_circuit(Statevector& state, const Circuit& c, std::span<const double> params);

/// <psi|H|psi>; throws if the imaginary residue exceeds 1e-10.
double expectation(const Statevector& state, const QubitHamiltonian& h);

/**
 * @brief Outcome counts of one measurement group.
 *
 * Keys are outcome bitmasks (bit q = qubit q); textual bitstrings put qubit 0
 * first. `basis` is the group's per-qubit basis string (I = free).
 */
struct Histogram {
  std::size_t group = 0;
  std::size_t n_qubits = 0;
  std::uint64_t seed = 0;
  std::string basis;
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t shots() const;
  bool is_z_basis() const;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

std::string bits_to_string(std::uint64_t bits, std::size_t n);
std::uint64_t bits_from_string(std::string_view s);

/// Rotates `state` into the group's basis: H for X, S-dagger then H for Y.
Statevector rotate_to_basis(const Statevector& state, const MeasurementGroup& group);

Histogram sample_group(const Statevector& state, const MeasurementGroup& group,
                       std::size_t group_id, std::uint64_t shots, std::uint64_t seed);

enum class ShotAllocation { PerGroup, TotalSplit };

ShotAllocation parse_shot_allocation(std::string_view s);
std::string_view to_string(ShotAllocation a);

/// Shots per group: `shots` each, or `shots` split as evenly as possible.
std::vector<std::uint64_t> allocate_shots(std::uint64_t shots, std::size_t n_groups,
                                          ShotAllocation mode);

/// Per-group seed derived from the run's sampling seed.
std::uint64_t group_seed(std::uint64_t sampling_seed, std::size_t group_id);

/// Samples every group with allocate_shots and group_seed.
std::vector<Histogram> sample_all(const Statevector& state,
                                  const std::vector<MeasurementGroup>& groups,
                                  std::uint64_t shots, ShotAllocation mode,
                                  std::uint64_t seed);

struct EnergyEstimate {
  double energy = 0.0;  // Hartree
  double se = 0.0;      // Hartree
};

/// Value of the group's summed observable on a measured outcome.
double group_observable(const QubitHamiltonian& h, const MeasurementGroup& group,
                        std::uint64_t outcome);

/// Per-group shot means, summed with the offset; SE from the per-shot sample
/// variance of each group's summed observable.
EnergyEstimate energy_from_histograms(const QubitHamiltonian& h,
                                      const std::vector<MeasurementGroup>& groups,
                                      const std::vector<Histogram>& histograms);

/// Infinite-shot limit from exact outcome distributions of rotated states.
double energy_from_distributions(const QubitHamiltonian& h,
                                 const std::vector<MeasurementGroup>& groups,
                                 const Statevector& state);

struct SweepRow {
  std::uint64_t shots = 0;
  double mean_energy = 0.0;     // Hartree, averaged over repeats
  double mean_se = 0.0;         // Hartree, averaged over repeats
  std::vector<double> se;       // per repeat
};

/// SE versus shots: every shot count is sampled `repeats` times, repeat r
/// using sampling seed group_seed(seed, r) for all shot counts.
std::vector<SweepRow> shot_sweep(const QubitHamiltonian& h,
                                 const std::vector<MeasurementGroup>& groups,
                                 const Statevector& state,
                                 const std::vector<std::uint64_t>& shots, std::size_t repeats,
                                 std::uint64_t seed, ShotAllocation mode);

/// Text format: "HISTOGRAM group=<g> shots=<n> seed=<s> qubits=<q> basis=<b>",
/// then "<bitstring> <count>" lines, then "END".
void write_histograms(std::ostream& out, const std::vector<Histogram>& hs);
std::vector<Histogram> read_histograms(std::istream& in);

}  // namespace symvqe
