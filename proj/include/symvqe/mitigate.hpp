#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "symvqe/hamio.hpp"
#include "symvqe/mapping.hpp"
#include "symvqe/sim.hpp"
#include "symvqe/symmetry.hpp"

namespace symvqe {

enum class PolicyKind { None, Particle, Spin };

PolicyKind parse_policy(std::string_view s);
std::string_view to_string(PolicyKind k);

/// Particle keeps bitstrings with total popcount = sector.total(); spin also
/// fixes the alpha and beta counts separately.
struct PostSelectionPolicy {
  PolicyKind kind = PolicyKind::None;
  SpinSector sector;
};

/**
 * Drops outcomes outside the policy's sector from a Z-basis histogram.
 * `mapping` decides which qubits are alpha and beta; it is required for the
 * spin policy and ignored otherwise.
 */
Histogram postselect(const Histogram& hist, const PostSelectionPolicy& policy,
                     const QubitMapping* mapping = nullptr);

struct MitigatedEstimate {
  EnergyEstimate estimate;
  std::uint64_t retained = 0;  // Z-basis shots kept
  std::uint64_t total = 0;     // Z-basis shots before selection
};

/// Post-selects every Z-basis histogram, leaves the others untouched and
/// recomputes energy and SE. Throws if no Z-basis group exists or a Z-basis
/// histogram loses all of its shots.
MitigatedEstimate mitigated_energy(const QubitHamiltonian& h,
                                   const std::vector<MeasurementGroup>& groups,
                                   const std::vector<Histogram>& histograms,
                                   const PostSelectionPolicy& policy,
                                   const QubitMapping* mapping = nullptr);

struct PolicyOutcome {
  PolicyKind policy = PolicyKind::None;
  MitigatedEstimate result;
};

/// None, particle and spin applied to the same histograms.
struct MitigationReport {
  std::vector<PolicyOutcome> outcomes;

  const PolicyOutcome& at(PolicyKind k) const;
};

MitigationReport mitigation_report(const QubitHamiltonian& h,
                                   const std::vector<MeasurementGroup>& groups,
                                   const std::vector<Histogram>& histograms,
                                   SpinSector sector, const QubitMapping& mapping);

/**
 * Replaces each shot of every Z-basis histogram, with probability `fraction`,
 * by a uniformly random bitstring. Shot totals are unchanged; X/Y-basis
 * histograms are returned as is.
 */
std::vector<Histogram> contaminate(const std::vector<Histogram>& histograms, double fraction,
                                   std::uint64_t seed);

}  // namespace symvqe
