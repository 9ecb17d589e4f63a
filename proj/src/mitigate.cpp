#include "symvqe/mitigate.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "symvqe/random.hpp"

namespace symvqe {

PolicyKind parse_policy(std::string_view s) {
  if (s == "none") return PolicyKind::None;
  if (s == "particle") return PolicyKind::Particle;
  if (s == "spin") return PolicyKind::Spin;
  throw std::invalid_argument("unknown post-selection policy '" + std::string(s) +
                              "' (expected none, particle or spin)");
}

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::None: return "none";
    case PolicyKind::Particle: return "particle";
    case PolicyKind::Spin: return "spin";
  }
  return "none";
}

Histogram postselect(const Histogram& hist, const PostSelectionPolicy& policy,
                     const QubitMapping* mapping) {
  if (!hist.is_z_basis()) {
    throw std::invalid_argument("post-selection needs a Z-basis histogram, got basis " +
                                hist.basis);
  }
  if (policy.kind == PolicyKind::Spin) {
    if (!mapping) throw std::invalid_argument("spin post-selection needs a qubit mapping");
    if (mapping->size() != hist.n_qubits) {
      throw std::invalid_argument("mapping size does not match the histogram register");
    }
  }
  if (policy.kind == PolicyKind::None) return hist;

  Histogram out = hist;
  out.counts.clear();
  for (const auto& [bits, count] : hist.counts) {
    bool keep = false;
    if (policy.kind == PolicyKind::Particle) {
      keep = static_cast<std::size_t>(std::popcount(bits)) == policy.sector.total();
    } else {
      keep = sector_of_bits(bits, *mapping) == policy.sector;
    }
    if (keep) out.counts.emplace(bits, count);
  }
  return out;
}

MitigatedEstimate mitigated_energy(const QubitHamiltonian& h,
                                   const std::vector<MeasurementGroup>& groups,
                                   const std::vector<Histogram>& histograms,
                                   const PostSelectionPolicy& policy,
                                   const QubitMapping* mapping) {
  MitigatedEstimate res;
  std::vector<Histogram> kept;
  kept.reserve(histograms.size());
  bool any_z = false;
  for (const auto& hist : histograms) {
    if (hist.group >= groups.size() || !groups[hist.group].is_z_basis()) {
      kept.push_back(hist);
      continue;
    }
    any_z = true;
    Histogram sel = postselect(hist, policy, mapping);
    res.total += hist.shots();
    res.retained += sel.shots();
    if (sel.shots() == 0) {
      throw std::runtime_error("post-selection (" + std::string(to_string(policy.kind)) +
                               ") retained no shots of Z-basis group " +
                               std::to_string(hist.group) + " out of " +
                               std::to_string(hist.shots()));
    }
    kept.push_back(std::move(sel));
  }
  if (!any_z) throw std::invalid_argument("no Z-basis measurement group to post-select");
  res.estimate = energy_from_histograms(h, groups, kept);
  return res;
}

const PolicyOutcome& MitigationReport::at(PolicyKind k) const {
  for (const auto& o : outcomes) {
    if (o.policy == k) return o;
  }
  throw std::out_of_range("policy not in report");
}

MitigationReport mitigation_report(const QubitHamiltonian& h,
                                   const std::vector<MeasurementGroup>& groups,
                                   const std::vector<Histogram>& histograms,
                                   SpinSector sector, const QubitMapping& mapping) {
  MitigationReport r;
  for (PolicyKind k : {PolicyKind::None, PolicyKind::Particle, PolicyKind::Spin}) {
    r.outcomes.push_back({k, mitigated_energy(h, groups, histograms, {k, sector}, &mapping)});
  }
  return r;
}

std::vector<Histogram> contaminate(const std::vector<Histogram>& histograms, double fraction,
                                   std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("contamination fraction must lie in [0, 1]");
  }
  std::vector<Histogram> out;
  out.reserve(histograms.size());
  for (const auto& hist : histograms) {
    if (!hist.is_z_basis()) {
      out.push_back(hist);
      continue;
    }
    Rng rng(derive_seed(seed, hist.group));
    const std::uint64_t mask =
        hist.n_qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << hist.n_qubits) - 1;
    Histogram mixed = hist;
    mixed.counts.clear();
    for (const auto& [bits, count] : hist.counts) {
      for (std::uint64_t s = 0; s < count; ++s) {
        const std::uint64_t b = rng.uniform() < fraction ? (rng.next() & mask) : bits;
        ++mixed.counts[b];
      }
    }
    out.push_back(std::move(mixed));
  }
  return out;
}

}  // namespace symvqe
