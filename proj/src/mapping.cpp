#include "symvqe/mapping.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "symvqe/random.hpp"

namespace symvqe {

QubitMapping::QubitMapping(std::vector<std::size_t> perm)
    : to_qubit_(std::move(perm)), to_orbital_(to_qubit_.size(), 0) {
  if (to_qubit_.size() % 2 != 0) {
    throw std::invalid_argument("qubit mapping must cover an even number of spin orbitals");
  }
  std::vector<bool> seen(to_qubit_.size(), false);
  for (std::size_t so = 0; so < to_qubit_.size(); ++so) {
    const std::size_t q = to_qubit_[so];
    if (q >= to_qubit_.size() || seen[q]) {
      throw std::invalid_argument("qubit mapping is not a permutation");
    }
    seen[q] = true;
    to_orbital_[q] = so;
  }
}

QubitMapping QubitMapping::identity(std::size_t n_spin_orbitals) {
  std::vector<std::size_t> perm(n_spin_orbitals);
  for (std::size_t k = 0; k < n_spin_orbitals; ++k) perm[k] = k;
  return QubitMapping(std::move(perm));
}

std::size_t QubitMapping::qubit(std::size_t spin_orbital) const {
  if (spin_orbital >= to_qubit_.size()) {
    throw std::out_of_range("spin orbital " + std::to_string(spin_orbital) +
                            " is not mapped");
  }
  return to_qubit_[spin_orbital];
}

std::size_t QubitMapping::spin_orbital(std::size_t qubit) const {
  if (qubit >= to_orbital_.size()) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " is not mapped");
  }
  return to_orbital_[qubit];
}

std::size_t QubitMapping::alpha_qubit(std::size_t spatial) const {
  return qubit(alpha_orbital(spatial));
}

std::size_t QubitMapping::beta_qubit(std::size_t spatial) const {
  return qubit(beta_orbital(spatial, n_spatial()));
}

std::uint64_t QubitMapping::alpha_mask() const {
  std::uint64_t m = 0;
  for (std::size_t p = 0; p < n_spatial(); ++p) m |= std::uint64_t{1} << alpha_qubit(p);
  return m;
}

std::uint64_t QubitMapping::beta_mask() const {
  std::uint64_t m = 0;
  for (std::size_t p = 0; p < n_spatial(); ++p) m |= std::uint64_t{1} << beta_qubit(p);
  return m;
}

FermionTerm QubitMapping::apply(const FermionTerm& term) const {
  FermionTerm out = term;
  for (auto& op : out.ops) op.mode = qubit(op.mode);
  return out;
}

std::size_t mapping_cost(std::span<const Excitation> excitations,
                         const QubitMapping& mapping) {
  std::size_t total = 0;
  for (const Excitation& e : excitations) {
    std::vector<std::size_t> qubits;
    for (std::size_t so : e.spin_orbitals(mapping.n_spatial())) {
      qubits.push_back(mapping.qubit(so));
    }
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    total += qubits.back() - qubits.front() + 1 - qubits.size();
  }
  return total;
}

namespace {

class GreedyRun {
 public:
  GreedyRun(std::span<const Excitation> excs, std::size_t n_qubits)
      : excs_(excs),
        n_(n_qubits),
        slot_(n_qubits, kUnplaced),
        free_(n_qubits, true),
        done_(excs.size(), false),
        spatial_placed_(n_qubits / 2, false) {
    for (const auto& e : excs_) {
      auto so = e.spin_orbitals(n_ / 2);
      std::vector<std::size_t> uniq;
      for (std::size_t s : so) {
        if (std::find(uniq.begin(), uniq.end(), s) == uniq.end()) uniq.push_back(s);
      }
      orbitals_.push_back(std::move(uniq));
      keys_.push_back(std::move(so));
    }
  }

  QubitMapping run(Rng& rng) {
    std::size_t remaining = excs_.size();
    while (remaining > 0) {
      std::uint64_t pick = rng.below(remaining);
      std::size_t e = 0;
      for (std::size_t k = 0; k < excs_.size(); ++k) {
        if (done_[k]) continue;
        if (pick-- == 0) {
          e = k;
          break;
        }
      }
      place(e);
      --remaining;
      while (remaining > 0) {
        const auto next = most_similar();
        if (!next) break;
        place(*next);
        --remaining;
      }
    }
    std::size_t q = 0;
    for (std::size_t so = 0; so < n_; ++so) {
      if (slot_[so] != kUnplaced) continue;
      while (!free_[q]) ++q;
      assign(so, q);
    }
    return QubitMapping(slot_);
  }

 private:
  static constexpr std::size_t kUnplaced = std::numeric_limits<std::size_t>::max();

  void assign(std::size_t so, std::size_t q) {
    slot_[so] = q;
    free_[q] = false;
    spatial_placed_[so % (n_ / 2)] = true;
  }

  std::size_t shared(std::size_t e) const {
    std::set<std::size_t> spatial;
    for (std::size_t p : excs_[e].spatial_orbitals()) {
      if (spatial_placed_[p]) spatial.insert(p);
    }
    return spatial.size();
  }

  std::optional<std::size_t> most_similar() const {
    std::optional<std::size_t> best;
    std::size_t best_score = 0;
    for (std::size_t k = 0; k < excs_.size(); ++k) {
      if (done_[k]) continue;
      const std::size_t s = shared(k);
      if (s == 0) continue;
      if (!best || s > best_score || (s == best_score && keys_[k] < keys_[*best])) {
        best = k;
        best_score = s;
      }
    }
    return best;
  }

  void place(std::size_t e) {
    done_[e] = true;
    std::vector<std::size_t> anchors;
    std::vector<std::size_t> pending;
    for (std::size_t so : orbitals_[e]) {
      if (slot_[so] != kUnplaced) {
        anchors.push_back(slot_[so]);
      } else {
        pending.push_back(so);
      }
    }
    if (pending.empty()) return;
    if (anchors.empty()) {
      // Leftmost free run long enough for the whole excitation.
      std::size_t run = 0;
      for (std::size_t q = 0; q < n_; ++q) {
        run = free_[q] ? run + 1 : 0;
        if (run == pending.size()) {
          const std::size_t start = q + 1 - run;
          for (std::size_t k = 0; k < pending.size(); ++k) assign(pending[k], start + k);
          return;
        }
      }
    }
    for (std::size_t so : pending) {
      std::size_t best_q = kUnplaced;
      std::size_t best_d = kUnplaced;
      for (std::size_t q = 0; q < n_; ++q) {
        if (!free_[q]) continue;
        std::size_t d = anchors.empty() ? 0 : kUnplaced;
        for (std::size_t a : anchors) d = std::min(d, a > q ? a - q : q - a);
        if (d < best_d) {
          best_d = d;
          best_q = q;
        }
      }
      assign(so, best_q);
      anchors.push_back(best_q);
    }
  }

  std::span<const Excitation> excs_;
  std::size_t n_;
  std::vector<std::size_t> slot_;
  std::vector<bool> free_;
  std::vector<bool> done_;
  std::vector<bool> spatial_placed_;
  std::vector<std::vector<std::size_t>> orbitals_;
  std::vector<std::vector<std::size_t>> keys_;
};

}  // namespace

QubitMapping greedy_map(std::span<const Excitation> excitations,
                        std::size_t n_qubits, const GreedyMapOptions& options) {
  if (n_qubits % 2 != 0 || n_qubits == 0) {
    throw std::invalid_argument("greedy_map needs an even, nonzero qubit count");
  }
  QubitMapping best = QubitMapping::identity(n_qubits);
  if (excitations.empty()) return best;
  std::size_t best_cost = mapping_cost(excitations, best);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, r));
    QubitMapping m = GreedyRun(excitations, n_qubits).run(rng);
    const std::size_t c = mapping_cost(excitations, m);
    if (c < best_cost || (c == best_cost && m < best)) {
      best = std::move(m);
      best_cost = c;
    }
  }
  return best;
}

}  // namespace symvqe
