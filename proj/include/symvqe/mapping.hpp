#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symvqe/excitation.hpp"

namespace symvqe {

/**
 * @brief Bijection from spin orbitals to qubits.
 *
 * Spin orbitals are numbered alpha block first (0..N-1) then beta block
 * (N..2N-1). The Jordan-Wigner ordering follows qubit indices, so a mapping
 * decides which Z strings each excitation carries.
 */
class QubitMapping {
 public:
  QubitMapping() = default;
  /// perm[spin_orbital] = qubit; throws unless perm is a permutation of 0..2N-1.
  explicit QubitMapping(std::vector<std::size_t> perm);

  static QubitMapping identity(std::size_t n_spin_orbitals);

  std::size_t size() const { return to_qubit_.size(); }
  std::size_t n_spatial() const { return to_qubit_.size() / 2; }
  std::size_t qubit(std::size_t spin_orbital) const;
  std::size_t spin_orbital(std::size_t qubit) const;
  const std::vector<std::size_t>& perm() const { return to_qubit_; }

  std::size_t alpha_qubit(std::size_t spatial) const;
  std::size_t beta_qubit(std::size_t spatial) const;
  std::uint64_t alpha_mask() const;
  std::uint64_t beta_mask() const;

  /// Maps an operator on spin orbitals onto qubits.
  FermionTerm apply(const FermionTerm& term) const;

  friend bool operator==(const QubitMapping&, const QubitMapping&) = default;
  friend auto operator<=>(const QubitMapping& a, const QubitMapping& b) {
    return a.to_qubit_ <=> b.to_qubit_;
  }

 private:
  std::vector<std::size_t> to_qubit_;
  std::vector<std::size_t> to_orbital_;
};

/// Sum over excitations of (max qubit - min qubit + 1 - support size).
std::size_t mapping_cost(std::span<const Excitation> excitations,
                         const QubitMapping& mapping);

struct GreedyMapOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 32;
};

/**
 * @brief Greedy orbital placement.
 *
 * Each restart seeds from a random unprocessed excitation, then repeatedly
 * takes the unprocessed excitation sharing the most spatial orbitals with the
 * placed ones (ties: smallest index tuple) and puts its unplaced spin orbitals
 * on the free qubits nearest to its placed ones. The identity mapping is
 * always a candidate; the result is the minimum by (cost, permutation).
 */
QubitMapping greedy_map(std::span<const Excitation> excitations,
                        std::size_t n_qubits, const GreedyMapOptions& options);

}  // namespace symvqe
