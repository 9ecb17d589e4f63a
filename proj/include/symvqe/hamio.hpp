#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symvqe/ansatz.hpp"
#include "symvqe/mapping.hpp"
#include "symvqe/pauli.hpp"
#include "symvqe/symmetry.hpp"

namespace symvqe {

/**
 * @brief Spatial-orbital integrals, chemists' notation.
 *
 * g(p,q,r,s) = (pq|rs). Storage is dense; setters fill every permutationally
 * equivalent slot. Energies in Hartree, indices 0-based.
 */
class MolecularIntegrals {
 public:
  MolecularIntegrals() = default;
  MolecularIntegrals(std::size_t n_orbitals, std::size_t n_electrons);

  std::size_t n_orbitals() const { return n_; }
  std::size_t n_electrons() const { return n_electrons_; }
  int ms2 = 0;
  double core_energy = 0.0;
  OrbitalSymmetry orbsym;

  double h(std::size_t p, std::size_t q) const { return h_[p * n_ + q]; }
  double g(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return g_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  /// Sets h(p,q) and h(q,p).
  void set_h(std::size_t p, std::size_t q, double v);
  /// Sets all eight permutations of (pq|rs).
  void set_g(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double v);

 private:
  std::size_t n_ = 0;
  std::size_t n_electrons_ = 0;
  std::vector<double> h_;
  std::vector<double> g_;
};

MolecularIntegrals parse_fcidump(const std::filesystem::path& path);
MolecularIntegrals parse_fcidump_text(std::string_view text);
/// Canonical-order records (p>=q, r>=s, pq>=rs), 1-based, %.16e.
std::string write_fcidump(const MolecularIntegrals& ints, double threshold = 1e-14);

/// Active electrons and 0-based active orbital indices into the full set.
struct ActiveSelection {
  std::size_t n_electrons = 0;
  std::vector<std::size_t> orbitals;

  ActiveSpace space() const { return {n_electrons, orbitals.size()}; }
};

/// CAS(ne, no) around the Fermi level of a closed-shell reference.
ActiveSelection default_active_selection(const MolecularIntegrals& ints,
                                         std::size_t n_electrons, std::size_t n_orbitals);

/**
 * Integrals of the active problem. The (full - active)/2 lowest-index
 * non-active orbitals are frozen doubly occupied and folded into the core
 * energy and the one-electron integrals; the remaining orbitals are dropped.
 */
MolecularIntegrals restrict_to_active(const MolecularIntegrals& ints,
                                      const ActiveSelection& sel);

/// Closed-shell determinant energy with the lowest n_electrons/2 orbitals doubly occupied.
double restricted_hf_energy(const MolecularIntegrals& ints);

struct HamiltonianTerm {
  PauliWord word;
  double coeff = 0.0;
};

/// Real-coefficient qubit Hamiltonian: offset * I + sum of non-identity terms.
struct QubitHamiltonian {
  std::size_t n_qubits = 0;
  double offset = 0.0;
  std::vector<HamiltonianTerm> terms;  // word order, identity excluded
  std::uint64_t alpha_mask = 0;
  std::uint64_t beta_mask = 0;

  /// Throws if an imaginary part exceeds 1e-10; smaller residues are zeroed.
  static QubitHamiltonian from_pauli_sum(const PauliSum& sum);
  PauliSum to_pauli_sum() const;
  /// <bits| H |bits> for a computational basis state.
  double diagonal_expectation(std::uint64_t bits) const;
};

/// JW encoding of the active Hamiltonian (alpha block then beta block, then
/// `mapping`). Checks that the HF-bitstring expectation reproduces
/// restricted_hf_energy.
QubitHamiltonian build_qubit_hamiltonian(const MolecularIntegrals& active_ints,
                                         const QubitMapping& mapping);

/// Qubit-wise commuting group with a per-qubit basis (I = free).
struct MeasurementGroup {
  std::vector<PauliAxis> basis;
  std::vector<std::size_t> members;  // indices into QubitHamiltonian::terms

  /// Every assigned axis is Z.
  bool is_z_basis() const;
  std::string basis_string() const;
};

/// Greedy first fit by descending |coeff| (ties: word order).
std::vector<MeasurementGroup> qwc_group(const QubitHamiltonian& h);

/// Largest register accepted by exact_ground_energy.
inline constexpr std::size_t kMaxExactQubits = 14;

/// Lowest eigenvalue, optionally restricted to a particle/spin sector defined
/// by the Hamiltonian's alpha/beta masks.
double exact_ground_energy(const QubitHamiltonian& h,
                           const std::optional<SpinSector>& sector = std::nullopt);

}  // namespace symvqe
