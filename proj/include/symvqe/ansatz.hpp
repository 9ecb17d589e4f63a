#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symvqe/excitation.hpp"
#include "symvqe/mapping.hpp"
#include "symvqe/pauli.hpp"
#include "symvqe/symmetry.hpp"

namespace symvqe {

enum class Variant { upCCD, uCCDab, uCCD, uCCSD };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v);

/// Closed-shell CAS(n_electrons, n_orbitals).
struct ActiveSpace {
  std::size_t n_electrons = 0;
  std::size_t n_orbitals = 0;

  std::size_t n_occupied() const { return n_electrons / 2; }
  std::size_t n_virtual() const { return n_orbitals - n_occupied(); }
  std::size_t n_qubits() const { return 2 * n_orbitals; }
};

struct AnsatzSpec {
  Variant variant = Variant::uCCDab;
  ActiveSpace space;
  bool symmetry_screened = false;
  std::vector<Excitation> excitations;

  std::size_t parameter_count() const { return excitations.size(); }
  std::size_t count(ExcitationKind kind) const;
  std::size_t paired_count() const;
};

/**
 * Enumerates the excitations of a variant: paired doubles, then unpaired
 * doubles, then singles, each block sorted by (occ, virt, spin). With `sym`,
 * symmetry-forbidden excitations are dropped. Parameter ids follow list order.
 */
AnsatzSpec enumerate_excitations(Variant variant, const ActiveSpace& space,
                                 const std::optional<OrbitalSymmetry>& sym);

/// Aufbau occupation over spin orbitals (alpha block, then beta block).
std::vector<bool> hf_occupation(const ActiveSpace& space);

/// HF occupation as a qubit bitmask under `mapping`.
std::uint64_t hf_bits(const ActiveSpace& space, const QubitMapping& mapping);

/// T - T+ for one excitation under `mapping`, unit amplitude.
PauliSum antihermitian_generator(const Excitation& exc, const QubitMapping& mapping);

}  // namespace symvqe
