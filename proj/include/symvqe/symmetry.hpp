#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symvqe/excitation.hpp"
#include "symvqe/mapping.hpp"

namespace symvqe {

/**
 * @brief Irreducible representation of D2h or one of its subgroups.
 *
 * Labels follow the FCIDUMP ORBSYM convention (1..8, 1 = totally symmetric).
 * Internally the irrep is the 3-bit code label-1 and products are XOR.
 */
class Irrep {
 public:
  constexpr Irrep() = default;
  static Irrep from_label(int label);
  static constexpr Irrep from_code(std::uint8_t code) { return Irrep(code & 7U); }

  constexpr int label() const { return code_ + 1; }
  constexpr std::uint8_t code() const { return code_; }
  constexpr bool is_totally_symmetric() const { return code_ == 0; }

  /// D2h Mulliken symbol in Molpro ordering (Ag, B3u, B2u, B1g, B1u, B2g, B3g, Au).
  std::string_view d2h_name() const;

  friend constexpr bool operator==(Irrep, Irrep) = default;

 private:
  constexpr explicit Irrep(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

Irrep irrep_product(Irrep a, Irrep b);
inline Irrep operator*(Irrep a, Irrep b) { return irrep_product(a, b); }

/// Per-spatial-orbital irreps.
using OrbitalSymmetry = std::vector<Irrep>;

OrbitalSymmetry totally_symmetric(std::size_t n_orbitals);

/// Throws for non-Abelian groups; returns the irrep count for Abelian ones.
std::size_t abelian_group_order(std::string_view group);

/// True iff the product of the irreps of every involved orbital is totally symmetric.
bool excitation_allowed(const Excitation& exc, const OrbitalSymmetry& sym);

struct SpinSector {
  std::size_t n_alpha = 0;
  std::size_t n_beta = 0;

  std::size_t total() const { return n_alpha + n_beta; }
  friend bool operator==(const SpinSector&, const SpinSector&) = default;
};

/// Bit q of `bits` (qubit 0 leftmost in text) counted towards alpha or beta.
SpinSector sector_of_bitstring(std::string_view bits, const QubitMapping& mapping);
SpinSector sector_of_bits(std::uint64_t bits, const QubitMapping& mapping);

}  // namespace symvqe
