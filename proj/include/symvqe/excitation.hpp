#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symvqe/pauli.hpp"

namespace symvqe {

enum class ExcitationKind { Single, Double };

/// Spin of the (occupied, virtual) pairs. Singles use AlphaAlpha / BetaBeta.
enum class SpinPattern { AlphaBeta, AlphaAlpha, BetaBeta };

/**
 * @brief One cluster amplitude.
 *
 * Indices are spatial orbitals within the active space. A double moves
 * occ[0] -> virt[0] and occ[1] -> virt[1]; for AlphaBeta the first pair is
 * alpha and the second beta. The operator is a+_b a_j a+_a a_i with
 * (i, j, a, b) = spin orbitals of (occ[0], occ[1], virt[0], virt[1]).
 */
struct Excitation {
  ExcitationKind kind = ExcitationKind::Double;
  SpinPattern spin = SpinPattern::AlphaBeta;
  bool paired = false;
  std::vector<std::size_t> occ;
  std::vector<std::size_t> virt;
  std::size_t param = 0;

  static Excitation single(std::size_t i, std::size_t a, bool beta = false);
  static Excitation double_ab(std::size_t i, std::size_t j, std::size_t a,
                              std::size_t b);
  static Excitation double_same_spin(std::size_t i, std::size_t j,
                                     std::size_t a, std::size_t b, bool beta);
  static Excitation pair(std::size_t i, std::size_t a) {
    return double_ab(i, i, a, a);
  }

  /// Spin orbitals in operator order (i, [j,] a, [b]); alpha block first.
  std::vector<std::size_t> spin_orbitals(std::size_t n_spatial) const;
  /// Spatial orbitals with multiplicity (occ then virt).
  std::vector<std::size_t> spatial_orbitals() const;
  /// The excitation operator T (not T - T+).
  FermionTerm operator_term(std::size_t n_spatial) const;

  std::string label() const;

  friend bool operator==(const Excitation&, const Excitation&) = default;
};

inline std::size_t alpha_orbital(std::size_t p) { return p; }
inline std::size_t beta_orbital(std::size_t p, std::size_t n_spatial) {
  return n_spatial + p;
}

}  // namespace symvqe
