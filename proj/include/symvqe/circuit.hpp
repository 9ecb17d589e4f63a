#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symvqe/ansatz.hpp"
#include "symvqe/excitation.hpp"
#include "symvqe/mapping.hpp"
#include "symvqe/pauli.hpp"

namespace symvqe {

enum class GateKind { X, H, S, Sdg, Rz, CNOT };

std::string_view to_string(GateKind kind);

/// Rotation angle: coeff * theta[param], or coeff radians when param is empty.
struct Angle {
  double coeff = 0.0;
  std::optional<std::size_t> param;

  static Angle constant(double radians) { return {radians, std::nullopt}; }
  static Angle parameter(std::size_t index, double coeff = 1.0) {
    return {coeff, index};
  }

  double value(std::span<const double> params) const;

  friend bool operator==(const Angle&, const Angle&) = default;
};

/// For CNOT, q0 is the control and q1 the target.
struct Gate {
  GateKind kind = GateKind::X;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  Angle angle;

  static Gate x(std::size_t q) { return {GateKind::X, q, q, {}}; }
  static Gate h(std::size_t q) { return {GateKind::H, q, q, {}}; }
  static Gate s(std::size_t q) { return {GateKind::S, q, q, {}}; }
  static Gate sdg(std::size_t q) { return {GateKind::Sdg, q, q, {}}; }
  static Gate rz(std::size_t q, Angle a) { return {GateKind::Rz, q, q, a}; }
  static Gate cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, control, target, {}};
  }

  bool is_two_qubit() const { return kind == GateKind::CNOT; }
  bool is_clifford_1q() const {
    return kind == GateKind::X || kind == GateKind::H || kind == GateKind::S ||
           kind == GateKind::Sdg;
  }
  bool acts_on(std::size_t q) const {
    return q0 == q || (is_two_qubit() && q1 == q);
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/**
 * @brief Ordered gate list over a fixed register with named parameters.
 *
 * Gates are validated on insertion: indices in range, distinct CNOT operands,
 * parameter references below parameter_count().
 */
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t n_qubits, std::size_t n_params = 0);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t parameter_count() const { return param_names_.size(); }
  const std::vector<std::string>& parameter_names() const { return param_names_; }
  void set_parameter_names(std::vector<std::string> names);

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void add(const Gate& g);
  void append(const Circuit& other);

  std::size_t count(GateKind kind) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::string> param_names_;
  std::vector<Gate> gates_;
};

/// Text form: "QUBITS n", "PARAMS names...", then one gate per line
/// ("X q", "H q", "S q", "SDG q", "RZ q coeff name|-", "CNOT c t").
std::string to_text(const Circuit& c);
Circuit parse_circuit_text(std::string_view text);

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

struct PauliRotation {
  PauliWord word;
  Angle angle;  // implements exp(-i angle/2 word)
};

/// exp(-i angle/2 P): basis change, CNOT ladder onto the highest support
/// qubit, Rz, mirrored ladder, inverse basis change.
Circuit synth_pauli_rotation(const PauliWord& word, const Angle& angle,
                             std::size_t n_params = 0);

/// Concatenated rotations followed by optimize_circuit.
Circuit synth_rotation_sequence(std::span<const PauliRotation> rotations,
                                std::size_t n_qubits, std::size_t n_params);

/// The Pauli rotations of exp(theta (T - T+)) for a single or unpaired double
/// excitation, in synthesis order (for doubles: XXXY, XXYX, YXYY, YXXX, YYXY,
/// YYYX, XYYY, XYXX on the four excitation qubits).
std::vector<PauliRotation> excitation_rotations(const Excitation& exc,
                                                const QubitMapping& mapping);

Circuit synth_double_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params);
Circuit synth_single_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params);

/// Pair excitation acting on the alpha register (pair occupations) before the
/// spatial-to-spin fan-out. Uses the 2-CNOT block when the fermionic sign is
/// state independent under `mapping`, else a Z-string-dressed rotation pair.
Circuit synth_paired_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params);

/// Sign and parity qubits of a pair excitation on seniority-zero states.
struct PairSign {
  int sign = 1;
  std::vector<std::size_t> parity_qubits;  // alpha-register qubits
};
PairSign pair_excitation_sign(const Excitation& exc, const QubitMapping& mapping);

/// CNOT from the alpha qubit to the beta qubit of every spatial orbital.
Circuit synth_spatial_to_spin(const QubitMapping& mapping, const ActiveSpace& space);

/// HF preparation on the alpha register, paired blocks, fan-out, then the
/// remaining excitations as rotation chains; optimized.
Circuit build_ansatz_circuit(const AnsatzSpec& spec, const QubitMapping& mapping);

/// Two-qubit entangling gate equivalents (CNOT count).
std::size_t count_2qge(const Circuit& c);

// ---------------------------------------------------------------------------
// Peephole passes
// ---------------------------------------------------------------------------

/// Merges runs of X/H/S/Sdg on each qubit into a shortest equivalent word.
Circuit fuse_single_qubit_cliffords(const Circuit& c);

/// Removes CNOT pairs whose intervening gates commute with them.
Circuit cancel_cnot_pairs(const Circuit& c);

/// CNOT(c,t) . U . CNOT(c,t) with U = D H D' on the control (D, D' diagonal
/// Cliffords) becomes D' . [S(c) H(t); CNOT(t,c); Sdg(c) S(t); H(c) H(t)] . D.
/// Iterated to a fixpoint; circuits without the pattern are returned unchanged.
Circuit rewrite_cx_h_cx(const Circuit& c);

/// All passes to a fixpoint.
Circuit optimize_circuit(const Circuit& c);

}  // namespace symvqe
