#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "symvqe/circuit.hpp"

namespace symvqe {

namespace {

// Qubit-basis action of a fermion term on a JW basis state: sign and image.
std::optional<std::pair<int, std::uint64_t>> apply_to_basis(const FermionTerm& t,
                                                            std::uint64_t bits) {
  int sign = 1;
  for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
    const std::uint64_t m = std::uint64_t{1} << it->mode;
    const bool occ = (bits & m) != 0;
    if (occ == it->dagger) return std::nullopt;
    if (std::popcount(bits & (m - 1)) % 2 != 0) sign = -sign;
    bits ^= m;
  }
  return std::make_pair(sign, bits);
}

void check_param(const Excitation& exc, std::size_t n_params) {
  if (exc.param >= n_params) {
    throw std::out_of_range("excitation parameter " + std::to_string(exc.param) +
                            " outside the " + std::to_string(n_params) +
                            "-parameter circuit");
  }
}

void add_basis_change(Circuit& c, const PauliWord& w, bool undo) {
  for (std::size_t q : w.support()) {
    const PauliAxis a = w.axis(q);
    if (a == PauliAxis::X) {
      c.add(Gate::h(q));
    } else if (a == PauliAxis::Y) {
      if (undo) {
        c.add(Gate::h(q));
        c.add(Gate::s(q));
      } else {
        c.add(Gate::sdg(q));
        c.add(Gate::h(q));
      }
    }
  }
}

void add_ry(Circuit& c, std::size_t q, const Angle& a) {
  c.add(Gate::sdg(q));
  c.add(Gate::h(q));
  c.add(Gate::rz(q, a));
  c.add(Gate::h(q));
  c.add(Gate::s(q));
}

}  // namespace

Circuit synth_pauli_rotation(const PauliWord& word, const Angle& angle,
                             std::size_t n_params) {
  Circuit c(word.size(), n_params);
  const auto support = word.support();
  if (support.empty()) return c;  // global phase
  const std::size_t target = support.back();
  add_basis_change(c, word, false);
  // controls in descending index order, mirrored after the Rz
  for (std::size_t k = support.size() - 1; k-- > 0;) c.add(Gate::cnot(support[k], target));
  c.add(Gate::rz(target, angle));
  for (std::size_t k = 0; k + 1 < support.size(); ++k) c.add(Gate::cnot(support[k], target));
  add_basis_change(c, word, true);
  return c;
}

Circuit synth_rotation_sequence(std::span<const PauliRotation> rotations,
                                std::size_t n_qubits, std::size_t n_params) {
  Circuit c(n_qubits, n_params);
  for (const auto& r : rotations) {
    if (r.word.size() != n_qubits) {
      throw std::invalid_argument("rotation word size does not match the register");
    }
    c.append(synth_pauli_rotation(r.word, r.angle, n_params));
  }
  return optimize_circuit(c);
}

std::vector<PauliRotation> excitation_rotations(const Excitation& exc,
                                                const QubitMapping& mapping) {
  const PauliSum gen = antihermitian_generator(exc, mapping);
  std::vector<std::size_t> qubits;
  for (std::size_t so : exc.spin_orbitals(mapping.n_spatial())) {
    qubits.push_back(mapping.qubit(so));
  }
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());

  static constexpr std::array<std::string_view, 8> kDoubleOrder = {
      "XXXY", "XXYX", "YXYY", "YXXX", "YYXY", "YYYX", "XYYY", "XYXX"};
  static constexpr std::array<std::string_view, 2> kSingleOrder = {"XY", "YX"};

  auto rank = [&](const PauliWord& w) -> std::size_t {
    std::string pat;
    for (std::size_t q : qubits) pat.push_back(to_char(w.axis(q)));
    if (qubits.size() == 4) {
      auto it = std::find(kDoubleOrder.begin(), kDoubleOrder.end(), pat);
      if (it != kDoubleOrder.end()) return static_cast<std::size_t>(it - kDoubleOrder.begin());
    } else if (qubits.size() == 2) {
      auto it = std::find(kSingleOrder.begin(), kSingleOrder.end(), pat);
      if (it != kSingleOrder.end()) return static_cast<std::size_t>(it - kSingleOrder.begin());
    }
    return kDoubleOrder.size();
  };

  std::vector<std::pair<std::size_t, PauliRotation>> ranked;
  for (const auto& [w, c] : gen.raw()) {
    if (std::abs(c.real()) > 1e-12) {
      throw std::logic_error("excitation generator term with real part");
    }
    // exp(theta * i c P) = exp(-i (-2 c theta)/2 P)
    ranked.push_back({rank(w), {w, Angle::parameter(exc.param, -2.0 * c.imag())}});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PauliRotation> out;
  for (auto& r : ranked) out.push_back(std::move(r.second));
  return out;
}

Circuit synth_double_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params) {
  if (exc.kind != ExcitationKind::Double) throw std::invalid_argument("not a double");
  check_param(exc, n_params);
  const auto rots = excitation_rotations(exc, mapping);
  return synth_rotation_sequence(rots, mapping.size(), n_params);
}

Circuit synth_single_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params) {
  if (exc.kind != ExcitationKind::Single) throw std::invalid_argument("not a single");
  check_param(exc, n_params);
  const auto rots = excitation_rotations(exc, mapping);
  return synth_rotation_sequence(rots, mapping.size(), n_params);
}

PairSign pair_excitation_sign(const Excitation& exc, const QubitMapping& mapping) {
  if (!exc.paired) throw std::invalid_argument("not a pair excitation");
  const std::size_t n = mapping.n_spatial();
  const std::size_t i = exc.occ[0];
  const std::size_t a = exc.virt[0];
  const FermionTerm t = mapping.apply(exc.operator_term(n));
  auto pair_bits = [&](std::size_t k) {
    return (std::uint64_t{1} << mapping.alpha_qubit(k)) |
           (std::uint64_t{1} << mapping.beta_qubit(k));
  };
  auto sign_on = [&](std::uint64_t bits) {
    const auto r = apply_to_basis(t, bits);
    if (!r) throw std::logic_error("pair excitation annihilated a reference state");
    return r->first;
  };
  PairSign out;
  out.sign = sign_on(pair_bits(i));
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i || k == a) continue;
    if (sign_on(pair_bits(i) | pair_bits(k)) != out.sign) {
      out.parity_qubits.push_back(mapping.alpha_qubit(k));
    }
  }
  return out;
}

Circuit synth_paired_excitation(const Excitation& exc, const QubitMapping& mapping,
                                std::size_t n_params) {
  check_param(exc, n_params);
  const PairSign ps = pair_excitation_sign(exc, mapping);
  const std::size_t u = mapping.alpha_qubit(exc.occ[0]);
  const std::size_t v = mapping.alpha_qubit(exc.virt[0]);
  const double s = ps.sign;
  const std::size_t n = mapping.size();

  if (ps.parity_qubits.empty()) {
    // Givens rotation |10> -> cos|10> + s sin|01> on (u, v).
    Circuit c(n, n_params);
    const Angle ang = Angle::parameter(exc.param, s);
    c.add(Gate::h(u));
    c.add(Gate::cnot(u, v));
    add_ry(c, u, ang);
    add_ry(c, v, ang);
    c.add(Gate::cnot(u, v));
    c.add(Gate::h(u));
    return optimize_circuit(c);
  }

  PauliWord yx(n);
  PauliWord xy(n);
  for (std::size_t q : ps.parity_qubits) {
    yx.set(q, PauliAxis::Z);
    xy.set(q, PauliAxis::Z);
  }
  yx.set(u, PauliAxis::Y);
  yx.set(v, PauliAxis::X);
  xy.set(u, PauliAxis::X);
  xy.set(v, PauliAxis::Y);
  const std::array<PauliRotation, 2> rots = {
      PauliRotation{yx, Angle::parameter(exc.param, -s)},
      PauliRotation{xy, Angle::parameter(exc.param, s)}};
  return synth_rotation_sequence(rots, n, n_params);
}

Circuit synth_spatial_to_spin(const QubitMapping& mapping, const ActiveSpace& space) {
  if (mapping.size() != space.n_qubits()) {
    throw std::invalid_argument("mapping size does not match the active space");
  }
  Circuit c(mapping.size());
  for (std::size_t k = 0; k < space.n_orbitals; ++k) {
    c.add(Gate::cnot(mapping.alpha_qubit(k), mapping.beta_qubit(k)));
  }
  return c;
}

Circuit build_ansatz_circuit(const AnsatzSpec& spec, const QubitMapping& mapping) {
  const ActiveSpace& space = spec.space;
  if (mapping.size() != space.n_qubits()) {
    throw std::invalid_argument("mapping size does not match the active space");
  }
  const std::size_t n = mapping.size();
  const std::size_t np = spec.parameter_count();
  Circuit c(n, np);
  for (std::size_t k = 0; k < space.n_occupied(); ++k) c.add(Gate::x(mapping.alpha_qubit(k)));

  std::vector<PauliRotation> rest;
  bool seen_unpaired = false;
  for (const Excitation& e : spec.excitations) {
    if (e.paired) {
      if (seen_unpaired) {
        throw std::invalid_argument("pair excitations must precede the others");
      }
      c.append(synth_paired_excitation(e, mapping, np));
    } else {
      seen_unpaired = true;
      const auto r = excitation_rotations(e, mapping);
      rest.insert(rest.end(), r.begin(), r.end());
    }
  }
  Circuit fan = synth_spatial_to_spin(mapping, space);
  for (const Gate& g : fan.gates()) c.add(g);
  for (const auto& r : rest) c.append(synth_pauli_rotation(r.word, r.angle, np));
  return optimize_circuit(c);
}

}  // namespace symvqe
