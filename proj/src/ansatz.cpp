#include "symvqe/ansatz.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace symvqe {

Variant parse_variant(std::string_view name) {
  if (name == "upCCD" || name == "upccd") return Variant::upCCD;
  if (name == "uCCDab" || name == "uccdab") return Variant::uCCDab;
  if (name == "uCCD" || name == "uccd") return Variant::uCCD;
  if (name == "uCCSD" || name == "uccsd") return Variant::uCCSD;
  throw std::invalid_argument("unknown ansatz variant '" + std::string(name) +
                              "' (expected upCCD, uCCDab, uCCD or uCCSD)");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::upCCD: return "upCCD";
    case Variant::uCCDab: return "uCCDab";
    case Variant::uCCD: return "uCCD";
    case Variant::uCCSD: return "uCCSD";
  }
  return "?";
}

std::size_t AnsatzSpec::count(ExcitationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      excitations.begin(), excitations.end(),
      [kind](const Excitation& e) { return e.kind == kind; }));
}

std::size_t AnsatzSpec::paired_count() const {
  return static_cast<std::size_t>(std::count_if(
      excitations.begin(), excitations.end(),
      [](const Excitation& e) { return e.paired; }));
}

namespace {

void sort_block(std::vector<Excitation>& block) {
  std::stable_sort(block.begin(), block.end(),
                   [](const Excitation& a, const Excitation& b) {
                     return std::tie(a.occ, a.virt, a.spin) <
                            std::tie(b.occ, b.virt, b.spin);
                   });
}

}  // namespace

AnsatzSpec enumerate_excitations(Variant variant, const ActiveSpace& space,
                                 const std::optional<OrbitalSymmetry>& sym) {
  if (space.n_electrons % 2 != 0) {
    throw std::invalid_argument(
        "open-shell reference requested: only closed-shell (even electron) "
        "active spaces are supported");
  }
  if (space.n_orbitals == 0 || space.n_electrons > 2 * space.n_orbitals) {
    throw std::invalid_argument("invalid active space");
  }
  if (space.n_qubits() > kMaxQubits) {
    throw std::invalid_argument("active space exceeds the 64-qubit word size");
  }
  if (sym && sym->size() != space.n_orbitals) {
    throw std::invalid_argument("orbital symmetry table has " +
                                std::to_string(sym->size()) + " entries for " +
                                std::to_string(space.n_orbitals) + " orbitals");
  }

  const std::size_t no = space.n_occupied();
  const std::size_t nmo = space.n_orbitals;

  std::vector<Excitation> paired;
  std::vector<Excitation> unpaired;
  std::vector<Excitation> singles;

  for (std::size_t i = 0; i < no; ++i) {
    for (std::size_t j = 0; j < no; ++j) {
      for (std::size_t a = no; a < nmo; ++a) {
        for (std::size_t b = no; b < nmo; ++b) {
          Excitation e = Excitation::double_ab(i, j, a, b);
          if (e.paired) {
            paired.push_back(e);
          } else if (variant != Variant::upCCD) {
            unpaired.push_back(e);
          }
        }
      }
    }
  }

  if (variant == Variant::uCCD || variant == Variant::uCCSD) {
    for (bool beta : {false, true}) {
      for (std::size_t i = 0; i < no; ++i) {
        for (std::size_t j = i + 1; j < no; ++j) {
          for (std::size_t a = no; a < nmo; ++a) {
            for (std::size_t b = a + 1; b < nmo; ++b) {
              unpaired.push_back(Excitation::double_same_spin(i, j, a, b, beta));
            }
          }
        }
      }
    }
  }

  if (variant == Variant::uCCSD) {
    for (bool beta : {false, true}) {
      for (std::size_t i = 0; i < no; ++i) {
        for (std::size_t a = no; a < nmo; ++a) {
          singles.push_back(Excitation::single(i, a, beta));
        }
      }
    }
  }

  sort_block(paired);
  sort_block(unpaired);
  sort_block(singles);

  AnsatzSpec spec;
  spec.variant = variant;
  spec.space = space;
  spec.symmetry_screened = sym.has_value();
  for (auto* block : {&paired, &unpaired, &singles}) {
    for (Excitation& e : *block) {
      if (sym && !excitation_allowed(e, *sym)) continue;
      e.param = spec.excitations.size();
      spec.excitations.push_back(e);
    }
  }
  return spec;
}

std::vector<bool> hf_occupation(const ActiveSpace& space) {
  std::vector<bool> occ(space.n_qubits(), false);
  for (std::size_t p = 0; p < space.n_occupied(); ++p) {
    occ[alpha_orbital(p)] = true;
    occ[beta_orbital(p, space.n_orbitals)] = true;
  }
  return occ;
}

std::uint64_t hf_bits(const ActiveSpace& space, const QubitMapping& mapping) {
  if (mapping.size() != space.n_qubits()) {
    throw std::invalid_argument("mapping size does not match the active space");
  }
  const auto occ = hf_occupation(space);
  std::uint64_t bits = 0;
  for (std::size_t so = 0; so < occ.size(); ++so) {
    if (occ[so]) bits |= std::uint64_t{1} << mapping.qubit(so);
  }
  return bits;
}

PauliSum antihermitian_generator(const Excitation& exc, const QubitMapping& mapping) {
  const std::size_t n = mapping.size();
  const FermionTerm t = mapping.apply(exc.operator_term(mapping.n_spatial()));
  return jw_transform(t, n) - jw_transform(t.adjoint(), n);
}

}  // namespace symvqe
