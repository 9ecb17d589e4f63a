#include "symvqe/symmetry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace symvqe {

Irrep Irrep::from_label(int label) {
  if (label < 1 || label > 8) {
    throw std::out_of_range("irrep label " + std::to_string(label) +
                            " outside 1..8");
  }
  return Irrep(static_cast<std::uint8_t>(label - 1));
}

std::string_view Irrep::d2h_name() const {
  static constexpr std::array<std::string_view, 8> names = {
      "Ag", "B3u", "B2u", "B1g", "B1u", "B2g", "B3g", "Au"};
  return names[code_];
}

Irrep irrep_product(Irrep a, Irrep b) {
  return Irrep::from_code(static_cast<std::uint8_t>(a.code() ^ b.code()));
}

OrbitalSymmetry totally_symmetric(std::size_t n_orbitals) {
  return OrbitalSymmetry(n_orbitals, Irrep{});
}

std::size_t abelian_group_order(std::string_view group) {
  std::string g(group);
  std::transform(g.begin(), g.end(), g.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (g == "c1") return 1;
  if (g == "ci" || g == "c2" || g == "cs") return 2;
  if (g == "c2v" || g == "c2h" || g == "d2") return 4;
  if (g == "d2h") return 8;
  throw std::invalid_argument(
      "point group '" + std::string(group) +
      "' is not an Abelian subgroup of D2h; supply an FCIDUMP whose ORBSYM "
      "labels use D2h (or a subgroup of it)");
}

bool excitation_allowed(const Excitation& exc, const OrbitalSymmetry& sym) {
  std::uint8_t acc = 0;
  for (std::size_t p : exc.spatial_orbitals()) {
    if (p >= sym.size()) {
      throw std::out_of_range("excitation orbital outside symmetry table");
    }
    acc ^= sym[p].code();
  }
  return acc == 0;
}

SpinSector sector_of_bits(std::uint64_t bits, const QubitMapping& mapping) {
  return {static_cast<std::size_t>(std::popcount(bits & mapping.alpha_mask())),
          static_cast<std::size_t>(std::popcount(bits & mapping.beta_mask()))};
}

SpinSector sector_of_bitstring(std::string_view bits, const QubitMapping& mapping) {
  if (bits.size() != mapping.size()) {
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(mapping.size()) +
                                " qubits");
  }
  SpinSector s;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '0') continue;
    if (bits[q] != '1') throw std::invalid_argument("bitstring must be 0/1");
    const std::size_t so = mapping.spin_orbital(q);
    if (so < mapping.n_spatial()) {
      ++s.n_alpha;
    } else {
      ++s.n_beta;
    }
  }
  return s;
}

}  // namespace symvqe
