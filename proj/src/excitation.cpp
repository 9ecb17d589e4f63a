#include "symvqe/excitation.hpp"

#include <sstream>
#include <stdexcept>

namespace symvqe {

Excitation Excitation::single(std::size_t i, std::size_t a, bool beta) {
  Excitation e;
  e.kind = ExcitationKind::Single;
  e.spin = beta ? SpinPattern::BetaBeta : SpinPattern::AlphaAlpha;
  e.occ = {i};
  e.virt = {a};
  return e;
}

Excitation Excitation::double_ab(std::size_t i, std::size_t j, std::size_t a,
                                 std::size_t b) {
  Excitation e;
  e.kind = ExcitationKind::Double;
  e.spin = SpinPattern::AlphaBeta;
  e.paired = (i == j && a == b);
  e.occ = {i, j};
  e.virt = {a, b};
  return e;
}

Excitation Excitation::double_same_spin(std::size_t i, std::size_t j,
                                        std::size_t a, std::size_t b,
                                        bool beta) {
  if (i == j || a == b) {
    throw std::invalid_argument("same-spin double needs distinct orbitals");
  }
  Excitation e;
  e.kind = ExcitationKind::Double;
  e.spin = beta ? SpinPattern::BetaBeta : SpinPattern::AlphaAlpha;
  e.occ = {i, j};
  e.virt = {a, b};
  return e;
}

std::vector<std::size_t> Excitation::spin_orbitals(std::size_t n_spatial) const {
  auto so = [n_spatial](std::size_t p, bool beta) {
    if (p >= n_spatial) {
      throw std::out_of_range("excitation orbital " + std::to_string(p) +
                              " outside active space");
    }
    return beta ? beta_orbital(p, n_spatial) : alpha_orbital(p);
  };
  if (kind == ExcitationKind::Single) {
    const bool beta = spin == SpinPattern::BetaBeta;
    return {so(occ.at(0), beta), so(virt.at(0), beta)};
  }
  const bool first_beta = spin == SpinPattern::BetaBeta;
  const bool second_beta = spin != SpinPattern::AlphaAlpha;
  return {so(occ.at(0), first_beta), so(occ.at(1), second_beta),
          so(virt.at(0), first_beta), so(virt.at(1), second_beta)};
}

std::vector<std::size_t> Excitation::spatial_orbitals() const {
  std::vector<std::size_t> out(occ);
  out.insert(out.end(), virt.begin(), virt.end());
  return out;
}

FermionTerm Excitation::operator_term(std::size_t n_spatial) const {
  const auto so = spin_orbitals(n_spatial);
  FermionTerm t;
  if (kind == ExcitationKind::Single) {
    t.ops = {{so[1], true}, {so[0], false}};
  } else {
    // a+_b a_j a+_a a_i
    t.ops = {{so[3], true}, {so[1], false}, {so[2], true}, {so[0], false}};
  }
  return t;
}

std::string Excitation::label() const {
  std::ostringstream os;
  auto tag = [this](std::size_t slot) {
    if (spin == SpinPattern::AlphaAlpha) return 'a';
    if (spin == SpinPattern::BetaBeta) return 'b';
    return slot == 0 ? 'a' : 'b';
  };
  for (std::size_t k = 0; k < occ.size(); ++k) os << occ[k] << tag(k);
  os << "->";
  for (std::size_t k = 0; k < virt.size(); ++k) os << virt[k] << tag(k);
  return os.str();
}

}  // namespace symvqe
