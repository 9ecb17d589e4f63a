#pragma once
// Random molecular-integral instances for tests.

#include <optional>
#include <random>

#include "symvqe/hamio.hpp"

namespace oracle {

/// Random real integrals with full permutational symmetry. With `sym`, every
/// symmetry-forbidden h and g entry is zero and diagonal h is spread by
/// `gap` per orbital so the aufbau reference dominates the ground state.
inline symvqe::MolecularIntegrals random_integrals(
    std::size_t n, std::size_t ne, std::mt19937& rng,
    const std::optional<symvqe::OrbitalSymmetry>& sym = std::nullopt, double gap = 0.0) {
  using symvqe::Irrep;
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  symvqe::MolecularIntegrals ints(n, ne);
  ints.orbsym = sym ? *sym : symvqe::totally_symmetric(n);
  auto allowed = [&](std::initializer_list<std::size_t> idx) {
    Irrep prod;
    for (std::size_t p : idx) prod = prod * ints.orbsym[p];
    return prod.is_totally_symmetric();
  };
  ints.core_energy = u(rng);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const double v = u(rng) - (p == q ? 1.0 - gap * static_cast<double>(p) : 0.0);
      ints.set_h(p, q, allowed({p, q}) ? v : 0.0);
    }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const double v = 0.2 * u(rng);
          ints.set_g(p, q, r, s, allowed({p, q, r, s}) ? v : 0.0);
        }
  return ints;
}

}  // namespace oracle
