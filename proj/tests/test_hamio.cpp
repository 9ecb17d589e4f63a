#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <filesystem>
#include <random>
#include <set>

#include "oracle/dense.hpp"
#include "oracle/problems.hpp"
#include "symvqe/hamio.hpp"

using namespace symvqe;

namespace {

using oracle::random_integrals;

// Second-quantized Hamiltonian assembled column by column from occupation-number
// algebra; spin orbital so sits on mode mapping.qubit(so).
struct Ket {
  double amp;
  std::size_t bits;
};

// a_p or a+_p on a basis ket, sign (-1)^(occupied modes below p); amp 0 if annihilated.
Ket act(Ket k, std::size_t p, bool dagger) {
  if (k.amp == 0.0) return k;
  const bool occ = (k.bits >> p) & 1U;
  if (occ == dagger) return {0.0, 0};
  const int below = std::popcount(k.bits & ((std::size_t{1} << p) - 1));
  return {below % 2 ? -k.amp : k.amp, k.bits ^ (std::size_t{1} << p)};
}

oracle::Mat second_quantized(const MolecularIntegrals& ints, const QubitMapping& map) {
  const std::size_t n = ints.n_orbitals();
  const std::size_t nq = 2 * n;
  const std::size_t dim = std::size_t{1} << nq;
  auto mode = [&](std::size_t p, std::size_t spin) { return map.qubit(p + spin * n); };
  oracle::Mat h = ints.core_energy * oracle::Mat::Identity(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Ket k0{1.0, col};
    for (std::size_t sig = 0; sig < 2; ++sig)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          const Ket k = act(act(k0, mode(q, sig), false), mode(p, sig), true);
          if (k.amp != 0.0) h(k.bits, col) += ints.h(p, q) * k.amp;
        }
    for (std::size_t sig = 0; sig < 2; ++sig)
      for (std::size_t tau = 0; tau < 2; ++tau)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r)
              for (std::size_t s = 0; s < n; ++s) {
                Ket k = act(k0, mode(q, sig), false);
                k = act(k, mode(s, tau), false);
                k = act(k, mode(r, tau), true);
                k = act(k, mode(p, sig), true);
                if (k.amp != 0.0) h(k.bits, col) += 0.5 * ints.g(p, q, r, s) * k.amp;
              }
  }
  return h;
}

oracle::Mat qubit_matrix(const QubitHamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  oracle::Mat m = h.offset * oracle::Mat::Identity(dim, dim);
  for (const auto& t : h.terms) oracle::add_pauli(m, t.word.str(), t.coeff);
  return m;
}

double lowest_in_sector(const oracle::Mat& m, const QubitMapping& map, SpinSector sec) {
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < static_cast<std::size_t>(m.rows()); ++b) {
    if (static_cast<std::size_t>(std::popcount(b & map.alpha_mask())) == sec.n_alpha &&
        static_cast<std::size_t>(std::popcount(b & map.beta_mask())) == sec.n_beta)
      idx.push_back(b);
  }
  oracle::Mat sub(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
  return Eigen::SelfAdjointEigenSolver<oracle::Mat>(sub).eigenvalues()(0);
}

QubitHamiltonian from_words(std::size_t n, const std::vector<std::pair<std::string, double>>& ws,
                            double offset = 0.0) {
  QubitHamiltonian h;
  h.n_qubits = n;
  h.offset = offset;
  for (const auto& [w, c] : ws) h.terms.push_back({PauliWord::from_string(w), c});
  return h;
}

bool data_file_present() {
  return std::filesystem::exists(std::string(SYMVQE_TEST_DATA) + "/benzene_sto3g.fcidump");
}

}  // namespace

TEST(Fcidump, MinimalOneOrbital) {
  const auto ints = parse_fcidump_text(
      "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n"
      " -1.0 1 1 0 0\n 0.5 0 0 0 0\n");
  EXPECT_EQ(ints.n_orbitals(), 1u);
  EXPECT_EQ(ints.n_electrons(), 2u);
  EXPECT_DOUBLE_EQ(ints.h(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(ints.core_energy, 0.5);
}

TEST(Fcidump, OrbsymAllTotallySymmetric) {
  const auto ints = parse_fcidump_text(
      "&FCI NORB=4,NELEC=2,\n ORBSYM=1,1,1,1\n/\n 0.0 0 0 0 0\n");
  ASSERT_EQ(ints.orbsym.size(), 4u);
  for (auto ir : ints.orbsym) EXPECT_TRUE(ir.is_totally_symmetric());
}

TEST(Fcidump, CanonicalEntriesExpandEightFold) {
  const auto ints = parse_fcidump_text(
      "&FCI NORB=3,NELEC=2,ORBSYM=1,1,1,&END\n"
      " 0.25 3 2 2 1\n 0.125D+00 2 1 1 1\n -0.5 2 1 0 0\n");
  const std::size_t p = 2, q = 1, r = 1, s = 0;
  for (auto [a, b, c, d] : std::vector<std::array<std::size_t, 4>>{
           {p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
           {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}})
    EXPECT_DOUBLE_EQ(ints.g(a, b, c, d), 0.25);
  EXPECT_DOUBLE_EQ(ints.g(0, 0, 1, 0), 0.125);
  EXPECT_DOUBLE_EQ(ints.g(0, 0, 0, 1), 0.125);
  EXPECT_DOUBLE_EQ(ints.h(0, 1), -0.5);
  EXPECT_DOUBLE_EQ(ints.h(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(ints.g(0, 0, 0, 0), 0.0);
}

TEST(Fcidump, WriteParseRoundTrip) {
  std::mt19937 rng(3);
  auto ints = random_integrals(3, 2, rng);
  ints.orbsym = {Irrep::from_label(1), Irrep::from_label(4), Irrep::from_label(7)};
  const auto back = parse_fcidump_text(write_fcidump(ints));
  ASSERT_EQ(back.n_orbitals(), 3u);
  EXPECT_EQ(back.orbsym, ints.orbsym);
  EXPECT_DOUBLE_EQ(back.core_energy, ints.core_energy);
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = 0; q < 3; ++q) {
      EXPECT_DOUBLE_EQ(back.h(p, q), ints.h(p, q));
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s) EXPECT_DOUBLE_EQ(back.g(p, q, r, s), ints.g(p, q, r, s));
    }
}

TEST(Fcidump, MalformedInputsRejected) {
  const std::vector<std::string> bad = {
      "",                                                     // no header
      "&FCI NELEC=2,ORBSYM=1,&END\n",                         // no NORB
      "&FCI NORB=1,ORBSYM=1,&END\n",                          // no NELEC
      "&FCI NORB=2,NELEC=2,&END\n",                           // no ORBSYM
      "&FCI NORB=2,NELEC=2,ORBSYM=1,&END\n",                  // short ORBSYM
      "&FCI NORB=1,NELEC=2,ORBSYM=9,&END\n",                  // label out of range
      "&FCI NORB=1,NELEC=2,ORBSYM=1,\n",                      // unterminated
      "&FCI NORB=1,NELEC=2,ORBSYM=1,&END\n 1.0 2 1 0 0\n",    // index > NORB
      "&FCI NORB=1,NELEC=2,ORBSYM=1,&END\n abc 1 1 0 0\n",    // non-numeric value
      "&FCI NORB=1,NELEC=2,ORBSYM=1,&END\n 1.0 1 1 0\n",      // short record
      "&FCI NORB=1,NELEC=2,ORBSYM=1,&END\n 1.0 1 0 1 0\n",    // bad index pattern
  };
  for (const auto& text : bad) {
    EXPECT_THROW(parse_fcidump_text(text), std::invalid_argument) << text;
  }
  EXPECT_THROW(parse_fcidump("/nonexistent/file.fcidump"), std::runtime_error);
}

TEST(QubitHamiltonian, OneOrbitalMatchesDenseTwoModeMatrix) {
  const double eps = -0.7, U = 0.45;
  MolecularIntegrals ints(1, 2);
  ints.orbsym = totally_symmetric(1);
  ints.core_energy = 0.3;
  ints.set_h(0, 0, eps);
  ints.set_g(0, 0, 0, 0, U);
  const auto map = QubitMapping::identity(2);
  const auto h = build_qubit_hamiltonian(ints, map);
  // diagonal in the occupation basis: E(n_a, n_b) = core + eps (n_a+n_b) + U n_a n_b
  oracle::Mat expect = oracle::Mat::Zero(4, 4);
  for (int b = 0; b < 4; ++b) {
    const int na = b & 1, nb = (b >> 1) & 1;
    expect(b, b) = 0.3 + eps * (na + nb) + U * na * nb;
  }
  EXPECT_LT((qubit_matrix(h) - expect).norm(), 1e-12);
  EXPECT_NEAR(h.offset, 0.3 + eps + U / 4, 1e-12);
  for (const auto& t : h.terms) EXPECT_EQ(t.word.x_mask(), 0u);
  EXPECT_EQ(second_quantized(ints, map).rows(), 4);
  EXPECT_LT((second_quantized(ints, map) - expect).norm(), 1e-12);
}

TEST(QubitHamiltonian, PauliMatrixEqualsSecondQuantized) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t n = 2 + trial % 2 + (trial == 2 ? 1 : 0);  // 2, 3, 4 orbitals (4..8 qubits)
    const auto ints = random_integrals(n, 2, rng);
    std::vector<std::size_t> perm(2 * n);
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    const QubitMapping map(perm);
    const auto h = build_qubit_hamiltonian(ints, map);
    EXPECT_EQ(h.alpha_mask, map.alpha_mask());
    EXPECT_EQ(h.beta_mask, map.beta_mask());
    const auto a = qubit_matrix(h);
    const auto b = second_quantized(ints, map);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
  }
}

TEST(QubitHamiltonian, FiveOrbitalsTenQubitsMatchesSecondQuantized) {
  std::mt19937 rng(12);
  const auto ints = random_integrals(5, 4, rng);
  const auto map = QubitMapping::identity(10);
  const auto h = build_qubit_hamiltonian(ints, map);
  const auto a = qubit_matrix(h);
  const auto b = second_quantized(ints, map);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(QubitHamiltonian, HfExpectationEqualsRestrictedHf) {
  std::mt19937 rng(5);
  const auto ints = random_integrals(4, 4, rng);
  const auto map = QubitMapping::identity(8);
  const auto h = build_qubit_hamiltonian(ints, map);
  const auto bits = hf_bits(ActiveSpace{4, 4}, map);
  EXPECT_NEAR(h.diagonal_expectation(bits), restricted_hf_energy(ints), 1e-10);
  // variational principle in the HF sector
  EXPECT_LE(exact_ground_energy(h, SpinSector{2, 2}), h.diagonal_expectation(bits) + 1e-12);
}

TEST(QubitHamiltonian, PauliSumRoundTrip) {
  std::mt19937 rng(8);
  const auto ints = random_integrals(2, 2, rng);
  const auto h = build_qubit_hamiltonian(ints, QubitMapping::identity(4));
  const auto back = QubitHamiltonian::from_pauli_sum(h.to_pauli_sum());
  EXPECT_NEAR(back.offset, h.offset, 1e-14);
  ASSERT_EQ(back.terms.size(), h.terms.size());
  for (std::size_t k = 0; k < h.terms.size(); ++k) {
    EXPECT_EQ(back.terms[k].word, h.terms[k].word);
    EXPECT_NEAR(back.terms[k].coeff, h.terms[k].coeff, 1e-14);
  }
}

TEST(QubitHamiltonian, ImaginaryResidueRejected) {
  PauliSum s(2);
  s.add(PauliWord::from_string("XY"), cplx{0.5, 1e-12});
  EXPECT_NO_THROW(QubitHamiltonian::from_pauli_sum(s));
  PauliSum t(2);
  t.add(PauliWord::from_string("XY"), cplx{0.5, 1e-6});
  EXPECT_THROW(QubitHamiltonian::from_pauli_sum(t), std::domain_error);
}

TEST(QubitHamiltonian, SpectrumInvariantUnderMapping) {
  std::mt19937 rng(21);
  const auto ints = random_integrals(3, 2, rng);
  const auto h1 = build_qubit_hamiltonian(ints, QubitMapping::identity(6));
  const auto h2 = build_qubit_hamiltonian(ints, QubitMapping({4, 0, 3, 1, 5, 2}));
  const auto e1 = Eigen::SelfAdjointEigenSolver<oracle::Mat>(qubit_matrix(h1)).eigenvalues();
  const auto e2 = Eigen::SelfAdjointEigenSolver<oracle::Mat>(qubit_matrix(h2)).eigenvalues();
  EXPECT_LT((e1 - e2).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ActiveSpace, FrozenCoreProjectionMatchesFullHamiltonian) {
  // 4 orbitals, 4 electrons; orbital 0 frozen, {1,2} active with 2 electrons, 3 dropped.
  std::mt19937 rng(31);
  const auto full = random_integrals(4, 4, rng);
  const ActiveSelection sel{2, {1, 2}};
  const auto act = restrict_to_active(full, sel);
  ASSERT_EQ(act.n_orbitals(), 2u);
  ASSERT_EQ(act.n_electrons(), 2u);
  const auto hact = qubit_matrix(build_qubit_hamiltonian(act, QubitMapping::identity(4)));
  const auto hfull = second_quantized(full, QubitMapping::identity(8));

  // active qubit k (alpha 0,1 then beta 0,1) -> full mode
  const std::size_t mode_of[4] = {1, 2, 5, 6};
  auto embed = [&](std::size_t b) {
    std::size_t f = (1u << 0) | (1u << 4);  // frozen alpha and beta
    for (std::size_t k = 0; k < 4; ++k)
      if ((b >> k) & 1U) f |= std::size_t{1} << mode_of[k];
    return f;
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      if (std::popcount(i) != std::popcount(j)) continue;
      worst = std::max(worst, std::abs(hact(i, j) - hfull(embed(i), embed(j))));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(ActiveSpace, InvalidSelectionsRejected) {
  std::mt19937 rng(1);
  const auto full = random_integrals(4, 4, rng);
  EXPECT_THROW(restrict_to_active(full, {2, {1, 7}}), std::invalid_argument);
  EXPECT_THROW(restrict_to_active(full, {2, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(restrict_to_active(full, {3, {1, 2}}), std::invalid_argument);  // odd frozen count
  EXPECT_THROW(restrict_to_active(full, {6, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(default_active_selection(full, 2, 9), std::invalid_argument);
}

TEST(ActiveSpace, DefaultSelectionCentredOnFermiLevel) {
  MolecularIntegrals ints(10, 8);
  ints.orbsym = totally_symmetric(10);
  const auto s = default_active_selection(ints, 4, 4);
  EXPECT_EQ(s.orbitals, (std::vector<std::size_t>{2, 3, 4, 5}));
  EXPECT_EQ(s.n_electrons, 4u);
}

TEST(QwcGroup, AllZIsOneGroup) {
  const auto h = from_words(2, {{"ZI", 1.0}, {"IZ", 0.5}, {"ZZ", 0.25}});
  const auto g = qwc_group(h);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g[0].is_z_basis());
  EXPECT_EQ(g[0].basis_string(), "ZZ");
}

TEST(QwcGroup, ConflictOnSharedQubitSplits) {
  const auto h = from_words(1, {{"X", 1.0}, {"Z", 0.5}});
  const auto g = qwc_group(h);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].basis_string(), "X");
  EXPECT_EQ(g[1].basis_string(), "Z");
}

TEST(QwcGroup, DescendingMagnitudeFirstFit) {
  // ZI is heaviest and opens group 0; XX cannot join; IZ joins group 0; XI joins XX.
  const auto h = from_words(2, {{"XI", 0.1}, {"IZ", 0.2}, {"XX", 0.5}, {"ZI", -0.9}});
  const auto g = qwc_group(h);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].members, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(g[1].members, (std::vector<std::size_t>{2, 0}));
  EXPECT_EQ(g[1].basis_string(), "XX");
}

TEST(QwcGroup, ValidityOnRandomHamiltonians) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  const char axes[4] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    std::set<std::string> seen;
    std::vector<std::pair<std::string, double>> ws;
    const std::size_t nterms = 1 + rng() % 40;
    for (std::size_t k = 0; k < nterms; ++k) {
      std::string w(n, 'I');
      for (auto& c : w) c = axes[rng() % 4];
      if (w == std::string(n, 'I') || !seen.insert(w).second) continue;
      ws.push_back({w, u(rng)});
    }
    const auto h = from_words(n, ws);
    const auto groups = qwc_group(h);
    std::vector<int> hit(h.terms.size(), 0);
    for (const auto& g : groups) {
      for (std::size_t m : g.members) {
        ++hit[m];
        const std::string w = h.terms[m].word.str();
        const std::string b = g.basis_string();
        for (std::size_t q = 0; q < n; ++q)
          if (w[q] != 'I') EXPECT_EQ(w[q], b[q]);
        for (std::size_t m2 : g.members) {
          const std::string w2 = h.terms[m2].word.str();
          for (std::size_t q = 0; q < n; ++q)
            if (w[q] != 'I' && w2[q] != 'I') EXPECT_EQ(w[q], w2[q]);
        }
      }
    }
    for (int c : hit) EXPECT_EQ(c, 1);
  }
}

TEST(ExactGround, MinusZ) {
  const auto h = from_words(1, {{"Z", -1.0}}, 0.25);
  EXPECT_NEAR(exact_ground_energy(h), -0.75, 1e-12);
}

TEST(ExactGround, SectorMatchesDenseOracle) {
  std::mt19937 rng(41);
  const auto ints = random_integrals(3, 2, rng);
  const QubitMapping map({2, 5, 0, 4, 1, 3});
  const auto h = build_qubit_hamiltonian(ints, map);
  const auto dense = second_quantized(ints, map);
  for (SpinSector sec : {SpinSector{1, 1}, SpinSector{2, 0}, SpinSector{2, 1}}) {
    EXPECT_NEAR(exact_ground_energy(h, sec), lowest_in_sector(dense, map, sec), 1e-10);
  }
  EXPECT_NEAR(exact_ground_energy(h),
              Eigen::SelfAdjointEigenSolver<oracle::Mat>(dense).eigenvalues()(0), 1e-10);
}

TEST(ExactGround, IterativePathAgreesWithSectorMinimum) {
  // 12 qubits without a sector exceeds the dense limit; the full-space minimum
  // equals the minimum over all (n_alpha, n_beta) sectors, each solved densely.
  std::mt19937 rng(43);
  const auto ints = random_integrals(6, 6, rng);
  const auto h = build_qubit_hamiltonian(ints, QubitMapping::identity(12));
  double best = 1e300;
  for (std::size_t a = 0; a <= 6; ++a)
    for (std::size_t b = 0; b <= 6; ++b) best = std::min(best, exact_ground_energy(h, SpinSector{a, b}));
  EXPECT_NEAR(exact_ground_energy(h), best, 1e-8);
}

TEST(ExactGround, Errors) {
  QubitHamiltonian big;
  big.n_qubits = 15;
  EXPECT_THROW(exact_ground_energy(big), std::invalid_argument);
  const auto h = from_words(2, {{"ZZ", 1.0}});
  EXPECT_THROW(exact_ground_energy(h, SpinSector{1, 0}), std::invalid_argument);
  QubitHamiltonian m = h;
  m.alpha_mask = 1;
  m.beta_mask = 2;
  EXPECT_THROW(exact_ground_energy(m, SpinSector{2, 0}), std::invalid_argument);
}

TEST(Benzene, ActiveOrbitalsAndSymmetry) {
  if (!data_file_present()) GTEST_SKIP() << "benzene FCIDUMP not available";
  const auto ints = parse_fcidump(std::string(SYMVQE_TEST_DATA) + "/benzene_sto3g.fcidump");
  EXPECT_EQ(ints.n_orbitals(), 36u);
  EXPECT_EQ(ints.n_electrons(), 42u);
  const auto sel = default_active_selection(ints, 4, 4);
  EXPECT_EQ(sel.orbitals, (std::vector<std::size_t>{19, 20, 21, 22}));
}

TEST(Benzene, CasEnergies) {
  if (!data_file_present()) GTEST_SKIP() << "benzene FCIDUMP not available";
  const auto ints = parse_fcidump(std::string(SYMVQE_TEST_DATA) + "/benzene_sto3g.fcidump");
  {
    const auto act = restrict_to_active(ints, default_active_selection(ints, 2, 2));
    const auto h = build_qubit_hamiltonian(act, QubitMapping::identity(4));
    EXPECT_NEAR(exact_ground_energy(h, SpinSector{1, 1}), -227.9059, 1e-3);
  }
  {
    const auto act = restrict_to_active(ints, default_active_selection(ints, 4, 4));
    const auto h = build_qubit_hamiltonian(act, QubitMapping::identity(8));
    EXPECT_NEAR(exact_ground_energy(h, SpinSector{2, 2}), -227.9450, 1e-3);
    const auto groups = qwc_group(h);
    EXPECT_GE(groups.size(), 28u);
    EXPECT_LE(groups.size(), 42u);
  }
}
