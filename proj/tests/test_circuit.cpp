#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle/dense.hpp"
#include "symvqe/circuit.hpp"

using namespace symvqe;

namespace {

QubitMapping random_mapping(std::size_t n, std::mt19937& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  return QubitMapping(perm);
}

Circuit random_clifford_rz(std::size_t n, std::size_t len, std::mt19937& rng) {
  Circuit c(n, 1);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t q = rng() % n;
    switch (rng() % 7) {
      case 0: c.add(Gate::x(q)); break;
      case 1: c.add(Gate::h(q)); break;
      case 2: c.add(Gate::s(q)); break;
      case 3: c.add(Gate::sdg(q)); break;
      case 4: c.add(Gate::rz(q, Angle::parameter(0, ang(rng)))); break;
      default: {
        std::size_t t = rng() % n;
        if (t == q) t = (q + 1) % n;
        c.add(Gate::cnot(q, t));
      }
    }
  }
  return c;
}

/// Dense exp(theta_k G_k) products applied in excitation-list order to the HF state.
oracle::Vec reference_ansatz_state(const AnsatzSpec& spec, const QubitMapping& m,
                                   const std::vector<double>& theta) {
  oracle::Vec psi = oracle::basis_state(m.size(), hf_bits(spec.space, m));
  for (const auto& e : spec.excitations) {
    psi = oracle::expm_antihermitian(theta[e.param] * oracle::excitation_generator(e, m)) * psi;
  }
  return psi;
}

}  // namespace

TEST(CircuitIR, ValidatesGates) {
  Circuit c(3, 1);
  EXPECT_THROW(c.add(Gate::x(3)), std::out_of_range);
  EXPECT_THROW(c.add(Gate::cnot(1, 1)), std::invalid_argument);
  EXPECT_THROW(c.add(Gate::rz(0, Angle::parameter(1))), std::out_of_range);
  c.add(Gate::cnot(0, 2));
  c.add(Gate::rz(1, Angle::parameter(0, -0.5)));
  EXPECT_EQ(count_2qge(c), 1u);
  EXPECT_EQ(c.count(GateKind::Rz), 1u);
}

TEST(CircuitIR, TextRoundTrip) {
  std::mt19937 rng(1);
  Circuit c = random_clifford_rz(4, 60, rng);
  c.add(Gate::rz(2, Angle::constant(0.1234567890123)));
  const Circuit back = parse_circuit_text(to_text(c));
  EXPECT_EQ(back, c);
}

TEST(CircuitIR, TextErrors) {
  EXPECT_THROW(parse_circuit_text(""), std::invalid_argument);
  EXPECT_THROW(parse_circuit_text("H 0\n"), std::invalid_argument);
  EXPECT_THROW(parse_circuit_text("QUBITS 2\nFOO 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_circuit_text("QUBITS 2\nCNOT 0 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_circuit_text("QUBITS 2\nPARAMS a\nRZ 0 1.0 b\n"), std::invalid_argument);
  EXPECT_THROW(parse_circuit_text("QUBITS 2\nPARAMS a a\n"), std::invalid_argument);
  const Circuit ok = parse_circuit_text("# demo\nQUBITS 2\nPARAMS t\nH 0\nRZ 1 2 t\n");
  EXPECT_EQ(ok.size(), 2u);
  EXPECT_EQ(ok.parameter_names(), std::vector<std::string>{"t"});
}

TEST(Synthesis, PauliRotationMatchesExponential) {
  std::mt19937 rng(2);
  static const char axes[] = "IXYZ";
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::string w;
    for (int q = 0; q < 4; ++q) w.push_back(axes[rng() % 4]);
    if (w == "IIII") continue;
    const double phi = ang(rng);
    const Circuit c = synth_pauli_rotation(PauliWord::from_string(w), Angle::constant(phi));
    const oracle::Mat want =
        oracle::expm_antihermitian(cplx{0, -phi / 2} * oracle::pauli_matrix(w));
    EXPECT_LT((oracle::circuit_unitary(c, {}) - want).cwiseAbs().maxCoeff(), 1e-10) << w;
    const auto weight = PauliWord::from_string(w).weight();
    EXPECT_EQ(count_2qge(c), 2 * (weight - 1));
  }
}

TEST(Peephole, PassesPreserveUnitary) {
  std::mt19937 rng(3);
  const std::vector<double> p = {0.77};
  for (int trial = 0; trial < 60; ++trial) {
    const Circuit c = random_clifford_rz(4, 40, rng);
    const oracle::Mat u = oracle::circuit_unitary(c, p);
    for (const Circuit& d : {fuse_single_qubit_cliffords(c), cancel_cnot_pairs(c),
                             rewrite_cx_h_cx(c), optimize_circuit(c)}) {
      EXPECT_LT(oracle::phase_distance(oracle::circuit_unitary(d, p), u), 1e-10);
      EXPECT_LE(count_2qge(d), count_2qge(c));
    }
  }
}

TEST(Peephole, CommutingCnotPairCancels) {
  Circuit c(3, 1);
  c.add(Gate::cnot(0, 2));
  c.add(Gate::rz(0, Angle::parameter(0)));
  c.add(Gate::x(2));
  c.add(Gate::cnot(1, 2));
  c.add(Gate::cnot(0, 2));
  const Circuit d = cancel_cnot_pairs(c);
  EXPECT_EQ(count_2qge(d), 1u);
}

TEST(Peephole, BlockedCnotPairSurvives) {
  Circuit c(2, 1);
  c.add(Gate::cnot(0, 1));
  c.add(Gate::rz(1, Angle::parameter(0)));
  c.add(Gate::cnot(0, 1));
  EXPECT_EQ(cancel_cnot_pairs(c), c);
}

TEST(Peephole, CxHCxBecomesOneCnot) {
  Circuit c(2);
  c.add(Gate::cnot(0, 1));
  c.add(Gate::h(0));
  c.add(Gate::cnot(0, 1));
  const Circuit d = rewrite_cx_h_cx(c);
  EXPECT_EQ(count_2qge(d), 1u);
  EXPECT_LT(oracle::phase_distance(oracle::circuit_unitary(d, {}),
                                   oracle::circuit_unitary(c, {})),
            1e-12);
}

TEST(Peephole, RewriteLeavesUnmatchedCircuitUnchanged) {
  Circuit c(3, 1);
  c.add(Gate::cnot(0, 1));
  c.add(Gate::s(0));
  c.add(Gate::cnot(0, 1));
  c.add(Gate::h(2));
  c.add(Gate::cnot(1, 2));
  c.add(Gate::rz(2, Angle::parameter(0)));
  c.add(Gate::cnot(1, 2));
  EXPECT_EQ(rewrite_cx_h_cx(c), c);
}

TEST(Peephole, FusionShortensCliffordRuns) {
  Circuit c(1);
  c.add(Gate::h(0));
  c.add(Gate::h(0));
  c.add(Gate::s(0));
  c.add(Gate::sdg(0));
  EXPECT_TRUE(fuse_single_qubit_cliffords(c).empty());
  Circuit d(1);
  for (int k = 0; k < 3; ++k) d.add(Gate::s(0));
  EXPECT_EQ(fuse_single_qubit_cliffords(d).size(), 1u);
}

TEST(Synthesis, DoubleExcitationOnAdjacentQubits) {
  const auto m = QubitMapping::identity(4);
  const Excitation e = Excitation::double_ab(0, 0, 1, 1);
  const Circuit c = synth_double_excitation(e, m, 1);
  EXPECT_EQ(count_2qge(c), 13u);
  for (double th : {0.3, -1.1}) {
    const oracle::Mat want = oracle::expm_antihermitian(th * oracle::excitation_generator(e, m));
    EXPECT_LT(oracle::phase_distance(oracle::circuit_unitary(c, {th}), want), 1e-10);
  }
}

TEST(Synthesis, ExcitationsUnderRandomMappings) {
  std::mt19937 rng(4);
  const auto spec = enumerate_excitations(Variant::uCCSD, {2, 3}, std::nullopt);
  for (int trial = 0; trial < 3; ++trial) {
    const auto m = random_mapping(6, rng);
    for (const auto& e : spec.excitations) {
      const Circuit c = e.kind == ExcitationKind::Double
                            ? synth_double_excitation(e, m, spec.parameter_count())
                            : synth_single_excitation(e, m, spec.parameter_count());
      std::vector<double> theta(spec.parameter_count(), 0.0);
      theta[e.param] = 0.4;
      const oracle::Mat want =
          oracle::expm_antihermitian(0.4 * oracle::excitation_generator(e, m));
      EXPECT_LT(oracle::phase_distance(oracle::circuit_unitary(c, theta), want), 1e-10)
          << e.label();
    }
  }
}

TEST(Synthesis, DoubleTermOrder) {
  const auto rots = excitation_rotations(Excitation::double_ab(0, 1, 2, 3),
                                         QubitMapping::identity(8));
  ASSERT_EQ(rots.size(), 8u);
  const std::vector<std::string> want = {"XXXY", "XXYX", "YXYY", "YXXX",
                                         "YYXY", "YYYX", "XYYY", "XYXX"};
  // excitation qubits 0, 2 (alpha) and 5, 7 (beta)
  for (std::size_t k = 0; k < 8; ++k) {
    const auto& w = rots[k].word;
    std::string pat = {to_char(w.axis(0)), to_char(w.axis(2)), to_char(w.axis(5)),
                       to_char(w.axis(7))};
    EXPECT_EQ(pat, want[k]);
  }
}

TEST(Synthesis, PairedBlockIsTwoCnotsUnderIdentity) {
  const auto m = QubitMapping::identity(4);
  const Circuit c = synth_paired_excitation(Excitation::pair(0, 1), m, 1);
  EXPECT_EQ(count_2qge(c), 2u);
  const auto ps = pair_excitation_sign(Excitation::pair(0, 1), m);
  EXPECT_TRUE(ps.parity_qubits.empty());
}

TEST(Synthesis, PairSignDetectsParityStrings) {
  // 1a sits between 0a and 2a; 1b lies outside the beta pair's span.
  const QubitMapping m({0, 1, 2, 3, 5, 4});
  const auto ps = pair_excitation_sign(Excitation::pair(0, 2), m);
  EXPECT_EQ(ps.parity_qubits, std::vector<std::size_t>{1});
  const QubitMapping even({0, 2, 4, 1, 3, 5});
  EXPECT_TRUE(pair_excitation_sign(Excitation::pair(0, 2), even).parity_qubits.empty());
}

TEST(AnsatzCircuit, MatchesDenseProductOfExponentials) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ud(-0.6, 0.6);
  for (auto v : {Variant::upCCD, Variant::uCCDab, Variant::uCCD, Variant::uCCSD}) {
    for (const ActiveSpace s : {ActiveSpace{2, 3}, ActiveSpace{4, 4}}) {
      if (v == Variant::uCCSD && s.n_orbitals == 4) continue;
      const auto spec = enumerate_excitations(v, s, std::nullopt);
      for (int trial = 0; trial < 2; ++trial) {
        const auto m = trial == 0 ? QubitMapping::identity(s.n_qubits())
                                  : random_mapping(s.n_qubits(), rng);
        std::vector<double> theta(spec.parameter_count());
        for (double& t : theta) t = ud(rng);
        const Circuit c = build_ansatz_circuit(spec, m);
        const oracle::Vec got =
            oracle::circuit_state(c, theta, oracle::basis_state(s.n_qubits(), 0));
        const oracle::Vec want = reference_ansatz_state(spec, m, theta);
        EXPECT_GT(oracle::fidelity(got, want), 1.0 - 1e-10)
            << to_string(v) << " CAS(" << s.n_electrons << "," << s.n_orbitals << ")";
      }
    }
  }
}

TEST(AnsatzCircuit, MinimalSpaceUsesFourCnots) {
  const auto spec = enumerate_excitations(Variant::uCCDab, {2, 2}, std::nullopt);
  EXPECT_EQ(count_2qge(build_ansatz_circuit(spec, QubitMapping::identity(4))), 4u);
}
