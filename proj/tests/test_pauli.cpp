#include <gtest/gtest.h>

#include <random>

#include "oracle/dense.hpp"
#include "symvqe/pauli.hpp"

using namespace symvqe;

namespace {

std::string random_word(std::mt19937& rng, std::size_t n) {
  static const char axes[] = "IXYZ";
  std::string s;
  for (std::size_t q = 0; q < n; ++q) s.push_back(axes[rng() % 4]);
  return s;
}

}  // namespace

TEST(PauliWord, ParseAndPrintRoundTrip) {
  const auto w = PauliWord::from_string("XIYZ");
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(w.str(), "XIYZ");
  EXPECT_EQ(w.axis(0), PauliAxis::X);
  EXPECT_EQ(w.axis(2), PauliAxis::Y);
  EXPECT_EQ(w.support(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(w.weight(), 3u);
}

TEST(PauliWord, RejectsBadText) {
  EXPECT_THROW(PauliWord::from_string("XQ"), std::invalid_argument);
  EXPECT_THROW(PauliWord::from_string(std::string(65, 'X')), std::invalid_argument);
}

TEST(PauliWord, ProductMatchesDenseMatrices) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto a = random_word(rng, n);
    const auto b = random_word(rng, n);
    const auto p = multiply(PauliWord::from_string(a), PauliWord::from_string(b));
    const oracle::Mat lhs = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
    const oracle::Mat rhs = i_power(p.phase) * oracle::pauli_matrix(p.word.str());
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << a << " * " << b;
  }
}

TEST(PauliWord, CommutationMatchesDense) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto a = random_word(rng, n);
    const auto b = random_word(rng, n);
    const oracle::Mat ma = oracle::pauli_matrix(a);
    const oracle::Mat mb = oracle::pauli_matrix(b);
    const bool dense = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
    const auto wa = PauliWord::from_string(a);
    const auto wb = PauliWord::from_string(b);
    EXPECT_EQ(wa.commutes_with(wb), dense) << a << " " << b;
    if (wa.qubitwise_commutes_with(wb)) EXPECT_TRUE(dense);
  }
}

TEST(PauliWord, QubitwiseCommutation) {
  const auto a = PauliWord::from_string("XXII");
  EXPECT_TRUE(a.qubitwise_commutes_with(PauliWord::from_string("XIZI")));
  EXPECT_FALSE(a.qubitwise_commutes_with(PauliWord::from_string("YYII")));
  EXPECT_TRUE(a.commutes_with(PauliWord::from_string("YYII")));
}

TEST(PauliWord, OrderingIsTotalAndDeterministic) {
  const auto a = PauliWord::from_string("XI");
  const auto b = PauliWord::from_string("YI");
  const auto c = PauliWord::from_string("IZ");
  EXPECT_LT(c, a);
  EXPECT_LT(a, b);
}

TEST(PauliSum, CanonicalizeDropsTinyTerms) {
  PauliSum s(2);
  s.add(PauliWord::from_string("XX"), 1e-14);
  s.add(PauliWord::from_string("ZZ"), 0.5);
  s.add(PauliWord::from_string("ZZ"), -0.25);
  s.canonicalize();
  EXPECT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.coefficient(PauliWord::from_string("ZZ")).real(), 0.25, 1e-15);
}

TEST(PauliSum, ProductMatchesDense) {
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    PauliSum a(3), b(3);
    for (int k = 0; k < 4; ++k) {
      a.add(PauliWord::from_string(random_word(rng, 3)), {nd(rng), nd(rng)});
      b.add(PauliWord::from_string(random_word(rng, 3)), {nd(rng), nd(rng)});
    }
    a.canonicalize();
    b.canonicalize();
    const oracle::Mat want = oracle::pauli_sum_matrix(a) * oracle::pauli_sum_matrix(b);
    EXPECT_LT((oracle::pauli_sum_matrix(a * b) - want).cwiseAbs().maxCoeff(), 1e-12);
    const oracle::Mat adj = oracle::pauli_sum_matrix(a).adjoint();
    EXPECT_LT((oracle::pauli_sum_matrix(a.adjoint()) - adj).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PauliSum, HermiticityChecks) {
  PauliSum h(2);
  h.add(PauliWord::from_string("XY"), 0.3);
  h.add(PauliWord::from_string("ZI"), -1.0);
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_FALSE(h.is_antihermitian());
  const PauliSum ah = h * cplx{0, 1};
  EXPECT_TRUE(ah.is_antihermitian());
  EXPECT_FALSE(ah.is_hermitian());
}

TEST(PauliSum, TextFormat) {
  PauliSum s(2);
  s.add(PauliWord::from_string("XZ"), 0.25);
  s.add(PauliWord::from_string("YI"), cplx{0, -0.5});
  s.canonicalize();
  EXPECT_EQ(s.str(), "+2.500000000000e-01 XZ\n-5.000000000000e-01i YI\n");
}

TEST(JordanWigner, LadderMatchesOccupationBasis) {
  const std::size_t n = 5;
  for (std::size_t p = 0; p < n; ++p) {
    for (bool dag : {false, true}) {
      const oracle::Mat jw = oracle::pauli_sum_matrix(jw_ladder(p, dag, n));
      EXPECT_LT((jw - oracle::ladder(p, dag, n)).cwiseAbs().maxCoeff(), 1e-12)
          << "p=" << p << " dagger=" << dag;
    }
  }
}

TEST(JordanWigner, CanonicalAnticommutation) {
  const std::size_t n = 4;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const PauliSum ap = jw_ladder(p, false, n);
      const PauliSum aq_dag = jw_ladder(q, true, n);
      PauliSum anti = ap * aq_dag + aq_dag * ap;
      anti.canonicalize();
      if (p == q) {
        EXPECT_EQ(anti.size(), 1u);
        EXPECT_NEAR(anti.coefficient(PauliWord(n)).real(), 1.0, 1e-12);
      } else {
        EXPECT_TRUE(anti.empty());
      }
    }
  }
}

TEST(JordanWigner, TermTransformMatchesDense) {
  const std::size_t n = 4;
  FermionTerm t;
  t.ops = {{3, true}, {1, false}, {2, true}, {0, false}};
  t.coeff = cplx{0.7, -0.2};
  const oracle::Mat want = oracle::fermion_matrix(t, n);
  EXPECT_LT((oracle::pauli_sum_matrix(jw_transform(t, n)) - want).cwiseAbs().maxCoeff(),
            1e-12);
  FermionTerm num;
  num.ops = {{2, true}, {2, false}};
  const PauliSum nj = jw_transform(num, n);
  EXPECT_NEAR(nj.coefficient(PauliWord(n)).real(), 0.5, 1e-15);
  EXPECT_NEAR(nj.coefficient(PauliWord::from_string("IIZI")).real(), -0.5, 1e-15);
}

TEST(JordanWigner, AdjointOfTerm) {
  FermionTerm t;
  t.ops = {{1, true}, {0, false}};
  t.coeff = cplx{0, 2};
  const FermionTerm a = t.adjoint();
  ASSERT_EQ(a.ops.size(), 2u);
  EXPECT_EQ(a.ops[0].mode, 0u);
  EXPECT_TRUE(a.ops[0].dagger);
  EXPECT_EQ(a.ops[1].mode, 1u);
  EXPECT_FALSE(a.ops[1].dagger);
  EXPECT_EQ(a.coeff, cplx(0, -2));
}
