#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symvqe {

using cplx = std::complex<double>;

/// Coefficients with magnitude below this are dropped on canonicalization.
inline constexpr double kPruneTolerance = 1e-12;

/// Pauli words are packed into 64-bit masks.
inline constexpr std::size_t kMaxQubits = 64;

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliAxis axis);

/**
 * @brief Tensor product of single-qubit Paulis in symplectic form.
 *
 * Qubit q carries X when bit q of the x mask is set and Z when bit q of the z
 * mask is set; both bits set denote Y (the Hermitian Pauli, not XZ). Qubit 0
 * is the leftmost character in the textual form.
 */
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::size_t n_qubits);
  PauliWord(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses "IXYZ"-style text; throws std::invalid_argument on bad input.
  static PauliWord from_string(std::string_view axes);

  std::size_t size() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  std::uint64_t support_mask() const { return x_ | z_; }
  std::size_t weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }

  PauliAxis axis(std::size_t qubit) const;
  void set(std::size_t qubit, PauliAxis axis);

  /// Non-identity positions in increasing order.
  std::vector<std::size_t> support() const;

  std::string str() const;

  /// Symplectic commutation test.
  bool commutes_with(const PauliWord& other) const;
  /// True when the words agree on every qubit where both act nontrivially.
  bool qubitwise_commutes_with(const PauliWord& other) const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend std::strong_ordering operator<=>(const PauliWord& a,
                                          const PauliWord& b);

 private:
  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// a * b == i^phase * word, with phase in [0, 4).
struct PauliProduct {
  int phase = 0;
  PauliWord word;
};

PauliProduct multiply(const PauliWord& a, const PauliWord& b);

cplx i_power(int k);

struct PauliTerm {
  PauliWord word;
  cplx coeff;
};

/**
 * @brief Linear combination of Pauli words on a fixed register.
 *
 * Terms are kept canonical: one entry per word, entries with magnitude below
 * kPruneTolerance removed. Iteration order is the word ordering, so output is
 * deterministic.
 */
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}
  PauliSum(const PauliWord& word, cplx coeff);

  static PauliSum identity(std::size_t n_qubits, cplx coeff = 1.0);

  std::size_t n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Accumulates without pruning; call canonicalize() afterwards.
  void add(const PauliWord& word, cplx coeff);
  void canonicalize();
  PauliSum canonicalized() const;

  cplx coefficient(const PauliWord& word) const;
  std::vector<PauliTerm> terms() const;
  const std::map<PauliWord, cplx>& raw() const { return terms_; }

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_antihermitian(double tol = 1e-12) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scalar);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// One line per term: "+2.500000000000e-01 XXIY".
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::map<PauliWord, cplx> terms_;
};

std::string format_coefficient(cplx c);

// ---------------------------------------------------------------------------
// Jordan-Wigner encoding
// ---------------------------------------------------------------------------

struct LadderOp {
  std::size_t mode = 0;
  bool dagger = false;
};

/// Product of ladder operators, leftmost acting last, times a coefficient.
struct FermionTerm {
  std::vector<LadderOp> ops;
  cplx coeff = 1.0;

  FermionTerm adjoint() const;
};

/// a_p or a_p^dagger on n modes: Z on modes < p, (X -/+ iY)/2 on p.
PauliSum jw_ladder(std::size_t p, bool dagger, std::size_t n_qubits);

/// JW image of a fermion term; mode k is encoded on qubit k.
PauliSum jw_transform(const FermionTerm& term, std::size_t n_qubits);

}  // namespace symvqe
