#include "symvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace symvqe {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxQubits) {
    throw std::invalid_argument("Pauli words support at most 64 qubits");
  }
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("Pauli operands act on different qubit counts");
  }
}

int axis_code(bool x, bool z) {
  if (x && z) return 2;
  if (x) return 1;
  if (z) return 3;
  return 0;
}

}  // namespace

char to_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

PauliWord::PauliWord(std::size_t n_qubits) : n_(n_qubits) { check_size(n_); }

PauliWord::PauliWord(std::size_t n_qubits, std::uint64_t x_mask,
                     std::uint64_t z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
  check_size(n_);
  const std::uint64_t valid =
      n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  if (((x_ | z_) & ~valid) != 0) {
    throw std::invalid_argument("Pauli mask has bits beyond the qubit count");
  }
}

PauliWord PauliWord::from_string(std::string_view axes) {
  PauliWord w(axes.size());
  for (std::size_t q = 0; q < axes.size(); ++q) {
    switch (axes[q]) {
      case 'I': case '_': break;
      case 'X': w.set(q, PauliAxis::X); break;
      case 'Y': w.set(q, PauliAxis::Y); break;
      case 'Z': w.set(q, PauliAxis::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli character '" +
                                    std::string(1, axes[q]) + "'");
    }
  }
  return w;
}

std::size_t PauliWord::weight() const { return std::popcount(x_ | z_); }

PauliAxis PauliWord::axis(std::size_t qubit) const {
  if (qubit >= n_) throw std::out_of_range("Pauli qubit index out of range");
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  return static_cast<PauliAxis>(axis_code(x, z));
}

void PauliWord::set(std::size_t qubit, PauliAxis axis) {
  if (qubit >= n_) throw std::out_of_range("Pauli qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (axis == PauliAxis::X || axis == PauliAxis::Y) x_ |= bit;
  if (axis == PauliAxis::Z || axis == PauliAxis::Y) z_ |= bit;
}

std::vector<std::size_t> PauliWord::support() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string PauliWord::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = to_char(axis(q));
  return s;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
  check_same_size(n_, other.n_);
  const int anti = std::popcount((x_ & other.z_) ^ (z_ & other.x_));
  return anti % 2 == 0;
}

bool PauliWord::qubitwise_commutes_with(const PauliWord& other) const {
  check_same_size(n_, other.n_);
  const std::uint64_t both = support_mask() & other.support_mask();
  return ((x_ ^ other.x_) & both) == 0 && ((z_ ^ other.z_) & both) == 0;
}

std::strong_ordering operator<=>(const PauliWord& a, const PauliWord& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return std::strong_ordering::equal;
  const int q = std::countr_zero(diff);
  const int ca = axis_code((a.x_ >> q) & 1U, (a.z_ >> q) & 1U);
  const int cb = axis_code((b.x_ >> q) & 1U, (b.z_ >> q) & 1U);
  return ca <=> cb;
}

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliProduct multiply(const PauliWord& a, const PauliWord& b) {
  check_same_size(a.size(), b.size());
  // P(x, z) = i^{x.z} X^x Z^z; reorder Z^{z1} X^{x2} at the cost of (-1)^{z1.x2}.
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int k = std::popcount(a.x_mask() & a.z_mask()) +
                std::popcount(b.x_mask() & b.z_mask()) +
                2 * std::popcount(a.z_mask() & b.x_mask()) -
                std::popcount(x & z);
  return {((k % 4) + 4) % 4, PauliWord(a.size(), x, z)};
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(const PauliWord& word, cplx coeff) : n_(word.size()) {
  add(word, coeff);
  canonicalize();
}

PauliSum PauliSum::identity(std::size_t n_qubits, cplx coeff) {
  return PauliSum(PauliWord(n_qubits), coeff);
}

void PauliSum::add(const PauliWord& word, cplx coeff) {
  check_same_size(n_, word.size());
  terms_[word] += coeff;
}

void PauliSum::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kPruneTolerance) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

PauliSum PauliSum::canonicalized() const {
  PauliSum out = *this;
  out.canonicalize();
  return out;
}

cplx PauliSum::coefficient(const PauliWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

std::vector<PauliTerm> PauliSum::terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.push_back({w, c});
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [w, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

bool PauliSum::is_antihermitian(double tol) const {
  for (const auto& [w, c] : terms_) {
    if (std::abs(c.real()) > tol) return false;
  }
  return true;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (terms_.empty() && n_ == 0) n_ = other.n_;
  check_same_size(n_, other.n_);
  for (const auto& [w, c] : other.terms_) terms_[w] += c;
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (terms_.empty() && n_ == 0) n_ = other.n_;
  check_same_size(n_, other.n_);
  for (const auto& [w, c] : other.terms_) terms_[w] -= c;
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (auto& [w, c] : terms_) c *= scalar;
  canonicalize();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_size(a.n_qubits(), b.n_qubits());
  PauliSum out(a.n_qubits());
  for (const auto& [wa, ca] : a.raw()) {
    for (const auto& [wb, cb] : b.raw()) {
      const PauliProduct p = multiply(wa, wb);
      out.add(p.word, ca * cb * i_power(p.phase));
    }
  }
  out.canonicalize();
  return out;
}

std::string format_coefficient(cplx c) {
  char buf[96];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%+.12e", c.real());
  } else if (c.real() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%+.12ei", c.imag());
  } else {
    std::snprintf(buf, sizeof(buf), "(%+.12e%+.12ei)", c.real(), c.imag());
  }
  return buf;
}

std::string PauliSum::str() const {
  std::ostringstream os;
  for (const auto& [w, c] : terms_) {
    os << format_coefficient(c) << ' ' << w.str() << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

FermionTerm FermionTerm::adjoint() const {
  FermionTerm out;
  out.coeff = std::conj(coeff);
  out.ops.assign(ops.rbegin(), ops.rend());
  for (auto& op : out.ops) op.dagger = !op.dagger;
  return out;
}

PauliSum jw_ladder(std::size_t p, bool dagger, std::size_t n_qubits) {
  if (p >= n_qubits) {
    throw std::out_of_range("ladder operator mode " + std::to_string(p) +
                            " outside " + std::to_string(n_qubits) + " qubits");
  }
  PauliWord xw(n_qubits);
  PauliWord yw(n_qubits);
  for (std::size_t q = 0; q < p; ++q) {
    xw.set(q, PauliAxis::Z);
    yw.set(q, PauliAxis::Z);
  }
  xw.set(p, PauliAxis::X);
  yw.set(p, PauliAxis::Y);
  PauliSum out(n_qubits);
  out.add(xw, 0.5);
  out.add(yw, dagger ? cplx{0.0, -0.5} : cplx{0.0, 0.5});
  return out;
}

PauliSum jw_transform(const FermionTerm& term, std::size_t n_qubits) {
  PauliSum acc = PauliSum::identity(n_qubits, term.coeff);
  for (const LadderOp& op : term.ops) {
    acc = acc * jw_ladder(op.mode, op.dagger, n_qubits);
    if (acc.empty()) break;
  }
  return acc;
}

}  // namespace symvqe
