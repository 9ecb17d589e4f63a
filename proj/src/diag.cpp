#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symvqe/hamio.hpp"
#include "symvqe/random.hpp"

namespace symvqe {

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;

constexpr std::size_t kDenseLimit = 1024;

SpMat sector_matrix(const QubitHamiltonian& h, const std::vector<std::uint64_t>& basis) {
  const std::size_t dim_full = std::size_t{1} << h.n_qubits;
  std::vector<std::int64_t> index(dim_full, -1);
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<std::int64_t>(k);

  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint64_t b = basis[col];
    trip.emplace_back(col, col, h.offset);
    for (const auto& t : h.terms) {
      const std::uint64_t x = t.word.x_mask();
      const std::uint64_t z = t.word.z_mask();
      const std::int64_t row = index[b ^ x];
      if (row < 0) continue;
      // P|b> = i^{#Y} (-1)^{|z & b|} |b ^ x>
      cplx v = i_power(std::popcount(x & z)) * t.coeff;
      if (std::popcount(z & b) % 2) v = -v;
      trip.emplace_back(row, col, v);
    }
  }
  SpMat m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

double lanczos_lowest(const SpMat& m) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index max_steps = std::min<Eigen::Index>(dim, 400);
  std::vector<Eigen::VectorXcd> v;
  std::vector<double> alpha;
  std::vector<double> beta;

  Rng rng(0x5eed);
  Eigen::VectorXcd q(dim);
  for (Eigen::Index k = 0; k < dim; ++k) q(k) = {rng.normal(), rng.normal()};
  q.normalize();
  v.push_back(q);

  double prev = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    Eigen::VectorXcd w = m * v[j];
    const double a = v[j].dot(w).real();
    alpha.push_back(a);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : v) w -= u * u.dot(w);
    }
    const double b = w.norm();
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    const double low = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly)
                           .eigenvalues()(0);
    if (b < 1e-12 || std::abs(low - prev) < 1e-13 * std::max(1.0, std::abs(low))) return low;
    prev = low;
    beta.push_back(b);
    v.push_back(w / b);
  }
  return prev;
}

}  // namespace

double exact_ground_energy(const QubitHamiltonian& h, const std::optional<SpinSector>& sector) {
  if (h.n_qubits > kMaxExactQubits) {
    throw std::invalid_argument("exact diagonalization limited to " +
                                std::to_string(kMaxExactQubits) + " qubits, got " +
                                std::to_string(h.n_qubits));
  }
  if (sector && (h.alpha_mask | h.beta_mask) == 0) {
    throw std::invalid_argument("sector restriction needs the Hamiltonian's spin masks");
  }
  std::vector<std::uint64_t> basis;
  const std::uint64_t dim_full = std::uint64_t{1} << h.n_qubits;
  for (std::uint64_t b = 0; b < dim_full; ++b) {
    if (sector) {
      if (static_cast<std::size_t>(std::popcount(b & h.alpha_mask)) != sector->n_alpha ||
          static_cast<std::size_t>(std::popcount(b & h.beta_mask)) != sector->n_beta) {
        continue;
      }
    }
    basis.push_back(b);
  }
  if (basis.empty()) throw std::invalid_argument("empty particle/spin sector");

  const SpMat m = sector_matrix(h, basis);
  if (basis.size() <= kDenseLimit) {
    const Eigen::MatrixXcd dense(m);
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(dense, Eigen::EigenvaluesOnly)
        .eigenvalues()(0);
  }
  return lanczos_lowest(m);
}

}  // namespace symvqe
