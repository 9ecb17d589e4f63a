#include "symvqe/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symvqe {

namespace {

void check_dimensions(const QubitHamiltonian& h, const AnsatzSpec& spec,
                      const QubitMapping& mapping) {
  if (h.n_qubits != mapping.size() || mapping.size() != spec.space.n_qubits()) {
    throw std::invalid_argument("dimension mismatch: Hamiltonian " + std::to_string(h.n_qubits) +
                                " qubits, mapping " + std::to_string(mapping.size()) +
                                ", ansatz " + std::to_string(spec.space.n_qubits()));
  }
  for (const auto& t : h.terms) {
    if (!std::isfinite(t.coeff)) throw std::domain_error("non-finite Hamiltonian coefficient");
  }
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

AnsatzEnergy::AnsatzEnergy(const QubitHamiltonian& h, const AnsatzSpec& spec,
                           const QubitMapping& mapping)
    : h_(h) {
  check_dimensions(h, spec, mapping);
  circuit_ = build_ansatz_circuit(spec, mapping);
}

Statevector AnsatzEnergy::state(std::span<const double> params) const {
  if (params.size() != circuit_.parameter_count()) {
    throw std::invalid_argument("expected " + std::to_string(circuit_.parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  Statevector psi(circuit_.n_qubits());
  apply_circuit(psi, circuit_, params);
  return psi;
}

double AnsatzEnergy::operator()(std::span<const double> params) {
  ++evaluations_;
  return expectation(state(params), h_);
}

VqeResult optimize(const QubitHamiltonian& h, const AnsatzSpec& spec,
                   const QubitMapping& mapping, std::span<const double> init,
                   const VqeConfig& cfg) {
  if (init.size() != spec.parameter_count()) {
    throw std::invalid_argument("initial point has " + std::to_string(init.size()) +
                                " entries, ansatz has " +
                                std::to_string(spec.parameter_count()) + " parameters");
  }
  AnsatzEnergy energy(h, spec, mapping);
  const std::size_t n = init.size();
  std::vector<double> x(init.begin(), init.end());

  auto gradient = [&](const std::vector<double>& at) {
    std::vector<double> g(n);
    std::vector<double> probe = at;
    for (std::size_t k = 0; k < n; ++k) {
      probe[k] = at[k] + cfg.fd_step;
      const double fp = energy(probe);
      probe[k] = at[k] - cfg.fd_step;
      const double fm = energy(probe);
      probe[k] = at[k];
      g[k] = (fp - fm) / (2.0 * cfg.fd_step);
    }
    return g;
  };

  VqeResult res;
  double f = energy(x);
  std::vector<double> g = gradient(x);
  res.trace.push_back({x, f});

  // inverse Hessian approximation, row major
  std::vector<double> hinv(n * n, 0.0);
  auto reset = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) hinv[k * n + k] = 1.0;
  };
  reset();

  if (n == 0 || inf_norm(g) < cfg.gradient_tol) {
    res.converged = true;
  }
  for (std::size_t it = 0; !res.converged && it < cfg.max_iterations; ++it) {
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i] -= hinv[i * n + j] * g[j];
    double slope = dot(g, p);
    if (slope >= 0.0) {
      reset();
      for (std::size_t i = 0; i < n; ++i) p[i] = -g[i];
      slope = dot(g, p);
    }

    double alpha = 1.0;
    std::vector<double> xn(n);
    double fn = f;
    bool accepted = false;
    while (alpha > 1e-12) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + alpha * p[i];
      fn = energy(xn);
      if (fn <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    res.iterations = it + 1;
    if (!accepted) break;  // no descent left at this resolution

    const std::vector<double> gn = gradient(xn);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14) {
      // H+ = (I - r s y^T) H (I - r y s^T) + r s s^T
      const double r = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * y[j];
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          hinv[i * n + j] += (1.0 + r * yhy) * r * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
    }
    const double df = f - fn;
    x = xn;
    f = fn;
    g = gn;
    res.trace.push_back({x, f});
    if (std::abs(df) < cfg.energy_tol && inf_norm(g) < cfg.gradient_tol) res.converged = true;
  }
  res.params = x;
  res.energy = f;
  res.gradient_norm = inf_norm(g);
  if (!res.converged && res.gradient_norm < cfg.gradient_tol) res.converged = true;
  res.evaluations = energy.evaluations();
  return res;
}

SampledEvaluation evaluate_sampled(const QubitHamiltonian& h, const AnsatzSpec& spec,
                                   const QubitMapping& mapping, std::span<const double> params,
                                   std::uint64_t shots, std::uint64_t seed, ShotAllocation mode) {
  AnsatzEnergy energy(h, spec, mapping);
  const Statevector psi = energy.state(params);
  SampledEvaluation out;
  out.groups = qwc_group(h);
  out.histograms = sample_all(psi, out.groups, shots, mode, seed);
  out.estimate = energy_from_histograms(h, out.groups, out.histograms);
  return out;
}

}  // namespace symvqe
