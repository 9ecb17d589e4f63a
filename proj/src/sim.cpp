#include "symvqe/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "symvqe/random.hpp"

namespace symvqe {

Statevector::Statevector(std::size_t n_qubits, std::uint64_t basis_state) : n_(n_qubits) {
  if (n_qubits > kMaxSimQubits) {
    throw std::invalid_argument("statevector limited to " + std::to_string(kMaxSimQubits) +
                                " qubits");
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  if (basis_state >= amps_.size()) throw std::out_of_range("basis state outside register");
  amps_[basis_state] = 1.0;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t k = 0; k < amps_.size(); ++k) p[k] = std::norm(amps_[k]);
  return p;
}

void Statevector::apply(const Gate& g, std::span<const double> params) {
  if (g.q0 >= n_ || g.q1 >= n_) throw std::out_of_range("gate outside register");
  const std::size_t dim = amps_.size();
  const std::size_t m = std::size_t{1} << g.q0;
  const cplx i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::X:
      for (std::size_t b = 0; b < dim; ++b) {
        if (!(b & m)) std::swap(amps_[b], amps_[b | m]);
      }
      break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & m) continue;
        const cplx a0 = amps_[b];
        const cplx a1 = amps_[b | m];
        amps_[b] = r * (a0 + a1);
        amps_[b | m] = r * (a0 - a1);
      }
      break;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      const cplx ph = g.kind == GateKind::S ? i : -i;
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & m) amps_[b] *= ph;
      }
      break;
    }
    case GateKind::Rz: {
      const double th = g.angle.value(params);
      const cplx p0 = std::exp(-0.5 * i * th);
      const cplx p1 = std::exp(0.5 * i * th);
      for (std::size_t b = 0; b < dim; ++b) amps_[b] *= (b & m) ? p1 : p0;
      break;
    }
    case GateKind::CNOT: {
      const std::size_t t = std::size_t{1} << g.q1;
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & m) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
      }
      break;
    }
  }
}

void apply_circuit(Statevector& state, const Circuit& c, std::span<const double> params) {
  if (c.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("circuit and state register sizes differ");
  }
  if (params.size() < c.parameter_count()) {
    throw std::invalid_argument("circuit has " + std::to_string(c.parameter_count()) +
                                " parameters, " + std::to_string(params.size()) +
                                " values bound");
  }
  for (const Gate& g : c.gates()) state.apply(g, params);
}

double expectation(const Statevector& state, const QubitHamiltonian& h) {
  if (h.n_qubits != state.n_qubits()) {
    throw std::invalid_argument("Hamiltonian and state register sizes differ");
  }
  // Terms sharing an X mask share the amplitude pairing.
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, cplx>>> by_x;
  for (const auto& t : h.terms) {
    const std::uint64_t x = t.word.x_mask();
    const std::uint64_t z = t.word.z_mask();
    by_x[x].emplace_back(z, i_power(std::popcount(x & z)) * t.coeff);
  }
  const auto& a = state.amplitudes();
  const double nrm = state.norm();
  cplx total = h.offset * nrm * nrm;
  for (const auto& [x, list] : by_x) {
    cplx acc = 0.0;
    for (std::size_t b = 0; b < a.size(); ++b) {
      if (a[b] == 0.0) continue;
      cplx f = 0.0;
      for (const auto& [z, c] : list) f += (std::popcount(z & b) % 2) ? -c : c;
      acc += std::conj(a[b ^ x]) * f * a[b];
    }
    total += acc;
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw std::domain_error("expectation has imaginary residue " +
                            std::to_string(total.imag()));
  }
  return total.real();
}

// ---------------------------------------------------------------------------
// Histograms and sampling
// ---------------------------------------------------------------------------

std::uint64_t Histogram::shots() const {
  std::uint64_t s = 0;
  for (const auto& [b, c] : counts) s += c;
  return s;
}

bool Histogram::is_z_basis() const {
  return std::all_of(basis.begin(), basis.end(), [](char c) { return c == 'I' || c == 'Z'; });
}

std::string bits_to_string(std::uint64_t bits, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) {
    if ((bits >> q) & 1U) s[q] = '1';
  }
  return s;
}

std::uint64_t bits_from_string(std::string_view s) {
  if (s.size() > 64) throw std::invalid_argument("bitstring longer than 64");
  std::uint64_t b = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') {
      b |= std::uint64_t{1} << q;
    } else if (s[q] != '0') {
      throw std::invalid_argument("bitstring must be 0/1: '" + std::string(s) + "'");
    }
  }
  return b;
}

Statevector rotate_to_basis(const Statevector& state, const MeasurementGroup& group) {
  if (group.basis.size() != state.n_qubits()) {
    throw std::invalid_argument("group basis does not match the register");
  }
  Statevector out = state;
  for (std::size_t q = 0; q < group.basis.size(); ++q) {
    if (group.basis[q] == PauliAxis::X) {
      out.apply(Gate::h(q), {});
    } else if (group.basis[q] == PauliAxis::Y) {
      out.apply(Gate::sdg(q), {});
      out.apply(Gate::h(q), {});
    }
  }
  return out;
}

Histogram sample_group(const Statevector& state, const MeasurementGroup& group,
                       std::size_t group_id, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const auto probs = rotate_to_basis(state, group).probabilities();
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    run += probs[k];
    cdf[k] = run;
  }
  Histogram h;
  h.group = group_id;
  h.n_qubits = state.n_qubits();
  h.seed = seed;
  h.basis = group.basis_string();
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * run;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++h.counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return h;
}

ShotAllocation parse_shot_allocation(std::string_view s) {
  if (s == "per-group") return ShotAllocation::PerGroup;
  if (s == "total") return ShotAllocation::TotalSplit;
  throw std::invalid_argument("unknown shot allocation '" + std::string(s) +
                              "' (expected per-group or total)");
}

std::string_view to_string(ShotAllocation a) {
  return a == ShotAllocation::PerGroup ? "per-group" : "total";
}

std::vector<std::uint64_t> allocate_shots(std::uint64_t shots, std::size_t n_groups,
                                          ShotAllocation mode) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  std::vector<std::uint64_t> out(n_groups, shots);
  if (mode == ShotAllocation::TotalSplit && n_groups > 0) {
    if (shots < n_groups) {
      throw std::invalid_argument("total shots smaller than the number of groups");
    }
    const std::uint64_t base = shots / n_groups;
    const std::uint64_t extra = shots % n_groups;
    for (std::size_t g = 0; g < n_groups; ++g) out[g] = base + (g < extra ? 1 : 0);
  }
  return out;
}

std::uint64_t group_seed(std::uint64_t sampling_seed, std::size_t group_id) {
  return derive_seed(sampling_seed, group_id);
}

std::vector<Histogram> sample_all(const Statevector& state,
                                  const std::vector<MeasurementGroup>& groups,
                                  std::uint64_t shots, ShotAllocation mode,
                                  std::uint64_t seed) {
  const auto alloc = allocate_shots(shots, groups.size(), mode);
  std::vector<Histogram> out;
  out.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out.push_back(sample_group(state, groups[g], g, alloc[g], group_seed(seed, g)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

double group_observable(const QubitHamiltonian& h, const MeasurementGroup& group,
                        std::uint64_t outcome) {
  double f = 0.0;
  for (std::size_t idx : group.members) {
    const auto& t = h.terms.at(idx);
    f += (std::popcount(t.word.support_mask() & outcome) % 2) ? -t.coeff : t.coeff;
  }
  return f;
}

EnergyEstimate energy_from_histograms(const QubitHamiltonian& h,
                                      const std::vector<MeasurementGroup>& groups,
                                      const std::vector<Histogram>& histograms) {
  std::unordered_map<std::size_t, const Histogram*> by_group;
  for (const auto& hist : histograms) {
    if (!by_group.emplace(hist.group, &hist).second) {
      throw std::invalid_argument("duplicate histogram for group " + std::to_string(hist.group));
    }
  }
  EnergyEstimate est{h.offset, 0.0};
  double var = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto it = by_group.find(g);
    if (it == by_group.end()) {
      throw std::invalid_argument("missing histogram for group " + std::to_string(g));
    }
    const Histogram& hist = *it->second;
    if (hist.basis != groups[g].basis_string()) {
      throw std::invalid_argument("histogram basis " + hist.basis + " does not match group " +
                                  std::to_string(g) + " basis " + groups[g].basis_string());
    }
    const std::uint64_t shots = hist.shots();
    if (shots == 0) {
      throw std::invalid_argument("histogram for group " + std::to_string(g) + " is empty");
    }
    double mean = 0.0;
    for (const auto& [b, c] : hist.counts) {
      mean += static_cast<double>(c) * group_observable(h, groups[g], b);
    }
    mean /= static_cast<double>(shots);
    double ss = 0.0;
    for (const auto& [b, c] : hist.counts) {
      const double d = group_observable(h, groups[g], b) - mean;
      ss += static_cast<double>(c) * d * d;
    }
    const double sample_var = shots > 1 ? ss / static_cast<double>(shots - 1) : 0.0;
    est.energy += mean;
    var += sample_var / static_cast<double>(shots);
  }
  est.se = std::sqrt(var);
  return est;
}

double energy_from_distributions(const QubitHamiltonian& h,
                                 const std::vector<MeasurementGroup>& groups,
                                 const Statevector& state) {
  double e = h.offset;
  for (const auto& g : groups) {
    const auto probs = rotate_to_basis(state, g).probabilities();
    for (std::size_t b = 0; b < probs.size(); ++b) {
      if (probs[b] != 0.0) e += probs[b] * group_observable(h, g, b);
    }
  }
  return e;
}

std::vector<SweepRow> shot_sweep(const QubitHamiltonian& h,
                                 const std::vector<MeasurementGroup>& groups,
                                 const Statevector& state,
                                 const std::vector<std::uint64_t>& shots, std::size_t repeats,
                                 std::uint64_t seed, ShotAllocation mode) {
  if (shots.empty()) throw std::invalid_argument("shot sweep needs at least one shot count");
  if (repeats == 0) throw std::invalid_argument("shot sweep needs at least one repeat");
  std::vector<SweepRow> rows;
  for (std::uint64_t n : shots) {
    SweepRow row;
    row.shots = n;
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto est =
          energy_from_histograms(h, groups, sample_all(state, groups, n, mode, group_seed(seed, r)));
      row.se.push_back(est.se);
      row.mean_energy += est.energy;
      row.mean_se += est.se;
    }
    row.mean_energy /= static_cast<double>(repeats);
    row.mean_se /= static_cast<double>(repeats);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_histograms(std::ostream& out, const std::vector<Histogram>& hs) {
  for (const auto& h : hs) {
    out << "HISTOGRAM group=" << h.group << " shots=" << h.shots() << " seed=" << h.seed
        << " qubits=" << h.n_qubits << " basis=" << h.basis << '\n';
    for (const auto& [b, c] : h.counts) out << bits_to_string(b, h.n_qubits) << ' ' << c << '\n';
    out << "END\n";
  }
}

namespace {

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') {
    throw std::invalid_argument("histogram file: bad " + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<Histogram> read_histograms(std::istream& in) {
  std::vector<Histogram> out;
  std::string line;
  std::size_t line_no = 0;
  Histogram* cur = nullptr;
  std::uint64_t declared = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("histogram file line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "HISTOGRAM") {
      if (cur) fail("HISTOGRAM inside an open block");
      Histogram h;
      bool have[5] = {false, false, false, false, false};
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const auto eq = tok[k].find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + tok[k] + "'");
        const std::string key = tok[k].substr(0, eq);
        const std::string val = tok[k].substr(eq + 1);
        if (key == "group") {
          h.group = parse_u64(val, key);
          have[0] = true;
        } else if (key == "shots") {
          declared = parse_u64(val, key);
          have[1] = true;
        } else if (key == "seed") {
          h.seed = parse_u64(val, key);
          have[2] = true;
        } else if (key == "qubits") {
          h.n_qubits = parse_u64(val, key);
          have[3] = true;
        } else if (key == "basis") {
          h.basis = val;
          have[4] = true;
        } else {
          fail("unknown key '" + key + "'");
        }
      }
      if (!std::all_of(std::begin(have), std::end(have), [](bool b) { return b; })) {
        fail("HISTOGRAM header needs group, shots, seed, qubits and basis");
      }
      if (h.basis.size() != h.n_qubits ||
          h.basis.find_first_not_of("IXYZ") != std::string::npos) {
        fail("basis string must have one of I/X/Y/Z per qubit");
      }
      out.push_back(std::move(h));
      cur = &out.back();
      continue;
    }
    if (!cur) fail("data outside a HISTOGRAM block");
    if (tok[0] == "END") {
      if (cur->shots() != declared) {
        fail("counts sum to " + std::to_string(cur->shots()) + " but header declares " +
             std::to_string(declared));
      }
      cur = nullptr;
      continue;
    }
    if (tok.size() != 2) fail("expected '<bitstring> <count>'");
    if (tok[0].size() != cur->n_qubits) fail("bitstring length does not match qubits");
    std::uint64_t bits = 0;
    try {
      bits = bits_from_string(tok[0]);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (cur->counts.count(bits)) fail("duplicate bitstring " + tok[0]);
    cur->counts[bits] = parse_u64(tok[1], "count");
  }
  if (cur) throw std::invalid_argument("histogram file: missing END");
  return out;
}

}  // namespace symvqe
