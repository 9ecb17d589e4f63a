#include "symvqe/hamio.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace symvqe {

MolecularIntegrals::MolecularIntegrals(std::size_t n_orbitals, std::size_t n_electrons)
    : orbsym(n_orbitals),
      n_(n_orbitals),
      n_electrons_(n_electrons),
      h_(n_orbitals * n_orbitals, 0.0),
      g_(n_orbitals * n_orbitals * n_orbitals * n_orbitals, 0.0) {}

void MolecularIntegrals::set_h(std::size_t p, std::size_t q, double v) {
  h_[p * n_ + q] = v;
  h_[q * n_ + p] = v;
}

void MolecularIntegrals::set_g(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                               double v) {
  auto at = [this](std::size_t a, std::size_t b, std::size_t c, std::size_t d) -> double& {
    return g_[((a * n_ + b) * n_ + c) * n_ + d];
  };
  at(p, q, r, s) = v;
  at(q, p, r, s) = v;
  at(p, q, s, r) = v;
  at(q, p, s, r) = v;
  at(r, s, p, q) = v;
  at(s, r, p, q) = v;
  at(r, s, q, p) = v;
  at(s, r, q, p) = v;
}

// ---------------------------------------------------------------------------
// FCIDUMP
// ---------------------------------------------------------------------------

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

double parse_number(std::string tok, std::size_t line) {
  std::replace(tok.begin(), tok.end(), 'D', 'E');
  std::replace(tok.begin(), tok.end(), 'd', 'E');
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) {
    throw std::invalid_argument("FCIDUMP line " + std::to_string(line) +
                                ": non-numeric value '" + tok + "'");
  }
  return v;
}

long parse_int(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) {
    throw std::invalid_argument("FCIDUMP header: bad integer '" + tok + "' for " + what);
  }
  return v;
}

/// key -> comma/space separated values of a Fortran namelist body.
std::map<std::string, std::vector<std::string>> parse_namelist(const std::string& body) {
  std::map<std::string, std::vector<std::string>> out;
  std::string key;
  std::string cur;
  std::vector<std::string> tokens;
  // Tokenize on separators, keeping '=' as its own token.
  for (char c : body) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else if (c == '=') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
      tokens.push_back("=");
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k + 1 < tokens.size() && tokens[k + 1] == "=") {
      key = upper(tokens[k]);
      if (out.count(key)) throw std::invalid_argument("FCIDUMP header: duplicate " + key);
      out[key];
      ++k;
      continue;
    }
    if (tokens[k] == "=" || key.empty()) {
      throw std::invalid_argument("FCIDUMP header: malformed near '" + tokens[k] + "'");
    }
    out[key].push_back(tokens[k]);
  }
  return out;
}

}  // namespace

MolecularIntegrals parse_fcidump_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string header;
  std::size_t line_no = 0;
  bool started = false;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!started) {
      const auto pos = u.find("&FCI");
      if (pos == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw std::invalid_argument("FCIDUMP: missing &FCI header");
      }
      started = true;
      line = line.substr(pos + 4);
      u = u.substr(pos + 4);
    }
    std::size_t stop = u.find("&END");
    if (stop == std::string::npos) stop = u.find('/');
    if (stop != std::string::npos) {
      header += ' ' + line.substr(0, stop);
      ended = true;
      break;
    }
    header += ' ' + line;
  }
  if (!started || !ended) throw std::invalid_argument("FCIDUMP: unterminated header");

  const auto nl = parse_namelist(header);
  auto scalar = [&](const std::string& key) -> std::optional<long> {
    auto it = nl.find(key);
    if (it == nl.end()) return std::nullopt;
    if (it->second.size() != 1) {
      throw std::invalid_argument("FCIDUMP header: " + key + " needs one value");
    }
    return parse_int(it->second[0], key);
  };
  const auto norb = scalar("NORB");
  const auto nelec = scalar("NELEC");
  if (!norb || !nelec) throw std::invalid_argument("FCIDUMP header: NORB and NELEC required");
  if (*norb <= 0 || *nelec < 0 || *nelec > 2 * *norb) {
    throw std::invalid_argument("FCIDUMP header: inconsistent NORB/NELEC");
  }
  MolecularIntegrals ints(static_cast<std::size_t>(*norb), static_cast<std::size_t>(*nelec));
  if (auto ms2 = scalar("MS2")) ints.ms2 = static_cast<int>(*ms2);

  auto os = nl.find("ORBSYM");
  if (os == nl.end()) throw std::invalid_argument("FCIDUMP header: ORBSYM required");
  if (os->second.size() != ints.n_orbitals()) {
    throw std::invalid_argument("FCIDUMP header: ORBSYM has " +
                                std::to_string(os->second.size()) + " entries for NORB=" +
                                std::to_string(ints.n_orbitals()));
  }
  for (std::size_t k = 0; k < os->second.size(); ++k) {
    const long lab = parse_int(os->second[k], "ORBSYM");
    if (lab < 1 || lab > 8) {
      throw std::invalid_argument("FCIDUMP header: ORBSYM label " + std::to_string(lab) +
                                  " outside 1..8");
    }
    ints.orbsym[k] = Irrep::from_label(static_cast<int>(lab));
  }

  const long n = *norb;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                  ": expected value and four indices");
    }
    const double v = parse_number(tok[0], line_no);
    long idx[4];
    for (int k = 0; k < 4; ++k) {
      const double d = parse_number(tok[k + 1], line_no);
      idx[k] = static_cast<long>(d);
      if (static_cast<double>(idx[k]) != d || idx[k] < 0 || idx[k] > n) {
        throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                    ": index out of range");
      }
    }
    const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.core_energy = v;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      ints.set_g(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      ints.set_h(i - 1, j - 1, v);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record, not needed
    } else {
      throw std::invalid_argument("FCIDUMP line " + std::to_string(line_no) +
                                  ": unrecognized index pattern");
    }
  }
  return ints;
}

MolecularIntegrals parse_fcidump(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open FCIDUMP '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_fcidump_text(ss.str());
}

std::string write_fcidump(const MolecularIntegrals& ints, double threshold) {
  const std::size_t n = ints.n_orbitals();
  std::ostringstream out;
  out << " &FCI NORB=" << n << ",NELEC=" << ints.n_electrons() << ",MS2=" << ints.ms2
      << ",\n  ORBSYM=";
  for (std::size_t k = 0; k < n; ++k) out << (k ? "," : "") << ints.orbsym[k].label();
  out << ",\n  ISYM=1,\n &END\n";
  char buf[96];
  auto rec = [&](double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    std::snprintf(buf, sizeof buf, "%23.16e %4zu %4zu %4zu %4zu\n", v, i, j, k, l);
    out << buf;
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ints.g(p, q, r, s);
          if (std::abs(v) > threshold) rec(v, p + 1, q + 1, r + 1, s + 1);
        }
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      const double v = ints.h(p, q);
      if (std::abs(v) > threshold) rec(v, p + 1, q + 1, 0, 0);
    }
  }
  rec(ints.core_energy, 0, 0, 0, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Active space
// ---------------------------------------------------------------------------

ActiveSelection default_active_selection(const MolecularIntegrals& ints,
                                         std::size_t n_electrons, std::size_t n_orbitals) {
  if (ints.n_electrons() % 2 != 0) {
    throw std::invalid_argument("open-shell reference: NELEC must be even");
  }
  if (n_electrons % 2 != 0 || n_electrons > 2 * n_orbitals) {
    throw std::invalid_argument("invalid active space CAS(" + std::to_string(n_electrons) +
                                "," + std::to_string(n_orbitals) + ")");
  }
  const std::size_t nocc = ints.n_electrons() / 2;
  const std::size_t act_occ = n_electrons / 2;
  if (act_occ > nocc || nocc - act_occ + n_orbitals > ints.n_orbitals()) {
    throw std::invalid_argument("active space does not fit the orbital set");
  }
  ActiveSelection sel;
  sel.n_electrons = n_electrons;
  for (std::size_t k = 0; k < n_orbitals; ++k) sel.orbitals.push_back(nocc - act_occ + k);
  return sel;
}

MolecularIntegrals restrict_to_active(const MolecularIntegrals& ints,
                                      const ActiveSelection& sel) {
  const std::size_t n = ints.n_orbitals();
  std::vector<bool> active(n, false);
  for (std::size_t p : sel.orbitals) {
    if (p >= n) {
      throw std::invalid_argument("active orbital " + std::to_string(p + 1) +
                                  " exceeds NORB=" + std::to_string(n));
    }
    if (active[p]) {
      throw std::invalid_argument("active orbital " + std::to_string(p + 1) + " repeated");
    }
    active[p] = true;
  }
  if (sel.orbitals.empty()) throw std::invalid_argument("empty active orbital list");
  if (sel.n_electrons > 2 * sel.orbitals.size() || sel.n_electrons > ints.n_electrons() ||
      (ints.n_electrons() - sel.n_electrons) % 2 != 0) {
    throw std::invalid_argument("active electron count inconsistent with the orbital set");
  }
  const std::size_t n_core = (ints.n_electrons() - sel.n_electrons) / 2;
  std::vector<std::size_t> core;
  for (std::size_t p = 0; p < n && core.size() < n_core; ++p) {
    if (!active[p]) core.push_back(p);
  }
  if (core.size() != n_core) {
    throw std::invalid_argument("not enough non-active orbitals to hold the frozen core");
  }

  const std::size_t na = sel.orbitals.size();
  MolecularIntegrals out(na, sel.n_electrons);
  out.ms2 = ints.ms2;
  double e = ints.core_energy;
  for (std::size_t c : core) {
    e += 2.0 * ints.h(c, c);
    for (std::size_t d : core) e += 2.0 * ints.g(c, c, d, d) - ints.g(c, d, d, c);
  }
  out.core_energy = e;
  for (std::size_t a = 0; a < na; ++a) {
    const std::size_t p = sel.orbitals[a];
    out.orbsym[a] = ints.orbsym[p];
    for (std::size_t b = 0; b <= a; ++b) {
      const std::size_t q = sel.orbitals[b];
      double v = ints.h(p, q);
      for (std::size_t c : core) v += 2.0 * ints.g(p, q, c, c) - ints.g(p, c, c, q);
      out.set_h(a, b, v);
    }
  }
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      for (std::size_t c = 0; c < na; ++c)
        for (std::size_t d = 0; d < na; ++d)
          out.set_g(a, b, c, d,
                    ints.g(sel.orbitals[a], sel.orbitals[b], sel.orbitals[c], sel.orbitals[d]));
  return out;
}

double restricted_hf_energy(const MolecularIntegrals& ints) {
  const std::size_t no = ints.n_electrons() / 2;
  double e = ints.core_energy;
  for (std::size_t i = 0; i < no; ++i) {
    e += 2.0 * ints.h(i, i);
    for (std::size_t j = 0; j < no; ++j) e += 2.0 * ints.g(i, i, j, j) - ints.g(i, j, j, i);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Qubit Hamiltonian
// ---------------------------------------------------------------------------

QubitHamiltonian QubitHamiltonian::from_pauli_sum(const PauliSum& sum) {
  QubitHamiltonian h;
  h.n_qubits = sum.n_qubits();
  for (const auto& [w, c] : sum.raw()) {
    if (std::abs(c.imag()) > 1e-10) {
      throw std::domain_error("Hamiltonian is not hermitian: term " + w.str() +
                              " has imaginary coefficient " + std::to_string(c.imag()));
    }
    if (w.is_identity()) {
      h.offset += c.real();
    } else if (std::abs(c.real()) > kPruneTolerance) {
      h.terms.push_back({w, c.real()});
    }
  }
  return h;
}

PauliSum QubitHamiltonian::to_pauli_sum() const {
  PauliSum s(n_qubits);
  s.add(PauliWord(n_qubits), offset);
  for (const auto& t : terms) s.add(t.word, t.coeff);
  s.canonicalize();
  return s;
}

double QubitHamiltonian::diagonal_expectation(std::uint64_t bits) const {
  double e = offset;
  for (const auto& t : terms) {
    if (t.word.x_mask() != 0) continue;
    e += (std::popcount(t.word.z_mask() & bits) % 2 ? -1.0 : 1.0) * t.coeff;
  }
  return e;
}

QubitHamiltonian build_qubit_hamiltonian(const MolecularIntegrals& ints,
                                         const QubitMapping& mapping) {
  const std::size_t n = ints.n_orbitals();
  if (mapping.size() != 2 * n) {
    throw std::invalid_argument("mapping covers " + std::to_string(mapping.size()) +
                                " spin orbitals, Hamiltonian needs " +
                                std::to_string(2 * n));
  }
  const std::size_t nq = 2 * n;
  std::vector<std::array<PauliSum, 2>> lad(nq);
  for (std::size_t so = 0; so < nq; ++so) {
    const std::size_t q = mapping.qubit(so);
    lad[so] = {jw_ladder(q, false, nq), jw_ladder(q, true, nq)};
  }
  auto so = [n](std::size_t p, int spin) { return spin ? beta_orbital(p, n) : alpha_orbital(p); };

  PauliSum acc(nq);
  acc.add(PauliWord(nq), ints.core_energy);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double v = ints.h(p, q);
      if (v == 0.0) continue;
      for (int s = 0; s < 2; ++s) {
        const PauliSum hop = lad[so(p, s)][1] * lad[so(q, s)][0];
        for (const auto& [w, c] : hop.raw()) acc.add(w, v * c);
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          for (int sg = 0; sg < 2; ++sg) {
            for (int tau = 0; tau < 2; ++tau) {
              if (sg == tau && (p == r || q == s)) continue;
              const PauliSum left = lad[so(p, sg)][1] * lad[so(r, tau)][1];
              const PauliSum right = lad[so(s, tau)][0] * lad[so(q, sg)][0];
              const PauliSum term = left * right;
              for (const auto& [w, c] : term.raw()) acc.add(w, 0.5 * v * c);
            }
          }
        }
  acc.canonicalize();

  QubitHamiltonian h = QubitHamiltonian::from_pauli_sum(acc);
  h.alpha_mask = mapping.alpha_mask();
  h.beta_mask = mapping.beta_mask();

  if (ints.n_electrons() % 2 == 0 && ints.n_electrons() <= nq) {
    const ActiveSpace space{ints.n_electrons(), n};
    const double e_bits = h.diagonal_expectation(hf_bits(space, mapping));
    const double e_hf = restricted_hf_energy(ints);
    if (std::abs(e_bits - e_hf) > 1e-8 * std::max(1.0, std::abs(e_hf))) {
      throw std::logic_error("Hamiltonian consistency check failed: HF bitstring energy " +
                             std::to_string(e_bits) + " vs restricted HF " +
                             std::to_string(e_hf));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Grouping
// ---------------------------------------------------------------------------

bool MeasurementGroup::is_z_basis() const {
  return std::all_of(basis.begin(), basis.end(),
                     [](PauliAxis a) { return a == PauliAxis::I || a == PauliAxis::Z; });
}

std::string MeasurementGroup::basis_string() const {
  std::string s;
  for (PauliAxis a : basis) s.push_back(to_char(a));
  return s;
}

std::vector<MeasurementGroup> qwc_group(const QubitHamiltonian& h) {
  std::vector<std::size_t> order(h.terms.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(h.terms[a].coeff) > std::abs(h.terms[b].coeff);
  });
  std::vector<MeasurementGroup> groups;
  for (std::size_t idx : order) {
    const PauliWord& w = h.terms[idx].word;
    const auto support = w.support();
    MeasurementGroup* home = nullptr;
    for (auto& g : groups) {
      const bool ok = std::all_of(support.begin(), support.end(), [&](std::size_t q) {
        return g.basis[q] == PauliAxis::I || g.basis[q] == w.axis(q);
      });
      if (ok) {
        home = &g;
        break;
      }
    }
    if (!home) {
      groups.push_back({std::vector<PauliAxis>(h.n_qubits, PauliAxis::I), {}});
      home = &groups.back();
    }
    for (std::size_t q : support) home->basis[q] = w.axis(q);
    home->members.push_back(idx);
  }
  return groups;
}

}  // namespace symvqe
