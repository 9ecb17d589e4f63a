#include "symvqe/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace symvqe {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::Rz: return "RZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

double Angle::value(std::span<const double> params) const {
  if (!param) return coeff;
  if (*param >= params.size()) {
    throw std::out_of_range("angle references parameter " + std::to_string(*param) +
                            " but only " + std::to_string(params.size()) +
                            " values were supplied");
  }
  return coeff * params[*param];
}

Circuit::Circuit(std::size_t n_qubits, std::size_t n_params) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) throw std::invalid_argument("more than 64 qubits");
  param_names_.reserve(n_params);
  for (std::size_t k = 0; k < n_params; ++k) {
    param_names_.push_back("theta" + std::to_string(k));
  }
}

void Circuit::set_parameter_names(std::vector<std::string> names) {
  for (const Gate& g : gates_) {
    if (g.angle.param && *g.angle.param >= names.size()) {
      throw std::invalid_argument("parameter list shorter than gate references");
    }
  }
  for (const auto& n : names) {
    if (n.empty() || n == "-" ||
        std::any_of(n.begin(), n.end(), [](char c) { return std::isspace(
                                                        static_cast<unsigned char>(c)); })) {
      throw std::invalid_argument("invalid parameter name '" + n + "'");
    }
  }
  param_names_ = std::move(names);
}

void Circuit::add(const Gate& g) {
  if (g.q0 >= n_qubits_ || g.q1 >= n_qubits_) {
    throw std::out_of_range("gate " + std::string(to_string(g.kind)) +
                            " addresses a qubit outside the " +
                            std::to_string(n_qubits_) + "-qubit register");
  }
  if (g.is_two_qubit() && g.q0 == g.q1) {
    throw std::invalid_argument("CNOT control equals target");
  }
  if (!g.is_two_qubit() && g.q0 != g.q1) {
    throw std::invalid_argument("single-qubit gate with two operands");
  }
  if (g.kind == GateKind::Rz && g.angle.param && *g.angle.param >= param_names_.size()) {
    throw std::out_of_range("RZ references undeclared parameter " +
                            std::to_string(*g.angle.param));
  }
  Gate stored = g;
  if (g.kind != GateKind::Rz) stored.angle = {};
  gates_.push_back(stored);
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("appending circuits with different register sizes");
  }
  if (other.param_names_.size() > param_names_.size()) {
    for (std::size_t k = param_names_.size(); k < other.param_names_.size(); ++k) {
      param_names_.push_back(other.param_names_[k]);
    }
  }
  for (const Gate& g : other.gates_) add(g);
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

std::size_t count_2qge(const Circuit& c) { return c.count(GateKind::CNOT); }

std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.n_qubits() << '\n';
  out << "PARAMS";
  for (const auto& n : c.parameter_names()) out << ' ' << n;
  out << '\n';
  char buf[64];
  for (const Gate& g : c.gates()) {
    out << to_string(g.kind) << ' ' << g.q0;
    if (g.kind == GateKind::CNOT) {
      out << ' ' << g.q1;
    } else if (g.kind == GateKind::Rz) {
      std::snprintf(buf, sizeof buf, "%.17g", g.angle.coeff);
      out << ' ' << buf << ' '
          << (g.angle.param ? c.parameter_names()[*g.angle.param] : std::string("-"));
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || p != end) {
    throw std::invalid_argument("circuit line " + std::to_string(line) +
                                ": bad qubit index '" + tok + "'");
  }
  return v;
}

}  // namespace

Circuit parse_circuit_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Circuit> circ;
  std::unordered_map<std::string, std::size_t> param_index;
  bool have_params = false;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& op = tok[0];
    if (op == "QUBITS") {
      if (circ) fail("duplicate QUBITS header");
      if (tok.size() != 2) fail("QUBITS takes one value");
      circ.emplace(parse_index(tok[1], line_no));
      continue;
    }
    if (!circ) fail("missing QUBITS header");
    if (op == "PARAMS") {
      if (have_params || !circ->empty()) fail("PARAMS must precede gates and appear once");
      std::vector<std::string> names(tok.begin() + 1, tok.end());
      for (std::size_t k = 0; k < names.size(); ++k) {
        if (!param_index.emplace(names[k], k).second) {
          fail("duplicate parameter '" + names[k] + "'");
        }
      }
      circ->set_parameter_names(std::move(names));
      have_params = true;
      continue;
    }
    try {
      if (op == "CNOT") {
        if (tok.size() != 3) fail("CNOT takes control and target");
        circ->add(Gate::cnot(parse_index(tok[1], line_no), parse_index(tok[2], line_no)));
      } else if (op == "RZ") {
        if (tok.size() != 4) fail("RZ takes qubit, coefficient and parameter");
        double coeff = 0.0;
        const auto* end = tok[2].data() + tok[2].size();
        auto [p, ec] = std::from_chars(tok[2].data(), end, coeff);
        if (ec != std::errc{} || p != end) fail("bad RZ coefficient '" + tok[2] + "'");
        Angle a = Angle::constant(coeff);
        if (tok[3] != "-") {
          auto it = param_index.find(tok[3]);
          if (it == param_index.end()) fail("unknown parameter '" + tok[3] + "'");
          a = Angle::parameter(it->second, coeff);
        }
        circ->add(Gate::rz(parse_index(tok[1], line_no), a));
      } else {
        if (tok.size() != 2) fail(op + " takes one qubit");
        const std::size_t q = parse_index(tok[1], line_no);
        if (op == "X") {
          circ->add(Gate::x(q));
        } else if (op == "H") {
          circ->add(Gate::h(q));
        } else if (op == "S") {
          circ->add(Gate::s(q));
        } else if (op == "SDG") {
          circ->add(Gate::sdg(q));
        } else {
          fail("unknown gate '" + op + "'");
        }
      }
    } catch (const std::out_of_range& e) {
      fail(e.what());
    }
  }
  if (!circ) throw std::invalid_argument("empty circuit text");
  return *circ;
}

}  // namespace symvqe
