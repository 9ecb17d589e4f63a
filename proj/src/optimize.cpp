#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symvqe/circuit.hpp"

namespace symvqe {

namespace {

// ---------------------------------------------------------------------------
// Single-qubit Clifford group modulo phase
// ---------------------------------------------------------------------------

using Mat2 = std::array<cplx, 4>;  // row major

Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 dagger(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat2 normalize_phase(Mat2 m) {
  for (const cplx& v : m) {
    if (std::abs(v) > 1e-9) {
      const cplx ph = v / std::abs(v);
      for (cplx& w : m) w /= ph;
      break;
    }
  }
  return m;
}

bool same(const Mat2& a, const Mat2& b) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(a[k] - b[k]) > 1e-9) return false;
  }
  return true;
}

Mat2 gate_matrix(GateKind k) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  switch (k) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1, 0, 0, i};
    case GateKind::Sdg: return {1, 0, 0, -i};
    default: break;
  }
  throw std::logic_error("not a single-qubit Clifford");
}

class CliffordGroup {
 public:
  static const CliffordGroup& get() {
    static const CliffordGroup g;
    return g;
  }

  static constexpr int kIdentity = 0;

  int of(GateKind k) const { return find(gate_matrix(k)); }
  /// Element for "a, then b" in time order.
  int then(int a, int b) const { return table_[a][b]; }
  const std::vector<GateKind>& word(int e) const { return words_[e]; }
  bool commutes_with_x(int e) const { return x_commuting_[e]; }
  /// (d1, d2) with U = d1 . H . d2 (d2 first in time), if any.
  std::optional<std::pair<int, int>> dhd(int e) const { return dhd_[e]; }

 private:
  CliffordGroup() {
    const std::array<GateKind, 4> gens = {GateKind::H, GateKind::S, GateKind::Sdg,
                                          GateKind::X};
    elems_.push_back(normalize_phase({1, 0, 0, 1}));
    words_.emplace_back();
    std::deque<int> queue{0};
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      for (GateKind g : gens) {
        const Mat2 m = normalize_phase(matmul(gate_matrix(g), elems_[cur]));
        if (find(m) >= 0) continue;
        elems_.push_back(m);
        auto w = words_[cur];
        w.push_back(g);
        words_.push_back(std::move(w));
        queue.push_back(static_cast<int>(elems_.size()) - 1);
      }
    }
    if (elems_.size() != 24) throw std::logic_error("Clifford group enumeration");

    const int n = static_cast<int>(elems_.size());
    table_.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        table_[a][b] = find(normalize_phase(matmul(elems_[b], elems_[a])));
      }
    }
    const Mat2 x = gate_matrix(GateKind::X);
    for (int e = 0; e < n; ++e) {
      const Mat2 conj = matmul(matmul(elems_[e], x), dagger(elems_[e]));
      bool eq = true;
      for (int k = 0; k < 4; ++k) eq = eq && std::abs(conj[k] - x[k]) < 1e-9;
      x_commuting_.push_back(eq);
    }
    const int s = of(GateKind::S);
    const int sdg = of(GateKind::Sdg);
    const int z = then(s, s);
    const int h = of(GateKind::H);
    const std::array<int, 4> diag = {kIdentity, s, z, sdg};
    dhd_.assign(n, std::nullopt);
    for (int d2 : diag) {
      for (int d1 : diag) {
        const int e = then(then(d2, h), d1);
        if (!dhd_[e]) dhd_[e] = std::make_pair(d1, d2);
      }
    }
  }

  int find(const Mat2& m) const {
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      if (same(elems_[k], m)) return static_cast<int>(k);
    }
    return -1;
  }

  std::vector<Mat2> elems_;
  std::vector<std::vector<GateKind>> words_;
  std::vector<std::vector<int>> table_;
  std::vector<bool> x_commuting_;
  std::vector<std::optional<std::pair<int, int>>> dhd_;
};

int clifford_of(const Gate& g) { return CliffordGroup::get().of(g.kind); }

void emit_word(std::vector<Gate>& out, int elem, std::size_t q) {
  for (GateKind k : CliffordGroup::get().word(elem)) out.push_back({k, q, q, {}});
}

// ---------------------------------------------------------------------------
// Pauli frame: P -> G P G+ for Clifford gates
// ---------------------------------------------------------------------------

struct Frame {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  bool neg = false;

  bool bx(std::size_t q) const { return (x >> q) & 1U; }
  bool bz(std::size_t q) const { return (z >> q) & 1U; }
  void set(std::size_t q, bool xv, bool zv) {
    const std::uint64_t m = std::uint64_t{1} << q;
    x = xv ? (x | m) : (x & ~m);
    z = zv ? (z | m) : (z & ~m);
  }
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// False when the gate does not map the frame to a Pauli (non-Clifford Rz).
bool conjugate(Frame& f, const Gate& g) {
  const std::size_t q = g.q0;
  const bool x = f.bx(q);
  const bool z = f.bz(q);
  switch (g.kind) {
    case GateKind::H:
      f.neg ^= x && z;
      f.set(q, z, x);
      return true;
    case GateKind::S:
      if (x) {
        f.neg ^= z;
        f.set(q, true, !z);
      }
      return true;
    case GateKind::Sdg:
      if (x) {
        f.neg ^= !z;
        f.set(q, true, !z);
      }
      return true;
    case GateKind::X:
      f.neg ^= z;
      return true;
    case GateKind::Rz:
      return !x;
    case GateKind::CNOT: {
      const std::size_t c = g.q0;
      const std::size_t t = g.q1;
      const bool xc = f.bx(c), zc = f.bz(c), xt = f.bx(t), zt = f.bz(t);
      f.neg ^= xc && zt && !(xt ^ zc);
      f.set(t, xt ^ xc, zt);
      f.set(c, xc, zc ^ zt);
      return true;
    }
  }
  return false;
}

Circuit rebuild(const Circuit& like, const std::vector<Gate>& gates) {
  Circuit out(like.n_qubits());
  out.set_parameter_names(like.parameter_names());
  for (const Gate& g : gates) out.add(g);
  return out;
}

}  // namespace

Circuit fuse_single_qubit_cliffords(const Circuit& c) {
  const auto& gates = c.gates();
  const auto& grp = CliffordGroup::get();
  const std::size_t n = c.n_qubits();
  std::vector<int> elem(n, CliffordGroup::kIdentity);
  std::vector<bool> pending(n, false);
  std::vector<Gate> out;
  out.reserve(gates.size());

  auto flush = [&](std::size_t q) {
    if (!pending[q]) return;
    emit_word(out, elem[q], q);
    elem[q] = CliffordGroup::kIdentity;
    pending[q] = false;
  };

  for (const Gate& g : gates) {
    if (g.is_clifford_1q()) {
      elem[g.q0] = grp.then(elem[g.q0], clifford_of(g));
      pending[g.q0] = true;
      continue;
    }
    flush(g.q0);
    if (g.is_two_qubit()) flush(g.q1);
    out.push_back(g);
  }
  for (std::size_t q = 0; q < n; ++q) flush(q);
  return rebuild(c, out);
}

Circuit cancel_cnot_pairs(const Circuit& c) {
  const auto& gates = c.gates();
  const std::size_t m = gates.size();
  std::vector<bool> alive(m, true);

  for (std::size_t i = 0; i < m; ++i) {
    if (!alive[i] || gates[i].kind != GateKind::CNOT) continue;
    const std::size_t ct = gates[i].q0;
    const std::size_t tg = gates[i].q1;
    Frame zc, xt;
    zc.set(ct, false, true);
    xt.set(tg, true, false);
    const Frame zc0 = zc;
    const Frame xt0 = xt;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!alive[j]) continue;
      const Gate& g = gates[j];
      if (g.kind == GateKind::CNOT && g.q0 == ct && g.q1 == tg && zc == zc0 &&
          xt == xt0) {
        alive[i] = alive[j] = false;
        break;
      }
      if (!conjugate(zc, g) || !conjugate(xt, g)) break;
    }
  }

  std::vector<Gate> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (alive[i]) out.push_back(gates[i]);
  }
  return rebuild(c, out);
}

namespace {

/// One left-to-right sweep; returns true if a rewrite happened.
bool rewrite_once(std::vector<Gate>& gates) {
  const auto& grp = CliffordGroup::get();
  const int h = grp.of(GateKind::H);
  const int s = grp.of(GateKind::S);
  const int sdg = grp.of(GateKind::Sdg);
  bool changed = false;
  std::vector<bool> removed(gates.size(), false);
  std::vector<std::vector<Gate>> replacement(gates.size());
  std::vector<bool> replaced(gates.size(), false);

  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (removed[i] || replaced[i] || gates[i].kind != GateKind::CNOT) continue;
    const std::size_t ct = gates[i].q0;
    const std::size_t tg = gates[i].q1;
    int uc = CliffordGroup::kIdentity;
    int ut = CliffordGroup::kIdentity;
    std::vector<std::size_t> consumed;
    for (std::size_t j = i + 1; j < gates.size(); ++j) {
      if (removed[j]) continue;
      const Gate& g = gates[j];
      if (!g.acts_on(ct) && !g.acts_on(tg)) continue;
      if (g.is_clifford_1q()) {
        if (g.q0 == ct) {
          uc = grp.then(uc, clifford_of(g));
        } else {
          ut = grp.then(ut, clifford_of(g));
        }
        consumed.push_back(j);
        continue;
      }
      if (g.kind == GateKind::CNOT && g.q0 == ct && g.q1 == tg) {
        const auto split = grp.dhd(uc);
        if (split && grp.commutes_with_x(ut)) {
          const auto [d1, d2] = *split;
          auto& r = replacement[i];
          emit_word(r, d2, ct);
          emit_word(r, s, ct);
          emit_word(r, h, tg);
          r.push_back(Gate::cnot(tg, ct));
          emit_word(r, sdg, ct);
          emit_word(r, s, tg);
          emit_word(r, h, ct);
          emit_word(r, h, tg);
          emit_word(r, d1, ct);
          emit_word(r, ut, tg);
          replaced[i] = true;
          removed[j] = true;
          for (std::size_t k : consumed) removed[k] = true;
          changed = true;
        }
      }
      break;
    }
  }

  if (!changed) return false;
  std::vector<Gate> out;
  out.reserve(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (replaced[i]) {
      out.insert(out.end(), replacement[i].begin(), replacement[i].end());
    } else if (!removed[i]) {
      out.push_back(gates[i]);
    }
  }
  gates = std::move(out);
  return true;
}

}  // namespace

Circuit rewrite_cx_h_cx(const Circuit& c) {
  std::vector<Gate> gates = c.gates();
  while (rewrite_once(gates)) {
  }
  return rebuild(c, gates);
}

Circuit optimize_circuit(const Circuit& c) {
  Circuit cur = c;
  for (int iter = 0; iter < 64; ++iter) {
    Circuit next = fuse_single_qubit_cliffords(cur);
    next = cancel_cnot_pairs(next);
    next = fuse_single_qubit_cliffords(next);
    next = rewrite_cx_h_cx(next);
    next = fuse_single_qubit_cliffords(next);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace symvqe
