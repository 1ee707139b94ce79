#include "tqsynth/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tqsynth/errors.hpp"

namespace tqs {

namespace {

constexpr double kZeroAngleTol = 1e-12;

Mat4 mat_cnot1() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Mat4 mat_cnot2() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 3) = 1;
  m(2, 2) = 1;
  m(3, 1) = 1;
  return m;
}

Mat4 mat_swap4() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Mat4 mat_cz4() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1;
  return m;
}

bool touches(const Gate& g, int q) {
  return is_two_qubit(g.kind) || g.qubit == q;
}

// Whether a Rz on `q` commutes with gate `h` (the catalog's commutation
// rules: Rz through CZ on either qubit, Rz through a CNOT's control).
bool rz_commutes_past(int q, const Gate& h) {
  if (!touches(h, q)) return true;
  if (h.kind == GateKind::Cz) return true;
  if (h.kind == GateKind::Cnot1 && q == 0) return true;
  if (h.kind == GateKind::Cnot2 && q == 1) return true;
  return false;
}

bool ry_commutes_past(int q, const Gate& h) { return !touches(h, q); }

bool rotation_commutes_past(const Gate& rot, const Gate& h) {
  return rot.kind == GateKind::Rz ? rz_commutes_past(rot.qubit, h)
                                  : ry_commutes_past(rot.qubit, h);
}

// Drop rotations that reduce to the identity (mod 2pi, with the sign parity
// folded into the global phase: Rz(t + 2 pi k) = (-1)^k Rz(t)).
bool pass_drop_zero(Circuit& c) {
  bool changed = false;
  for (std::size_t i = 0; i < c.gates.size();) {
    const Gate& g = c.gates[i];
    if (is_rotation(g.kind)) {
      double r = canonical_angle(g.angle);
      if (std::abs(r) < kZeroAngleTol) {
        long k = std::lround((g.angle - r) / (2.0 * kPi));
        c.gates.erase(c.gates.begin() + static_cast<long>(i));
        c.global_phase = canonical_angle(c.global_phase + kPi * static_cast<double>(k));
        changed = true;
        continue;
      }
    }
    ++i;
  }
  return changed;
}

bool pass_merge_rotations(Circuit& c) {
  bool changed = false;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (!is_rotation(c.gates[i].kind)) continue;
    for (std::size_t j = i + 1; j < c.gates.size(); ++j) {
      const Gate& h = c.gates[j];
      if (h.kind == c.gates[i].kind && h.qubit == c.gates[i].qubit) {
        c.gates[i].angle += h.angle;
        c.gates.erase(c.gates.begin() + static_cast<long>(j));
        changed = true;
        break;
      }
      if (!rotation_commutes_past(c.gates[i], h)) break;
    }
  }
  return changed;
}

bool pass_cancel_pairs(Circuit& c) {
  bool changed = false;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    GateKind k = c.gates[i].kind;
    if (k != GateKind::Cnot1 && k != GateKind::Cnot2 && k != GateKind::Cz)
      continue;
    for (std::size_t j = i + 1; j < c.gates.size(); ++j) {
      const Gate& h = c.gates[j];
      if (h.kind == k) {
        c.gates.erase(c.gates.begin() + static_cast<long>(j));
        c.gates.erase(c.gates.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
      bool skippable = h.kind == GateKind::Rz && rz_commutes_past(h.qubit, c.gates[i]);
      if (!skippable) break;
    }
  }
  return changed;
}

// CNOT1 (1 x Rz(t)) CNOT1 = CNOT2 (Rz(t) x 1) CNOT2; applied only when a
// neighboring CNOT2 makes a cancellation available.
bool pass_relocate_rz(Circuit& c) {
  bool changed = false;
  for (std::size_t i = 0; i + 2 < c.gates.size(); ++i) {
    if (c.gates[i].kind != GateKind::Cnot1 ||
        c.gates[i + 2].kind != GateKind::Cnot1)
      continue;
    const Gate& mid = c.gates[i + 1];
    if (mid.kind != GateKind::Rz || mid.qubit != 1) continue;
    bool left = i > 0 && c.gates[i - 1].kind == GateKind::Cnot2;
    bool right = i + 3 < c.gates.size() && c.gates[i + 3].kind == GateKind::Cnot2;
    if (!left && !right) continue;
    c.gates[i] = Gate::cnot2();
    c.gates[i + 1] = Gate::rz(0, mid.angle);
    c.gates[i + 2] = Gate::cnot2();
    changed = true;
  }
  return changed;
}

// SWAP = CNOT2 CNOT1 CNOT2, so an adjacent CNOT2 fuses with the SWAP.
bool pass_fuse_swap(Circuit& c) {
  bool changed = false;
  for (std::size_t i = 0; i + 1 < c.gates.size(); ++i) {
    if (c.gates[i].kind == GateKind::Cnot2 &&
        c.gates[i + 1].kind == GateKind::Swap) {
      c.gates[i] = Gate::cnot1();
      c.gates[i + 1] = Gate::cnot2();
      changed = true;
    } else if (c.gates[i].kind == GateKind::Swap &&
               c.gates[i + 1].kind == GateKind::Cnot2) {
      c.gates[i] = Gate::cnot2();
      c.gates[i + 1] = Gate::cnot1();
      changed = true;
    }
  }
  return changed;
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int parse_qubit_token(const std::string& tok, int line) {
  if (tok == "q0") return 0;
  if (tok == "q1") return 1;
  throw ParseError(line, "invalid qubit token '" + tok + "'");
}

double parse_float_token(const std::string& tok, int line) {
  const char* s = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end != s + tok.size() || tok.empty())
    throw ParseError(line, "invalid number '" + tok + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite number '" + tok + "'");
  return v;
}

}  // namespace

bool is_two_qubit(GateKind k) {
  return k == GateKind::Cnot1 || k == GateKind::Cnot2 || k == GateKind::Cz ||
         k == GateKind::Swap;
}

bool is_rotation(GateKind k) { return k == GateKind::Ry || k == GateKind::Rz; }

Mat4 gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::Cnot1:
      return mat_cnot1();
    case GateKind::Cnot2:
      return mat_cnot2();
    case GateKind::Cz:
      return mat_cz4();
    case GateKind::Swap:
      return mat_swap4();
    default:
      break;
  }
  Mat2 m;
  switch (g.kind) {
    case GateKind::Ry:
      m = mat_ry(g.angle);
      break;
    case GateKind::Rz:
      m = mat_rz(g.angle);
      break;
    case GateKind::H:
      m = mat_h();
      break;
    case GateKind::S:
      m = mat_s();
      break;
    case GateKind::Sdg:
      m = mat_s().adjoint();
      break;
    case GateKind::X:
      m = mat_sigma_x();
      break;
    case GateKind::Y:
      m = mat_sigma_y();
      break;
    default:
      m = mat_sigma_z();
      break;
  }
  return g.qubit == 0 ? kron(m, mat_id2()) : kron(mat_id2(), m);
}

Mat4 circuit_to_unitary(const Circuit& c) {
  Mat4 u = Mat4::Identity();
  for (const Gate& g : c.gates) u = gate_matrix(g) * u;
  return std::exp(cplx(0, c.global_phase)) * u;
}

GateCounts count_gates(const Circuit& c, bool expand_swap) {
  GateCounts counts;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Cnot1:
      case GateKind::Cnot2:
      case GateKind::Cz:
        ++counts.cnot;
        break;
      case GateKind::Swap:
        if (expand_swap)
          counts.cnot += 3;
        else
          ++counts.swap;
        break;
      default:
        ++counts.one_qubit;
        break;
    }
  }
  return counts;
}

Circuit simplify(const Circuit& c) {
  Circuit out = c;
  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;
    changed |= pass_drop_zero(out);
    changed |= pass_merge_rotations(out);
    changed |= pass_cancel_pairs(out);
    changed |= pass_relocate_rz(out);
    changed |= pass_fuse_swap(out);
    if (!changed) break;
  }
  out.global_phase = canonical_angle(out.global_phase);
  return out;
}

std::string emit_circuit_text(const Circuit& c) {
  double phase = c.global_phase;
  std::vector<std::string> lines;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Ry:
      case GateKind::Rz: {
        double r = canonical_angle(g.angle);
        long k = std::lround((g.angle - r) / (2.0 * kPi));
        phase += kPi * static_cast<double>(k);
        const char* name = g.kind == GateKind::Ry ? "ry" : "rz";
        lines.push_back(std::string(name) + " q" + std::to_string(g.qubit) +
                        " " + fmt_double(r));
        break;
      }
      case GateKind::H:
        lines.push_back("h q" + std::to_string(g.qubit));
        break;
      case GateKind::S:
        lines.push_back("s q" + std::to_string(g.qubit));
        break;
      case GateKind::Sdg:
        lines.push_back("sdg q" + std::to_string(g.qubit));
        break;
      case GateKind::X:
        lines.push_back("x q" + std::to_string(g.qubit));
        break;
      case GateKind::Y:
        lines.push_back("y q" + std::to_string(g.qubit));
        break;
      case GateKind::Z:
        lines.push_back("z q" + std::to_string(g.qubit));
        break;
      case GateKind::Cnot1:
        lines.push_back("cx q0 q1");
        break;
      case GateKind::Cnot2:
        lines.push_back("cx q1 q0");
        break;
      case GateKind::Cz:
        lines.push_back("cz q0 q1");
        break;
      case GateKind::Swap:
        lines.push_back("swap q0 q1");
        break;
    }
  }
  std::string out = "phase " + fmt_double(canonical_angle(phase)) + "\n";
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

Circuit parse_circuit_text(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool phase_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    const std::string& op = toks[0];

    auto want = [&](std::size_t n) {
      if (toks.size() != n + 1)
        throw ParseError(lineno, "'" + op + "' expects " + std::to_string(n) +
                                     " argument(s)");
    };

    if (op == "phase") {
      want(1);
      if (phase_seen) throw ParseError(lineno, "duplicate phase directive");
      phase_seen = true;
      c.global_phase = parse_float_token(toks[1], lineno);
    } else if (op == "ry" || op == "rz") {
      want(2);
      int q = parse_qubit_token(toks[1], lineno);
      double a = parse_float_token(toks[2], lineno);
      c.gates.push_back(op == "ry" ? Gate::ry(q, a) : Gate::rz(q, a));
    } else if (op == "h" || op == "s" || op == "sdg" || op == "x" ||
               op == "y" || op == "z") {
      want(1);
      int q = parse_qubit_token(toks[1], lineno);
      if (op == "h")
        c.gates.push_back(Gate::h(q));
      else if (op == "s")
        c.gates.push_back(Gate::s(q));
      else if (op == "sdg")
        c.gates.push_back(Gate::sdg(q));
      else if (op == "x")
        c.gates.push_back(Gate::x(q));
      else if (op == "y")
        c.gates.push_back(Gate::y(q));
      else
        c.gates.push_back(Gate::z(q));
    } else if (op == "cx") {
      want(2);
      int ctrl = parse_qubit_token(toks[1], lineno);
      int tgt = parse_qubit_token(toks[2], lineno);
      if (ctrl == tgt) throw ParseError(lineno, "cx needs distinct qubits");
      c.gates.push_back(ctrl == 0 ? Gate::cnot1() : Gate::cnot2());
    } else if (op == "cz" || op == "swap") {
      want(2);
      int a = parse_qubit_token(toks[1], lineno);
      int b = parse_qubit_token(toks[2], lineno);
      if (a == b) throw ParseError(lineno, "'" + op + "' needs distinct qubits");
      c.gates.push_back(op == "cz" ? Gate::cz() : Gate::swap());
    } else {
      throw ParseError(lineno, "unknown directive '" + op + "'");
    }
  }
  return c;
}

}  // namespace tqs
