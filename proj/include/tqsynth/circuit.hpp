#pragma once

#include <string>
#include <vector>

#include "tqsynth/linalg.hpp"

namespace tqs {

enum class GateKind { Ry, Rz, H, S, Sdg, X, Y, Z, Cnot1, Cnot2, Cz, Swap };

bool is_two_qubit(GateKind k);
bool is_rotation(GateKind k);

/// One- and two-qubit gates; qubit 0 is the top (first, most significant)
/// wire. Two-qubit kinds ignore the qubit/angle payloads.
struct Gate {
  GateKind kind;
  int qubit = 0;
  double angle = 0.0;

  static Gate ry(int q, double t) { return {GateKind::Ry, q, t}; }
  static Gate rz(int q, double t) { return {GateKind::Rz, q, t}; }
  static Gate h(int q) { return {GateKind::H, q, 0.0}; }
  static Gate s(int q) { return {GateKind::S, q, 0.0}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, 0.0}; }
  static Gate y(int q) { return {GateKind::Y, q, 0.0}; }
  static Gate z(int q) { return {GateKind::Z, q, 0.0}; }
  static Gate cnot1() { return {GateKind::Cnot1, 0, 0.0}; }
  static Gate cnot2() { return {GateKind::Cnot2, 0, 0.0}; }
  static Gate cz() { return {GateKind::Cz, 0, 0.0}; }
  static Gate swap() { return {GateKind::Swap, 0, 0.0}; }

  bool operator==(const Gate&) const = default;
};

/// Gate list in time order (index 0 applied first) plus an explicit global
/// phase angle.
struct Circuit {
  std::vector<Gate> gates;
  double global_phase = 0.0;

  bool operator==(const Circuit&) const = default;
};

struct GateCounts {
  int cnot = 0;
  int one_qubit = 0;
  int swap = 0;
};

/// 4x4 matrix of a gate, identity-padded onto the undeclared qubit.
Mat4 gate_matrix(const Gate& g);

/// e^{i phase} G_n ... G_2 G_1 with G_1 the first listed gate.
Mat4 circuit_to_unitary(const Circuit& c);

/// Tally gates; with expand_swap each SWAP adds 3 to the CNOT count.
GateCounts count_gates(const Circuit& c, bool expand_swap);

/// Greedy fixed-point peephole pass: merges same-axis rotations, drops
/// near-zero rotations, cancels CNOT/CZ pairs, commutes Rz through CZ and
/// CNOT controls, relocates CNOT1-conjugated Rz gates when that enables a
/// cancellation, and fuses SWAP with an adjacent CNOT2. Never increases the
/// gate count; output preserved up to phase (exactly, in fact).
Circuit simplify(const Circuit& c);

/// Deterministic text form; floats with 17 significant digits. Angles are
/// reduced to (-pi, pi] here, with the parity shim folded into the emitted
/// global phase, so the printed circuit is unitary-identical.
std::string emit_circuit_text(const Circuit& c);

/// Inverse of emit_circuit_text; throws ParseError on malformed input.
Circuit parse_circuit_text(const std::string& text);

}  // namespace tqs
