#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tqsynth/circuit.hpp"
#include "tqsynth/errors.hpp"
#include "test_support.hpp"

using namespace tqs;

namespace {

Mat4 cnot1_ref() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1; m(1, 1) = 1; m(2, 3) = 1; m(3, 2) = 1;
  return m;
}

Mat4 swap_ref() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1; m(1, 2) = 1; m(2, 1) = 1; m(3, 3) = 1;
  return m;
}

}  // namespace

TEST_CASE("gate_matrix matches reference matrices") {
  CHECK(max_abs((gate_matrix(Gate::cnot1()) - cnot1_ref()).eval()) == 0.0);
  CHECK(max_abs((gate_matrix(Gate::rz(0, 0.0)) - Mat4::Identity()).eval()) <
        1e-15);
  Mat4 sw = gate_matrix(Gate::cnot1()) * gate_matrix(Gate::cnot2()) *
            gate_matrix(Gate::cnot1());
  CHECK(max_abs((gate_matrix(Gate::swap()) - sw).eval()) == 0.0);
  CHECK(max_abs((gate_matrix(Gate::swap()) - swap_ref()).eval()) == 0.0);
  // padding: a qubit-1 gate acts as I (x) g
  CHECK(max_abs((gate_matrix(Gate::h(1)) - kron(mat_id2(), mat_h())).eval()) ==
        0.0);
  CHECK(max_abs((gate_matrix(Gate::h(0)) - kron(mat_h(), mat_id2())).eval()) ==
        0.0);
}

TEST_CASE("simulator basics") {
  Circuit empty;
  CHECK(max_abs((circuit_to_unitary(empty) - Mat4::Identity()).eval()) == 0.0);

  // Magic-gate circuit: S on both wires, H on the bottom, CNOT2.
  Circuit fig1;
  fig1.gates = {Gate::s(0), Gate::s(1), Gate::h(1), Gate::cnot2()};
  Mat4 m;
  const double r = 1.0 / std::sqrt(2.0);
  m << cplx(r, 0), cplx(0, r), 0, 0,
       0, 0, cplx(0, r), cplx(r, 0),
       0, 0, cplx(0, r), cplx(-r, 0),
       cplx(r, 0), cplx(0, -r), 0, 0;
  CHECK(max_abs((circuit_to_unitary(fig1) - m).eval()) < 1e-15);

  Circuit sw;
  sw.gates = {Gate::cnot1(), Gate::cnot2(), Gate::cnot1()};
  CHECK(max_abs((circuit_to_unitary(sw) - swap_ref()).eval()) == 0.0);

  // time order: first listed gate is applied first (rightmost factor)
  Circuit xz;
  xz.gates = {Gate::x(0), Gate::z(0)};
  Mat4 want = gate_matrix(Gate::z(0)) * gate_matrix(Gate::x(0));
  CHECK(max_abs((circuit_to_unitary(xz) - want).eval()) == 0.0);

  Circuit ph;
  ph.global_phase = kPi / 4;
  CHECK(max_abs((circuit_to_unitary(ph) -
                 Mat4(std::exp(cplx(0, kPi / 4)) * Mat4::Identity()))
                    .eval()) < 1e-15);
}

TEST_CASE("single-gate circuits agree with gate_matrix for every kind") {
  std::vector<Gate> gates = {Gate::ry(0, 0.3), Gate::rz(1, -1.2), Gate::h(0),
                             Gate::s(1),       Gate::sdg(0),      Gate::x(1),
                             Gate::y(0),       Gate::z(1),        Gate::cnot1(),
                             Gate::cnot2(),    Gate::cz(),        Gate::swap()};
  for (const Gate& g : gates) {
    Circuit c;
    c.gates = {g};
    CHECK(max_abs((circuit_to_unitary(c) - gate_matrix(g)).eval()) == 0.0);
  }
}

TEST_CASE("count_gates") {
  Circuit empty;
  GateCounts z = count_gates(empty, true);
  CHECK(z.cnot == 0);
  CHECK(z.one_qubit == 0);
  CHECK(z.swap == 0);

  Circuit c;
  c.gates = {Gate::swap()};
  CHECK(count_gates(c, true).cnot == 3);
  CHECK(count_gates(c, true).swap == 0);
  CHECK(count_gates(c, false).cnot == 0);
  CHECK(count_gates(c, false).swap == 1);

  Circuit mix;
  mix.gates = {Gate::h(0), Gate::cnot1(), Gate::s(1), Gate::cz(),
               Gate::ry(1, 0.5)};
  GateCounts g = count_gates(mix, true);
  CHECK(g.cnot == 2);
  CHECK(g.one_qubit == 3);
}

TEST_CASE("gate algebra identities") {
  // Rz relocation across the two CNOT orientations.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  Mat4 c1 = gate_matrix(Gate::cnot1());
  Mat4 c2 = gate_matrix(Gate::cnot2());
  for (int i = 0; i < 100; ++i) {
    double t = ang(rng);
    Mat4 lhs = c1 * kron(mat_id2(), mat_rz(t)) * c1;
    Mat4 rhs = c2 * kron(mat_rz(t), mat_id2()) * c2;
    CHECK(max_abs((lhs - rhs).eval()) < 1e-12);
  }

  // Hadamard absorption: I (x) H = CNOT1 * (I (x) H) * CZ.
  Mat4 ih = kron(mat_id2(), mat_h());
  CHECK(max_abs((ih - c1 * ih * gate_matrix(Gate::cz())).eval()) < 1e-12);

  // S is a phased Rz quarter-turn; H = sigma_z * Ry(pi/2).  With
  // Rz(a) = diag(e^{ia/2}, e^{-ia/2}) the S identity needs the -pi/2 angle.
  Mat2 s_rot = std::exp(cplx(0, kPi / 4)) * mat_rz(-kPi / 2);
  CHECK((s_rot - mat_s()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((mat_sigma_z() * mat_ry(kPi / 2) - mat_h()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("simplify examples") {
  Circuit c;
  c.gates = {Gate::rz(0, 0.4), Gate::rz(0, 0.5)};
  Circuit s = simplify(c);
  REQUIRE(s.gates.size() == 1);
  CHECK(s.gates[0].kind == GateKind::Rz);
  CHECK(s.gates[0].angle == doctest::Approx(0.9));

  Circuit cc;
  cc.gates = {Gate::cnot1(), Gate::cnot1()};
  CHECK(simplify(cc).gates.empty());

  Circuit fuse;
  fuse.gates = {Gate::cnot2(), Gate::swap()};
  Circuit fs = simplify(fuse);
  CHECK(count_gates(fs, false).swap == 0);
  CHECK(dist_up_to_phase(circuit_to_unitary(fs), circuit_to_unitary(fuse)) <
        1e-10);
}

TEST_CASE("simplify soundness and idempotence on 1000 random circuits") {
  for (int s = 0; s < 1000; ++s) {
    Circuit c = tqtest::random_circuit(s);
    Circuit sc = simplify(c);
    CHECK(sc.gates.size() <= c.gates.size());
    CHECK(dist_up_to_phase(circuit_to_unitary(sc), circuit_to_unitary(c)) <
          1e-9);
    Circuit sc2 = simplify(sc);
    CHECK(sc2.gates.size() == sc.gates.size());
    CHECK(dist_up_to_phase(circuit_to_unitary(sc2), circuit_to_unitary(sc)) <
          1e-10);
  }
}

TEST_CASE("emit and parse") {
  Circuit empty;
  CHECK(emit_circuit_text(empty) == "phase 0\n");

  Circuit ry;
  ry.gates = {Gate::ry(1, kPi / 2)};
  std::string txt = emit_circuit_text(ry);
  CHECK(txt.find("ry q1 1.5707963267948966") != std::string::npos);

  Circuit cx = parse_circuit_text("cx q0 q1\n");
  REQUIRE(cx.gates.size() == 1);
  CHECK(cx.gates[0].kind == GateKind::Cnot1);
  CHECK(parse_circuit_text("cx q1 q0\n").gates[0].kind == GateKind::Cnot2);

  CHECK_THROWS_AS(parse_circuit_text("rz qX 1.0\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit_text("bogus q0 1.0\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit_text("phase 1\nphase 2\n"), ParseError);
  try {
    parse_circuit_text("h q0\nwat\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("parse(emit) round trip") {
  for (int s = 0; s < 200; ++s) {
    Circuit c = tqtest::random_circuit(s + 5000, 20);
    std::string txt = emit_circuit_text(c);
    Circuit back = parse_circuit_text(txt);
    // emission canonicalizes angles into (-pi, pi]; the unitary is preserved
    // exactly and re-emission is a fixed point.
    CHECK(dist_up_to_phase(circuit_to_unitary(back), circuit_to_unitary(c)) <
          1e-12);
    CHECK(emit_circuit_text(back) == txt);
    CHECK(back.gates.size() == c.gates.size());
  }
}
