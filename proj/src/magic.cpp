#include "tqsynth/magic.hpp"

#include <cmath>

#include "tqsynth/errors.hpp"
#include "tqsynth/kak.hpp"

namespace tqs {

namespace {

cplx sqrt_principal(cplx z) {
  return std::sqrt(std::abs(z)) * std::exp(cplx(0, std::arg(z) / 2.0));
}

void append_zyz(std::vector<Gate>& gates, const Mat2& m, int qubit) {
  ZyzAngles zyz = zyz_decompose(m);
  // Time order: Rz(beta) first. Zero-angle rotations are elided; any phase
  // slack is fixed up by match_global_phase on the full circuit.
  if (std::abs(canonical_angle(zyz.beta)) > 1e-12)
    gates.push_back(Gate::rz(qubit, zyz.beta));
  if (std::abs(canonical_angle(zyz.theta)) > 1e-12)
    gates.push_back(Gate::ry(qubit, zyz.theta));
  if (std::abs(canonical_angle(zyz.alpha)) > 1e-12)
    gates.push_back(Gate::rz(qubit, zyz.alpha));
}

// The fixed outer layer of the SO(4) template: CNOT2 (1 x Ry(pi/2))
// (Rz(pi/2) x Rz(pi/2)). The closing layer is its adjoint.
Mat4 so4_pre() {
  Circuit pre;
  pre.gates = {Gate::rz(0, kPi / 2), Gate::rz(1, kPi / 2), Gate::ry(1, kPi / 2),
               Gate::cnot2()};
  return circuit_to_unitary(pre);
}

void check_real_orthogonal(const Mat4& u, double expected_det,
                           const char* who) {
  bool ok = u.imag().cwiseAbs().maxCoeff() <= 1e-9 &&
            max_abs((u.transpose() * u - Mat4::Identity()).eval()) <= 1e-8 &&
            std::abs(u.determinant().real() - expected_det) <= 1e-8 &&
            std::abs(u.determinant().imag()) <= 1e-8;
  if (!ok) {
    if (expected_det > 0)
      throw NotSpecialOrthogonalError(who);
    throw NotNegOrthogonalError(who);
  }
}

}  // namespace

const Mat4& magic_matrix() {
  static const Mat4 m = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    Mat4 v;
    v << s, s * i, 0, 0,  //
        0, 0, s * i, s,   //
        0, 0, s * i, -s,  //
        s, -s * i, 0, 0;
    return v;
  }();
  return m;
}

Mat4 to_magic(const Mat4& u) {
  return magic_matrix() * u * magic_matrix().adjoint();
}

Mat4 from_magic(const Mat4& u) {
  return magic_matrix().adjoint() * u * magic_matrix();
}

TensorFactors factor_tensor_2x2(const Mat4& u, double tol) {
  if (!is_unitary(u, 1e-8))
    throw NotUnitaryError("factor_tensor_2x2: input is not unitary");

  // Dominant 2x2 block is a scaled copy of b.
  int bp = 0, bq = 0;
  double best = -1.0;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      double n = u.block<2, 2>(2 * p, 2 * q).squaredNorm();
      if (n > best) {
        best = n;
        bp = p;
        bq = q;
      }
    }
  }
  Mat2 b = u.block<2, 2>(2 * bp, 2 * bq);
  b *= std::sqrt(2.0) / b.norm();

  Mat2 a;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      a(p, q) = (b.adjoint() * u.block<2, 2>(2 * p, 2 * q)).trace() / 2.0;

  cplx da = a.determinant();
  cplx db = b.determinant();
  if (std::abs(da) < 1e-12 || std::abs(db) < 1e-12)
    throw NotAProductError("factor_tensor_2x2: degenerate factor");
  a /= sqrt_principal(da);
  b /= sqrt_principal(db);

  cplx overlap = (kron(a, b).adjoint() * u).trace() / 4.0;
  double phase = std::arg(overlap);
  double residual =
      max_abs((u - std::exp(cplx(0, phase)) * kron(a, b)).eval());
  if (residual > tol)
    throw NotAProductError("factor_tensor_2x2: residual " +
                           std::to_string(residual) + " exceeds tolerance");
  return {a, b, phase};
}

Circuit synth_so4(const Mat4& u) {
  check_real_orthogonal(u, 1.0, "synth_so4: input is not in SO(4)");

  // u = Pre^dag (A x B) Pre, so the middle layer is Pre u Pre^dag.
  Mat4 pre = so4_pre();
  TensorFactors mid = factor_tensor_2x2(pre * u * pre.adjoint(), 1e-8);

  Circuit c;
  c.gates = {Gate::rz(0, kPi / 2), Gate::rz(1, kPi / 2), Gate::ry(1, kPi / 2),
             Gate::cnot2()};
  append_zyz(c.gates, mid.b, 1);
  append_zyz(c.gates, mid.a, 0);
  c.gates.push_back(Gate::cnot2());
  c.gates.push_back(Gate::ry(1, -kPi / 2));
  c.gates.push_back(Gate::rz(0, -kPi / 2));
  c.gates.push_back(Gate::rz(1, -kPi / 2));
  match_global_phase(c, u);
  return c;
}

Circuit synth_o4_negdet(const Mat4& u, bool expand_swap) {
  check_real_orthogonal(u, -1.0,
                        "synth_o4_negdet: input is not in O(4) with det -1");

  // u = Pre^dag (A x B) SWAP Pre, so the middle is Pre u Pre^dag SWAP.
  Mat4 pre = so4_pre();
  Mat4 swap = gate_matrix(Gate::swap());
  TensorFactors mid = factor_tensor_2x2(pre * u * pre.adjoint() * swap, 1e-8);

  Circuit c;
  c.gates = {Gate::rz(0, kPi / 2), Gate::rz(1, kPi / 2), Gate::ry(1, kPi / 2)};
  if (expand_swap) {
    // SWAP CNOT2 = CNOT2 CNOT1
    c.gates.push_back(Gate::cnot1());
    c.gates.push_back(Gate::cnot2());
  } else {
    c.gates.push_back(Gate::cnot2());
    c.gates.push_back(Gate::swap());
  }
  append_zyz(c.gates, mid.b, 1);
  append_zyz(c.gates, mid.a, 0);
  c.gates.push_back(Gate::cnot2());
  c.gates.push_back(Gate::ry(1, -kPi / 2));
  c.gates.push_back(Gate::rz(0, -kPi / 2));
  c.gates.push_back(Gate::rz(1, -kPi / 2));
  match_global_phase(c, u);
  return c;
}

void match_global_phase(Circuit& c, const Mat4& target) {
  c.global_phase = 0.0;
  Mat4 sim = circuit_to_unitary(c);
  cplx overlap = (sim.adjoint() * target).trace();
  c.global_phase = canonical_angle(std::arg(overlap));
}

}  // namespace tqs
