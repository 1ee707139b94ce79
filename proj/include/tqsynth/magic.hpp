#pragma once

#include "tqsynth/circuit.hpp"
#include "tqsynth/linalg.hpp"

namespace tqs {

/// One-qubit factors of a tensor-product 4x4 unitary:
/// source = e^{i phase} kron(a, b), with a and b normalized to det 1.
struct TensorFactors {
  Mat2 a;
  Mat2 b;
  double phase = 0.0;
};

/// The magic basis matrix
///   1/sqrt(2) [ 1  i  0  0 ; 0 0 i 1 ; 0 0 i -1 ; 1 -i 0 0 ],
/// equal to the circuit CNOT2 (1 x H) (S x S).
const Mat4& magic_matrix();

/// M u M^dag
Mat4 to_magic(const Mat4& u);

/// M^dag u M
Mat4 from_magic(const Mat4& u);

/// Closed-form factorization of a 4x4 unitary into kron(a, b) up to phase.
/// Views u as a 2x2 grid of 2x2 blocks, takes the dominant block as a scaled
/// copy of b and recovers a from block inner products.
///
/// Throws NotAProduct when the best residual exceeds tol -- that is the
/// structural signal, not a numerical failure.
TensorFactors factor_tensor_2x2(const Mat4& u, double tol = 1e-8);

/// 2-CNOT, <=12 rotation circuit for u in SO(4).
Circuit synth_so4(const Mat4& u);

/// Circuit for real orthogonal u with det = -1: one SWAP plus 2 CNOTs, or
/// with expand_swap the SWAP fused into the adjacent CNOT2 (3 CNOTs total).
Circuit synth_o4_negdet(const Mat4& u, bool expand_swap);

/// Sets c.global_phase so that circuit_to_unitary(c) best matches target;
/// exact when they already agree up to a phase.
void match_global_phase(Circuit& c, const Mat4& target);

}  // namespace tqs
