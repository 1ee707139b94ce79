#pragma once

#include <array>

#include "tqsynth/linalg.hpp"
#include "tqsynth/magic.hpp"

namespace tqs {

/// a = e^{i phase} Rz(alpha) Ry(theta) Rz(beta), theta in [0, pi].
struct ZyzAngles {
  double phase = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double beta = 0.0;
};

ZyzAngles zyz_decompose(const Mat2& a);
Mat2 zyz_matrix(const ZyzAngles& z);

/// Diagonal phases of the entangling core in the magic basis;
/// theta_1 + theta_2 + theta_3 + theta_4 = 0 (mod 2 pi).
struct DPhases {
  std::array<double, 4> theta{};
};

/// theta = (a-b+g, -a+b+g, a+b-g, -a-b-g).
DPhases phases_from_params(double alpha, double beta, double gamma);

/// Inverse of phases_from_params: (a, b, g) =
/// ((t1+t3)/2, (t2+t3)/2, (t1+t2)/2). Throws InconsistentPhases when the
/// sum precondition fails.
std::array<double, 3> params_from_phases(const DPhases& p);

/// exp(i (alpha XX + beta YY + gamma ZZ)), computed as M diag(e^{i theta_k})
/// M^dag with theta from phases_from_params.
Mat4 n_matrix(double alpha, double beta, double gamma);

/// u = e^{i phase} kron(a1, a2) N(alpha, beta, gamma) kron(a3, a4), with
/// (alpha, beta, gamma) in the cell pi/4 >= alpha >= beta >= |gamma|.
struct CanonicalDecomposition {
  Mat2 a1, a2, a3, a4;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double phase = 0.0;

  Mat4 reconstruct() const;
};

/// Canonical (Cartan) decomposition of a 4x4 unitary. Deterministic; throws
/// NotUnitary on bad input and ConvergenceFailure if the internal
/// diagonalization re-draws are exhausted.
CanonicalDecomposition kak_decompose(const Mat4& u);

/// Eigenvalue multiset of (M^dag u_s M)^T (M^dag u_s M) with u_s the
/// det-normalized input; invariant under local special-unitary dressing up
/// to a common 4th-root-of-unity phase. Sorted by argument.
std::array<cplx, 4> local_invariant_spectrum(const Mat4& u);

}  // namespace tqs
