#include "tqsynth/kak.hpp"

#include <algorithm>
#include <cmath>

#include "tqsynth/errors.hpp"

namespace tqs {

namespace {

constexpr double kCellTol = 1e-10;

Mat2 mat_k_yz() {
  // (Y + Z)/sqrt(2): Hermitian unitary exchanging sigma_y and sigma_z under
  // conjugation (and negating sigma_x).
  Mat2 m;
  double s = 1.0 / std::sqrt(2.0);
  m << cplx(s, 0), cplx(0, -s), cplx(0, s), cplx(-s, 0);
  return m;
}

double reconstruction_residual(const CanonicalDecomposition& d, const Mat4& u) {
  return max_abs((u - d.reconstruct()).eval());
}

// Weyl-cell symmetry moves. Each rewrites (locals, params, phase) without
// changing the reconstructed unitary; callers re-verify after each move.
struct WeylState {
  CanonicalDecomposition& d;
  const Mat4& target;

  double& param(int i) {
    return i == 0 ? d.alpha : (i == 1 ? d.beta : d.gamma);
  }

  void verify(const char* move) const {
    if (reconstruction_residual(d, target) > 1e-8)
      throw VerificationFailure(std::string("weyl normalization move '") +
                                move + "' broke the reconstruction");
  }

  // N(p) = i^k (sigma^k x sigma^k) N(p - k pi/2) for the matching Pauli.
  void shift(int i, long k) {
    static const Mat2 paulis[3] = {mat_sigma_x(), mat_sigma_y(), mat_sigma_z()};
    param(i) -= static_cast<double>(k) * kPi / 2.0;
    d.phase += static_cast<double>(k) * kPi / 2.0;
    if (k % 2 != 0) {
      d.a1 = d.a1 * paulis[i];
      d.a2 = d.a2 * paulis[i];
    }
    verify("shift");
  }

  void conj_swap(int i, int j, const Mat2& w) {
    // N(.., p_i, .., p_j, ..) = W^dag N(.., p_j, .., p_i, ..) W for the
    // local w x w conjugation that exchanges the two Pauli axes.
    std::swap(param(i), param(j));
    d.a1 = d.a1 * w.adjoint();
    d.a2 = d.a2 * w.adjoint();
    d.a3 = w * d.a3;
    d.a4 = w * d.a4;
    verify("swap");
  }

  void swap_params(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1)
      conj_swap(0, 1, mat_s());
    else if (i == 1 && j == 2)
      conj_swap(1, 2, mat_k_yz());
    else
      conj_swap(0, 2, mat_h());
  }

  // Negates the two parameters other than `spared` by conjugating with
  // (sigma_spared x 1), which anti-commutes with the other two axes.
  void negate_pair(int spared) {
    static const Mat2 paulis[3] = {mat_sigma_x(), mat_sigma_y(), mat_sigma_z()};
    const Mat2& p = paulis[spared];
    for (int i = 0; i < 3; ++i)
      if (i != spared) param(i) = -param(i);
    d.a1 = d.a1 * p;
    d.a3 = p * d.a3;
    verify("negate");
  }
};

// Catalog of symmetry moves driving (alpha, beta, gamma) into
// pi/4 >= alpha >= beta >= |gamma|, each re-verified by reconstruction.
void weyl_normalize(CanonicalDecomposition& d, const Mat4& target) {
  WeylState st{d, target};
  for (int iter = 0; iter < 24; ++iter) {
    bool changed = false;

    for (int i = 0; i < 3; ++i) {
      // Shift into (-pi/4, pi/4], keeping exact +pi/4 in place.
      long k = std::lround(st.param(i) / (kPi / 2.0));
      if (st.param(i) - static_cast<double>(k) * kPi / 2.0 <
          -kPi / 4.0 + 1e-12)
        k -= 1;
      if (k != 0) {
        st.shift(i, k);
        changed = true;
      }
    }

    // Clear negative signs off alpha and beta (pairs only).
    double& a = st.d.alpha;
    double& b = st.d.beta;
    double& g = st.d.gamma;
    if (a < -kCellTol && b < -kCellTol) {
      st.negate_pair(2);
      changed = true;
    } else if (a < -kCellTol) {
      st.negate_pair(1);
      changed = true;
    } else if (b < -kCellTol) {
      st.negate_pair(0);
      changed = true;
    }

    if (b > a + kCellTol) {
      st.swap_params(0, 1);
      changed = true;
    }
    if (std::abs(g) > b + kCellTol) {
      st.swap_params(1, 2);
      changed = true;
    }

    // alpha = pi/4 has an extra symmetry that flips gamma's sign.
    if (!changed && std::abs(a - kPi / 4.0) < 1e-9 && g < -1e-9) {
      st.shift(0, 1);
      st.negate_pair(1);
      changed = true;
    }

    if (!changed) return;
  }
  throw ConvergenceFailure("weyl_normalize: did not reach the canonical cell");
}

}  // namespace

ZyzAngles zyz_decompose(const Mat2& a) {
  if (!is_unitary(a, 1e-10))
    throw NotUnitaryError("zyz_decompose: input is not unitary");

  ZyzAngles z;
  cplx det = a.determinant();
  z.phase = std::arg(det) / 2.0;
  Mat2 su = a * std::exp(cplx(0, -z.phase));

  // su = [ e^{i(al+be)/2} c, e^{i(al-be)/2} s; -e^{-i(al-be)/2} s, ... ]
  double c = std::abs(su(0, 0));
  double s = std::abs(su(0, 1));
  z.theta = 2.0 * std::atan2(s, c);
  if (c < 1e-12) {
    z.alpha = 2.0 * std::arg(su(0, 1));
    z.beta = 0.0;
  } else if (s < 1e-12) {
    z.alpha = 2.0 * std::arg(su(0, 0));
    z.beta = 0.0;
  } else {
    double sum = std::arg(su(0, 0));
    double diff = std::arg(su(0, 1));
    z.alpha = sum + diff;
    z.beta = sum - diff;
  }

  // Canonical branches: angles in (-pi, pi], 2 pi reductions paid as phase.
  for (double* ang : {&z.alpha, &z.beta}) {
    double r = canonical_angle(*ang);
    long k = std::lround((*ang - r) / (2.0 * kPi));
    *ang = r;
    z.phase += kPi * static_cast<double>(k);
  }
  z.phase = canonical_angle(z.phase);
  return z;
}

Mat2 zyz_matrix(const ZyzAngles& z) {
  return std::exp(cplx(0, z.phase)) * mat_rz(z.alpha) * mat_ry(z.theta) *
         mat_rz(z.beta);
}

DPhases phases_from_params(double alpha, double beta, double gamma) {
  return {{alpha - beta + gamma, -alpha + beta + gamma, alpha + beta - gamma,
           -alpha - beta - gamma}};
}

std::array<double, 3> params_from_phases(const DPhases& p) {
  double sum = p.theta[0] + p.theta[1] + p.theta[2] + p.theta[3];
  if (std::abs(canonical_angle(sum)) > 1e-9)
    throw InconsistentPhasesError(
        "params_from_phases: phases do not sum to 0 mod 2 pi");
  return {(p.theta[0] + p.theta[2]) / 2.0, (p.theta[1] + p.theta[2]) / 2.0,
          (p.theta[0] + p.theta[1]) / 2.0};
}

Mat4 n_matrix(double alpha, double beta, double gamma) {
  DPhases p = phases_from_params(alpha, beta, gamma);
  Mat4 d = Mat4::Zero();
  for (int k = 0; k < 4; ++k) d(k, k) = std::exp(cplx(0, p.theta[k]));
  return magic_matrix() * d * magic_matrix().adjoint();
}

Mat4 CanonicalDecomposition::reconstruct() const {
  return std::exp(cplx(0, phase)) * kron(a1, a2) * n_matrix(alpha, beta, gamma) *
         kron(a3, a4);
}

CanonicalDecomposition kak_decompose(const Mat4& u) {
  if (!is_unitary(u, kUnitaryTol))
    throw NotUnitaryError("kak_decompose: input is not unitary");

  // Determinant 4th-root branch: principal value arg(det)/4.
  cplx det = u.determinant();
  double phi0 = std::arg(det) / 4.0;
  Mat4 us = u * std::exp(cplx(0, -phi0));

  const Mat4& m = magic_matrix();
  Mat4 v = m.adjoint() * us * m;
  Mat4 w = v.transpose() * v;

  std::string last_error = "kak_decompose: diagonalization failed";
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SymEigResult eig;
    try {
      eig = diag_symmetric_unitary(w, kReconstructTol, seed);
    } catch (const ConvergenceFailure& e) {
      last_error = e.what();
      continue;
    }

    // Fix the half-phase branch so the sum vanishes: det(D) = 1 makes the
    // left orthogonal factor special.
    std::array<double, 4> theta = eig.phases;
    double sum = theta[0] + theta[1] + theta[2] + theta[3];
    long mshift = std::lround(sum / kPi);
    theta[0] -= static_cast<double>(mshift) * kPi;
    double residual_sum = (theta[0] + theta[1] + theta[2] + theta[3]) / 4.0;
    for (double& t : theta) t -= residual_sum;

    Mat4 d = Mat4::Zero();
    for (int k = 0; k < 4; ++k) d(k, k) = std::exp(cplx(0, theta[k]));
    Mat4 q2 = eig.ortho.transpose().cast<cplx>();
    Mat4 q1 = v * eig.ortho.cast<cplx>() * d.conjugate();

    if (q1.imag().cwiseAbs().maxCoeff() > 1e-8 ||
        std::abs(q1.determinant().real() - 1.0) > 1e-6) {
      last_error = "kak_decompose: left factor not special orthogonal";
      continue;
    }

    CanonicalDecomposition out;
    try {
      TensorFactors lf = factor_tensor_2x2(to_magic(q1), 1e-7);
      TensorFactors rf = factor_tensor_2x2(to_magic(q2), 1e-7);
      out.a1 = lf.a;
      out.a2 = lf.b;
      out.a3 = rf.a;
      out.a4 = rf.b;
      out.phase = phi0 + lf.phase + rf.phase;
      auto params = params_from_phases({theta});
      out.alpha = params[0];
      out.beta = params[1];
      out.gamma = params[2];
      if (reconstruction_residual(out, u) > 1e-8) {
        last_error = "kak_decompose: reconstruction residual too large";
        continue;
      }
      weyl_normalize(out, u);
    } catch (const NotAProductError& e) {
      last_error = e.what();
      continue;
    }
    out.phase = canonical_angle(out.phase);
    return out;
  }
  throw ConvergenceFailure(last_error);
}

std::array<cplx, 4> local_invariant_spectrum(const Mat4& u) {
  if (!is_unitary(u, kUnitaryTol))
    throw NotUnitaryError("local_invariant_spectrum: input is not unitary");
  cplx det = u.determinant();
  Mat4 us = u * std::exp(cplx(0, -std::arg(det) / 4.0));
  Mat4 v = from_magic(us);
  Eigen::ComplexEigenSolver<Mat4> solver(v.transpose() * v, false);
  std::array<cplx, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = solver.eigenvalues()(k);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return std::arg(a) < std::arg(b);
  });
  return out;
}

}  // namespace tqs
