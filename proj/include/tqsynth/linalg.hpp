#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>

namespace tqs {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat4r = Eigen::Matrix4d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Default tolerances: unitarity 1e-10, reconstruction 1e-9.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kReconstructTol = 1e-9;

/// Reduce an angle to the branch (-pi, pi].
double canonical_angle(double a);

/// Largest entry magnitude (max-norm).
double max_abs(const Mat4& m);
double max_abs(const Mat2& m);

/// Kronecker product; the first factor acts on the first (top, most
/// significant) qubit, basis order |00>,|01>,|10>,|11>.
Mat4 kron(const Mat2& a, const Mat2& b);

bool is_unitary(const Mat2& m, double tol = kUnitaryTol);
bool is_unitary(const Mat4& m, double tol = kUnitaryTol);

/// min over phi of ||u - e^{i phi} v||_F, in closed form
/// sqrt(||u||^2 + ||v||^2 - 2 |tr(u^dag v)|). Zero iff u = e^{i phi} v.
double dist_up_to_phase(const Mat4& u, const Mat4& v);

/// Eigen-system of a symmetric unitary: w = O diag(e^{2 i theta_k}) O^T
/// with O real orthogonal, det(O) = +1.
struct SymEigResult {
  Mat4r ortho;
  std::array<double, 4> phases;
};

/// Simultaneously diagonalizes Re(w) and Im(w) (they commute for symmetric
/// unitary w) by running a cyclic Jacobi sweep on Re(w) + t Im(w) for a
/// randomly drawn t, re-drawing on eigenvalue collision.
///
/// Throws NotSymmetric / NotUnitary on bad input, ConvergenceFailure if no
/// draw reaches the requested tolerance.
SymEigResult diag_symmetric_unitary(const Mat4& w, double tol = kReconstructTol,
                                    std::uint64_t seed = 0);

/// QR-of-Gaussian Haar sample with phase-normalized R diagonal.
/// Deterministic per seed.
Mat4 haar_random_unitary(std::uint64_t seed);

/// Random real orthogonal matrix with det = +1, deterministic per seed.
Mat4 random_so4(std::uint64_t seed);

/// Haar-random 2x2 unitary (test-input generator for local gates).
Mat2 haar_random_unitary2(std::uint64_t seed);

// Fixed one-qubit matrices.
Mat2 mat_id2();
Mat2 mat_sigma_x();
Mat2 mat_sigma_y();
Mat2 mat_sigma_z();
Mat2 mat_h();
Mat2 mat_s();
Mat2 mat_ry(double theta);
Mat2 mat_rz(double alpha);

}  // namespace tqs
