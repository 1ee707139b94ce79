#include "tqsynth/linalg.hpp"

#include <cmath>
#include <random>

#include "tqsynth/errors.hpp"

namespace tqs {

namespace {

// 53-bit uniform in [0, 1); avoids std::uniform_real_distribution so that
// streams are identical across standard library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Cyclic Jacobi for a 4x4 real symmetric matrix. Eigenvectors come back as
// columns of `vec`, in descending eigenvalue order, sign-fixed so that the
// largest-magnitude entry of each column is positive and det(vec) = +1.
void jacobi_sym4(Mat4r a, Mat4r& vec, Eigen::Vector4d& val) {
  vec = Mat4r::Identity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        Mat4r rot = Mat4r::Identity();
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = s;
        rot(q, p) = -s;
        a = rot.transpose() * a * rot;
        vec = vec * rot;
      }
    }
  }
  for (int k = 0; k < 4; ++k) val(k) = a(k, k);

  // Deterministic ordering and signs.
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return val(i) > val(j); });
  Mat4r v2;
  Eigen::Vector4d d2;
  for (int k = 0; k < 4; ++k) {
    v2.col(k) = vec.col(order[k]);
    d2(k) = val(order[k]);
  }
  for (int k = 0; k < 4; ++k) {
    int imax = 0;
    v2.col(k).cwiseAbs().maxCoeff(&imax);
    if (v2(imax, k) < 0.0) v2.col(k) = -v2.col(k);
  }
  if (v2.determinant() < 0.0) v2.col(3) = -v2.col(3);
  vec = v2;
  val = d2;
}

}  // namespace

double canonical_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

bool is_unitary(const Mat2& m, double tol) {
  return max_abs((m.adjoint() * m - Mat2::Identity()).eval()) <= tol;
}

bool is_unitary(const Mat4& m, double tol) {
  return max_abs((m.adjoint() * m - Mat4::Identity()).eval()) <= tol;
}

double dist_up_to_phase(const Mat4& u, const Mat4& v) {
  // The minimizing phase is -arg tr(u' v).  Forming the difference explicitly
  // instead of expanding the norm keeps small distances accurate; the closed
  // form ||u||^2 + ||v||^2 - 2|tr| cancels to a noise floor near sqrt(eps).
  cplx t = (u.adjoint() * v).trace();
  if (std::abs(t) < 1e-300) return std::sqrt(u.squaredNorm() + v.squaredNorm());
  return (u * (t / std::abs(t)) - v).norm();
}

SymEigResult diag_symmetric_unitary(const Mat4& w, double tol,
                                    std::uint64_t seed) {
  if (max_abs((w - w.transpose()).eval()) > tol * 10.0 + 1e-12)
    throw NotSymmetricError("diag_symmetric_unitary: matrix is not symmetric");
  if (!is_unitary(w, tol * 10.0 + 1e-12))
    throw NotUnitaryError("diag_symmetric_unitary: matrix is not unitary");

  Mat4r re = w.real();
  Mat4r im = w.imag();
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);

  for (int attempt = 0; attempt < 16; ++attempt) {
    // Re(w) and Im(w) commute; a generic combination separates the joint
    // eigenspaces. A collision only hurts when it merges distinct
    // eigenvalues of w, which the residual check below detects.
    double t = (attempt == 0) ? 0.5774 : (2.0 * uniform01(rng) - 1.0);
    Mat4r k = re + t * im;
    k = 0.5 * (k + k.transpose().eval());
    Mat4r o;
    Eigen::Vector4d vals;
    jacobi_sym4(k, o, vals);

    Mat4 d = o.transpose().cast<cplx>() * w * o.cast<cplx>();
    double offdiag = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(d(i, j)));
    if (offdiag > tol) continue;

    SymEigResult result;
    result.ortho = o;
    for (int i = 0; i < 4; ++i)
      result.phases[i] = 0.5 * std::arg(d(i, i));
    return result;
  }
  throw ConvergenceFailure(
      "diag_symmetric_unitary: no combination separated the eigenspaces");
}

Mat4 haar_random_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1ULL);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g(i, j) = cplx(gaussian(rng), gaussian(rng));
  Eigen::HouseholderQR<Mat4> qr(g);
  Mat4 q = qr.householderQ();
  Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    cplx d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat4 random_so4(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 2ULL);
  Mat4r g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = gaussian(rng);
  Eigen::HouseholderQR<Mat4r> qr(g);
  Mat4r q = qr.householderQ();
  Mat4r r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(3) = -q.col(3);
  return q.cast<cplx>();
}

Mat2 haar_random_unitary2(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 3ULL);
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      g(i, j) = cplx(gaussian(rng), gaussian(rng));
  Eigen::HouseholderQR<Mat2> qr(g);
  Mat2 q = qr.householderQ();
  Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    cplx d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat2 mat_id2() { return Mat2::Identity(); }

Mat2 mat_sigma_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 mat_sigma_y() {
  Mat2 m;
  m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  return m;
}

Mat2 mat_sigma_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 mat_h() {
  Mat2 m;
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat2 mat_s() {
  Mat2 m;
  m << cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 1);
  return m;
}

Mat2 mat_ry(double theta) {
  Mat2 m;
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  m << c, s, -s, c;
  return m;
}

Mat2 mat_rz(double alpha) {
  Mat2 m;
  m << std::exp(cplx(0, alpha / 2.0)), cplx(0, 0), cplx(0, 0),
      std::exp(cplx(0, -alpha / 2.0));
  return m;
}

}  // namespace tqs
