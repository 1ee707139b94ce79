#include "tqsynth/ep.hpp"

#include <cmath>
#include <random>

#include "tqsynth/circuit.hpp"
#include "tqsynth/errors.hpp"
#include "tqsynth/magic.hpp"

namespace tqs {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Eigen::Vector2cd haar_qubit_state(std::mt19937_64& rng) {
  Eigen::Vector2cd v;
  v(0) = cplx(gaussian(rng), gaussian(rng));
  v(1) = cplx(gaussian(rng), gaussian(rng));
  return v / v.norm();
}

Eigen::MatrixXcd kron16(const Mat4& a, const Mat4& b) {
  Eigen::MatrixXcd out(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

double hs_overlap_term(const Mat4& u) {
  const Eigen::MatrixXd& t = t13_permutation();
  Eigen::MatrixXcd uu = kron16(u, u);
  cplx val = (uu.adjoint() * t * uu * t).trace();
  if (std::abs(val.imag()) > 1e-10)
    throw VerificationFailure("ep_exact: non-real trace term");
  return val.real();
}

}  // namespace

double linear_entropy(const Eigen::Vector4cd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw NotNormalizedError("linear_entropy: state is not normalized");
  // rho = tr_2 |psi><psi| over the first qubit, amplitudes indexed
  // psi(2 a + c) for first-qubit a, second-qubit c.
  Mat2 rho = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        rho(a, b) += psi(2 * a + c) * std::conj(psi(2 * b + c));
  return 1.0 - (rho * rho).trace().real();
}

const Eigen::MatrixXd& t13_permutation() {
  static const Eigen::MatrixXd t = [] {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 16);
    for (int idx = 0; idx < 16; ++idx) {
      int a = (idx >> 3) & 1, b = (idx >> 2) & 1, c = (idx >> 1) & 1,
          d = idx & 1;
      int out = (c << 3) | (b << 2) | (a << 1) | d;
      m(out, idx) = 1.0;
    }
    return m;
  }();
  return t;
}

double ep_exact(const Mat4& u) {
  if (!is_unitary(u, kUnitaryTol))
    throw NotUnitaryError("ep_exact: input is not unitary");
  Mat4 su = gate_matrix(Gate::swap()) * u;
  return 5.0 / 9.0 - (hs_overlap_term(u) + hs_overlap_term(su)) / 36.0;
}

MonteCarloEstimate ep_monte_carlo(const Mat4& u, int samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7ULL);
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    Eigen::Vector2cd p1 = haar_qubit_state(rng);
    Eigen::Vector2cd p2 = haar_qubit_state(rng);
    Eigen::Vector4cd prod;
    prod << p1(0) * p2(0), p1(0) * p2(1), p1(1) * p2(0), p1(1) * p2(1);
    Eigen::Vector4cd out = u * prod;
    out /= out.norm();
    double e = linear_entropy(out);
    sum += e;
    sum_sq += e * e;
  }
  double n = static_cast<double>(samples);
  double mean = sum / n;
  double var = std::max(sum_sq / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / n)};
}

double case1_ep(double a, double b) {
  return (3.0 - std::cos(2.0 * a) - std::cos(2.0 * b) -
          std::cos(2.0 * a) * std::cos(2.0 * b)) /
         18.0;
}

SwapBoundReport swap_lower_bound_witness() {
  SwapBoundReport report;
  const Mat4 swap = gate_matrix(Gate::swap());
  const Mat4 cz = gate_matrix(Gate::cz());
  const double corners[4][2] = {{0, 0}, {0, kPi}, {kPi, 0}, {kPi, kPi}};

  bool all_ok = true;
  for (int k = 0; k < 4; ++k) {
    auto& cand = report.candidates[k];
    cand.a = corners[k][0];
    cand.b = corners[k][1];
    cand.ep = case1_ep(cand.a, cand.b);
    Mat4 middle = cz * kron(mat_ry(cand.a), mat_ry(cand.b)) * cz;
    try {
      factor_tensor_2x2(middle, 1e-8);
      cand.is_product = true;
    } catch (const NotAProductError&) {
      cand.is_product = false;
    }
    cand.dist_to_swap = dist_up_to_phase(middle, swap);
    all_ok = all_ok && std::abs(cand.ep) < 1e-12 && cand.is_product &&
             cand.dist_to_swap > 0.5;
  }

  report.case2_gap =
      std::abs(ep_exact(gate_matrix(Gate::cnot1())) - ep_exact(swap));
  report.pass = all_ok && report.case2_gap > 1e-3;
  return report;
}

}  // namespace tqs
