#pragma once

#include <array>
#include <cstdint>

#include "tqsynth/linalg.hpp"

namespace tqs {

/// Linear entropy 1 - tr(rho^2) of the reduced state of the first qubit;
/// in [0, 1/2] for normalized two-qubit states. Throws NotNormalized.
double linear_entropy(const Eigen::Vector4cd& psi);

/// The 16x16 transposition T_{1,3}: |a,b,c,d> -> |c,b,a,d>.
const Eigen::MatrixXd& t13_permutation();

/// Entangling power via the trace formula,
/// 5/9 - 1/36 [ <U@U, T U@U T> + <(SWAP U)@(SWAP U), T (SWAP U)@(SWAP U) T> ].
double ep_exact(const Mat4& u);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Average linear entropy of u applied to Haar-uniform product states;
/// deterministic per seed.
MonteCarloEstimate ep_monte_carlo(const Mat4& u, int samples,
                                  std::uint64_t seed);

/// Closed form for the middle block CZ (Ry(a) x Ry(b)) CZ:
/// (3 - cos 2a - cos 2b - cos 2a cos 2b) / 18.
double case1_ep(double a, double b);

/// Computational content of the SWAP 3-CNOT lower bound: the four
/// zero-entangling-power parameter corners all give tensor-product middles
/// far from SWAP, and the 1-CNOT case is excluded by the EP gap 2/9 vs 0.
struct SwapBoundReport {
  struct Candidate {
    double a = 0.0, b = 0.0;
    double ep = 0.0;
    bool is_product = false;
    double dist_to_swap = 0.0;
  };
  std::array<Candidate, 4> candidates;
  double case2_gap = 0.0;
  bool pass = false;
};

SwapBoundReport swap_lower_bound_witness();

}  // namespace tqs
