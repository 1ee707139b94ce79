// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, independent of library defaults.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "tqsynth/circuit.hpp"
#include "tqsynth/ep.hpp"
#include "tqsynth/kak.hpp"
#include "tqsynth/magic.hpp"
#include "tqsynth/synth.hpp"
#include "test_support.hpp"

using namespace tqs;

namespace {

int g_failures = 0;

void report(int num, const char* label, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", num, label,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

void criterion(int num, const char* label,
               const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(num, label, ok, detail);
  } catch (const std::exception& e) {
    report(num, label, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// --- criterion bodies -------------------------------------------------------

std::pair<bool, std::string> generic_synthesis() {
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    Mat4 u = haar_random_unitary(s);
    SynthesisReport r = synth_u4(u);
    if (r.counts.cnot > 3 || r.counts.one_qubit > 15)
      return {false, "count bound violated at seed " + std::to_string(s)};
    double d = dist_up_to_phase(circuit_to_unitary(r.circuit), u);
    worst = std::max(worst, std::max(d, r.residual));
  }
  return {worst < 1e-8, "1000 samples, worst residual " + fmt(worst)};
}

std::pair<bool, std::string> so4_synthesis() {
  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    Mat4 u = random_so4(s);
    SynthesisReport r = synth_u4(u);
    if (r.counts.cnot != 2 || r.counts.one_qubit > 12)
      return {false, "count bound violated at seed " + std::to_string(s)};
    worst = std::max(worst, r.residual);
  }
  return {worst < 1e-8, "500 samples, worst residual " + fmt(worst)};
}

std::pair<bool, std::string> o4_negdet_synthesis() {
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    Mat4 u = random_so4(s);
    u.col(0) *= -1.0;
    SynthesisReport r = synth_u4(u);  // SWAP expanded by default
    if (r.counts.cnot != 3 || r.counts.one_qubit > 12 || r.counts.swap != 0)
      return {false, "count bound violated at seed " + std::to_string(s)};
    worst = std::max(worst, r.residual);
  }
  return {worst < 1e-8, "200 samples, worst residual " + fmt(worst)};
}

std::pair<bool, std::string> magic_exactness() {
  Mat4 built = gate_matrix(Gate::cnot2()) * kron(mat_id2(), mat_h()) *
               kron(mat_s(), mat_s());
  double d0 = max_abs((built - magic_matrix()).eval());
  if (d0 > 1e-12) return {false, "circuit vs magic matrix " + fmt(d0)};

  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    Mat4 u = random_so4(s);
    TensorFactors f = factor_tensor_2x2(to_magic(u), 1e-8);
    Mat4 back = std::exp(cplx(0, f.phase)) * kron(f.a, f.b);
    worst = std::max(worst, max_abs((back - to_magic(u)).eval()));
  }
  for (int s = 0; s < 200; ++s) {
    Mat4 u = random_so4(s);
    u.col(0) *= -1.0;
    Mat4 v = to_magic(u) * kron(mat_id2(), mat_sigma_z()) *
             gate_matrix(Gate::swap());
    TensorFactors f = factor_tensor_2x2(v, 1e-8);
    Mat4 back = std::exp(cplx(0, f.phase)) * kron(f.a, f.b);
    worst = std::max(worst, max_abs((back - v).eval()));
  }
  return {worst < 1e-9,
          "matrix exact, worst factorization residual " + fmt(worst)};
}

std::pair<bool, std::string> canonical_parameters() {
  CanonicalDecomposition dc = kak_decompose(gate_matrix(Gate::cnot1()));
  CanonicalDecomposition ds = kak_decompose(gate_matrix(Gate::swap()));
  double err = std::abs(dc.alpha - kPi / 4) + std::abs(dc.beta) +
               std::abs(dc.gamma) + std::abs(ds.alpha - kPi / 4) +
               std::abs(ds.beta - kPi / 4) + std::abs(std::abs(ds.gamma) - kPi / 4);
  double rec =
      std::max(dist_up_to_phase(dc.reconstruct(), gate_matrix(Gate::cnot1())),
               dist_up_to_phase(ds.reconstruct(), gate_matrix(Gate::swap())));
  return {err < 1e-9 && rec < 1e-8,
          "parameter error " + fmt(err) + ", reconstruction " + fmt(rec)};
}

std::pair<bool, std::string> n_template() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-1.5, 1.5);
  double worst_sim = 0.0, worst_exp = 0.0;
  for (int i = 0; i < 500; ++i) {
    double a = ang(rng), b = ang(rng), g = ang(rng);
    Circuit c = synth_n(a, b, g);
    Mat4 n = n_matrix(a, b, g);
    worst_sim = std::max(worst_sim, dist_up_to_phase(circuit_to_unitary(c), n));
    worst_exp =
        std::max(worst_exp, max_abs((n - tqtest::expm_core(a, b, g)).eval()));
  }
  return {worst_sim < 1e-9 && worst_exp < 1e-10,
          "worst circuit " + fmt(worst_sim) + ", worst vs expm " +
              fmt(worst_exp)};
}

std::pair<bool, std::string> ep_constants() {
  double e_cnot = ep_exact(gate_matrix(Gate::cnot1()));
  double e_swap = ep_exact(gate_matrix(Gate::swap()));
  if (std::abs(e_cnot - 2.0 / 9.0) > 1e-12 || std::abs(e_swap) > 1e-12)
    return {false, "constants off: " + fmt(e_cnot) + ", " + fmt(e_swap)};

  for (int s = 0; s < 50; ++s) {
    Mat4 prod = kron(haar_random_unitary2(2 * s), haar_random_unitary2(2 * s + 1));
    if (std::abs(ep_exact(prod)) > 1e-10)
      return {false, "product gate with nonzero EP at seed " + std::to_string(s)};
  }

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  Mat4 cz = gate_matrix(Gate::cz());
  double worst_case1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    double a = ang(rng), b = ang(rng);
    Mat4 mid = cz * kron(mat_ry(a), mat_ry(b)) * cz;
    worst_case1 = std::max(worst_case1,
                           std::abs(case1_ep(a, b) - ep_exact(mid)));
  }
  if (worst_case1 > 1e-10)
    return {false, "closed form vs trace formula " + fmt(worst_case1)};

  for (int s = 0; s < 10; ++s) {
    Mat4 u = haar_random_unitary(s);
    MonteCarloEstimate mc = ep_monte_carlo(u, 100000, 7);
    if (std::abs(mc.mean - ep_exact(u)) > 3.0 * mc.std_error)
      return {false, "Monte Carlo outside 3 sigma at seed " + std::to_string(s)};
  }
  return {true, "constants, products, closed form, Monte Carlo all within bounds"};
}

std::pair<bool, std::string> swap_lower_bound() {
  SwapBoundReport rep = swap_lower_bound_witness();
  if (!rep.pass) return {false, "witness report failed"};
  for (const auto& c : rep.candidates)
    if (!c.is_product || c.dist_to_swap <= 0.5 || std::abs(c.ep) > 1e-10)
      return {false, "candidate check failed"};
  if (rep.case2_gap <= 1e-3) return {false, "EP gap missing"};

  double best = tqtest::template_fit_residual(gate_matrix(Gate::swap()), 2,
                                              200, 99, 2000);
  return {best >= 0.05,
          "witness ok; best 2-CNOT fit to SWAP over 200 restarts " + fmt(best)};
}

std::pair<bool, std::string> rewrite_soundness() {
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    Circuit c = tqtest::random_circuit(20000 + s, 40);
    Circuit sc = simplify(c);
    worst = std::max(
        worst, dist_up_to_phase(circuit_to_unitary(sc), circuit_to_unitary(c)));
    Circuit sc2 = simplify(sc);
    if (sc2.gates.size() != sc.gates.size())
      return {false, "not idempotent at seed " + std::to_string(s)};
    if (sc.gates.size() > c.gates.size())
      return {false, "grew at seed " + std::to_string(s)};
  }
  return {worst < 1e-9, "1000 circuits, worst phase distance " + fmt(worst)};
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
  std::string out_path = "/tmp/tq_acc_out.txt";
  std::string cmd = std::string(TQSYNTH_CLI_PATH) + " " + args + " > " +
                    out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  exit_code = WEXITSTATUS(rc);
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_matrix_json(const std::string& path, const Mat4& u) {
  std::ofstream f(path);
  auto row = [&](int i, bool re) {
    std::string s = "[";
    for (int j = 0; j < 4; ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g",
                    re ? u(i, j).real() : u(i, j).imag());
      s += std::string(j ? "," : "") + buf;
    }
    return s + "]";
  };
  f << "{\"dim\":4,\"re\":[";
  for (int i = 0; i < 4; ++i) f << (i ? "," : "") << row(i, true);
  f << "],\"im\":[";
  for (int i = 0; i < 4; ++i) f << (i ? "," : "") << row(i, false);
  f << "]}";
}

std::pair<bool, std::string> cli_determinism() {
  for (int s = 0; s < 5; ++s) {
    write_matrix_json("/tmp/tq_acc.json", haar_random_unitary(70 + s));
    int rc1 = 0, rc2 = 0;
    std::string a = run_cli_capture("synth /tmp/tq_acc.json", rc1);
    std::string b = run_cli_capture("synth /tmp/tq_acc.json", rc2);
    if (rc1 != 0 || rc2 != 0) return {false, "synth exited nonzero"};
    if (a != b) return {false, "outputs differ between identical runs"};

    std::ofstream("/tmp/tq_acc_circ.txt") << a;
    int rcv = 0;
    run_cli_capture("verify /tmp/tq_acc.json /tmp/tq_acc_circ.txt", rcv);
    if (rcv != 0) return {false, "synth output failed verify"};
  }
  return {true, "5 matrices: byte-identical reruns, verify round trip"};
}

}  // namespace

int main() {
  criterion(1, "generic synthesis: 3 CNOTs, <=15 rotations, residual < 1e-8",
            generic_synthesis);
  criterion(2, "SO(4) synthesis: exactly 2 CNOTs, <=12 one-qubit gates",
            so4_synthesis);
  criterion(3, "O(4) det -1: 3 CNOTs after SWAP expansion, <=12 one-qubit gates",
            o4_negdet_synthesis);
  criterion(4, "magic basis: circuit exactness and tensor factorization",
            magic_exactness);
  criterion(5, "canonical parameters of CNOT and SWAP", canonical_parameters);
  criterion(6, "interaction template matches the matrix exponential",
            n_template);
  criterion(7, "entangling power: constants, closed form, Monte Carlo",
            ep_constants);
  criterion(8, "SWAP needs 3 CNOTs: witness and 2-CNOT fit failure",
            swap_lower_bound);
  criterion(9, "rewrite soundness and idempotence", rewrite_soundness);
  criterion(10, "CLI determinism and verify round trip", cli_determinism);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
