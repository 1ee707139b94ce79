#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqsynth/circuit.hpp"
#include "tqsynth/ep.hpp"
#include "tqsynth/errors.hpp"
#include "tqsynth/kak.hpp"
#include "tqsynth/synth.hpp"

namespace {

using json = nlohmann::json;
using namespace tqs;

constexpr int kExitOk = 0;
constexpr int kExitNotUnitary = 1;
constexpr int kExitVerification = 2;
constexpr int kExitParse = 3;

struct Config {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool keep_swap = false;
  bool no_simplify = false;
  bool mc = false;
  int mc_samples = 100000;
};

struct CliParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Mat4 load_matrix(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw CliParseError(path + ": " + e.what());
  }
  if (!j.contains("dim") || j["dim"].get<int>() != 4)
    throw CliParseError(path + ": expected \"dim\": 4");
  for (const char* key : {"re", "im"}) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 4)
      throw CliParseError(path + ": missing 4x4 array \"" + key + "\"");
    for (const auto& row : j[key])
      if (!row.is_array() || row.size() != 4)
        throw CliParseError(path + ": ragged \"" + std::string(key) + "\" array");
  }
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      m(i, k) = cplx(j["re"][i][k].get<double>(), j["im"][i][k].get<double>());
  return m;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Circuit load_circuit(const std::string& path) {
  return parse_circuit_text(read_file(path));
}

int cmd_synth(const std::string& path, const Config& cfg) {
  Mat4 m = load_matrix(path);
  if (!is_unitary(m, cfg.tol)) {
    std::cerr << "error: input matrix is not unitary within tolerance\n";
    return kExitNotUnitary;
  }
  SynthesisReport report = synth_u4(m, !cfg.keep_swap, !cfg.no_simplify);
  std::cout << emit_circuit_text(report.circuit);
  std::cout << "# report:\n";
  std::cout << "# cnot_class " << report.cnot_class << "\n";
  std::cout << "# path " << synth_path_name(report.path) << "\n";
  std::cout << "# cnot " << report.counts.cnot << "\n";
  std::cout << "# one_qubit " << report.counts.one_qubit << "\n";
  std::cout << "# swap " << report.counts.swap << "\n";
  std::cout << "# residual " << fmt(report.residual) << "\n";
  return kExitOk;
}

int cmd_kak(const std::string& path, const Config& cfg) {
  Mat4 m = load_matrix(path);
  if (!is_unitary(m, cfg.tol)) {
    std::cerr << "error: input matrix is not unitary within tolerance\n";
    return kExitNotUnitary;
  }
  CanonicalDecomposition d = kak_decompose(m);
  std::cout << "alpha " << fmt(d.alpha) << "\n";
  std::cout << "beta " << fmt(d.beta) << "\n";
  std::cout << "gamma " << fmt(d.gamma) << "\n";
  std::cout << "phase " << fmt(d.phase) << "\n";
  const Mat2* locals[4] = {&d.a1, &d.a2, &d.a3, &d.a4};
  for (int i = 0; i < 4; ++i) {
    ZyzAngles z = zyz_decompose(*locals[i]);
    std::cout << "a" << (i + 1) << " " << fmt(z.alpha) << " " << fmt(z.theta)
              << " " << fmt(z.beta) << "\n";
  }
  return kExitOk;
}

int cmd_ep(const std::string& path, const Config& cfg) {
  Mat4 m = load_matrix(path);
  if (!is_unitary(m, cfg.tol)) {
    std::cerr << "error: input matrix is not unitary within tolerance\n";
    return kExitNotUnitary;
  }
  std::cout << "ep " << fmt(ep_exact(m)) << "\n";
  if (cfg.mc) {
    MonteCarloEstimate est = ep_monte_carlo(m, cfg.mc_samples, cfg.seed);
    std::cout << "mc_mean " << fmt(est.mean) << "\n";
    std::cout << "mc_std_error " << fmt(est.std_error) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& matrix_path, const std::string& circuit_path,
               const Config& cfg) {
  Mat4 m = load_matrix(matrix_path);
  Circuit c = load_circuit(circuit_path);
  double dist = dist_up_to_phase(circuit_to_unitary(c), m);
  std::cout << "dist " << fmt(dist) << "\n";
  return dist < cfg.tol ? kExitOk : kExitVerification;
}

int cmd_simulate(const std::string& circuit_path) {
  Circuit c = load_circuit(circuit_path);
  Mat4 u = circuit_to_unitary(c);
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < 4; ++k) {
      rrow.push_back(u(i, k).real());
      irow.push_back(u(i, k).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  json out{{"dim", 4}, {"re", re}, {"im", im}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit gate compiler: CNOT-optimal synthesis, canonical "
               "decomposition, and entangling power"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--tol", cfg.tol, "verification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--keep-swap", cfg.keep_swap, "emit SWAP gates unexpanded");
  app.add_flag("--no-simplify", cfg.no_simplify, "skip the rewrite pass");
  app.add_flag("--mc", cfg.mc, "also run the Monte-Carlo EP estimate");
  app.add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo sample count")
      ->check(CLI::Range(100, 100000000));

  std::string matrix_path, circuit_path;
  auto* synth = app.add_subcommand("synth", "synthesize a circuit for a matrix");
  synth->add_option("matrix", matrix_path, "matrix JSON file")->required();
  auto* kak = app.add_subcommand("kak", "print the canonical decomposition");
  kak->add_option("matrix", matrix_path, "matrix JSON file")->required();
  auto* ep = app.add_subcommand("ep", "print the entangling power");
  ep->add_option("matrix", matrix_path, "matrix JSON file")->required();
  auto* verify = app.add_subcommand("verify", "check a circuit against a matrix");
  verify->add_option("matrix", matrix_path, "matrix JSON file")->required();
  verify->add_option("circuit", circuit_path, "circuit text file")->required();
  auto* simulate = app.add_subcommand("simulate", "print a circuit's unitary");
  simulate->add_option("circuit", circuit_path, "circuit text file")->required();
  // let the shared flags appear after the subcommand too
  for (CLI::App* sub : {synth, kak, ep, verify, simulate}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(matrix_path, cfg);
    if (kak->parsed()) return cmd_kak(matrix_path, cfg);
    if (ep->parsed()) return cmd_ep(matrix_path, cfg);
    if (verify->parsed()) return cmd_verify(matrix_path, circuit_path, cfg);
    return cmd_simulate(circuit_path);
  } catch (const CliParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NotUnitaryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotUnitary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}
