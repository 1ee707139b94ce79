#pragma once

#include "tqsynth/circuit.hpp"
#include "tqsynth/kak.hpp"
#include "tqsynth/magic.hpp"

namespace tqs {

enum class SynthPath { product, one_cnot, so4, o4_neg, generic };

const char* synth_path_name(SynthPath p);

struct SynthesisReport {
  Circuit circuit;
  GateCounts counts;
  double residual = 0.0;
  int cnot_class = 0;
  SynthPath path = SynthPath::generic;
};

/// Entangling-core template: 3 CNOTs and 5 rotations whose unitary equals
/// n_matrix(alpha, beta, gamma) exactly (global e^{i pi/4} included).
Circuit synth_n(double alpha, double beta, double gamma);

/// Minimal CNOT count class from the normalized canonical parameters:
/// 0 iff (0,0,0); 1 iff (pi/4,0,0); 2 iff gamma = 0; else 3.
int cnot_class(const Mat4& u);

/// Local frames L, R with u = e^{i phase} (L.a x L.b) core (R.a x R.b);
/// requires u and core to share canonical parameters within 1e-8.
struct LocalFit {
  TensorFactors left;
  TensorFactors right;
};
LocalFit fit_local_gates(const Mat4& u, const Mat4& core);

/// Full dispatch: product/1-CNOT/SO(4)/O(4)-negdet/generic template paths,
/// always verified against the input (VerificationFailure on residual
/// above 1e-8, which would be an internal bug).
SynthesisReport synth_u4(const Mat4& u, bool expand_swap = true,
                         bool simplify_output = true);

}  // namespace tqs
