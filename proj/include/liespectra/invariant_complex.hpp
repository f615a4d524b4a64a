#pragma once

// Left-invariant forms on a compact Lie group with bi-invariant metric.
//
// Forms are written in the unit coframe phi^1..phi^n, so d depends only on
// the structure constants. Factor scales and the global metric factor enter
// through the coframe weights |phi^i|^2 = t_b / kappa, which makes delta a
// weighted transpose of d and keeps every operator rational.

#include "complex.hpp"
#include "lie_core.hpp"

#include <string>
#include <vector>

namespace liespectra {

/// d phi^i = sum_{j<k} C_ijk phi^j ^ phi^k.
inline Form coframe_differential(const LieAlgebraMetric& g, int i) {
  const int n = g.dim();
  Form f(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (g.c(i, j, k) != 0) f.add(MultiIndex((std::uint64_t{1} << j) | (std::uint64_t{1} << k)), g.c(i, j, k));
  return f;
}

/// `extra_weight` multiplies every coframe weight uniformly.
inline ExteriorComplex invariant_complex(const LieAlgebraMetric& g, const Rational& extra_weight = Rational(1)) {
  if (extra_weight <= 0) throw std::invalid_argument("weight must be positive");
  std::vector<Rational> w;
  std::vector<int> blocks;
  std::vector<Form> diffs;
  for (int i = 0; i < g.dim(); ++i) {
    w.push_back(g.coframe_weight(i) * extra_weight);
    blocks.push_back(g.factor_of(i));
    diffs.push_back(coframe_differential(g, i));
  }
  return ExteriorComplex(std::move(w), std::move(blocks), std::move(diffs));
}

inline ComplexOperator d_invariant(const LieAlgebraMetric& g, int p) { return invariant_complex(g).d_operator(p); }

/// Weighted adjoint of d_{p-1}. With unit scales and weight 1 this is the
/// plain transpose; a uniform weight w multiplies it by w.
inline ComplexOperator delta_invariant(const LieAlgebraMetric& g, int p, const Rational& weight = Rational(1)) {
  return invariant_complex(g, weight).delta_operator(p);
}

inline ComplexOperator laplacian_invariant(const LieAlgebraMetric& g, int p) {
  return invariant_complex(g).laplacian_operator(p);
}

inline SpectrumTable spectrum(const LieAlgebraMetric& g, int p) { return invariant_complex(g).spectrum(p); }

struct StructureIdentityReport {
  bool passed = true;
  std::vector<Rational> lambda;         // sum_{j<k} C_ijk^2, unit coframe
  std::vector<Rational> scaled_lambda;  // diagonal of Delta^1 under the scaled metric
  std::string witness;                  // first failing (l,i), 1-based
};

/// Checks sum_{j<k} C_ljk C_ijk = lambda_i delta_il and that Delta^1 is
/// diagonal in the coframe with entries (t_b/kappa) lambda_i.
inline StructureIdentityReport structure_identity_check(const LieAlgebraMetric& g) {
  const int n = g.dim();
  StructureIdentityReport r;
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      Rational s(0);
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) s += g.c(l, j, k) * g.c(i, j, k);
      if (l == i) {
        r.lambda.push_back(s);
      } else if (s != 0 && r.passed) {
        r.passed = false;
        r.witness = "(" + std::to_string(l + 1) + "," + std::to_string(i + 1) + ")";
      }
    }
  }
  auto lap = laplacian_invariant(g, 1).matrix;
  for (int i = 0; i < n; ++i) {
    r.scaled_lambda.push_back(lap.at(i, i));
    if (r.scaled_lambda.back() != g.coframe_weight(i) * r.lambda[i] && r.passed) {
      r.passed = false;
      r.witness = "Delta1(" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ")";
    }
    for (const auto& [c, v] : lap.row(i)) {
      if (static_cast<int>(c) != i && r.passed) {
        r.passed = false;
        r.witness = "Delta1(" + std::to_string(i + 1) + "," + std::to_string(c + 1) + ")";
      }
    }
  }
  return r;
}

}  // namespace liespectra
