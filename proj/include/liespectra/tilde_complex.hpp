#pragma once

// Forms on G x G invariant under (L_{1,g}) and (R_{1,g^-1} L_{2,g}), described
// by their values at the identity. Generators 0..n-1 are Phi_1^i and n..2n-1
// are Phi_2^i. Under the product metric kappa (g + g) with kappa = 2 each
// generator has squared norm (t_b / kappa_G) / 2.

#include "invariant_complex.hpp"

#include <string>
#include <vector>

namespace liespectra {

/// Tilde forms reuse Form over 2n generators.
using TildeForm = Form;

inline int phi1(int i) { return i; }
inline int phi2(int n, int i) { return n + i; }

/// dPhi_2^i = sum C_ijk Phi_2^j Phi_2^k,
/// dPhi_1^i = sum C_ijk (Phi_1^j Phi_1^k + Phi_1^j Phi_2^k + Phi_2^j Phi_1^k).
inline ExteriorComplex tilde_complex(const LieAlgebraMetric& g) {
  const int n = g.dim();
  if (2 * n > 64) throw std::invalid_argument("tilde complex needs dim G <= 32");
  const int m = 2 * n;
  auto pair = [](int a, int b) { return MultiIndex((std::uint64_t{1} << a) | (std::uint64_t{1} << b)); };
  std::vector<Rational> w(m);
  std::vector<int> blocks(m);
  std::vector<Form> diffs(m, Form(m, 2));
  for (int i = 0; i < n; ++i) {
    w[phi1(i)] = w[phi2(n, i)] = g.coframe_weight(i) / 2;
    blocks[phi1(i)] = blocks[phi2(n, i)] = g.factor_of(i);
    Form& d1 = diffs[phi1(i)];
    Form& d2 = diffs[phi2(n, i)];
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Rational& c = g.c(i, j, k);
        if (c == 0) continue;
        d2.add(pair(phi2(n, j), phi2(n, k)), c);
        d1.add(pair(phi1(j), phi1(k)), c);
        d1.add(pair(phi1(j), phi2(n, k)), c);
        // Phi_2^j ^ Phi_1^k = -Phi_1^k ^ Phi_2^j
        d1.add(pair(phi1(k), phi2(n, j)), Rational(-c));
      }
  }
  return ExteriorComplex(std::move(w), std::move(blocks), std::move(diffs));
}

inline ComplexOperator d_tilde(const LieAlgebraMetric& g, int p) { return tilde_complex(g).d_operator(p); }
inline ComplexOperator delta_tilde(const LieAlgebraMetric& g, int p) { return tilde_complex(g).delta_operator(p); }
inline ComplexOperator laplacian_tilde(const LieAlgebraMetric& g, int p) {
  return tilde_complex(g).laplacian_operator(p);
}

/// m^* phi^i = Phi_1^i + Phi_2^i, extended multiplicatively.
inline TildeForm pullback_m(const Form& phi) {
  const int n = phi.dim();
  TildeForm out(2 * n, phi.degree());
  for (const auto& [idx, c] : phi.coefficients()) {
    TildeForm term = TildeForm::constant(2 * n, c);
    for (int i : idx.positions()) term = wedge(term, Form::generator(2 * n, phi1(i)) + Form::generator(2 * n, phi2(n, i)));
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Submersion frame: H_i = (e_i^L, e_i^R)/2, V_i = (e_i^L, -e_i^R)/2 in an
// orthonormal frame of G, paired under kappa (g + g).

struct FrameCheckReport {
  Matrix<Rational> hh, hv, vv;
  bool right_frame_orthonormal = true;  // requires a bi-invariant metric
  bool passed = false;
};

inline FrameCheckReport frame_check(const LieAlgebraMetric& g, const Rational& product_factor = Rational(2)) {
  const auto n = static_cast<std::size_t>(g.dim());
  FrameCheckReport r;
  for (const auto& c : validate(g).checks)
    if (c.name == "total_antisymmetry" && !c.passed) r.right_frame_orthonormal = false;
  // Coordinates in the frame (e^L_1..e^L_n, e^R_1..e^R_n) of T(G x G), whose
  // Gram matrix is product_factor * I when both frames are orthonormal.
  auto vec = [&](std::size_t i, int sign) {
    std::vector<Rational> v(2 * n, Rational(0));
    v[i] = Rational(1, 2);
    v[n + i] = Rational(sign, 2);
    return v;
  };
  auto gram = [&](int sa, int sb) {
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto a = vec(i, sa), b = vec(j, sb);
        Rational s(0);
        for (std::size_t k = 0; k < 2 * n; ++k) s += a[k] * b[k];
        m(i, j) = product_factor * s;
      }
    return m;
  };
  r.hh = gram(1, 1);
  r.hv = gram(1, -1);
  r.vv = gram(-1, -1);
  auto id = Matrix<Rational>::identity(n);
  r.passed = r.right_frame_orthonormal && r.hh == id && r.vv == id && r.hv.is_zero();
  return r;
}

// ---------------------------------------------------------------------------

struct SplitResult {
  Rational lambda;
  TildeForm phi1{0, 0};
  TildeForm phi2{0, 0};
  Rational lambda1;  // 3/2 lambda
  Rational lambda2;  // 1/2 lambda
  bool phi1_verified = false;
  bool phi2_verified = false;
  bool sum_matches_pullback = false;

  bool verified() const { return phi1_verified && phi2_verified && sum_matches_pullback; }
};

/// Splits m^* phi into its Phi_1 and Phi_2 parts. Throws std::domain_error if
/// phi is not an exact eigenform of Delta^1.
inline SplitResult split_pullback(const LieAlgebraMetric& g, const Form& phi) {
  if (phi.degree() != 1 || phi.dim() != g.dim()) throw std::invalid_argument("split needs an invariant 1-form on G");
  if (phi.is_zero()) throw std::domain_error("zero form is not an eigenform");
  const int n = g.dim();
  auto cx = invariant_complex(g);
  Form lap = cx.laplacian(phi);
  const auto& [lead, lead_c] = *phi.coefficients().begin();
  Rational lambda = lap.coefficient(lead) / lead_c;
  if (!(lap == lambda * phi)) throw std::domain_error("form is not an eigenform of the invariant Laplacian");

  SplitResult r;
  r.lambda = lambda;
  r.lambda1 = Rational(3, 2) * lambda;
  r.lambda2 = Rational(1, 2) * lambda;
  r.phi1 = TildeForm(2 * n, 1);
  r.phi2 = TildeForm(2 * n, 1);
  for (const auto& [idx, c] : phi.coefficients()) {
    int i = idx.positions().front();
    r.phi1.add(MultiIndex::single(phi1(i)), c);
    r.phi2.add(MultiIndex::single(phi2(n, i)), c);
  }
  auto tx = tilde_complex(g);
  r.phi1_verified = tx.laplacian(r.phi1) == r.lambda1 * r.phi1;
  r.phi2_verified = tx.laplacian(r.phi2) == r.lambda2 * r.phi2;
  r.sum_matches_pullback = r.phi1 + r.phi2 == pullback_m(phi);
  return r;
}

struct HarmonicTestResult {
  bool phi_harmonic = false;
  bool pullback_harmonic = false;
  bool in_wedge_e0 = false;
};

/// Basis of Lambda^p(E_0(Delta^1)): wedges of p-subsets of a kernel basis.
inline std::vector<Form> wedge_kernel_span(const LieAlgebraMetric& g, int p) {
  auto cx = invariant_complex(g);
  std::vector<Form> kernel;
  const auto table = cx.spectrum(1);
  if (const auto* e = table.find(Rational(0))) kernel = e->eigenbasis;
  std::vector<Form> out;
  const int k = static_cast<int>(kernel.size());
  if (p > k) return out;
  for (MultiIndex sub : basis(k, p)) {
    Form w = Form::constant(g.dim(), Rational(1));
    for (int i : sub.positions()) w = wedge(w, kernel[i]);
    out.push_back(std::move(w));
  }
  return out;
}

inline HarmonicTestResult harmonic_test(const LieAlgebraMetric& g, const Form& phi) {
  if (phi.dim() != g.dim()) throw std::invalid_argument("form does not live on G");
  HarmonicTestResult r;
  r.phi_harmonic = invariant_complex(g).laplacian(phi).is_zero();
  r.pullback_harmonic = tilde_complex(g).laplacian(pullback_m(phi)).is_zero();

  auto span = wedge_kernel_span(g, phi.degree());
  if (phi.is_zero()) {
    r.in_wedge_e0 = true;
  } else if (!span.empty()) {
    const std::size_t dim = basis(g.dim(), phi.degree()).size();
    Matrix<Rational> m(dim, span.size());
    Matrix<Rational> aug(dim, span.size() + 1);
    for (std::size_t c = 0; c < span.size(); ++c) {
      auto v = span[c].dense();
      for (std::size_t i = 0; i < dim; ++i) m(i, c) = aug(i, c) = v[i];
    }
    auto v = phi.dense();
    for (std::size_t i = 0; i < dim; ++i) aug(i, span.size()) = v[i];
    r.in_wedge_e0 = rank(m) == rank(aug);
  }
  return r;
}

}  // namespace liespectra
