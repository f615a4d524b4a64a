// Invariant complex on G and tilde complex on G x G.

#include <liespectra/invariant_complex.hpp>
#include <liespectra/tilde_complex.hpp>

#include <gtest/gtest.h>

#include <array>

using namespace liespectra;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex::from_indices(v); }
Form mono(int n, std::vector<int> v, Rational c = Rational(1)) { return Form::monomial(n, mi(v), c); }

// Chevalley-Eilenberg oracle: (d phi^i)(e_j, e_k) = -phi^i([e_j, e_k]) with the
// bracket of the imaginary quaternions, [e1, e2] = 2 e3 cyclically.
Rational ce_oracle(int i, int j, int k) {
  static const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                   {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                   {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  // [e_j, e_k] = 2 eps_jkl e_l, so phi^i([e_j, e_k]) = 2 eps_jki.
  return Rational(-2 * eps[j][k][i]);
}

LieAlgebraMetric torus(int n) {
  auto g = build_circle();
  for (int i = 1; i < n; ++i) g = direct_sum(g, build_circle(), Rational(1));
  return g;
}

std::vector<std::pair<std::string, LieAlgebraMetric>> suite() {
  return {{"su2", build_su2()},
          {"S1", build_circle()},
          {"T2", torus(2)},
          {"su2+su2", direct_sum(build_su2(), build_su2(), Rational(1))},
          {"su2+su2 kappa2", direct_sum(build_su2(), build_su2(), Rational(2))},
          {"su2+S1", direct_sum(build_su2(), build_circle(), Rational(1))},
          {"su2(1/3)+su2(5/2)", direct_sum(build_su2(Rational(1, 3)), build_su2(Rational(5, 2)), Rational(1))}};
}

}  // namespace

TEST(InvariantComplex, DifferentialMatchesChevalleyEilenbergOracle) {
  auto g = build_su2();
  auto d1 = d_invariant(g, 1);
  auto b2 = basis(3, 2);
  for (int i = 0; i < 3; ++i)
    for (std::size_t r = 0; r < b2.size(); ++r) {
      auto pos = b2[r].positions();
      EXPECT_EQ(d1.matrix.at(r, i), ce_oracle(i, pos[0], pos[1]));
    }
  auto cx = invariant_complex(g);
  EXPECT_EQ(cx.d(Form::generator(3, 0)), mono(3, {2, 3}, Rational(-2)));
  EXPECT_TRUE(cx.d(mono(3, {2, 3})).is_zero());
  EXPECT_TRUE(d_invariant(g, 0).matrix.is_zero());
  EXPECT_THROW(d_invariant(g, 4), std::out_of_range);
  EXPECT_THROW(d_invariant(g, -1), std::out_of_range);
  for (int p = 0; p <= 3; ++p) EXPECT_TRUE(d_invariant(torus(3), p).matrix.is_zero());
}

TEST(InvariantComplex, Codifferential) {
  auto g = build_su2();
  auto cx = invariant_complex(g);
  EXPECT_EQ(cx.delta(mono(3, {2, 3})), Form::generator(3, 0) * Rational(-2));
  // Weight 1: delta_p is the plain transpose of d_{p-1}.
  for (int p = 1; p <= 3; ++p) EXPECT_EQ(delta_invariant(g, p).matrix, d_invariant(g, p - 1).matrix.transpose());
  // A uniform weight w multiplies delta by w.
  for (int p = 1; p <= 3; ++p)
    EXPECT_EQ(delta_invariant(g, p, Rational(1, 2)).matrix, d_invariant(g, p - 1).matrix.transpose().scaled(Rational(1, 2)));
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(cx.delta(Form::generator(3, i)).is_zero());
  for (int p = 1; p <= 2; ++p) EXPECT_TRUE(delta_invariant(torus(2), p).matrix.is_zero());
  EXPECT_THROW(delta_invariant(g, 0), std::out_of_range);
  EXPECT_THROW(delta_invariant(g, 4), std::out_of_range);
}

TEST(InvariantComplex, LaplacianExamples) {
  EXPECT_EQ(laplacian_invariant(build_su2(), 1).dense(), Rational(4) * Matrix<Rational>::identity(3));
  for (int p = 0; p <= 2; ++p) EXPECT_TRUE(laplacian_invariant(torus(2), p).matrix.is_zero());
  for (auto t : {Rational(1, 2), Rational(3), Rational(5, 7)})
    EXPECT_EQ(laplacian_invariant(build_su2(t), 1).dense(), Rational(4) * t * Matrix<Rational>::identity(3));
}

TEST(InvariantComplex, SpectrumExamples) {
  auto s1 = spectrum(build_su2(), 1);
  ASSERT_EQ(s1.entries.size(), 1u);
  EXPECT_EQ(s1.entries[0].eigenvalue, 4);
  EXPECT_EQ(s1.entries[0].multiplicity, 3);
  auto s0 = spectrum(build_su2(), 0);
  ASSERT_EQ(s0.entries.size(), 1u);
  EXPECT_EQ(s0.entries[0].eigenvalue, 0);
  EXPECT_EQ(s0.entries[0].multiplicity, 1);
  auto pair = spectrum(direct_sum(build_su2(), build_su2(), Rational(2)), 1);
  ASSERT_EQ(pair.entries.size(), 1u);
  EXPECT_EQ(pair.entries[0].eigenvalue, 2);
  EXPECT_EQ(pair.entries[0].multiplicity, 6);
  auto circ = spectrum(build_circle(), 0);
  EXPECT_EQ(circ.entries.size(), 1u);
  EXPECT_EQ(circ.entries[0].eigenvalue, 0);
}

TEST(InvariantComplex, SpectrumEntriesAreExactEigenpairs) {
  for (auto& [name, g] : suite()) {
    auto cx = invariant_complex(g);
    for (int p = 0; p <= g.dim(); ++p) {
      auto t = cx.spectrum(p);
      EXPECT_EQ(static_cast<std::size_t>(t.total_multiplicity()), basis(g.dim(), p).size()) << name;
      for (std::size_t i = 0; i + 1 < t.entries.size(); ++i) EXPECT_LT(t.entries[i].eigenvalue, t.entries[i + 1].eigenvalue);
      for (auto& e : t.entries) {
        EXPECT_GT(e.multiplicity, 0);
        for (auto& v : e.eigenbasis) EXPECT_EQ(cx.laplacian(v), e.eigenvalue * v) << name << " p=" << p;
      }
    }
  }
}

TEST(InvariantComplex, StructureIdentity) {
  auto r = structure_identity_check(build_su2());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.lambda, (std::vector<Rational>{4, 4, 4}));
  auto t = structure_identity_check(torus(2));
  EXPECT_TRUE(t.passed);
  EXPECT_EQ(t.lambda, (std::vector<Rational>{0, 0}));
  auto m = structure_identity_check(direct_sum(build_su2(), build_circle(), Rational(1)));
  EXPECT_TRUE(m.passed);
  EXPECT_EQ(m.lambda, (std::vector<Rational>{4, 4, 4, 0}));
  auto s = structure_identity_check(direct_sum(build_su2(Rational(1, 2)), build_su2(), Rational(2)));
  EXPECT_TRUE(s.passed);
  EXPECT_EQ(s.scaled_lambda, (std::vector<Rational>{1, 1, 1, 2, 2, 2}));
  for (auto& [name, g] : suite()) EXPECT_TRUE(structure_identity_check(g).passed) << name;
}

TEST(InvariantComplex, BettiConsistency) {
  auto su2 = invariant_complex(build_su2());
  std::vector<int> k;
  for (int p = 0; p <= 3; ++p) k.push_back(su2.spectrum(p).kernel_dimension());
  EXPECT_EQ(k, (std::vector<int>{1, 0, 0, 1}));
  auto t2 = invariant_complex(torus(2));
  k.clear();
  for (int p = 0; p <= 2; ++p) k.push_back(t2.spectrum(p).kernel_dimension());
  EXPECT_EQ(k, (std::vector<int>{1, 2, 1}));
}

TEST(InvariantComplexProperty, StructuralIdentitiesOnSuite) {
  for (auto& [name, g] : suite()) {
    auto cx = invariant_complex(g);
    for (int p = 0; p <= g.dim(); ++p) {
      auto c = check_degree(cx, p);
      EXPECT_TRUE(c.d_squared_zero) << name << " p=" << p;
      EXPECT_TRUE(c.delta_adjoint) << name << " p=" << p;
      EXPECT_TRUE(c.laplacian_self_adjoint) << name << " p=" << p;
      EXPECT_TRUE(c.laplacian_psd) << name << " p=" << p;
      EXPECT_TRUE(c.commutes_with_d) << name << " p=" << p;
      EXPECT_TRUE(c.commutes_with_delta) << name << " p=" << p;
      EXPECT_TRUE(c.hodge_decomposition) << name << " p=" << p;
    }
  }
}

TEST(InvariantComplexProperty, DirectSumAssociativityPreservesSpectra) {
  auto a = build_su2(), b = build_circle(), c = build_su2(Rational(2));
  auto left = invariant_complex(direct_sum(direct_sum(a, b, Rational(1)), c, Rational(1)));
  auto right = invariant_complex(direct_sum(a, direct_sum(b, c, Rational(1)), Rational(1)));
  for (int p = 0; p <= 7; ++p) {
    auto l = left.spectrum(p), r = right.spectrum(p);
    ASSERT_EQ(l.entries.size(), r.entries.size());
    for (std::size_t i = 0; i < l.entries.size(); ++i) {
      EXPECT_EQ(l.entries[i].eigenvalue, r.entries[i].eigenvalue);
      EXPECT_EQ(l.entries[i].multiplicity, r.entries[i].multiplicity);
    }
  }
}

TEST(InvariantComplexProperty, HodgeCheckDetectsBrokenAdjoint) {
  // A derivation that fails d^2 = 0 (Jacobi violated) must not certify.
  std::vector<Rational> c(27, Rational(0));
  auto at = [&](int i, int j, int k) -> Rational& { return c[(i * 3 + j) * 3 + k]; };
  at(0, 0, 1) = 1;
  at(0, 1, 0) = -1;
  at(1, 1, 2) = 1;
  at(1, 2, 1) = -1;
  auto g = LieAlgebraMetric::from_structure(3, c);
  auto cx = invariant_complex(g);
  bool all = true;
  for (int p = 0; p <= 3; ++p) all = all && check_degree(cx, p).d_squared_zero;
  EXPECT_FALSE(all);
}

// ---------------------------------------------------------------------------

TEST(TildeComplex, GeneratorDifferentials) {
  auto g = build_su2();
  auto tx = tilde_complex(g);
  // Generators: P1.1..P1.3 -> 1..3, P2.1..P2.3 -> 4..6 (1-based).
  EXPECT_EQ(tx.d(Form::generator(6, 3)), mono(6, {5, 6}, Rational(-2)));
  Form expected = mono(6, {2, 3}, Rational(-2)) + mono(6, {2, 6}, Rational(-2));
  // Phi_2^2 ^ Phi_1^3 = -Phi_1^3 ^ Phi_2^2
  expected += mono(6, {3, 5}, Rational(2));
  EXPECT_EQ(tx.d(Form::generator(6, 0)), expected);
  for (int i = 0; i < 6; ++i) EXPECT_TRUE(tx.d(tx.d(Form::generator(6, i))).is_zero());
}

TEST(TildeComplex, CodifferentialIdentities) {
  auto g = build_su2();
  auto tx = tilde_complex(g);
  auto v = tx.delta(mono(6, {5, 6}));
  EXPECT_EQ(v, Form::generator(6, 3) * Rational(-1));
  EXPECT_EQ(v.coefficient(MultiIndex::single(0)), 0);
  EXPECT_EQ(tx.delta(mono(6, {2, 6})), Form::generator(6, 0) * Rational(-1));
  // delta = (1/2) d^T at every degree for the unit metric.
  for (int p = 1; p <= 6; ++p)
    EXPECT_EQ(delta_tilde(g, p).matrix, d_tilde(g, p - 1).matrix.transpose().scaled(Rational(1, 2))) << p;
  // Componentwise: D_1 = 0 and D_2 = C/2 on Phi_2 ^ Phi_2; Phi_1 ^ Phi_2 gives C/2 on Phi_1.
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      auto d22 = tx.delta(Form::monomial(6, MultiIndex((1ULL << (3 + j)) | (1ULL << (3 + k)))));
      auto d12 = tx.delta(Form::monomial(6, MultiIndex((1ULL << j) | (1ULL << (3 + k)))));
      for (int l = 0; l < 3; ++l) {
        EXPECT_EQ(d22.coefficient(MultiIndex::single(l)), 0);
        EXPECT_EQ(d22.coefficient(MultiIndex::single(3 + l)), Rational(g.c(l, j, k) / 2));
        EXPECT_EQ(d12.coefficient(MultiIndex::single(l)), Rational(g.c(l, j, k) / 2));
      }
    }
}

TEST(TildeComplex, DegreeOneLaplacianSplit) {
  auto d = laplacian_tilde(build_su2(), 1).dense();
  Matrix<Rational> expected(6, 6);
  for (int i = 0; i < 3; ++i) {
    expected(i, i) = 6;
    expected(3 + i, 3 + i) = 2;
  }
  EXPECT_EQ(d, expected);
  for (auto t : {Rational(1, 2), Rational(7, 3)}) {
    auto dt = laplacian_tilde(build_su2(t), 1).dense();
    EXPECT_EQ(dt, t * expected);
  }
  EXPECT_TRUE(laplacian_tilde(torus(2), 1).matrix.is_zero());
  EXPECT_TRUE(laplacian_tilde(build_su2(), 0).matrix.is_zero());
  EXPECT_EQ(basis(6, 0).size(), 1u);
}

TEST(TildeComplex, DSquaredZeroAllDegrees) {
  for (auto& [name, g] : suite()) {
    if (g.dim() > 6) continue;
    auto tx = tilde_complex(g);
    for (int p = 0; p + 1 <= 2 * g.dim(); ++p)
      EXPECT_TRUE((tx.d_operator(p + 1).matrix * tx.d_operator(p).matrix).is_zero()) << name << " p=" << p;
  }
}

TEST(TildeComplex, PullbackExamples) {
  EXPECT_EQ(pullback_m(Form::generator(3, 0)), Form::generator(6, 0) + Form::generator(6, 3));
  Form e12 = mono(6, {1, 2}) + mono(6, {1, 5});
  e12 += mono(6, {2, 4}, Rational(-1));  // Phi_2^1 ^ Phi_1^2
  e12 += mono(6, {4, 5});
  EXPECT_EQ(pullback_m(mono(3, {1, 2})), e12);
  EXPECT_EQ(pullback_m(Form::constant(3, Rational(1))), Form::constant(6, Rational(1)));
}

TEST(TildeComplexProperty, PullbackIntertwinesDifferentials) {
  for (auto& [name, g] : suite()) {
    if (g.dim() > 6) continue;
    auto cx = invariant_complex(g);
    auto tx = tilde_complex(g);
    for (int p = 0; p <= g.dim(); ++p)
      for (auto idx : basis(g.dim(), p)) {
        auto phi = Form::monomial(g.dim(), idx);
        ASSERT_EQ(tx.d(pullback_m(phi)), pullback_m(cx.d(phi))) << name << " " << idx.str();
      }
  }
}

TEST(TildeComplexProperty, SplitForEveryCoframeEigenform) {
  for (auto& [name, g] : suite()) {
    auto cx = invariant_complex(g);
    for (auto& e : cx.spectrum(1).entries)
      for (auto& v : e.eigenbasis) {
        auto s = split_pullback(g, v);
        EXPECT_TRUE(s.verified()) << name;
        EXPECT_EQ(s.lambda, e.eigenvalue);
        EXPECT_EQ(s.lambda1, Rational(3, 2) * e.eigenvalue);
        EXPECT_EQ(s.lambda2, Rational(1, 2) * e.eigenvalue);
      }
  }
}

TEST(TildeComplexProperty, StructuralIdentities) {
  for (auto& [name, g] : suite()) {
    if (g.dim() > 4) continue;
    auto tx = tilde_complex(g);
    for (int p = 0; p <= 2 * g.dim(); ++p) {
      auto c = check_degree(tx, p);
      EXPECT_TRUE(c.ok()) << name << " p=" << p;
    }
  }
}

TEST(TildeComplexProperty, DegreeZeroIsConstants) {
  for (auto& [name, g] : suite()) {
    auto t = tilde_complex(g).spectrum(0);
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_EQ(t.entries[0].eigenvalue, 0);
    EXPECT_EQ(t.entries[0].multiplicity, 1);
  }
}

TEST(TildeComplex, SplitExamples) {
  auto s = split_pullback(build_su2(), Form::generator(3, 0));
  EXPECT_EQ(s.phi1, Form::generator(6, 0));
  EXPECT_EQ(s.phi2, Form::generator(6, 3));
  EXPECT_EQ(s.lambda1, 6);
  EXPECT_EQ(s.lambda2, 2);
  EXPECT_TRUE(s.verified());
  auto t = split_pullback(build_circle(), Form::generator(1, 0));
  EXPECT_EQ(t.lambda1, 0);
  EXPECT_EQ(t.lambda2, 0);
  EXPECT_TRUE(t.verified());
  auto r = split_pullback(build_su2(Rational(1, 3)), Form::generator(3, 2));
  EXPECT_EQ(r.lambda1, 2);
  EXPECT_EQ(r.lambda2, Rational(2, 3));
  auto mixed = direct_sum(build_su2(), build_circle(), Rational(1));
  EXPECT_THROW(split_pullback(mixed, Form::generator(4, 0) + Form::generator(4, 3)), std::domain_error);
  EXPECT_THROW(split_pullback(build_su2(), mono(3, {1, 2})), std::invalid_argument);
}

TEST(TildeComplex, FrameCheck) {
  for (auto g : {build_su2(), torus(2)}) {
    auto r = frame_check(g);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.hh, Matrix<Rational>::identity(g.dim()));
    EXPECT_TRUE(r.hv.is_zero());
  }
  auto bad = frame_check(build_su2(), Rational(1));
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.hh, Rational(1, 2) * Matrix<Rational>::identity(3));
}

TEST(TildeComplex, HarmonicTests) {
  auto t2 = torus(2);
  for (int p = 0; p <= 2; ++p)
    for (auto idx : basis(2, p)) {
      auto r = harmonic_test(t2, Form::monomial(2, idx));
      EXPECT_TRUE(r.phi_harmonic && r.pullback_harmonic && r.in_wedge_e0) << idx.str();
    }
  auto vol = harmonic_test(build_su2(), mono(3, {1, 2, 3}));
  EXPECT_TRUE(vol.phi_harmonic);
  EXPECT_FALSE(vol.pullback_harmonic);
  EXPECT_FALSE(vol.in_wedge_e0);
  auto one = harmonic_test(build_su2(), Form::generator(3, 0));
  EXPECT_FALSE(one.phi_harmonic);
  EXPECT_FALSE(one.pullback_harmonic);
  EXPECT_FALSE(one.in_wedge_e0);
}

TEST(TildeComplexProperty, WedgesOfHarmonicOneFormsAreHarmonic) {
  for (auto& [name, g] : suite()) {
    auto cx = invariant_complex(g);
    for (int p = 0; p <= g.dim(); ++p)
      for (auto& w : wedge_kernel_span(g, p)) EXPECT_TRUE(cx.laplacian(w).is_zero()) << name << " p=" << p;
  }
}
