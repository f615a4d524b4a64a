#include <liespectra/qpolyform.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace liespectra;

namespace liespectra {
void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.str(); }
void PrintTo(const FourierEntry& e, std::ostream* os) { *os << "(" << to_string(e.lambda) << ", " << to_string(e.norm_sq) << ")"; }
}  // namespace liespectra

namespace {

const SphereLayout kS3{SphereFactor{4, Rational(1)}};
const SphereLayout kS1{SphereFactor{2, Rational(1)}};

Polynomial x(int i, int n = 4) { return Polynomial::variable(n, i); }

// Hopf coordinates on S^3: (cos a cos u, cos a sin u, sin a cos v, sin a sin v),
// with normalized measure (1/2pi)^2 d(sin^2 a) du dv. Composite Simpson in
// r = sin^2 a, equispaced rule in the angles (exact for low trig degree).
double hopf_quadrature(const std::function<double(const double*)>& f) {
  const int nr = 400, na = 24;
  double total = 0;
  for (int i = 0; i <= nr; ++i) {
    double r = static_cast<double>(i) / nr;
    double wr = (i == 0 || i == nr) ? 1 : (i % 2 ? 4 : 2);
    double ca = std::sqrt(1 - r), sa = std::sqrt(r);
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b) {
        double u = 2 * std::numbers::pi * a / na, v = 2 * std::numbers::pi * b / na;
        double pt[4] = {ca * std::cos(u), ca * std::sin(u), sa * std::cos(v), sa * std::sin(v)};
        total += wr * f(pt);
      }
  }
  return total / (3.0 * nr) / (na * na);
}

double eval(const Polynomial& p, const double* pt) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) {
    double m = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(pt[i], e[i]);
    s += m;
  }
  return s;
}

// -Laplace-Beltrami on S^3 at x0 as the flat Laplacian of the degree-0
// extension F(x/|x|), by central differences.
double fd_sphere_laplacian(const Polynomial& f, const double* x0) {
  auto ext = [&](const double* y) {
    double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    double z[4] = {y[0] / r, y[1] / r, y[2] / r, y[3] / r};
    return eval(f, z);
  };
  const double h = 1e-3;
  double lap = 0;
  for (int i = 0; i < 4; ++i) {
    double p[4] = {x0[0], x0[1], x0[2], x0[3]}, m[4] = {x0[0], x0[1], x0[2], x0[3]};
    p[i] += h;
    m[i] -= h;
    lap += (ext(p) - 2 * ext(x0) + ext(m)) / (h * h);
  }
  return -lap;
}

Polynomial random_poly(std::mt19937& rng, int nvars, int max_deg, int nterms) {
  std::uniform_int_distribution<int> coef(-5, 5), var(0, nvars - 1), deg(0, max_deg);
  Polynomial p(nvars);
  for (int t = 0; t < nterms; ++t) {
    Polynomial::Exponents e(nvars, 0);
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, ratio(coef(rng), 1 + (t % 3)));
  }
  return p;
}

Rational l2(const Polynomial& a, const Polynomial& b, const SphereLayout& l) { return integrate(a * b, l); }

}  // namespace

TEST(HaarMoments, Examples) {
  EXPECT_EQ(haar_moment({0, 0, 0, 0}), 1);
  EXPECT_EQ(haar_moment({2, 0, 0, 0}), Rational(1, 4));
  EXPECT_EQ(haar_moment({1, 1, 0, 0}), 0);
  EXPECT_EQ(haar_moment({4, 0, 0, 0}), Rational(1, 8));
  EXPECT_EQ(haar_moment({2, 2, 0, 0}), Rational(1, 24));
  EXPECT_EQ(haar_moment({2, 0}), Rational(1, 2));
}

TEST(HaarMoments, AgreeWithQuadratureUpToDegreeSix) {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b)
      for (int c = 0; a + b + c <= 6; ++c)
        for (int d = 0; a + b + c + d <= 6; ++d) {
          std::vector<int> e{a, b, c, d};
          double q = hopf_quadrature([&](const double* p) {
            return std::pow(p[0], a) * std::pow(p[1], b) * std::pow(p[2], c) * std::pow(p[3], d);
          });
          EXPECT_NEAR(haar_moment(e).get_d(), q, 1e-8) << a << b << c << d;
        }
}

TEST(HaarMoments, SymmetryAndNormalization) {
  // sum_i x_i^2 = 1 integrates to 1, and all four terms agree.
  Polynomial r2(4);
  for (int i = 0; i < 4; ++i) r2 += x(i) * x(i);
  EXPECT_EQ(integrate(r2, kS3), 1);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(integrate(x(i) * x(i), kS3), Rational(1, 4));
  EXPECT_EQ(integrate(r2 * r2 * x(0) * x(0), kS3), Rational(1, 4));
}

TEST(HaarMoments, CircleAgreesWithTrigIntegrals) {
  // c^a s^b averaged over theta, computed with an equispaced rule.
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) {
      double q = 0;
      for (int k = 0; k < 64; ++k) {
        double t = 2 * std::numbers::pi * k / 64;
        q += std::pow(std::cos(t), a) * std::pow(std::sin(t), b);
      }
      EXPECT_NEAR(haar_moment({a, b}).get_d(), q / 64, 1e-12);
    }
}

TEST(HarmonicProject, Examples) {
  auto one = harmonic_project(Polynomial::constant(4, Rational(1)), kS3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.begin()->first, 0);

  auto lin = harmonic_project(x(0), kS3);
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_EQ(lin.begin()->first, 3);
  EXPECT_EQ(lin.begin()->second, x(0));

  auto sq = harmonic_project(x(0) * x(0), kS3);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq.at(Rational(0)), Polynomial::constant(4, Rational(1, 4)));
  EXPECT_EQ(reduce_on_spheres(sq.at(Rational(8)), kS3),
            reduce_on_spheres(x(0) * x(0) - Polynomial::constant(4, Rational(1, 4)), kS3));
}

TEST(HarmonicProject, EigenvaluesMatchFiniteDifferences) {
  const double pt[4] = {0.5, -0.5, 0.1, std::sqrt(1 - 0.51)};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    Polynomial f = random_poly(rng, 4, 3, 5);
    for (const auto& [lambda, comp] : harmonic_project(f, kS3)) {
      double v = eval(comp, pt);
      EXPECT_NEAR(fd_sphere_laplacian(comp, pt), lambda.get_d() * v, 1e-4) << comp.str();
    }
  }
}

TEST(HarmonicProject, SphereLaplacianIsSecondRoute) {
  std::mt19937 rng(11);
  SphereLayout mixed{SphereFactor{4, Rational(5, 3)}, SphereFactor{2, Rational(1, 2)}};
  for (int trial = 0; trial < 8; ++trial) {
    Polynomial f = random_poly(rng, 6, 3, 6);
    for (const auto& [lambda, comp] : harmonic_project(f, mixed))
      EXPECT_EQ(sphere_laplacian(comp, mixed), reduce_on_spheres(lambda * comp, mixed)) << comp.str();
  }
}

TEST(HarmonicProject, ParsevalIdempotenceOrthogonality) {
  std::mt19937 rng(3);
  SphereLayout two{SphereFactor{4, Rational(1)}, SphereFactor{4, Rational(1, 2)}};
  for (int trial = 0; trial < 6; ++trial) {
    Polynomial f = random_poly(rng, 8, 3, 6);
    auto comps = harmonic_project(f, two);
    Rational sum(0);
    for (const auto& [l, c] : comps) sum += l2(c, c, two);
    EXPECT_EQ(sum, l2(f, f, two));
    for (const auto& [l, c] : comps) {
      auto again = harmonic_project(c, two);
      ASSERT_EQ(again.size(), 1u);
      EXPECT_EQ(again.begin()->first, l);
      for (const auto& [m, d] : comps) {
        if (m != l) {
          EXPECT_EQ(l2(c, d, two), 0);
        }
      }
    }
  }
}

TEST(HarmonicProject, EigenvaluesAddAcrossFactors) {
  SphereLayout mixed{SphereFactor{4, Rational(1, 3)}, SphereFactor{2, Rational(2)}};
  auto [c2, s2] = circle_mode(2);
  Polynomial f = x(0, 6) * c2.embed(6, 4);
  auto comps = harmonic_project(f, mixed);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps.begin()->first, Rational(1, 3) * 3 + Rational(2) * 4);
}

TEST(HarmonicProject, CapIsEnforced) {
  EXPECT_THROW(harmonic_project(pow(x(0), 5), kS3), CapExceeded);
  EXPECT_NO_THROW(harmonic_project(pow(x(0), 5), kS3, 6));
}

TEST(Dimensions, HarmonicDimensions) {
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(harmonic_dimension(4, k), Integer((k + 1) * (k + 1)));
  EXPECT_EQ(harmonic_dimension(2, 0), 1);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(harmonic_dimension(2, k), 2);
  EXPECT_EQ(function_eigenspace_dimension(kS3, Rational(3)), 4);
  EXPECT_EQ(function_eigenspace_dimension(kS3, Rational(5)), 0);
  // S^3 x S^3 with multipliers 1/2: lambda 3 from bidegree (1,1) only.
  EXPECT_EQ(function_eigenspace_dimension(doubled_layout(kS3), Rational(3)), 16);
}

TEST(Pullback, Examples) {
  auto r = pullback_mult(x(0), kS3);
  auto u = [](int i) { return Polynomial::variable(8, i); };
  EXPECT_EQ(r.poly, u(0) * u(4) - u(1) * u(5) - u(2) * u(6) - u(3) * u(7));
  ASSERT_EQ(r.layout.size(), 2u);
  EXPECT_EQ(r.layout[0].multiplier, Rational(1, 2));
  EXPECT_EQ(pullback_mult(Polynomial::constant(4, Rational(1)), kS3).poly, Polynomial::constant(8, Rational(1)));

  // e^{i theta} -> e^{i(theta1 + theta2)}
  auto [c1, s1] = circle_mode(1);
  auto [cc, ss] = circle_mode(1);
  auto pc = pullback_mult(c1, kS1).poly;
  auto ps = pullback_mult(s1, kS1).poly;
  auto a = c1.embed(4, 0), b = s1.embed(4, 0), c = cc.embed(4, 2), d = ss.embed(4, 2);
  EXPECT_EQ(pc, a * c - b * d);
  EXPECT_EQ(ps, a * d + b * c);
}

TEST(Pullback, QuaternionNormIsMultiplicative) {
  Polynomial r2(4);
  for (int i = 0; i < 4; ++i) r2 += x(i) * x(i);
  auto pr = pullback_mult(r2, kS3).poly;
  Polynomial u2(8), v2(8);
  for (int i = 0; i < 4; ++i) {
    u2 += Polynomial::variable(8, i) * Polynomial::variable(8, i);
    v2 += Polynomial::variable(8, 4 + i) * Polynomial::variable(8, 4 + i);
  }
  EXPECT_EQ(pr, u2 * v2);
}

TEST(Pullback, RingHomomorphism) {
  std::mt19937 rng(5);
  SphereLayout mixed{SphereFactor{4, Rational(1)}, SphereFactor{2, Rational(1)}};
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f = random_poly(rng, 6, 2, 4), g = random_poly(rng, 6, 2, 4);
    auto mf = pullback_mult(f, mixed).poly, mg = pullback_mult(g, mixed).poly;
    EXPECT_EQ(pullback_mult(f * g, mixed).poly, mf * mg);
    EXPECT_EQ(pullback_mult(f + g, mixed).poly, mf + mg);
  }
}

TEST(Thm11, EigenfunctionPullbacks) {
  auto lin = verify_thm_1_1(x(0), kS3, Rational(3));
  EXPECT_TRUE(lin.passed) << lin.offending;
  ASSERT_EQ(lin.component_eigenvalues.size(), 1u);
  EXPECT_EQ(lin.component_eigenvalues[0], 3);

  auto quad = verify_thm_1_1(x(0) * x(1), kS3, Rational(8));
  EXPECT_TRUE(quad.passed) << quad.offending;
  for (const auto& l : quad.component_eigenvalues) EXPECT_EQ(l, 8);

  auto one = verify_thm_1_1(Polynomial::constant(4, Rational(1)), kS3, Rational(0));
  EXPECT_TRUE(one.passed);

  auto [c2, s2] = circle_mode(2);
  EXPECT_TRUE(verify_thm_1_1(s2, kS1, Rational(4)).passed);
}

TEST(Thm11, NonEigenfunctionIsReported) {
  auto r = verify_thm_1_1(x(0) + x(0) * x(1), kS3, Rational(3));
  EXPECT_FALSE(r.input_is_eigenfunction);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.offending.empty());
}

TEST(Thm11, HoldsForEveryHarmonicComponentOfRandomInputs) {
  std::mt19937 rng(17);
  SphereLayout l{SphereFactor{4, Rational(3, 2)}};
  for (int trial = 0; trial < 4; ++trial)
    for (const auto& [lambda, comp] : harmonic_project(random_poly(rng, 4, 2, 4), l))
      EXPECT_TRUE(verify_thm_1_1(comp, l, lambda).passed) << comp.str();
}

TEST(Thm11, WrongMultiplierBreaksIt) {
  // With metric factor 1 on G x G the eigenvalue doubles.
  auto r = verify_thm_1_1(x(0), kS3, Rational(3), Rational(1));
  EXPECT_FALSE(r.passed);
}

// ---------------------------------------------------------------------------

namespace {
Form gen(int n, int i) { return Form::generator(n, i); }
}  // namespace

TEST(FourierForms, PullbackOfCoordinateFunction) {
  auto g = build_su2();
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  auto f = single_piece(src, 0, Piece::function(x(0)));
  auto r = mu_count(pullback(f, dst));
  EXPECT_EQ(r.mu, 1);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].lambda, 3);
  EXPECT_TRUE(r.parseval());
  EXPECT_TRUE(verify_thm_1_2_bound(3, 0, function_eigenspace_dimension(kS3, Rational(3)), r));
  EXPECT_EQ(bound_thm_1_2(3, 0, 4), 4);
}

TEST(FourierForms, PullbackOfCoframeSplitsInTwo) {
  auto g = build_su2();
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  auto phi = single_piece(src, 0, Piece::form_piece(gen(3, 0), 4));
  auto r = mu_count(pullback(phi, dst));
  EXPECT_EQ(r.mu, 2);
  EXPECT_EQ(r.support(), (std::vector<Rational>{2, 6}));
  EXPECT_TRUE(r.parseval());
  EXPECT_TRUE(verify_thm_1_2_bound(3, 1, 3, r));
}

TEST(FourierForms, TildeBettiNumbersMatchKunneth) {
  // S^3 x S^3 has Betti numbers (1,0,0,2,0,0,1).
  auto tx = tilde_complex(build_su2());
  const std::vector<int> betti{1, 0, 0, 2, 0, 0, 1};
  for (int p = 0; p <= 6; ++p) EXPECT_EQ(tx.spectrum(p).kernel_dimension(), betti[p]) << p;
}

TEST(FourierForms, PullbackOfVolumeIsNotHarmonic) {
  // m^*[vol] = [vol] x 1 + 1 x [vol] is a nonzero class, so the harmonic part
  // survives, and the remainder sits at eigenvalue 4.
  auto g = build_su2();
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  Form vol = wedge(wedge(gen(3, 0), gen(3, 1)), gen(3, 2));
  auto r = mu_count(pullback(single_piece(src, 0, Piece::form_piece(vol, 4)), dst));
  EXPECT_EQ(r.mu, 2);
  EXPECT_EQ(r.entries, (std::vector<FourierEntry>{{0, ratio(1, 4)}, {4, ratio(3, 4)}}));
  EXPECT_EQ(r.input_norm_sq, 1);
  EXPECT_TRUE(r.parseval());
}

TEST(FourierForms, TorusCoordinateFormIsSingleEigenvalue) {
  auto g = build_circle();
  auto r = mu_count(pullback(single_piece(space_for_group(g), 0, Piece::form_piece(gen(1, 0), 2)), space_for_product(g)));
  EXPECT_EQ(r.mu, 1);
  EXPECT_EQ(r.support(), (std::vector<Rational>{0}));
  EXPECT_TRUE(verify_thm_1_2_bound(1, 1, 1, r));
}

TEST(FourierForms, ComponentsAreEigenformsByProductRule) {
  auto g = direct_sum(build_su2(Rational(1, 2)), build_su2(Rational(5, 3)), Rational(1));
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  auto psi = wedge(single_piece(src, 1, Piece::function(x(0))), single_piece(src, 0, Piece::form_piece(gen(3, 0), 4)));
  auto pulled = pullback(psi, dst);
  auto comps = fourier_components(pulled);
  Rational total(0);
  for (const auto& [lambda, comp] : comps) {
    EXPECT_TRUE(same_form(laplacian(comp), lambda * comp)) << to_string(lambda);
    total += norm_sq(comp);
    for (const auto& [mu, other] : comps) {
      if (mu != lambda) {
        EXPECT_EQ(inner(comp, other), 0);
      }
    }
  }
  EXPECT_EQ(total, norm_sq(pulled));
  // The input is itself an eigenform: 5/3 * 3 + 1/2 * 4 = 7.
  EXPECT_TRUE(same_form(laplacian(psi), Rational(7) * psi));
}

TEST(FourierForms, ExactPieceMatchesDifferentialOfFunction) {
  // d x1 on S^3 has |dF|^2 = integral of |grad F|^2 = lambda * |F|^2.
  auto g = build_su2(Rational(7, 3));
  auto src = space_for_group(g);
  auto df = single_piece(src, 0, Piece::exact(x(0)));
  auto f = single_piece(src, 0, Piece::function(x(0)));
  EXPECT_EQ(norm_sq(df), Rational(7) * norm_sq(f));
  EXPECT_TRUE(same_form(laplacian(df), Rational(7) * df));
  auto r = mu_count(pullback(df, space_for_product(g)));
  EXPECT_EQ(r.mu, 1);
  EXPECT_EQ(r.support(), (std::vector<Rational>{7}));
  EXPECT_TRUE(r.parseval());
}

TEST(FourierForms, ExactPieceIsOrthogonalToInvariantForms) {
  auto g = build_su2();
  auto src = space_for_group(g);
  auto df = single_piece(src, 0, Piece::exact(x(0) * x(1)));
  auto phi = single_piece(src, 0, Piece::form_piece(gen(3, 0), 4));
  EXPECT_EQ(inner(df, phi), 0);
}

TEST(FourierForms, RejectsMismatchedPieces) {
  auto g = build_su2();
  auto src = space_for_group(g);
  QPolyForm f(src, 1);
  Term t = f.unit_term();
  EXPECT_THROW(f.add(t), std::invalid_argument);
  t.pieces[0] = Piece::function(x(0, 3));
  EXPECT_THROW(f.add(t), std::invalid_argument);
  EXPECT_THROW(QPolyForm(nullptr, 0), std::invalid_argument);
}

TEST(FourierForms, WedgeSignFollowsBlockOrder) {
  auto g = direct_sum(build_su2(), build_su2(), Rational(1));
  auto src = space_for_group(g);
  auto a = single_piece(src, 0, Piece::form_piece(gen(3, 0), 4));
  auto b = single_piece(src, 1, Piece::form_piece(gen(3, 1), 4));
  EXPECT_TRUE(same_form(wedge(a, b), Rational(-1) * wedge(b, a)));
  EXPECT_EQ(norm_sq(wedge(a, a)), 0);
}
