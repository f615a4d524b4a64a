#pragma once

// The ten acceptance criteria as exact checks. Each returns a pass flag and a
// short detail line; run_acceptance() runs them all in order.

#include "constructions.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace liespectra {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace acceptance {

/// Groups whose invariant complexes every structural criterion runs over.
inline std::vector<std::pair<std::string, LieAlgebraMetric>> suite() {
  const Rational one(1);
  return {
      {"su2", build_su2()},
      {"S1", build_circle()},
      {"T2", direct_sum(build_circle(), build_circle(), one)},
      {"su2+su2", direct_sum(build_su2(), build_su2(), one)},
      {"su2+su2 (metric 2)", direct_sum(build_su2(), build_su2(), Rational(2))},
      {"su2+S1", direct_sum(build_su2(), build_circle(), one)},
      {"su2(1/3)+su2(5/2)", direct_sum(build_su2(ratio(1, 3)), build_su2(ratio(5, 2)), one)},
  };
}

/// Configurations exercised by criterion 6: mu0 = 1..4 and the circle variant.
inline std::vector<Thm14Config> thm14_configs() {
  std::vector<Thm14Config> out;
  for (int mu0 = 1; mu0 <= 4; ++mu0) {
    Thm14Config c;
    c.mu0 = mu0;
    out.push_back(c);
  }
  Thm14Config circle;
  circle.mu0 = 2;
  circle.p = 2;
  out.push_back(circle);
  return out;
}

class Collector {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  CriterionResult result(int id, std::string name, const std::string& summary) const {
    return {id, std::move(name), passed_, passed_ ? summary : "FAILED: " + first_failure_};
  }

 private:
  bool passed_ = true;
  std::string first_failure_;
};

inline std::string list(const std::vector<Rational>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "}";
}

inline CriterionResult frame() {
  Collector c;
  auto half = Matrix<Rational>::identity(3);
  for (std::size_t i = 0; i < 3; ++i) half(i, i) = ratio(1, 2);
  for (const auto& [name, g] : {std::pair{std::string("su2"), build_su2()},
                                std::pair{std::string("T2"), direct_sum(build_circle(), build_circle(), Rational(1))}}) {
    auto r = frame_check(g);
    const auto id = Matrix<Rational>::identity(static_cast<std::size_t>(g.dim()));
    c.check(r.passed && r.hh == id && r.vv == id && r.hv.is_zero(), name + " frame is not orthonormal");
  }
  auto bad = frame_check(build_su2(), Rational(1));
  c.check(!bad.passed && bad.hh == half, "metric factor 1 should give Gram(H,H) = I/2");
  return c.result(1, "submersion frame", "su2, T2 orthonormal; factor 1 gives I/2");
}

inline CriterionResult eigenfunction_pullback() {
  Collector c;
  const SphereLayout s3{SphereFactor{4, Rational(1)}};
  const auto x1 = Polynomial::variable(4, 0), x2 = Polynomial::variable(4, 1);
  for (const auto& [f, lambda] : {std::pair{x1, Rational(3)}, std::pair{x1 * x2, Rational(8)}}) {
    auto r = verify_thm_1_1(f, s3, lambda);
    c.check(r.passed && !r.component_eigenvalues.empty(), "pullback of " + f.str() + ": " + r.offending);
    for (const auto& mu : r.component_eigenvalues) c.check(mu == lambda, "component at " + to_string(mu));
  }
  return c.result(2, "eigenfunction pullback", "x1 -> {3}, x1*x2 -> {8}");
}

inline CriterionResult structure_identity() {
  Collector c;
  for (const auto& [name, g] : suite()) {
    auto r = structure_identity_check(g);
    c.check(r.passed, name + " witness " + r.witness);
    if (name == "su2")
      for (const auto& l : r.lambda) c.check(l == 4, "su2 lambda != 4");
    if (name == "S1" || name == "T2")
      for (const auto& l : r.lambda) c.check(l == 0, "torus lambda != 0");
  }
  return c.result(3, "structure-constant identity", "su2 -> 4, tori -> 0, all sums pass");
}

inline CriterionResult tilde_split() {
  Collector c;
  for (const Rational& t : {Rational(1), ratio(1, 3), ratio(5, 2)}) {
    auto lap = laplacian_tilde(build_su2(t), 1).dense();
    Matrix<Rational> expected(6, 6);
    for (std::size_t i = 0; i < 3; ++i) {
      expected(i, i) = 6 * t;
      expected(3 + i, 3 + i) = 2 * t;
    }
    c.check(lap == expected, "tilde Delta^1 at scale " + to_string(t));
  }
  return c.result(4, "pullback split", "diag(6,6,6,2,2,2), scales to (6t,2t)");
}

inline CriterionResult tilde_codifferential() {
  Collector c;
  auto g = build_su2();
  auto tx = tilde_complex(g);
  const int n = 3;
  auto mono = [&](int a, int b) { return Form::monomial(2 * n, MultiIndex((std::uint64_t{1} << a) | (std::uint64_t{1} << b))); };
  auto gen = [&](int a) { return Form::generator(2 * n, a); };
  for (int i = 0; i < n; ++i) {
    // d Phi_2^i = sum C Phi_2 Phi_2 and d Phi_1^i = sum C (Phi_1 Phi_1 + Phi_1 Phi_2 + Phi_2 Phi_1).
    Form d2(2 * n, 2), d1(2 * n, 2);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Rational& cc = g.c(i, j, k);
        d2 += cc * wedge(gen(phi2(n, j)), gen(phi2(n, k)));
        d1 += cc * (wedge(gen(phi1(j)), gen(phi1(k))) + wedge(gen(phi1(j)), gen(phi2(n, k))) +
                    wedge(gen(phi2(n, j)), gen(phi1(k))));
      }
    c.check(tx.d(gen(phi2(n, i))) == d2, "d Phi_2");
    c.check(tx.d(gen(phi1(i))) == d1, "d Phi_1");
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      auto v22 = tx.delta(mono(phi2(n, j), phi2(n, k)));
      for (int l = 0; l < n; ++l) {
        c.check(v22.coefficient(MultiIndex::single(phi1(l))) == 0, "D_1 != 0");
        c.check(v22.coefficient(MultiIndex::single(phi2(n, l))) == g.c(l, j, k) / 2, "D_2 != C/2");
      }
      // delta(Phi_1^j Phi_1^k) = delta(Phi_2^j Phi_1^k) = delta(Phi_1^j Phi_2^k) = 1/2 sum C Phi_1.
      Form half(2 * n, 1);
      for (int l = 0; l < n; ++l) half += (g.c(l, j, k) / 2) * gen(phi1(l));
      c.check(tx.delta(mono(phi1(j), phi1(k))) == half, "delta(Phi_1 Phi_1)");
      c.check(tx.delta(mono(phi1(j), phi2(n, k))) == half, "delta(Phi_1 Phi_2)");
      c.check(tx.delta(wedge(gen(phi2(n, j)), gen(phi1(k)))) == half, "delta(Phi_2 Phi_1)");
    }
  for (int p = 0; p + 2 <= 2 * n; ++p) c.check((tx.d_operator(p + 1).matrix * tx.d_operator(p).matrix).is_zero(), "d^2 != 0");
  return c.result(5, "tilde differential and codifferential", "D1=0, D2=C/2, mixed = C/2 on Phi_1, d^2=0 in 0..6");
}

inline CriterionResult thm14() {
  Collector c;
  std::string summary;
  const std::vector<std::vector<Rational>> expected{{7},
                                                    {6, 8},
                                                    {6, 7, 8},
                                                    {ratio(17, 3), ratio(19, 3), ratio(23, 3), ratio(25, 3)},
                                                    {6, 8}};
  const auto configs = thm14_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    auto r = run_thm14(cfg);
    c.check(r.passed, "mu0=" + std::to_string(cfg.mu0) + " p=" + std::to_string(cfg.p) + ": " + r.message);
    c.check(r.mu == cfg.mu0, "mu mismatch");
    c.check(r.computed == expected[i], "eigenvalues " + list(r.computed) + " expected " + list(expected[i]));
    summary += (summary.empty() ? "" : " ") + std::to_string(cfg.mu0) + (cfg.p > 1 ? "(p=2)" : "") + "->" + list(r.computed);
  }
  return c.result(6, "prescribed Fourier support", summary);
}

inline CriterionResult harmonic() {
  Collector c;
  auto t2 = direct_sum(build_circle(), build_circle(), Rational(1));
  for (int p = 0; p <= 2; ++p)
    for (MultiIndex idx : basis(2, p)) {
      auto r = harmonic_test(t2, Form::monomial(2, idx));
      c.check(r.phi_harmonic && r.pullback_harmonic && r.in_wedge_e0, "T2 form " + std::to_string(idx.mask()));
    }
  auto su2 = build_su2();
  Form vol = wedge(wedge(Form::generator(3, 0), Form::generator(3, 1)), Form::generator(3, 2));
  auto v = harmonic_test(su2, vol);
  c.check(v.phi_harmonic && !v.pullback_harmonic && !v.in_wedge_e0, "su2 volume triple");
  auto f = harmonic_test(su2, Form::generator(3, 0));
  c.check(!f.phi_harmonic && !f.pullback_harmonic && !f.in_wedge_e0, "su2 phi^1 triple");
  return c.result(7, "harmonic forms", "T2 all (T,T,T); su2 vol (T,F,F); su2 phi^1 (F,F,F)");
}

inline CriterionResult bounds() {
  Collector c;
  const SphereLayout s3{SphereFactor{4, Rational(1)}};
  auto g = build_su2();
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  const auto x1 = Polynomial::variable(4, 0), x2 = Polynomial::variable(4, 1);
  for (const auto& [f, lambda] : {std::pair{x1, Rational(3)}, std::pair{x1 * x2, Rational(8)}}) {
    auto r = mu_count(pullback(single_piece(src, 0, Piece::function(f)), dst));
    auto dimE = function_eigenspace_dimension(s3, lambda);
    c.check(r.mu == 1 && verify_thm_1_2_bound(3, 0, dimE, r), "function mu vs bound at " + to_string(lambda));
  }
  for (const auto& cfg : thm14_configs()) {
    auto r = run_thm14(cfg);
    c.check(r.bound_respected && Integer(r.mu) <= r.bound, "construction bound mu0=" + std::to_string(cfg.mu0));
  }
  c.check(bound_thm_1_6(3, 1, 3) == 26244, "bound_thm_1_6(3,1,3) != 26244");
  c.check(bound_thm_1_2(3, 1, 3) == 18, "bound_thm_1_2(3,1,3) != 18");
  c.check(bound_thm_1_6(3, 1, 3) >= bound_thm_1_2(3, 1, 3), "general bound below the eigenform bound");
  return c.result(8, "Fourier support bounds", "all measured mu within C(2n,p) dimE; 26244 >= 18");
}

inline CriterionResult structural() {
  Collector c;
  auto run = [&](const std::string& name, const ExteriorComplex& cx) {
    for (int p = 0; p <= cx.generators(); ++p) c.check(check_degree(cx, p).ok(), name + " p=" + std::to_string(p));
  };
  for (const auto& [name, g] : suite()) {
    run(name, invariant_complex(g));
    if (g.dim() <= 4) run(name + " tilde", tilde_complex(g));
  }
  for (const auto& cfg : thm14_configs()) {
    auto inst = build_thm14_instance(cfg);
    run("construction mu0=" + std::to_string(cfg.mu0), invariant_complex(inst.g));
    for (std::size_t b = 0; b < inst.g.factors().size(); ++b)
      run("construction factor tilde", tilde_complex(inst.g.factor_algebra(static_cast<int>(b))));
    c.check(mu_count(pullback(inst.psi, inst.product_space)).parseval(), "Parseval on construction");
  }
  auto g = build_su2();
  auto src = space_for_group(g);
  auto dst = space_for_product(g);
  Form vol = wedge(wedge(Form::generator(3, 0), Form::generator(3, 1)), Form::generator(3, 2));
  for (const Form& f : {Form::generator(3, 0), vol})
    c.check(mu_count(pullback(single_piece(src, 0, Piece::form_piece(f, 4)), dst)).parseval(), "Parseval on su2 form");
  return c.result(9, "structural invariants", "d^2, adjointness, PSD, Hodge, Parseval on suite and constructions");
}

inline CriterionResult betti() {
  Collector c;
  auto cx = invariant_complex(build_su2());
  const std::vector<int> su2{1, 0, 0, 1}, t2{1, 2, 1};
  for (int p = 0; p <= 3; ++p) c.check(cx.spectrum(p).kernel_dimension() == su2[p], "su2 b" + std::to_string(p));
  auto tx = invariant_complex(direct_sum(build_circle(), build_circle(), Rational(1)));
  for (int p = 0; p <= 2; ++p) c.check(tx.spectrum(p).kernel_dimension() == t2[p], "T2 b" + std::to_string(p));
  return c.result(10, "Betti numbers", "su2 (1,0,0,1), T2 (1,2,1)");
}

}  // namespace acceptance

inline std::vector<std::function<CriterionResult()>> acceptance_criteria() {
  using namespace acceptance;
  return {frame, eigenfunction_pullback, structure_identity, tilde_split, tilde_codifferential,
          thm14, harmonic,               bounds,             structural,  betti};
}

inline std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (const auto& f : acceptance_criteria()) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(out.size()) + 1, "criterion", false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

inline std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << "[" << (r.passed ? "PASS" : "FAIL") << "] criterion " << r.id << " " << r.name << ": " << r.detail;
  return os.str();
}

}  // namespace liespectra
