#pragma once

// Eigenforms on products of rescaled S^3 factors whose pullbacks under the
// multiplication map have a prescribed number mu0 of Fourier eigenvalues.
//
// With lambda0 = 3 (f = x1) and lambda1 = 4 (phi = phi^1), pair alpha uses
// G_alpha = S^3 at scale s_alpha and Gbar_alpha = S^3 at scale t_alpha, where
// s_alpha lambda0 + t_alpha lambda1 = lambda0 + lambda1. Then f_alpha phi^alpha
// is a 7-eigenform whose pullback splits at 7 + 2 t_alpha and 7 - 2 t_alpha.
// Odd mu0 adds df_0 on Gbar_0 at scale 7/3, whose pullback stays at 7.

#include "qpolyform.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace liespectra {

inline const Rational kLambda0{3};
inline const Rational kLambda1{4};

struct Thm14Config {
  int mu0 = 2;
  int p = 1;
  std::vector<Rational> t;  // empty selects alpha / (k + 1)
  bool allow_large = false; // lifts the k <= 2 guard

  int k() const { return mu0 / 2; }
  bool odd() const { return mu0 % 2 == 1; }

  std::vector<Rational> t_values() const {
    if (!t.empty()) return t;
    std::vector<Rational> out;
    for (int a = 1; a <= k(); ++a) out.push_back(ratio(a, k() + 1));
    return out;
  }
  std::vector<Rational> s_values() const {
    std::vector<Rational> out;
    for (const auto& ta : t_values()) out.push_back((kLambda0 + kLambda1 - ta * kLambda1) / kLambda0);
    return out;
  }
  Rational s0() const { return (kLambda0 + kLambda1) / kLambda0; }
};

/// Throws std::invalid_argument for an invalid config and std::length_error
/// when k exceeds the desk-scale guard.
inline void validate_config(const Thm14Config& cfg) {
  if (cfg.mu0 < 1) throw std::invalid_argument("mu0 must be a positive integer");
  if (cfg.p < 1) throw std::invalid_argument("form degree p must be at least 1");
  if (!cfg.allow_large && cfg.k() > 2)
    throw std::length_error("mu0 = " + std::to_string(cfg.mu0) + " needs k = " + std::to_string(cfg.k()) +
                            " > 2 factor pairs; lift the guard explicitly to proceed");
  if (!cfg.t.empty() && static_cast<int>(cfg.t.size()) != cfg.k())
    throw std::invalid_argument("need exactly k = floor(mu0/2) = " + std::to_string(cfg.k()) + " values of t");
  auto t = cfg.t_values();
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a] <= 0 || t[a] >= 1) throw std::invalid_argument("t values must lie strictly between 0 and 1");
    if (a > 0 && t[a] <= t[a - 1]) throw std::invalid_argument("t values must be strictly increasing");
  }
}

struct Thm14Instance {
  Thm14Config config;
  GroupSpec spec;
  LieAlgebraMetric g;
  std::shared_ptr<const ProductSpace> space;          // G
  std::shared_ptr<const ProductSpace> product_space;  // G x G
  QPolyForm psi;
  Rational eigenvalue;                                // lambda0 + lambda1
  std::vector<Rational> predicted;                    // increasing
  Integer dimE_lower;
};

inline Thm14Instance build_thm14_instance(const Thm14Config& cfg) {
  validate_config(cfg);
  const int k = cfg.k();
  const auto t = cfg.t_values();
  const auto s = cfg.s_values();

  GroupSpec spec;
  for (int a = 0; a < k; ++a) spec.factors.push_back({Atom::su2, s[a]});
  for (int a = 0; a < k; ++a) spec.factors.push_back({Atom::su2, t[a]});
  if (cfg.odd()) spec.factors.push_back({Atom::su2, cfg.s0()});
  for (int c = 1; c < cfg.p; ++c) spec.factors.push_back({Atom::circle, Rational(1)});
  auto g = build_group(spec);
  auto space = space_for_group(g);
  const Rational eigenvalue = kLambda0 + kLambda1;

  const auto x1 = Polynomial::variable(4, 0);
  const auto phi1 = Form::generator(3, 0);
  QPolyForm psi(space, 1);
  for (int a = 0; a < k; ++a) {
    auto f = single_piece(space, a, Piece::function(x1));
    auto phi = single_piece(space, k + a, Piece::form_piece(phi1, 4));
    psi += wedge(f, phi);
  }
  if (cfg.odd()) psi += single_piece(space, 2 * k, Piece::exact(x1));
  const std::size_t first_circle = 2 * k + (cfg.odd() ? 1 : 0);
  for (int c = 1; c < cfg.p; ++c)
    psi = wedge(psi, single_piece(space, first_circle + c - 1, Piece::form_piece(Form::generator(1, 0), 2)));

  std::vector<Rational> predicted;
  for (const auto& ta : t) {
    predicted.push_back(eigenvalue + ta * kLambda1 / 2);
    predicted.push_back(eigenvalue - ta * kLambda1 / 2);
  }
  if (cfg.odd()) predicted.push_back(eigenvalue);
  std::sort(predicted.begin(), predicted.end());

  // Degree-1 harmonics on G_alpha (4) times invariant coframe forms on Gbar_alpha (3),
  // plus d of degree-1 harmonics on Gbar_0 (4).
  Integer dimE_lower(12 * k + (cfg.odd() ? 4 : 0));
  auto product_space = space_for_product(g);
  return {cfg, std::move(spec), std::move(g), std::move(space), std::move(product_space), std::move(psi), eigenvalue,
          std::move(predicted), std::move(dimE_lower)};
}

struct Thm14Report {
  int mu0 = 0;
  int p = 0;
  std::vector<Rational> t, s;
  bool constraint_holds = false;          // s lambda0 + t lambda1 = lambda0 + lambda1
  bool predictions_distinct = false;
  bool eigenform_product_rule = false;    // Delta psi = 7 psi by the block product rule
  bool eigenform_fourier = false;         // psi has a single Fourier component at 7
  std::vector<Rational> predicted;
  std::vector<Rational> computed;
  int mu = 0;
  bool parseval = false;
  Integer bound;
  bool bound_respected = false;
  bool passed = false;
  std::string message;
};

inline Thm14Report verify_thm14(const Thm14Instance& inst) {
  Thm14Report r;
  r.mu0 = inst.config.mu0;
  r.p = inst.config.p;
  r.t = inst.config.t_values();
  r.s = inst.config.s_values();
  r.predicted = inst.predicted;

  r.constraint_holds = true;
  for (std::size_t a = 0; a < r.t.size(); ++a) {
    r.constraint_holds = r.constraint_holds && r.s[a] * kLambda0 + r.t[a] * kLambda1 == inst.eigenvalue && r.s[a] > 1;
    if (a > 0) r.constraint_holds = r.constraint_holds && r.s[a] < r.s[a - 1];
  }
  if (inst.config.odd()) r.constraint_holds = r.constraint_holds && inst.config.s0() * kLambda0 == inst.eigenvalue;
  r.predictions_distinct = std::adjacent_find(r.predicted.begin(), r.predicted.end()) == r.predicted.end();

  r.eigenform_product_rule = same_form(laplacian(inst.psi), inst.eigenvalue * inst.psi);
  auto own = fourier_components(inst.psi);
  r.eigenform_fourier = own.size() == 1 && own.begin()->first == inst.eigenvalue;

  auto report = mu_count(pullback(inst.psi, inst.product_space));
  r.computed = report.support();
  r.mu = report.mu;
  r.parseval = report.parseval();
  const long n = inst.g.dim();
  r.bound = bound_thm_1_2(n, inst.config.p, inst.dimE_lower);
  r.bound_respected = verify_thm_1_2_bound(n, inst.config.p, inst.dimE_lower, report);

  r.passed = r.constraint_holds && r.predictions_distinct && r.eigenform_product_rule && r.eigenform_fourier &&
             r.mu == r.mu0 && r.computed == r.predicted && r.parseval && r.bound_respected;
  if (!r.passed) {
    std::ostringstream os;
    auto list = [&](const std::vector<Rational>& v) {
      os << "{";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
      os << "}";
    };
    os << "predicted ";
    list(r.predicted);
    os << " computed ";
    list(r.computed);
    os << " mu " << r.mu << " expected " << r.mu0;
    r.message = os.str();
  }
  return r;
}

inline Thm14Report run_thm14(const Thm14Config& cfg) { return verify_thm14(build_thm14_instance(cfg)); }

}  // namespace liespectra
