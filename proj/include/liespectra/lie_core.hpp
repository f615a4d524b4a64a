#pragma once

// Compact Lie algebras with bi-invariant metrics, described by structure
// constants C_ijk relative to an orthonormal left-invariant coframe:
//   d phi^i = sum_{j<k} C_ijk phi^j ^ phi^k,
// with the convention d phi^i(X, Y) = -phi^i([X, Y]).
//
// Stored constants always belong to the unit metric of each atom. Rescaling a
// factor metric ds^2 -> t^{-1} ds^2 and the global product factor kappa are kept
// as metadata: the coframe covector phi^i then has squared norm t / kappa.

#include "rational.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liespectra {

enum class Atom { su2, circle, custom };

inline std::string atom_name(Atom a) {
  switch (a) {
    case Atom::su2: return "su2";
    case Atom::circle: return "circle";
    case Atom::custom: return "custom";
  }
  return "custom";
}

inline Atom parse_atom(const std::string& s) {
  if (s == "su2") return Atom::su2;
  if (s == "circle") return Atom::circle;
  throw std::invalid_argument("unknown atom '" + s + "' (expected su2 or circle)");
}

/// One direct summand: coframe indices [offset, offset + size).
struct FactorBlock {
  Atom atom = Atom::custom;
  Rational scale{1};
  int offset = 0;
  int size = 0;

  std::string label() const { return atom_name(atom) + "(" + to_string(scale) + ")"; }
};

class LieAlgebraMetric {
 public:
  /// Arbitrary structure constants over a single custom block. Entries are
  /// taken as given; use `validate` to check the standing hypotheses.
  static LieAlgebraMetric from_structure(int dim, std::vector<Rational> c) {
    if (dim <= 0) throw std::invalid_argument("Lie algebra dimension must be positive");
    if (c.size() != static_cast<std::size_t>(dim) * dim * dim)
      throw std::invalid_argument("structure array must have dim^3 entries");
    LieAlgebraMetric g;
    g.dim_ = dim;
    g.c_ = std::move(c);
    g.factors_.push_back({Atom::custom, Rational(1), 0, dim});
    return g;
  }

  int dim() const noexcept { return dim_; }

  /// C_ijk with 0-based indices.
  const Rational& c(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }
  const std::vector<Rational>& structure() const noexcept { return c_; }

  const std::vector<FactorBlock>& factors() const noexcept { return factors_; }
  const Rational& metric_factor() const noexcept { return metric_factor_; }

  int factor_of(int i) const {
    for (std::size_t b = 0; b < factors_.size(); ++b)
      if (i >= factors_[b].offset && i < factors_[b].offset + factors_[b].size) return static_cast<int>(b);
    throw std::out_of_range("coframe index outside every factor");
  }

  /// Squared norm of phi^i under the scaled metric: t_b / kappa.
  Rational coframe_weight(int i) const { return factors_[factor_of(i)].scale / metric_factor_; }

  std::vector<Rational> coframe_weights() const {
    std::vector<Rational> w;
    for (int i = 0; i < dim_; ++i) w.push_back(coframe_weight(i));
    return w;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& f : factors_) out.push_back(f.label());
    return out;
  }

  /// Summand b as a standalone algebra, keeping its scale and the global factor.
  LieAlgebraMetric factor_algebra(int b) const {
    const auto& f = factors_.at(b);
    LieAlgebraMetric g;
    g.dim_ = f.size;
    g.c_.assign(static_cast<std::size_t>(f.size) * f.size * f.size, Rational(0));
    for (int i = 0; i < f.size; ++i)
      for (int j = 0; j < f.size; ++j)
        for (int k = 0; k < f.size; ++k)
          g.c_[(static_cast<std::size_t>(i) * f.size + j) * f.size + k] = c(f.offset + i, f.offset + j, f.offset + k);
    g.factors_.push_back({f.atom, f.scale, 0, f.size});
    g.metric_factor_ = metric_factor_;
    return g;
  }

  friend bool operator==(const LieAlgebraMetric& a, const LieAlgebraMetric& b) {
    if (a.dim_ != b.dim_ || a.c_ != b.c_ || a.metric_factor_ != b.metric_factor_ || a.factors_.size() != b.factors_.size())
      return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i) {
      const auto& x = a.factors_[i];
      const auto& y = b.factors_[i];
      if (x.atom != y.atom || x.scale != y.scale || x.offset != y.offset || x.size != y.size) return false;
    }
    return true;
  }

 private:
  friend LieAlgebraMetric build_su2(const Rational&);
  friend LieAlgebraMetric build_circle(const Rational&);
  friend LieAlgebraMetric direct_sum(const LieAlgebraMetric&, const LieAlgebraMetric&, const Rational&);
  friend LieAlgebraMetric with_metric_factor(const LieAlgebraMetric&, const Rational&);

  int dim_ = 0;
  std::vector<Rational> c_;
  std::vector<FactorBlock> factors_;
  Rational metric_factor_{1};
};

/// su(2) as the unit quaternions S^3 with [e1,e2] = 2 e3 (cyclic), giving
/// C_123 = -2 and its antisymmetric images.
inline LieAlgebraMetric build_su2(const Rational& scale = Rational(1)) {
  if (scale <= 0) throw std::invalid_argument("su2 scale must be positive");
  LieAlgebraMetric g;
  g.dim_ = 3;
  g.c_.assign(27, Rational(0));
  auto set = [&](int i, int j, int k, int v) { g.c_[(i * 3 + j) * 3 + k] = v; };
  // totally antisymmetric with C_012 = -2
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (int p = 0; p < 6; ++p) set(perms[p][0], perms[p][1], perms[p][2], p < 3 ? -2 : 2);
  g.factors_.push_back({Atom::su2, scale, 0, 3});
  return g;
}

/// The circle group S^1 = u(1): one coframe element, all constants zero.
inline LieAlgebraMetric build_circle(const Rational& scale = Rational(1)) {
  if (scale <= 0) throw std::invalid_argument("circle scale must be positive");
  LieAlgebraMetric g;
  g.dim_ = 1;
  g.c_.assign(1, Rational(0));
  g.factors_.push_back({Atom::circle, scale, 0, 1});
  return g;
}

/// Orthogonal direct sum with metric kappa * (ds_a^2 + ds_b^2). Existing global
/// factors of the summands are folded into their block scales.
inline LieAlgebraMetric direct_sum(const LieAlgebraMetric& a, const LieAlgebraMetric& b, const Rational& metric_factor) {
  if (metric_factor <= 0) throw std::invalid_argument("metric factor must be positive");
  LieAlgebraMetric g;
  g.dim_ = a.dim_ + b.dim_;
  g.c_.assign(static_cast<std::size_t>(g.dim_) * g.dim_ * g.dim_, Rational(0));
  auto copy = [&](const LieAlgebraMetric& src, int off) {
    for (int i = 0; i < src.dim_; ++i)
      for (int j = 0; j < src.dim_; ++j)
        for (int k = 0; k < src.dim_; ++k)
          g.c_[(static_cast<std::size_t>(i + off) * g.dim_ + j + off) * g.dim_ + k + off] = src.c(i, j, k);
    for (auto f : src.factors_) {
      f.offset += off;
      f.scale /= src.metric_factor_;
      g.factors_.push_back(f);
    }
  };
  copy(a, 0);
  copy(b, a.dim_);
  g.metric_factor_ = metric_factor;
  return g;
}

/// Same algebra with metric kappa * ds^2 (any previous global factor is folded
/// into the block scales first).
inline LieAlgebraMetric with_metric_factor(const LieAlgebraMetric& a, const Rational& metric_factor) {
  if (metric_factor <= 0) throw std::invalid_argument("metric factor must be positive");
  LieAlgebraMetric g = a;
  for (auto& f : g.factors_) f.scale /= a.metric_factor_;
  g.metric_factor_ = metric_factor;
  return g;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // first violating index tuple (1-based), empty on success
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const ValidationCheck* failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

/// Bracket coefficient c^i_{jk} ([e_j, e_k] = sum_i c^i_jk e_i) under the
/// convention C_ijk = -c^i_jk.
inline Rational bracket_coefficient(const LieAlgebraMetric& g, int i, int j, int k) { return -g.c(i, j, k); }

inline ValidationReport validate(const LieAlgebraMetric& g) {
  const int n = g.dim();
  auto tuple = [](std::initializer_list<int> idx) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int i : idx) {
      if (!first) os << ',';
      first = false;
      os << i + 1;
    }
    os << ')';
    return os.str();
  };
  ValidationReport report;

  ValidationCheck anti{"antisymmetry", true, ""};
  for (int i = 0; i < n && anti.passed; ++i)
    for (int j = 0; j < n && anti.passed; ++j)
      for (int k = 0; k < n && anti.passed; ++k)
        if (g.c(i, j, k) != -g.c(i, k, j)) {
          anti.passed = false;
          anti.witness = tuple({i, j, k});
        }
  report.checks.push_back(anti);

  ValidationCheck total{"total_antisymmetry", true, ""};
  for (int i = 0; i < n && total.passed; ++i)
    for (int j = 0; j < n && total.passed; ++j)
      for (int k = 0; k < n && total.passed; ++k)
        if (g.c(i, j, k) != g.c(j, k, i) || g.c(i, j, k) != -g.c(j, i, k)) {
          total.passed = false;
          total.witness = tuple({i, j, k});
        }
  report.checks.push_back(total);

  ValidationCheck jacobi{"jacobi", true, ""};
  for (int i = 0; i < n && jacobi.passed; ++i)
    for (int p = 0; p < n && jacobi.passed; ++p)
      for (int q = 0; q < n && jacobi.passed; ++q)
        for (int r = 0; r < n && jacobi.passed; ++r) {
          Rational sum(0);
          for (int m = 0; m < n; ++m) {
            sum += bracket_coefficient(g, i, p, m) * bracket_coefficient(g, m, q, r);
            sum += bracket_coefficient(g, i, q, m) * bracket_coefficient(g, m, r, p);
            sum += bracket_coefficient(g, i, r, m) * bracket_coefficient(g, m, p, q);
          }
          if (sum != 0) {
            jacobi.passed = false;
            jacobi.witness = tuple({i, p, q, r});
          }
        }
  report.checks.push_back(jacobi);

  ValidationCheck scales{"positive_scales", true, ""};
  for (std::size_t b = 0; b < g.factors().size() && scales.passed; ++b)
    if (g.factors()[b].scale <= 0) {
      scales.passed = false;
      scales.witness = "factor " + std::to_string(b + 1);
    }
  if (g.metric_factor() <= 0) {
    scales.passed = false;
    scales.witness = "metric_factor";
  }
  report.checks.push_back(scales);
  return report;
}

// ---------------------------------------------------------------------------
// Group specifications

struct FactorSpec {
  Atom atom = Atom::su2;
  Rational scale{1};
};

struct GroupSpec {
  std::vector<FactorSpec> factors;
  Rational metric_factor{1};

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.metric_factor != b.metric_factor || a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
      if (a.factors[i].atom != b.factors[i].atom || a.factors[i].scale != b.factors[i].scale) return false;
    return true;
  }
};

inline LieAlgebraMetric build_group(const GroupSpec& spec) {
  if (spec.factors.empty()) throw std::invalid_argument("group spec needs at least one factor");
  auto atom = [](const FactorSpec& f) {
    if (f.scale <= 0) throw std::invalid_argument("factor scales must be positive");
    return f.atom == Atom::su2 ? build_su2(f.scale) : build_circle(f.scale);
  };
  LieAlgebraMetric g = atom(spec.factors.front());
  for (std::size_t i = 1; i < spec.factors.size(); ++i) g = direct_sum(g, atom(spec.factors[i]), Rational(1));
  return with_metric_factor(g, spec.metric_factor);
}

inline nlohmann::json to_json(const GroupSpec& spec) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : spec.factors) factors.push_back({{"atom", atom_name(f.atom)}, {"scale", to_string(f.scale)}});
  return {{"factors", factors}, {"metric_factor", to_string(spec.metric_factor)}};
}

inline GroupSpec group_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
    throw std::invalid_argument("group spec must be an object with a 'factors' array");
  GroupSpec spec;
  for (const auto& f : j["factors"]) {
    FactorSpec fs;
    fs.atom = parse_atom(f.at("atom").get<std::string>());
    if (f.contains("scale")) fs.scale = parse_rational(f["scale"].get<std::string>());
    if (fs.scale <= 0) throw std::invalid_argument("factor scales must be positive");
    spec.factors.push_back(fs);
  }
  if (spec.factors.empty()) throw std::invalid_argument("group spec needs at least one factor");
  if (j.contains("metric_factor")) spec.metric_factor = parse_rational(j["metric_factor"].get<std::string>());
  if (spec.metric_factor <= 0) throw std::invalid_argument("metric factor must be positive");
  return spec;
}

/// Raw structure constants as {"dim": n, "structure": [{"i":1,"j":2,"k":3,"value":"-2"}, ...]}
/// (1-based, entries not listed are zero, nothing is symmetrized).
inline LieAlgebraMetric algebra_from_json(const nlohmann::json& j) {
  int n = j.at("dim").get<int>();
  if (n <= 0) throw std::invalid_argument("dimension must be positive");
  std::vector<Rational> c(static_cast<std::size_t>(n) * n * n, Rational(0));
  for (const auto& e : j.at("structure")) {
    int i = e.at("i").get<int>(), jj = e.at("j").get<int>(), k = e.at("k").get<int>();
    if (i < 1 || i > n || jj < 1 || jj > n || k < 1 || k > n) throw std::invalid_argument("structure index out of range");
    c[(static_cast<std::size_t>(i - 1) * n + jj - 1) * n + k - 1] = parse_rational(e.at("value").get<std::string>());
  }
  return LieAlgebraMetric::from_structure(n, std::move(c));
}

}  // namespace liespectra
