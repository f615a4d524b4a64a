#pragma once

// Functions on products of round spheres S^3 (unit quaternions, ambient R^4)
// and S^1 (ambient R^2, coordinates c = cos t, s = sin t), represented by
// polynomials in the ambient coordinates. Each sphere carries an eigenvalue
// multiplier w: degree-k spherical harmonics on S^{N-1} have Laplace
// eigenvalue w k (k + N - 2). All integrals use the normalized measure.

#include "linalg.hpp"
#include "polynomial.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace liespectra {

struct SphereFactor {
  int ambient = 4;  // 4 for S^3, 2 for S^1
  Rational multiplier{1};

  friend bool operator==(const SphereFactor&, const SphereFactor&) = default;
};

using SphereLayout = std::vector<SphereFactor>;

inline int layout_variables(const SphereLayout& layout) {
  int n = 0;
  for (const auto& s : layout) n += s.ambient;
  return n;
}

inline int sphere_offset(const SphereLayout& layout, std::size_t s) {
  int o = 0;
  for (std::size_t i = 0; i < s; ++i) o += layout[i].ambient;
  return o;
}

/// Raised when a polynomial exceeds the configured per-sphere degree cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Per-sphere degree cap: LIE_SPECTRA_DEGREE_CAP if set, else 4.
inline int degree_cap() {
  const char* env = std::getenv("LIE_SPECTRA_DEGREE_CAP");
  if (env == nullptr || *env == '\0') return 4;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 3)
    throw std::invalid_argument("LIE_SPECTRA_DEGREE_CAP must be a small non-negative integer, got '" + s + "'");
  return std::stoi(s);
}

inline void check_cap(const Polynomial& f, const SphereLayout& layout, int cap) {
  for (std::size_t s = 0; s < layout.size(); ++s) {
    int d = f.degree_in(sphere_offset(layout, s), layout[s].ambient);
    if (d > cap)
      throw CapExceeded("degree " + std::to_string(d) + " on sphere " + std::to_string(s + 1) + " exceeds cap " +
                        std::to_string(cap));
  }
}

inline void require_layout(const Polynomial& f, const SphereLayout& layout) {
  if (f.variables() != layout_variables(layout))
    throw std::invalid_argument("polynomial variable count does not match the sphere layout");
  for (const auto& s : layout) {
    if (s.ambient < 2) throw std::invalid_argument("sphere ambient dimension must be at least 2");
    if (s.multiplier <= 0) throw std::invalid_argument("sphere multiplier must be positive");
  }
}

/// Integral of x^a over S^{N-1}, N = a.size(): zero unless every exponent is
/// even, else prod (a_i - 1)!! / prod_{j < |a|/2} (N + 2j).
inline Rational haar_moment(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw std::invalid_argument("moment needs at least one coordinate");
  Integer num = 1;
  int half = 0;
  for (int e : a) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e % 2) return Rational(0);
    for (int k = e - 1; k > 0; k -= 2) num *= k;
    half += e / 2;
  }
  Integer den = 1;
  for (int j = 0; j < half; ++j) den *= n + 2 * j;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational integrate(const Polynomial& f, const SphereLayout& layout) {
  require_layout(f, layout);
  Rational total(0);
  for (const auto& [e, c] : f.terms()) {
    Rational m = c;
    for (std::size_t s = 0; s < layout.size() && m != 0; ++s) {
      int o = sphere_offset(layout, s);
      m *= haar_moment(std::vector<int>(e.begin() + o, e.begin() + o + layout[s].ambient));
    }
    total += m;
  }
  return total;
}

/// Normal form on the spheres: the last coordinate of each sphere appears with
/// exponent at most one (x_N^2 = 1 - sum of the others squared).
inline Polynomial reduce_on_spheres(const Polynomial& f, const SphereLayout& layout) {
  require_layout(f, layout);
  Polynomial cur = f;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const int o = sphere_offset(layout, s);
    const int last = o + layout[s].ambient - 1;
    while (true) {
      Polynomial next(cur.variables());
      bool changed = false;
      for (const auto& [e, c] : cur.terms()) {
        if (e[last] < 2) {
          next.add_term(e, c);
          continue;
        }
        changed = true;
        auto base = e;
        base[last] -= 2;
        next.add_term(base, c);
        for (int i = o; i < last; ++i) {
          auto f2 = base;
          f2[i] += 2;
          next.add_term(f2, -c);
        }
      }
      cur = std::move(next);
      if (!changed) break;
    }
  }
  return cur;
}

/// Laplacian by the ambient formula: on S^{N-1}, a degree-d homogeneous F
/// satisfies Delta_S F = d (d + N - 2) F - Delta_{R^N} F on the sphere.
/// Independent of the projection route below.
inline Polynomial sphere_laplacian(const Polynomial& f, const SphereLayout& layout) {
  require_layout(f, layout);
  Polynomial out(f.variables());
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const int o = sphere_offset(layout, s);
    const int n = layout[s].ambient;
    const Rational& w = layout[s].multiplier;
    Polynomial part(f.variables());
    for (const auto& [e, c] : f.terms()) {
      int d = 0;
      for (int i = o; i < o + n; ++i) d += e[i];
      part.add_term(e, c * d * (d + n - 2));
    }
    for (int i = o; i < o + n; ++i) part -= f.derivative(i).derivative(i);
    out += w * part;
  }
  return reduce_on_spheres(out, layout);
}

namespace detail {

/// Monomials of degree <= k in n variables with last exponent <= 1; they
/// restrict to a basis of polynomials of degree <= k on S^{n-1}.
inline std::vector<std::vector<int>> normal_monomials(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      for (int x = 0; x <= std::min(1, left); ++x) {
        e[i] = x;
        out.push_back(e);
      }
      e[i] = 0;
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[i] = x;
      self(self, i + 1, left - x);
    }
    e[i] = 0;
  };
  rec(rec, 0, k);
  return out;
}

struct ProjectionData {
  std::vector<std::vector<int>> monomials;
  Matrix<Rational> gram_inverse;
};

inline const ProjectionData& projection_data(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ProjectionData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  ProjectionData d;
  d.monomials = normal_monomials(n, k);
  const std::size_t m = d.monomials.size();
  Matrix<Rational> gram(m, m);
  std::vector<int> sum(n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      for (int i = 0; i < n; ++i) sum[i] = d.monomials[a][i] + d.monomials[b][i];
      gram(a, b) = gram(b, a) = haar_moment(sum);
    }
  d.gram_inverse = inverse(gram);
  return cache.emplace(std::make_pair(n, k), std::move(d)).first->second;
}

/// L^2 projection onto restrictions of polynomials of degree <= k on one sphere.
inline Polynomial project_leq(const Polynomial& g, int k) {
  const int n = g.variables();
  const auto& data = projection_data(n, k);
  const std::size_t m = data.monomials.size();
  std::vector<Rational> rhs(m, Rational(0));
  std::vector<int> sum(n);
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& [e, c] : g.terms()) {
      for (int i = 0; i < n; ++i) sum[i] = data.monomials[a][i] + e[i];
      rhs[a] += c * haar_moment(sum);
    }
  auto coeff = data.gram_inverse.apply(rhs);
  Polynomial out(n);
  for (std::size_t a = 0; a < m; ++a) out.add_term(data.monomials[a], coeff[a]);
  return out;
}

}  // namespace detail

inline Rational harmonic_eigenvalue(const SphereLayout& layout, const std::vector<int>& degrees) {
  Rational lambda(0);
  for (std::size_t s = 0; s < layout.size(); ++s)
    lambda += layout[s].multiplier * degrees[s] * (degrees[s] + layout[s].ambient - 2);
  return lambda;
}

/// Splits f into joint spherical-harmonic components keyed by the degree on
/// each sphere. Components are in normal form.
inline std::map<std::vector<int>, Polynomial> harmonic_components(const Polynomial& f, const SphereLayout& layout,
                                                                  int cap = degree_cap()) {
  require_layout(f, layout);
  check_cap(f, layout, cap);
  const int nv = f.variables();
  std::map<std::vector<int>, Polynomial> comps;
  Polynomial reduced = reduce_on_spheres(f, layout);
  if (!reduced.is_zero()) comps.emplace(std::vector<int>{}, reduced);
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const int o = sphere_offset(layout, s);
    const int n = layout[s].ambient;
    std::map<std::vector<int>, Polynomial> next;
    for (const auto& [key, poly] : comps) {
      std::map<Polynomial::Exponents, Polynomial> groups;
      for (const auto& [e, c] : poly.terms()) {
        auto rest = e;
        Polynomial::Exponents local(e.begin() + o, e.begin() + o + n);
        std::fill(rest.begin() + o, rest.begin() + o + n, 0);
        groups.try_emplace(rest, Polynomial(n)).first->second.add_term(local, c);
      }
      for (const auto& [rest, g] : groups) {
        Polynomial prev(n);
        const int top = g.total_degree();
        for (int k = 0; k <= top; ++k) {
          Polynomial pk = k == top ? g : detail::project_leq(g, k);
          Polynomial comp = pk - prev;
          prev = std::move(pk);
          if (comp.is_zero()) continue;
          auto nk = key;
          nk.push_back(k);
          auto& target = next.try_emplace(nk, Polynomial(nv)).first->second;
          for (const auto& [le, lc] : comp.terms()) {
            auto full = rest;
            std::copy(le.begin(), le.end(), full.begin() + o);
            target.add_term(full, lc);
          }
        }
      }
    }
    comps.clear();
    for (auto& [k, p] : next)
      if (!p.is_zero()) comps.emplace(k, std::move(p));
  }
  return comps;
}

/// Eigencomponents of f for the product Laplacian, keyed by eigenvalue.
inline std::map<Rational, Polynomial> harmonic_project(const Polynomial& f, const SphereLayout& layout,
                                                       int cap = degree_cap()) {
  std::map<Rational, Polynomial> out;
  for (auto& [degrees, poly] : harmonic_components(f, layout, cap)) {
    auto lambda = harmonic_eigenvalue(layout, degrees);
    auto it = out.find(lambda);
    if (it == out.end())
      out.emplace(lambda, poly);
    else
      it->second += poly;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// dim H_k(S^{N-1}) = C(k+N-1, N-1) - C(k+N-3, N-1).
inline Integer harmonic_dimension(int ambient, int k) {
  return binomial(k + ambient - 1, ambient - 1) - binomial(k + ambient - 3, ambient - 1);
}

/// Dimension of the lambda-eigenspace of the function Laplacian on the product
/// of spheres, summed over all degree tuples.
inline Integer function_eigenspace_dimension(const SphereLayout& layout, const Rational& lambda) {
  Integer total = 0;
  std::vector<int> deg(layout.size(), 0);
  auto rec = [&](auto&& self, std::size_t s, const Rational& left) -> void {
    if (left < 0) return;
    if (s == layout.size()) {
      if (left != 0) return;
      Integer dim = 1;
      for (std::size_t i = 0; i < layout.size(); ++i) dim *= harmonic_dimension(layout[i].ambient, deg[i]);
      total += dim;
      return;
    }
    for (int k = 0;; ++k) {
      Rational e = layout[s].multiplier * k * (k + layout[s].ambient - 2);
      if (e > left) break;
      deg[s] = k;
      self(self, s + 1, left - e);
    }
    deg[s] = 0;
  };
  rec(rec, 0, lambda);
  return total;
}

/// cos(m t) and sin(m t) as polynomials in (c, s) on S^1.
inline std::pair<Polynomial, Polynomial> circle_mode(int m) {
  if (m < 0) {
    auto [c, s] = circle_mode(-m);
    return {c, Rational(-1) * s};
  }
  Polynomial c = Polynomial::variable(2, 0), s = Polynomial::variable(2, 1);
  Polynomial cm = Polynomial::constant(2, Rational(1)), sm(2);
  for (int i = 0; i < m; ++i) {
    Polynomial nc = cm * c - sm * s;
    Polynomial ns = sm * c + cm * s;
    cm = std::move(nc);
    sm = std::move(ns);
  }
  return {cm, sm};
}

/// Layout of G x G: every sphere of G once for the first copy, then once for
/// the second, with multipliers divided by the product metric factor.
inline SphereLayout doubled_layout(const SphereLayout& layout, const Rational& product_factor = Rational(2)) {
  SphereLayout out;
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& s : layout) out.push_back({s.ambient, s.multiplier / product_factor});
  return out;
}

struct PulledBack {
  Polynomial poly;
  SphereLayout layout;
};

/// m^* f for m(x, y) = x y: quaternion product on S^3 factors, angle addition
/// on S^1 factors.
inline PulledBack pullback_mult(const Polynomial& f, const SphereLayout& layout,
                                const Rational& product_factor = Rational(2), int cap = degree_cap()) {
  require_layout(f, layout);
  check_cap(f, layout, cap);
  const int nv = layout_variables(layout);
  const int total = 2 * nv;
  std::vector<Polynomial> images;
  auto var = [&](int i) { return Polynomial::variable(total, i); };
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const int o = sphere_offset(layout, s);
    auto u = [&](int i) { return var(o + i); };
    auto v = [&](int i) { return var(nv + o + i); };
    if (layout[s].ambient == 4) {
      images.push_back(u(0) * v(0) - u(1) * v(1) - u(2) * v(2) - u(3) * v(3));
      images.push_back(u(0) * v(1) + u(1) * v(0) + u(2) * v(3) - u(3) * v(2));
      images.push_back(u(0) * v(2) - u(1) * v(3) + u(2) * v(0) + u(3) * v(1));
      images.push_back(u(0) * v(3) + u(1) * v(2) - u(2) * v(1) + u(3) * v(0));
    } else if (layout[s].ambient == 2) {
      images.push_back(u(0) * v(0) - u(1) * v(1));
      images.push_back(u(0) * v(1) + u(1) * v(0));
    } else {
      throw std::invalid_argument("group multiplication is defined only on S^3 and S^1 factors");
    }
  }
  return {f.substitute(images), doubled_layout(layout, product_factor)};
}

struct Thm11Report {
  Rational lambda;
  bool input_is_eigenfunction = false;
  std::vector<Rational> component_eigenvalues;
  std::string offending;
  bool passed = false;
};

/// Checks that every eigencomponent of m^* f sits at the eigenvalue of f.
inline Thm11Report verify_thm_1_1(const Polynomial& f, const SphereLayout& layout, const Rational& lambda,
                                  const Rational& product_factor = Rational(2)) {
  Thm11Report r;
  r.lambda = lambda;
  auto own = harmonic_project(f, layout);
  r.input_is_eigenfunction =
      f.is_zero() || (own.size() == 1 && own.begin()->first == lambda &&
                      sphere_laplacian(f, layout) == reduce_on_spheres(lambda * f, layout));
  auto pulled = pullback_mult(f, layout, product_factor);
  for (auto& [mu, comp] : harmonic_project(pulled.poly, pulled.layout)) {
    r.component_eigenvalues.push_back(mu);
    if (mu != lambda && r.offending.empty()) r.offending = "component at " + to_string(mu) + ": " + comp.str();
  }
  r.passed = r.input_is_eigenfunction && r.offending.empty();
  return r;
}

}  // namespace liespectra
