#pragma once

// Differential forms with polynomial coefficients on a product of blocks.
//
// A block is one group factor of G (its spheres plus its invariant complex) or
// one factor pair of G x G (two copies of the spheres plus the tilde complex of
// that factor). A term is a pure tensor with one piece per block:
//   function  f           (degree 0)
//   form      omega       (constant coefficients in the block complex)
//   exact     dF          (degree 1)
// Laplacians, inner products and eigen-decompositions all factor over blocks,
// so block eigenvalues add.

#include "bounds.hpp"
#include "peterweyl.hpp"
#include "tilde_complex.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace liespectra {

struct Block {
  std::string label;
  SphereLayout spheres;
  ExteriorComplex complex;
};

class ProductSpace {
 public:
  explicit ProductSpace(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& block(std::size_t b) const { return blocks_.at(b); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Spectrum of the block complex in degree p, computed once.
  const SpectrumTable& form_spectrum(std::size_t b, int p) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = std::make_pair(b, p);
    auto it = cache_->tables.find(key);
    if (it == cache_->tables.end()) it = cache_->tables.emplace(key, blocks_.at(b).complex.spectrum(p)).first;
    return it->second;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<std::size_t, int>, SpectrumTable> tables;
  };
  std::vector<Block> blocks_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline SphereLayout factor_spheres(const FactorBlock& f, const Rational& metric_factor) {
  switch (f.atom) {
    case Atom::su2:
      return {SphereFactor{4, f.scale / metric_factor}};
    case Atom::circle:
      return {SphereFactor{2, f.scale / metric_factor}};
    case Atom::custom:
      return {};
  }
  return {};
}

/// One block per factor of G.
inline std::shared_ptr<const ProductSpace> space_for_group(const LieAlgebraMetric& g) {
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < g.factors().size(); ++b) {
    auto fa = g.factor_algebra(static_cast<int>(b));
    blocks.push_back({g.factors()[b].label(), factor_spheres(g.factors()[b], g.metric_factor()), invariant_complex(fa)});
  }
  return std::make_shared<const ProductSpace>(std::move(blocks));
}

/// One block per factor pair of G x G with metric 2 (g + g).
inline std::shared_ptr<const ProductSpace> space_for_product(const LieAlgebraMetric& g) {
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < g.factors().size(); ++b) {
    auto fa = g.factor_algebra(static_cast<int>(b));
    auto spheres = doubled_layout(factor_spheres(g.factors()[b], g.metric_factor()));
    blocks.push_back({g.factors()[b].label() + "^2", std::move(spheres), tilde_complex(fa)});
  }
  return std::make_shared<const ProductSpace>(std::move(blocks));
}

struct Piece {
  enum class Kind { function, form, exact };

  Kind kind = Kind::function;
  Polynomial poly;
  Form form{0, 0};

  int degree() const { return kind == Kind::function ? 0 : kind == Kind::form ? form.degree() : 1; }
  bool is_zero() const { return kind == Kind::form ? form.is_zero() : poly.is_zero(); }

  static Piece function(Polynomial p) { return {Kind::function, std::move(p), Form(0, 0)}; }
  static Piece constant(int nvars, const Rational& c = Rational(1)) {
    return function(Polynomial::constant(nvars, c));
  }
  static Piece exact(Polynomial p) { return {Kind::exact, std::move(p), Form(0, 0)}; }
  /// Constant-coefficient form; degree 0 becomes a constant function.
  static Piece form_piece(Form f, int nvars) {
    if (f.degree() == 0) return constant(nvars, f.coefficient(MultiIndex()));
    Piece p{Kind::form, Polynomial(nvars), std::move(f)};
    return p;
  }
};

struct Term {
  Rational coeff{1};
  std::vector<Piece> pieces;

  int degree() const {
    int d = 0;
    for (const auto& p : pieces) d += p.degree();
    return d;
  }
};

class QPolyForm {
 public:
  QPolyForm(std::shared_ptr<const ProductSpace> space, int degree) : space_(std::move(space)), degree_(degree) {
    if (!space_) throw std::invalid_argument("form needs a product space");
  }

  const std::shared_ptr<const ProductSpace>& space() const noexcept { return space_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Term whose pieces are all the constant 1.
  Term unit_term() const {
    Term t;
    for (const auto& b : space_->blocks()) t.pieces.push_back(Piece::constant(layout_variables(b.spheres)));
    return t;
  }

  void add(Term t) {
    if (t.pieces.size() != space_->size()) throw std::invalid_argument("term needs one piece per block");
    for (std::size_t b = 0; b < t.pieces.size(); ++b) {
      const auto& p = t.pieces[b];
      const auto& blk = space_->block(b);
      if (p.poly.variables() != layout_variables(blk.spheres))
        throw std::invalid_argument("piece polynomial does not match the spheres of block " + blk.label);
      if (p.kind == Piece::Kind::form && p.form.dim() != blk.complex.generators())
        throw std::invalid_argument("piece form does not live on the complex of block " + blk.label);
      if (p.kind == Piece::Kind::exact && blk.spheres.empty())
        throw std::invalid_argument("exact piece needs a block with coordinate spheres");
    }
    if (t.degree() != degree_) throw std::invalid_argument("term degree does not match form degree");
    if (t.coeff == 0) return;
    for (const auto& p : t.pieces)
      if (p.is_zero()) return;
    terms_.push_back(std::move(t));
  }

  QPolyForm& operator+=(const QPolyForm& o) {
    if (o.space_ != space_ || o.degree_ != degree_) throw std::invalid_argument("forms live in different spaces");
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }
  friend QPolyForm operator+(QPolyForm a, const QPolyForm& b) { return a += b; }
  friend QPolyForm operator*(const Rational& s, QPolyForm a) {
    if (s == 0) a.terms_.clear();
    for (auto& t : a.terms_) t.coeff *= s;
    return a;
  }
  friend QPolyForm operator-(QPolyForm a, const QPolyForm& b) { return a += Rational(-1) * b; }

 private:
  std::shared_ptr<const ProductSpace> space_;
  int degree_;
  std::vector<Term> terms_;
};

/// Form that is `p` in block b and the constant 1 in every other block.
inline QPolyForm single_piece(std::shared_ptr<const ProductSpace> space, std::size_t b, Piece p) {
  QPolyForm f(std::move(space), p.degree());
  Term t = f.unit_term();
  t.pieces.at(b) = std::move(p);
  f.add(std::move(t));
  return f;
}

// ---------------------------------------------------------------------------
// Block-level inner products.

namespace detail {

inline Polynomial gradient_pairing(const Polynomial& f, const Polynomial& h, const SphereLayout& layout) {
  // sum_s w_s (grad_s f . grad_s h - (x_s . grad_s f)(x_s . grad_s h)):
  // the tangential gradient pairing on each unit sphere.
  Polynomial out(f.variables());
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const int o = sphere_offset(layout, s);
    const int n = layout[s].ambient;
    Polynomial dot(f.variables()), rf(f.variables()), rh(f.variables());
    for (int i = o; i < o + n; ++i) {
      auto fi = f.derivative(i), hi = h.derivative(i);
      auto xi = Polynomial::variable(f.variables(), i);
      dot += fi * hi;
      rf += xi * fi;
      rh += xi * hi;
    }
    out += layout[s].multiplier * (dot - rf * rh);
  }
  return out;
}

inline Rational block_inner(const Piece& a, const Piece& b, const Block& blk) {
  if (a.degree() != b.degree()) return Rational(0);
  using K = Piece::Kind;
  if (a.kind == K::function && b.kind == K::function) return integrate(a.poly * b.poly, blk.spheres);
  if (a.kind == K::form && b.kind == K::form) return blk.complex.inner(a.form, b.form);
  if (a.kind == K::exact && b.kind == K::exact) return integrate(gradient_pairing(a.poly, b.poly, blk.spheres), blk.spheres);
  // <dF, omega> = integral of F * delta(omega); delta of a degree-1 constant form is constant.
  const Piece& ex = a.kind == K::exact ? a : b;
  const Piece& fm = a.kind == K::exact ? b : a;
  Form dw = blk.complex.delta(fm.form);
  return dw.coefficient(MultiIndex()) * integrate(ex.poly, blk.spheres);
}

inline std::vector<std::pair<Rational, Piece>> block_components(const Piece& p, const ProductSpace& space,
                                                                std::size_t b) {
  const Block& blk = space.block(b);
  std::vector<std::pair<Rational, Piece>> out;
  switch (p.kind) {
    case Piece::Kind::function:
      for (auto& [lambda, comp] : harmonic_project(p.poly, blk.spheres)) out.push_back({lambda, Piece::function(comp)});
      break;
    case Piece::Kind::exact:
      for (auto& [lambda, comp] : harmonic_project(p.poly, blk.spheres))
        if (lambda != 0) out.push_back({lambda, Piece::exact(comp)});
      break;
    case Piece::Kind::form:
      for (const auto& e : space.form_spectrum(b, p.form.degree()).entries) {
        Form proj = blk.complex.project(p.form, e.eigenbasis);
        if (!proj.is_zero()) out.push_back({e.eigenvalue, Piece::form_piece(proj, p.poly.variables())});
      }
      break;
  }
  return out;
}

inline Piece block_laplacian(const Piece& p, const Block& blk) {
  switch (p.kind) {
    case Piece::Kind::function:
      return Piece::function(sphere_laplacian(p.poly, blk.spheres));
    case Piece::Kind::exact:
      return Piece::exact(sphere_laplacian(p.poly, blk.spheres));
    case Piece::Kind::form:
      return Piece::form_piece(blk.complex.laplacian(p.form), p.poly.variables());
  }
  return p;
}

}  // namespace detail

inline Rational inner(const QPolyForm& a, const QPolyForm& b) {
  if (a.space() != b.space()) throw std::invalid_argument("forms live on different spaces");
  if (a.degree() != b.degree()) return Rational(0);
  const auto& space = *a.space();
  Rational total(0);
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      Rational prod = s.coeff * t.coeff;
      for (std::size_t blk = 0; blk < space.size() && prod != 0; ++blk)
        prod *= detail::block_inner(s.pieces[blk], t.pieces[blk], space.block(blk));
      total += prod;
    }
  return total;
}

inline Rational norm_sq(const QPolyForm& a) { return inner(a, a); }

/// Exact equality as L^2 forms.
inline bool same_form(const QPolyForm& a, const QPolyForm& b) { return norm_sq(a - b) == 0; }

/// Laplacian by the product rule over blocks.
inline QPolyForm laplacian(const QPolyForm& f) {
  QPolyForm out(f.space(), f.degree());
  for (const auto& t : f.terms())
    for (std::size_t b = 0; b < t.pieces.size(); ++b) {
      Term u = t;
      u.pieces[b] = detail::block_laplacian(t.pieces[b], f.space()->block(b));
      out.add(std::move(u));
    }
  return out;
}

/// Eigencomponents of f keyed by eigenvalue (sum of block eigenvalues).
inline std::map<Rational, QPolyForm> fourier_components(const QPolyForm& f) {
  std::map<Rational, QPolyForm> out;
  const auto& space = *f.space();
  for (const auto& t : f.terms()) {
    std::vector<std::vector<std::pair<Rational, Piece>>> per_block;
    for (std::size_t b = 0; b < space.size(); ++b) per_block.push_back(detail::block_components(t.pieces[b], space, b));
    std::vector<std::size_t> idx(space.size(), 0);
    bool empty = false;
    for (const auto& v : per_block) empty = empty || v.empty();
    if (empty) continue;
    while (true) {
      Term u;
      u.coeff = t.coeff;
      Rational lambda(0);
      for (std::size_t b = 0; b < space.size(); ++b) {
        lambda += per_block[b][idx[b]].first;
        u.pieces.push_back(per_block[b][idx[b]].second);
      }
      out.try_emplace(lambda, f.space(), f.degree()).first->second.add(std::move(u));
      std::size_t b = 0;
      while (b < space.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
      if (b == space.size()) break;
    }
  }
  return out;
}

struct FourierEntry {
  Rational lambda;
  Rational norm_sq;

  friend bool operator==(const FourierEntry&, const FourierEntry&) = default;
};

struct FourierReport {
  std::vector<FourierEntry> entries;  // increasing lambda
  int mu = 0;
  Rational input_norm_sq;             // not serialized

  bool parseval() const {
    Rational s(0);
    for (const auto& e : entries) s += e.norm_sq;
    return s == input_norm_sq;
  }
  std::vector<Rational> support() const {
    std::vector<Rational> out;
    for (const auto& e : entries)
      if (e.norm_sq > 0) out.push_back(e.lambda);
    return out;
  }
};

inline FourierReport mu_count(const QPolyForm& f) {
  FourierReport r;
  for (const auto& [lambda, comp] : fourier_components(f)) {
    Rational n = norm_sq(comp);
    r.entries.push_back({lambda, n});
    if (n > 0) ++r.mu;
  }
  r.input_norm_sq = norm_sq(f);
  return r;
}

/// m^* from forms on G (space_for_group) to forms on G x G (space_for_product).
inline QPolyForm pullback(const QPolyForm& f, std::shared_ptr<const ProductSpace> target) {
  const auto& src = *f.space();
  if (target->size() != src.size()) throw std::invalid_argument("target space does not match the source blocks");
  QPolyForm out(target, f.degree());
  for (const auto& t : f.terms()) {
    Term u;
    u.coeff = t.coeff;
    for (std::size_t b = 0; b < src.size(); ++b) {
      const auto& p = t.pieces[b];
      const auto& spheres = src.block(b).spheres;
      const int tv = layout_variables(target->block(b).spheres);
      switch (p.kind) {
        case Piece::Kind::function:
          u.pieces.push_back(Piece::function(pullback_mult(p.poly, spheres).poly));
          break;
        case Piece::Kind::exact:
          u.pieces.push_back(Piece::exact(pullback_mult(p.poly, spheres).poly));
          break;
        case Piece::Kind::form:
          u.pieces.push_back(Piece::form_piece(pullback_m(p.form), tv));
          break;
      }
    }
    out.add(std::move(u));
  }
  return out;
}

/// Wedge product of forms on one space. In each block at least one side must
/// be a function piece; functions multiply.
inline QPolyForm wedge(const QPolyForm& a, const QPolyForm& b) {
  if (a.space() != b.space()) throw std::invalid_argument("forms live on different spaces");
  QPolyForm out(a.space(), a.degree() + b.degree());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      Term u;
      u.coeff = s.coeff * t.coeff;
      // Moving b's block j piece past a's pieces in blocks i > j.
      int swaps = 0;
      for (std::size_t j = 0; j < t.pieces.size(); ++j)
        for (std::size_t i = j + 1; i < s.pieces.size(); ++i) swaps += s.pieces[i].degree() * t.pieces[j].degree();
      if (swaps % 2) u.coeff = -u.coeff;
      for (std::size_t k = 0; k < s.pieces.size(); ++k) {
        const Piece& x = s.pieces[k];
        const Piece& y = t.pieces[k];
        using K = Piece::Kind;
        if (x.kind == K::function && y.kind == K::function) {
          u.pieces.push_back(Piece::function(x.poly * y.poly));
        } else if (x.kind == K::function && x.poly.total_degree() == 0) {
          Piece p = y;
          Rational c = x.poly.coefficient(Polynomial::Exponents(x.poly.variables(), 0));
          if (p.kind == K::form) p.form *= c;
          else p.poly *= c;
          u.pieces.push_back(std::move(p));
        } else if (y.kind == K::function && y.poly.total_degree() == 0) {
          Piece p = x;
          Rational c = y.poly.coefficient(Polynomial::Exponents(y.poly.variables(), 0));
          if (p.kind == K::form) p.form *= c;
          else p.poly *= c;
          u.pieces.push_back(std::move(p));
        } else if (x.kind == K::form && y.kind == K::form) {
          u.pieces.push_back(Piece::form_piece(wedge(x.form, y.form), x.poly.variables()));
        } else {
          throw std::invalid_argument("wedge of non-constant pieces in one block is not representable");
        }
      }
      out.add(std::move(u));
    }
  return out;
}

/// mu <= C(2n, p) dim E.
inline bool verify_thm_1_2_bound(long n, long p, const Integer& dimE, const FourierReport& report) {
  return Integer(report.mu) <= bound_thm_1_2(n, p, dimE);
}

}  // namespace liespectra
