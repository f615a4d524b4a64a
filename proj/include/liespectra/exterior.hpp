#pragma once

// Exterior algebra over a finite coframe: multi-indices, sparse forms, wedge,
// interior product and weighted inner products.

#include "rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace liespectra {

/// Strictly increasing set of generator positions (0-based internally, 1-based
/// in text), packed as a bit mask. Supports up to 64 generators.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit constexpr MultiIndex(std::uint64_t mask) : mask_(mask) {}

  /// From 1-based indices; they must be strictly increasing.
  static MultiIndex from_indices(const std::vector<int>& one_based) {
    std::uint64_t mask = 0;
    int prev = 0;
    for (int i : one_based) {
      if (i <= prev) throw std::invalid_argument("multi-index entries must be strictly increasing and >= 1");
      if (i > 64) throw std::invalid_argument("multi-index entry exceeds 64 generators");
      mask |= std::uint64_t{1} << (i - 1);
      prev = i;
    }
    return MultiIndex(mask);
  }

  static constexpr MultiIndex single(int zero_based) { return MultiIndex(std::uint64_t{1} << zero_based); }

  constexpr std::uint64_t mask() const noexcept { return mask_; }
  int degree() const noexcept { return std::popcount(mask_); }
  bool contains(int zero_based) const noexcept { return (mask_ >> zero_based) & 1U; }
  int max_index() const noexcept { return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_); }

  /// 0-based positions in increasing order.
  std::vector<int> positions() const {
    std::vector<int> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  /// "1,2,5" (1-based); the empty index prints as "".
  std::string str() const {
    std::string s;
    for (int p : positions()) {
      if (!s.empty()) s += ',';
      s += std::to_string(p + 1);
    }
    return s;
  }

  static MultiIndex parse(const std::string& text) {
    std::vector<int> idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      idx.push_back(std::stoi(item));
    }
    return from_indices(idx);
  }

  friend constexpr bool operator==(MultiIndex a, MultiIndex b) noexcept { return a.mask_ == b.mask_; }

  /// Degree first, then lexicographic order of the sorted index lists.
  friend bool operator<(MultiIndex a, MultiIndex b) noexcept {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return false;
    std::uint64_t low = diff & (~diff + 1);
    return (a.mask_ & low) != 0;
  }

 private:
  std::uint64_t mask_ = 0;
};

/// Sign of moving the wedge factors of `b` past those of `a` into sorted
/// position, i.e. e_A ^ e_B = sign * e_{A u B}. Zero when A and B intersect.
inline int wedge_sign(MultiIndex a, MultiIndex b) {
  if (a.mask() & b.mask()) return 0;
  int swaps = 0;
  for (std::uint64_t m = b.mask(); m; m &= m - 1) {
    int pos = std::countr_zero(m);
    std::uint64_t above = pos == 63 ? 0 : (~std::uint64_t{0} << (pos + 1));
    swaps += std::popcount(a.mask() & above);
  }
  return (swaps & 1) ? -1 : 1;
}

/// All degree-p multi-indices over n generators in lexicographic order.
inline std::vector<MultiIndex> basis(int n, int p) {
  std::vector<MultiIndex> out;
  if (p < 0 || p > n) return out;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << i;
    out.emplace_back(mask);
    int k = p - 1;
    while (k >= 0 && idx[k] == n - p + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Position lookup for a basis returned by `basis`.
class BasisIndex {
 public:
  BasisIndex() = default;
  explicit BasisIndex(std::vector<MultiIndex> elements) : elements_(std::move(elements)) {
    lookup_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) lookup_.emplace(elements_[i].mask(), i);
  }
  std::size_t size() const noexcept { return elements_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t position(MultiIndex m) const {
    auto it = lookup_.find(m.mask());
    if (it == lookup_.end()) throw std::out_of_range("multi-index not in basis");
    return it->second;
  }
  const std::vector<MultiIndex>& elements() const noexcept { return elements_; }

 private:
  std::vector<MultiIndex> elements_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

/// Homogeneous form of degree p over n generators with sparse exact coefficients.
/// Degrees above n are allowed and denote the zero space.
class Form {
 public:
  using Coefficients = std::map<MultiIndex, Rational>;

  Form(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > 64) throw std::invalid_argument("form dimension out of range");
    if (degree < 0) throw std::invalid_argument("form degree out of range");
  }

  /// Single generator as a 1-form (0-based position).
  static Form generator(int dim, int zero_based) {
    Form f(dim, 1);
    f.set(MultiIndex::single(zero_based), Rational(1));
    return f;
  }

  static Form monomial(int dim, MultiIndex idx, const Rational& coeff = Rational(1)) {
    Form f(dim, idx.degree());
    f.set(idx, coeff);
    return f;
  }

  static Form constant(int dim, const Rational& c) {
    Form f(dim, 0);
    f.set(MultiIndex(), c);
    return f;
  }

  /// Dense coefficient vector in the lexicographic basis of degree p.
  static Form from_dense(int dim, int degree, const std::vector<Rational>& values) {
    Form f(dim, degree);
    auto b = basis(dim, degree);
    if (b.size() != values.size()) throw std::invalid_argument("dense vector length does not match basis size");
    for (std::size_t i = 0; i < b.size(); ++i) f.set(b[i], values[i]);
    return f;
  }

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Rational coefficient(MultiIndex idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void set(MultiIndex idx, const Rational& value) {
    check_index(idx);
    if (value == 0)
      coeffs_.erase(idx);
    else
      coeffs_[idx] = value;
  }

  void add(MultiIndex idx, const Rational& value) {
    check_index(idx);
    if (value == 0) return;
    auto& slot = coeffs_[idx];
    slot += value;
    if (slot == 0) coeffs_.erase(idx);
  }

  std::vector<Rational> dense() const {
    auto b = basis(dim_, degree_);
    std::vector<Rational> out(b.size(), Rational(0));
    BasisIndex bi(std::move(b));
    for (const auto& [idx, c] : coeffs_) out[bi.position(idx)] = c;
    return out;
  }

  Form& operator+=(const Form& o) {
    require_same_space(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    require_same_space(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, -c);
    return *this;
  }
  Form& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [idx, c] : coeffs_) c *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rational& s, Form a) { return a *= s; }
  friend Form operator*(Form a, const Rational& s) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << to_string(c) << "*[" << idx.str() << "]";
    }
    return os.str();
  }

 private:
  void check_index(MultiIndex idx) const {
    if (idx.degree() != degree_) throw std::invalid_argument("multi-index degree does not match form degree");
    if (idx.max_index() >= dim_) throw std::invalid_argument("multi-index entry exceeds form dimension");
  }
  void require_same_space(const Form& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw std::invalid_argument("forms live in different spaces");
  }

  int dim_;
  int degree_;
  Coefficients coeffs_;
};

inline Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  Form out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.coefficients())
    for (const auto& [ib, cb] : b.coefficients()) {
      int s = wedge_sign(ia, ib);
      if (s == 0) continue;
      out.add(MultiIndex(ia.mask() | ib.mask()), s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  return out;
}

/// Contraction of a single generator into a monomial: int(e_i) e_J. Returns the
/// sign (0 if i is not in J) and writes the remaining index.
inline int contract_generator(int i, MultiIndex j, MultiIndex& rest) {
  if (!j.contains(i)) return 0;
  std::uint64_t below = i == 0 ? 0 : ((std::uint64_t{1} << i) - 1);
  int before = std::popcount(j.mask() & below);
  rest = MultiIndex(j.mask() & ~(std::uint64_t{1} << i));
  return (before & 1) ? -1 : 1;
}

/// Interior product int(a) b with respect to the orthonormal coframe, extended
/// by int(x ^ y) = int(y) int(x). Requires deg a <= deg b.
inline Form interior(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("interior: dimension mismatch");
  if (a.degree() > b.degree()) throw std::invalid_argument("interior: degree of contracting form exceeds target degree");
  Form out(a.dim(), b.degree() - a.degree());
  for (const auto& [ia, ca] : a.coefficients())
    for (const auto& [ib, cb] : b.coefficients()) {
      MultiIndex cur = ib;
      int sign = 1;
      for (int pos : ia.positions()) {
        MultiIndex rest;
        int s = contract_generator(pos, cur, rest);
        if (s == 0) {
          sign = 0;
          break;
        }
        sign *= s;
        cur = rest;
      }
      if (sign != 0) out.add(cur, sign > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  return out;
}

/// Weight of a monomial when generator i has squared norm weights[i].
inline Rational monomial_weight(MultiIndex idx, std::span<const Rational> weights) {
  Rational w(1);
  for (int p : idx.positions()) w *= weights[p];
  return w;
}

/// Inner product with per-generator weights: sum_I a_I b_I prod_{i in I} w_i.
inline Rational inner(const Form& a, const Form& b, std::span<const Rational> weights) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw std::invalid_argument("inner: degree or dimension mismatch");
  if (static_cast<int>(weights.size()) != a.dim()) throw std::invalid_argument("inner: weight vector has wrong length");
  Rational acc(0);
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (const auto& [idx, x] : ca) {
    auto it = cb.find(idx);
    if (it != cb.end()) acc += x * it->second * monomial_weight(idx, weights);
  }
  return acc;
}

/// Inner product with a uniform generator weight w, so a degree-p monomial has
/// squared norm w^p.
inline Rational inner(const Form& a, const Form& b, const Rational& w) {
  std::vector<Rational> weights(static_cast<std::size_t>(a.dim()), w);
  return inner(a, b, std::span<const Rational>(weights));
}

}  // namespace liespectra
