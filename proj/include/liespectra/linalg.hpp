#pragma once

// Dense and sparse exact matrices, row reduction, characteristic polynomials
// and exact eigen-decomposition for matrices whose spectrum is rational.

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace liespectra {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Row-major sparse matrix; each row holds (column, value) pairs sorted by column
/// with no stored zeros.
template <class T>
class SparseMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, T>>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t r) const { return rows_[r]; }

  /// Adds `value` to entry (r, c).
  void add(std::size_t r, std::size_t c, const T& value) {
    if (value == 0) return;
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += value;
      if (it->second == 0) row.erase(it);
    } else {
      row.insert(it, {c, value});
    }
  }

  T at(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : T(0);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) t.rows_[c].push_back({r, v});
    return t;
  }

  SparseMatrix scaled(const T& s) const {
    SparseMatrix out(rows_.size(), cols_);
    if (s == 0) return out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) out.rows_[r].push_back({c, v * s});
    return out;
  }

  Matrix<T> dense() const {
    Matrix<T> m(rows_.size(), cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) m(r, c) = v;
    return m;
  }

  static SparseMatrix from_dense(const Matrix<T>& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0) s.rows_[r].push_back({c, m(r, c)});
    return s;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("sparse matrix-vector product: shape mismatch");
    std::vector<T> out(rows_.size(), T(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, x] : rows_[r])
        if (v[c] != 0) out[r] += x * v[c];
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw std::invalid_argument("sparse product: shape mismatch");
    SparseMatrix out(a.rows(), b.cols_);
    std::map<std::size_t, T> acc;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      acc.clear();
      for (const auto& [k, x] : a.rows_[r])
        for (const auto& [c, y] : b.rows_[k]) acc[c] += x * y;
      for (auto& [c, v] : acc)
        if (v != 0) out.rows_[r].push_back({c, v});
    }
    return out;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("sparse sum: shape mismatch");
    SparseMatrix out = a;
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (const auto& [c, v] : b.rows_[r]) out.add(r, c, v);
    return out;
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    return a + b.scaled(T(-1));
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

/// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of the right null space, one vector per free column.
template <class T>
std::vector<std::vector<T>> kernel(Matrix<T> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b for square nonsingular A.
template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) throw std::domain_error("solve: singular matrix");
  std::vector<T> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = T(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("inverse: singular matrix");
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// Determinant by fraction-carrying elimination.
template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return T(0);
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      T f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Polynomial with coefficients in increasing degree order.
template <class T>
using Poly = std::vector<T>;

/// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
template <class T>
Poly<T> characteristic_polynomial(Matrix<T> h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("characteristic polynomial: matrix not square");
  const std::size_t n = h.rows();
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      h.swap_rows(i, m);
      h.swap_cols(i, m);
    }
    for (std::size_t j = m + 1; j < n; ++j) {
      if (h(j, m - 1) == 0) continue;
      T u = h(j, m - 1) / h(m, m - 1);
      for (std::size_t c = 0; c < n; ++c) h(j, c) -= u * h(m, c);
      for (std::size_t r = 0; r < n; ++r) h(r, m) += u * h(r, j);
    }
  }
  // p[k] = char poly of the leading k x k block.
  std::vector<Poly<T>> p(n + 1);
  p[0] = {T(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;
    Poly<T> next(k + 1, T(0));
    for (std::size_t d = 0; d < p[m].size(); ++d) {
      next[d + 1] += p[m][d];
      next[d] -= h(m, m) * p[m][d];
    }
    T t(1);
    for (std::size_t i = 1; i <= m; ++i) {
      t *= h(m - i + 1, m - i);
      T f = t * h(m - i, m);
      if (f == 0) continue;
      for (std::size_t d = 0; d < p[m - i].size(); ++d) next[d] -= f * p[m - i][d];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

template <class T>
T evaluate(const Poly<T>& p, const T& x) {
  T acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Divides p by (x - r); returns the remainder and overwrites p with the quotient.
inline Integer deflate(Poly<Integer>& p, const Integer& r) {
  if (p.size() <= 1) return p.empty() ? Integer(0) : p[0];
  Poly<Integer> q(p.size() - 1);
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * r + p[i];
    if (i > 0) q[i - 1] = acc;
  }
  Integer rem = acc;
  if (rem == 0) p = std::move(q);
  return rem;
}

struct IntegerRoot {
  Integer value;
  std::size_t multiplicity = 0;
};

/// All integer roots (with multiplicity) of a monic integer polynomial whose
/// real roots lie in [-bound, bound]. The unfactored remainder is returned in
/// `residual` (degree 0 when the polynomial splits over the integers).
inline std::vector<IntegerRoot> integer_roots(Poly<Integer> p, const Integer& bound, Poly<Integer>& residual) {
  std::vector<IntegerRoot> roots;
  auto strip = [&](const Integer& r) {
    std::size_t mult = 0;
    while (p.size() > 1) {
      Poly<Integer> trial = p;
      if (deflate(trial, r) != 0) break;
      p = std::move(trial);
      ++mult;
    }
    if (mult > 0) roots.push_back({r, mult});
  };
  strip(Integer(0));
  if (p.size() > 1) {
    Integer constant = p[0];
    if (bound > Integer(50'000'000)) throw std::domain_error("integer root search bound too large");
    for (Integer k = 1; k <= bound && p.size() > 1; ++k) {
      if (!mpz_divisible_p(constant.get_mpz_t(), k.get_mpz_t())) continue;
      std::size_t before = p.size();
      strip(k);
      strip(Integer(-k));
      if (p.size() != before) constant = p[0];
    }
  }
  residual = std::move(p);
  std::sort(roots.begin(), roots.end(), [](const IntegerRoot& a, const IntegerRoot& b) { return a.value < b.value; });
  return roots;
}

struct EigenSpace {
  Rational eigenvalue;
  std::vector<std::vector<Rational>> basis;
};

/// Exact spectrum of a diagonalizable rational matrix with rational eigenvalues.
/// The characteristic polynomial of the integer matrix D*A (D the common
/// denominator) is split into linear factors by exhaustive integer root search
/// within the Gershgorin disc; any leftover factor is reported as an error, as is
/// a geometric multiplicity that falls short of the algebraic one.
inline std::vector<EigenSpace> exact_eigenspaces(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("eigen-decomposition: matrix not square");
  if (n == 0) return {};
  Integer denom = 1;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) denom = lcm(denom, a(r, c).get_den());
  Matrix<Rational> scaled(n, n);
  Integer bound = 0;
  for (std::size_t r = 0; r < n; ++r) {
    Integer row_sum = 0;
    for (std::size_t c = 0; c < n; ++c) {
      scaled(r, c) = a(r, c) * Rational(denom);
      row_sum += abs(scaled(r, c).get_num());
    }
    bound = std::max(bound, row_sum);
  }
  Poly<Rational> cp = characteristic_polynomial(scaled);
  Poly<Integer> ip(cp.size());
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (cp[i].get_den() != 1) throw std::logic_error("characteristic polynomial of integer matrix is not integral");
    ip[i] = cp[i].get_num();
  }
  Poly<Integer> residual;
  auto roots = integer_roots(ip, bound, residual);
  if (residual.size() > 1) {
    std::ostringstream os;
    os << "characteristic polynomial has a factor without rational roots of degree " << residual.size() - 1
       << " (coefficients, low to high:";
    for (const auto& c : residual) os << ' ' << c.get_str();
    os << ")";
    throw std::domain_error(os.str());
  }
  std::vector<EigenSpace> spaces;
  for (const auto& root : roots) {
    Rational lambda(root.value, denom);
    lambda.canonicalize();
    Matrix<Rational> shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    auto basis = kernel(shifted);
    if (basis.size() != root.multiplicity)
      throw std::domain_error("eigenvalue " + to_string(lambda) + " has geometric multiplicity " +
                              std::to_string(basis.size()) + " below algebraic multiplicity " +
                              std::to_string(root.multiplicity));
    spaces.push_back({lambda, std::move(basis)});
  }
  return spaces;
}

/// Rank of a rational sparse matrix modulo a 61-bit prime. For integer (or
/// p-integral) matrices this is a certified lower bound for the rank over Q.
inline std::size_t modular_rank(const SparseMatrix<Rational>& m) {
  constexpr std::uint64_t prime = (std::uint64_t{1} << 61) - 1;
  using u128 = unsigned __int128;
  auto mul = [](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>((u128(a) * b) % prime); };
  auto pow_mod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  Integer p_big;
  mpz_set_ui(p_big.get_mpz_t(), 0);
  mpz_setbit(p_big.get_mpz_t(), 61);
  p_big -= 1;
  auto reduce = [&](const Rational& q) -> std::uint64_t {
    Integer num = q.get_num() % p_big;
    if (num < 0) num += p_big;
    Integer den = q.get_den() % p_big;
    if (den == 0) throw std::domain_error("modular rank: denominator divisible by the prime");
    std::uint64_t n = mpz_get_ui(num.get_mpz_t());
    std::uint64_t d = mpz_get_ui(den.get_mpz_t());
    return mul(n, pow_mod(d, prime - 2));
  };
  using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;
  std::map<std::size_t, ModRow> pivot_rows;  // leading column -> normalized row
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ModRow row;
    for (const auto& [c, v] : m.row(r)) {
      auto x = reduce(v);
      if (x) row.push_back({c, x});
    }
    while (!row.empty()) {
      auto it = pivot_rows.find(row.front().first);
      if (it == pivot_rows.end()) {
        auto inv = pow_mod(row.front().second, prime - 2);
        for (auto& e : row) e.second = mul(e.second, inv);
        pivot_rows.emplace(row.front().first, std::move(row));
        break;
      }
      const ModRow& piv = it->second;
      std::uint64_t f = row.front().second;
      ModRow merged;
      merged.reserve(row.size() + piv.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || piv[j].first < row[i].first) {
          merged.push_back({piv[j].first, (prime - mul(f, piv[j].second)) % prime});
          ++j;
        } else {
          std::uint64_t v = (row[i].second + prime - mul(f, piv[j].second)) % prime;
          if (v) merged.push_back({row[i].first, v});
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
  }
  return pivot_rows.size();
}

}  // namespace liespectra
