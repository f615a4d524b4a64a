#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liespectra {

class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("negative variable count");
  }

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }

  static Polynomial variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  int variables() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent vector has wrong length");
    if (c == 0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, sum(e, 0, nvars_));
    return d;
  }

  /// Largest total degree in variables [first, first + count).
  int degree_in(int first, int count) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, sum(e, first, count));
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same(b);
    Polynomial out(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(int i) const {
    if (i < 0 || i >= nvars_) throw std::out_of_range("variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      --f[i];
      out.add_term(f, c * e[i]);
    }
    return out;
  }

  /// Replaces variable i by images[i]; all images share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("substitution needs one image per variable");
    const int m = images.empty() ? 0 : images.front().variables();
    for (const auto& im : images)
      if (im.variables() != m) throw std::invalid_argument("substitution images disagree on variable count");
    std::vector<std::vector<Polynomial>> powers(nvars_);
    Polynomial out(m);
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(m, c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(m, Rational(1)));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
        term = term * pw[e[i]];
      }
      out += term;
    }
    return out;
  }

  /// Same polynomial in a larger variable set, variable i becoming offset + i.
  Polynomial embed(int new_nvars, int offset) const {
    if (offset < 0 || offset + nvars_ > new_nvars) throw std::out_of_range("embedding does not fit");
    Polynomial out(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponents f(new_nvars, 0);
      std::copy(e.begin(), e.end(), f.begin() + offset);
      out.add_term(f, c);
    }
    return out;
  }

  /// Human-readable form using the given variable names (x1, x2, ... by default).
  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest degree first reads naturally.
    std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const auto& a, const auto& b) { return sum(a.first, 0, nvars_) > sum(b.first, 0, nvars_); });
    for (const auto& [e, c] : ordered) {
      Rational mag = abs(c);
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      bool is_const = sum(e, 0, nvars_) == 0;
      bool wrote = false;
      if (mag != 1 || is_const) {
        os << to_string(mag);
        wrote = true;
      }
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << (names.empty() ? "x" + std::to_string(i + 1) : names.at(i));
        if (e[i] > 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  static int sum(const Exponents& e, int first, int count) {
    int s = 0;
    for (int i = first; i < first + count; ++i) s += e[i];
    return s;
  }
  void require_same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials have different variable counts");
  }

  int nvars_;
  Terms terms_;
};

inline Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial r = Polynomial::constant(p.variables(), Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

/// Parses sums of '*'-joined factors, each a rational constant or a variable
/// with optional power: "x1^2 - 1/4", "2*x1*x3 + x2". No parentheses.
/// `names` lists the accepted variable spellings in order.
inline Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + text + "' at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_int = [&]() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return text.substr(start, pos - start);
  };
  Polynomial out(n);
  skip();
  if (pos == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff(sign);
    Polynomial::Exponents e(n, 0);
    bool have_factor = false;
    while (true) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string num = read_int();
        std::string den = "1";
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          den = read_int();
        }
        coeff *= parse_rational(num + "/" + den);
      } else {
        int best = -1;
        std::size_t best_len = 0;
        for (int i = 0; i < n; ++i)
          if (text.compare(pos, names[i].size(), names[i]) == 0 && names[i].size() > best_len) {
            best = i;
            best_len = names[i].size();
          }
        if (best < 0) fail("unknown variable");
        pos += best_len;
        int power = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          power = std::stoi(read_int());
        }
        e[best] += power;
      }
      have_factor = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!have_factor) fail("empty term");
    out.add_term(e, coeff);
  }
  return out;
}

}  // namespace liespectra
