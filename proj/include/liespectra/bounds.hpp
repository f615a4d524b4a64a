#pragma once

// Combinatorial bounds on the number of Fourier eigenvalues of a form.

#include "rational.hpp"

#include <stdexcept>
#include <string>

namespace liespectra {

struct BoundInput {
  long n = 0;     // dim G
  long p = 0;     // form degree
  Integer dimE;   // dim E_lambda, or a lower bound for it
  Integer dimH;   // dim of an invariant subspace H
};

namespace detail {
inline void check_bound_args(long n, long p, long max_p, const Integer& dim) {
  if (n < 1) throw std::invalid_argument("group dimension must be positive");
  if (p < 0 || p > max_p)
    throw std::invalid_argument("form degree " + std::to_string(p) + " outside 0.." + std::to_string(max_p));
  if (dim < 0) throw std::invalid_argument("dimensions must be non-negative");
}
}  // namespace detail

/// C(n, p) dim H.
inline Integer bound_lemma_3_1(long n, long p, const Integer& dimH) {
  detail::check_bound_args(n, p, n, dimH);
  return binomial(n, p) * dimH;
}

/// C(2n, p) dim E.
inline Integer bound_thm_1_2(long n, long p, const Integer& dimE) {
  detail::check_bound_args(n, p, 2 * n, dimE);
  return binomial(2 * n, p) * dimE;
}

/// C(2n, p)^2 C(n, p)^2 dim E^4.
inline Integer bound_thm_1_6(long n, long p, const Integer& dimE) {
  detail::check_bound_args(n, p, n, dimE);
  Integer a = binomial(2 * n, p), b = binomial(n, p);
  Integer e2 = dimE * dimE;
  return a * a * b * b * e2 * e2;
}

/// Size bound C(n, p) dim H^2 on the bi-invariant envelope of H.
inline Integer bound_lemma_7_1_envelope(long n, long p, const Integer& dimH) {
  detail::check_bound_args(n, p, n, dimH);
  return binomial(n, p) * dimH * dimH;
}

}  // namespace liespectra
