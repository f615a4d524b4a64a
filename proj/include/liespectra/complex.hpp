#pragma once

// Free graded-commutative algebra on degree-one generators with a derivation
// prescribed on the generators, an inner product that is diagonal in the
// monomial basis, and the resulting operators d, delta, Delta. Both the
// invariant complex of a Lie group and the tilde complex on G x G are
// instances.

#include "exterior.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace liespectra {

/// Matrix of an operator between degree spaces; columns index the source
/// basis, rows the target basis, both in lexicographic multi-index order.
struct ComplexOperator {
  int degree_from = 0;
  int degree_to = 0;
  SparseMatrix<Rational> matrix;

  Matrix<Rational> dense() const { return matrix.dense(); }
};

struct SpectrumEntry {
  Rational eigenvalue;
  int multiplicity = 0;
  std::vector<Form> eigenbasis;
};

struct SpectrumTable {
  int degree = 0;
  std::vector<SpectrumEntry> entries;  // strictly increasing eigenvalues

  int multiplicity(const Rational& lambda) const {
    for (const auto& e : entries)
      if (e.eigenvalue == lambda) return e.multiplicity;
    return 0;
  }
  int kernel_dimension() const { return multiplicity(Rational(0)); }
  int total_multiplicity() const {
    int n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
  }
  const SpectrumEntry* find(const Rational& lambda) const {
    for (const auto& e : entries)
      if (e.eigenvalue == lambda) return &e;
    return nullptr;
  }
};

class ExteriorComplex {
 public:
  /// `weights[i]` is the squared norm of generator i; `blocks[i]` labels the
  /// direct summand it belongs to; `differentials[i]` is d of generator i
  /// (a 2-form over the same generators).
  ExteriorComplex(std::vector<Rational> weights, std::vector<int> blocks, std::vector<Form> differentials)
      : weights_(std::move(weights)), blocks_(std::move(blocks)), differentials_(std::move(differentials)) {
    const auto n = weights_.size();
    if (n > 64) throw std::invalid_argument("at most 64 generators are supported");
    if (blocks_.size() != n || differentials_.size() != n)
      throw std::invalid_argument("generator data have inconsistent lengths");
    for (const auto& w : weights_)
      if (w <= 0) throw std::invalid_argument("generator weights must be positive");
    for (const auto& f : differentials_)
      if (f.dim() != static_cast<int>(n) || f.degree() != 2)
        throw std::invalid_argument("generator differentials must be 2-forms over the generators");
  }

  int generators() const noexcept { return static_cast<int>(weights_.size()); }
  std::span<const Rational> weights() const noexcept { return weights_; }
  const std::vector<int>& blocks() const noexcept { return blocks_; }
  const Form& generator_differential(int i) const { return differentials_.at(i); }

  Rational weight(MultiIndex idx) const { return monomial_weight(idx, weights_); }

  Rational inner(const Form& a, const Form& b) const { return liespectra::inner(a, b, weights()); }

  void check_degree(int p) const {
    if (p < 0 || p > generators()) throw std::out_of_range("degree " + std::to_string(p) + " outside 0.." + std::to_string(generators()));
  }

  /// d on a single monomial by the antiderivation rule.
  Form d_monomial(MultiIndex idx) const {
    const int n = generators();
    Form out(n, idx.degree() + 1);
    auto pos = idx.positions();
    for (std::size_t r = 0; r < pos.size(); ++r) {
      std::uint64_t prefix = 0, suffix = 0;
      for (std::size_t s = 0; s < r; ++s) prefix |= std::uint64_t{1} << pos[s];
      for (std::size_t s = r + 1; s < pos.size(); ++s) suffix |= std::uint64_t{1} << pos[s];
      const int base_sign = (r % 2 == 0) ? 1 : -1;
      for (const auto& [k, c] : differentials_[pos[r]].coefficients()) {
        int s1 = wedge_sign(MultiIndex(prefix), k);
        if (s1 == 0) continue;
        MultiIndex left(prefix | k.mask());
        int s2 = wedge_sign(left, MultiIndex(suffix));
        if (s2 == 0) continue;
        int sign = base_sign * s1 * s2;
        out.add(MultiIndex(left.mask() | suffix), sign > 0 ? c : Rational(-c));
      }
    }
    return out;
  }

  Form d(const Form& f) const {
    require_member(f);
    Form out(generators(), f.degree() + 1);
    for (const auto& [idx, c] : f.coefficients()) out += c * d_monomial(idx);
    return out;
  }

  /// d : Lambda^p -> Lambda^{p+1}.
  ComplexOperator d_operator(int p) const {
    check_degree(p);
    const int n = generators();
    BasisIndex src(basis(n, p)), dst(basis(n, p + 1));
    SparseMatrix<Rational> m(dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
      const Form image = d_monomial(src[col]);
      for (const auto& [idx, c] : image.coefficients()) m.add(dst.position(idx), col, c);
    }
    return {p, p + 1, std::move(m)};
  }

  /// delta : Lambda^p -> Lambda^{p-1}, the adjoint of d under the weighted inner
  /// product: delta[I][J] = d[J][I] * w(J) / w(I).
  ComplexOperator delta_operator(int p) const {
    if (p < 1 || p > generators()) throw std::out_of_range("delta needs 1 <= p <= " + std::to_string(generators()));
    const int n = generators();
    BasisIndex lower(basis(n, p - 1)), upper(basis(n, p));
    auto dm = d_operator(p - 1).matrix;
    SparseMatrix<Rational> m(lower.size(), upper.size());
    for (std::size_t row = 0; row < dm.rows(); ++row)
      for (const auto& [col, v] : dm.row(row)) m.add(col, row, v * weight(upper[row]) / weight(lower[col]));
    return {p, p - 1, std::move(m)};
  }

  Form delta(const Form& f) const {
    require_member(f);
    if (f.degree() == 0) return Form(generators(), 0);
    auto op = delta_operator(f.degree());
    return Form::from_dense(generators(), f.degree() - 1, op.matrix.apply(f.dense()));
  }

  /// Delta = d delta + delta d on Lambda^p.
  ComplexOperator laplacian_operator(int p) const {
    check_degree(p);
    const int n = generators();
    const std::size_t dim = basis(n, p).size();
    SparseMatrix<Rational> lap(dim, dim);
    if (p < n) lap = lap + delta_operator(p + 1).matrix * d_operator(p).matrix;
    if (p > 0) lap = lap + d_operator(p - 1).matrix * delta_operator(p).matrix;
    return {p, p, std::move(lap)};
  }

  Form laplacian(const Form& f) const {
    require_member(f);
    auto op = laplacian_operator(f.degree());
    return Form::from_dense(generators(), f.degree(), op.matrix.apply(f.dense()));
  }

  /// Exact eigen-decomposition of Delta on Lambda^p. The matrix is split into
  /// the connected components of its sparsity pattern (a refinement of the
  /// split by block multidegree) and each component is solved exactly.
  SpectrumTable spectrum(int p) const {
    check_degree(p);
    const int n = generators();
    auto lap = laplacian_operator(p).matrix;
    const std::size_t dim = lap.rows();
    std::vector<std::size_t> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t r = 0; r < dim; ++r)
      for (const auto& [c, v] : lap.row(r)) parent[find(r)] = find(c);
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < dim; ++i) components[find(i)].push_back(i);

    std::map<Rational, std::vector<std::vector<Rational>>> merged;
    for (const auto& [root, members] : components) {
      const std::size_t m = members.size();
      Matrix<Rational> block(m, m);
      std::map<std::size_t, std::size_t> local;
      for (std::size_t i = 0; i < m; ++i) local[members[i]] = i;
      for (std::size_t i = 0; i < m; ++i)
        for (const auto& [c, v] : lap.row(members[i])) block(i, local.at(c)) = v;
      for (auto& space : exact_eigenspaces(block)) {
        auto& target = merged[space.eigenvalue];
        for (auto& v : space.basis) {
          std::vector<Rational> full(dim, Rational(0));
          for (std::size_t i = 0; i < m; ++i) full[members[i]] = v[i];
          target.push_back(std::move(full));
        }
      }
    }
    SpectrumTable table;
    table.degree = p;
    for (auto& [lambda, vectors] : merged) {
      SpectrumEntry e;
      e.eigenvalue = lambda;
      e.multiplicity = static_cast<int>(vectors.size());
      for (auto& v : vectors) e.eigenbasis.push_back(Form::from_dense(n, p, v));
      table.entries.push_back(std::move(e));
    }
    return table;
  }

  /// Orthogonal projection (weighted inner product) of f onto the span of `vectors`.
  Form project(const Form& f, const std::vector<Form>& vectors) const {
    Form out(generators(), f.degree());
    if (vectors.empty()) return out;
    const std::size_t k = vectors.size();
    Matrix<Rational> gram(k, k);
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) gram(i, j) = inner(vectors[i], vectors[j]);
      rhs[i] = inner(vectors[i], f);
    }
    auto coeff = solve(gram, rhs);
    for (std::size_t i = 0; i < k; ++i)
      if (coeff[i] != 0) out += coeff[i] * vectors[i];
    return out;
  }

 private:
  void require_member(const Form& f) const {
    if (f.dim() != generators()) throw std::invalid_argument("form does not live on this complex");
  }

  std::vector<Rational> weights_;
  std::vector<int> blocks_;
  std::vector<Form> differentials_;
};

// ---------------------------------------------------------------------------
// Structural checks shared by every complex.

struct DegreeChecks {
  int degree = 0;
  bool d_squared_zero = true;
  bool delta_adjoint = true;
  bool laplacian_self_adjoint = true;
  bool laplacian_psd = true;
  bool commutes_with_d = true;
  bool commutes_with_delta = true;
  bool hodge_decomposition = true;
  int kernel_dimension = 0;
  std::size_t rank_d_in = 0;      // rank of d_{p-1}
  std::size_t rank_delta_in = 0;  // rank of delta_{p+1}
  std::size_t dimension = 0;

  bool ok() const {
    return d_squared_zero && delta_adjoint && laplacian_self_adjoint && laplacian_psd && commutes_with_d &&
           commutes_with_delta && hodge_decomposition;
  }
};

/// Runs every structural identity at degree p.
///
/// Hodge ranks: ker Delta (exact), im d_{p-1} and im delta_{p+1} are shown to be
/// mutually orthogonal exactly, so their dimensions add to at most dim Lambda^p;
/// ranks modulo a large prime are certified lower bounds, so reaching
/// dim Lambda^p with them proves the decomposition.
inline DegreeChecks check_degree(const ExteriorComplex& cx, int p) {
  const int n = cx.generators();
  DegreeChecks out;
  out.degree = p;
  BasisIndex here(basis(n, p));
  out.dimension = here.size();

  auto d_p = cx.d_operator(p).matrix;
  if (p + 1 <= n) {
    auto d_next = cx.d_operator(p + 1).matrix;
    out.d_squared_zero = (d_next * d_p).is_zero();
  }

  // <d a, b>_{p+1} = <a, delta b>_p on basis pairs.
  if (p + 1 <= n) {
    BasisIndex up(basis(n, p + 1));
    auto delta_next = cx.delta_operator(p + 1).matrix;
    for (std::size_t r = 0; r < d_p.rows() && out.delta_adjoint; ++r)
      for (const auto& [c, v] : d_p.row(r))
        if (cx.weight(up[r]) * v != cx.weight(here[c]) * delta_next.at(c, r)) out.delta_adjoint = false;
    for (std::size_t r = 0; r < delta_next.rows() && out.delta_adjoint; ++r)
      for (const auto& [c, v] : delta_next.row(r))
        if (cx.weight(here[r]) * v != cx.weight(up[c]) * d_p.at(c, r)) out.delta_adjoint = false;
  }

  auto lap = cx.laplacian_operator(p).matrix;
  for (std::size_t r = 0; r < lap.rows() && out.laplacian_self_adjoint; ++r)
    for (const auto& [c, v] : lap.row(r))
      if (cx.weight(here[r]) * v != cx.weight(here[c]) * lap.at(c, r)) out.laplacian_self_adjoint = false;

  if (p + 1 <= n) {
    auto lap_next = cx.laplacian_operator(p + 1).matrix;
    out.commutes_with_d = (lap_next * d_p - d_p * lap).is_zero();
  }
  if (p >= 1) {
    auto lap_prev = cx.laplacian_operator(p - 1).matrix;
    auto delta_p = cx.delta_operator(p).matrix;
    out.commutes_with_delta = (lap_prev * delta_p - delta_p * lap).is_zero();
  }

  auto spec = cx.spectrum(p);
  for (const auto& e : spec.entries)
    if (e.eigenvalue < 0) out.laplacian_psd = false;
  if (spec.total_multiplicity() != static_cast<int>(here.size())) out.laplacian_psd = false;
  out.kernel_dimension = spec.kernel_dimension();

  bool orthogonal = out.d_squared_zero && out.delta_adjoint;
  if (const auto* zero = spec.find(Rational(0))) {
    for (const auto& v : zero->eigenbasis) {
      if (!cx.d(v).is_zero()) orthogonal = false;
      if (p >= 1 && !cx.delta(v).is_zero()) orthogonal = false;
    }
  }
  if (p >= 1) {
    auto d_prev = cx.d_operator(p - 1).matrix;
    out.rank_d_in = modular_rank(d_prev);
    // Second half of d^2 = 0 (into this degree) for orthogonality of the images.
    if (!(d_p * d_prev).is_zero()) orthogonal = false;
  }
  if (p + 1 <= n) out.rank_delta_in = modular_rank(d_p);  // rank delta_{p+1} = rank d_p
  out.hodge_decomposition =
      orthogonal && static_cast<std::size_t>(out.kernel_dimension) + out.rank_d_in + out.rank_delta_in == here.size();
  return out;
}

}  // namespace liespectra
