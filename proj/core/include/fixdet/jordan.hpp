#pragma once

#include <optional>
#include <vector>

#include "fixdet/matrix.hpp"
#include "fixdet/roots.hpp"

namespace fixdet {

template <class F>
struct GjnfResult {
  F field;  // field of the normal form, possibly an extension of the input's
  std::uint32_t extension_degree = 1;
  Matrix<F> input;  // A mapped into `field`
  Matrix<F> row_change, col_change, normal_form;
  std::vector<typename F::Element> eigenvalues;  // diagonal of the left block
  std::vector<int> epsilon;                      // size k+1, epsilon[0] = epsilon[k] = 0
};

namespace detail {

template <class F>
Matrix<F> matrix_power(const Matrix<F>& m, std::size_t e) {
  Matrix<F> r = Matrix<F>::identity(m.field(), m.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * m;
  return r;
}

template <class F>
std::vector<typename F::Element> mat_vec(const Matrix<F>& m, const std::vector<typename F::Element>& v) {
  const F& f = m.field();
  std::vector<typename F::Element> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

inline Embedding<RationalField> embedding_for(const RationalField& a, const RationalField& b) { return {a, b}; }
inline Embedding<FiniteField> embedding_for(const FiniteField& a, const FiniteField& b) { return {a, b}; }

// Jordan basis of a square matrix whose eigenvalues (ascending) are given.
// Columns of the returned S satisfy S^-1 L S = J with ones on the superdiagonal.
template <class F>
Matrix<F> jordan_basis(const Matrix<F>& L, const std::vector<std::pair<typename F::Element, int>>& eig,
                       std::vector<typename F::Element>& diag, std::vector<int>& eps) {
  using E = typename F::Element;
  const F& f = L.field();
  const std::size_t k = L.rows();
  std::vector<std::vector<E>> columns;
  diag.clear();
  eps.assign(k + 1, 0);
  for (const auto& [lambda, mult] : eig) {
    const Matrix<F> N = L - Matrix<F>::identity(f, k).scaled(lambda);
    // Kernels of N^m until they reach the algebraic multiplicity.
    std::vector<std::vector<std::vector<E>>> kernels = {{}};
    std::vector<std::size_t> dims = {0};
    Matrix<F> power = Matrix<F>::identity(f, k);
    while (dims.back() < static_cast<std::size_t>(mult)) {
      power = power * N;
      kernels.push_back(right_kernel(power));
      dims.push_back(kernels.back().size());
      require(dims.back() > dims[dims.size() - 2], ErrorCode::invariant_violation, "generalized eigenspace stalled");
    }
    const std::size_t top = dims.size() - 1;
    std::vector<std::pair<std::vector<E>, std::size_t>> tops;  // (x, height)
    for (std::size_t m = top; m >= 1; --m) {
      // Span of ker N^{m-1} plus the level-m vectors of taller chains.
      std::vector<std::vector<E>> span = kernels[m - 1];
      for (const auto& [x, h] : tops) span.push_back(mat_vec(matrix_power(N, h - m), x));
      std::size_t current = span.empty() ? 0 : rank(Matrix<F>::from_rows(f, span, k));
      // Candidates from the echelon basis of ker N^m.
      auto cand = kernels[m];
      if (!cand.empty()) {
        auto rr = rref(Matrix<F>::from_rows(f, cand, k));
        cand.clear();
        for (std::size_t i = 0; i < rr.rank; ++i) cand.push_back(rr.reduced.row(i));
      }
      for (const auto& x : cand) {
        span.push_back(x);
        const std::size_t next = rank(Matrix<F>::from_rows(f, span, k));
        if (next > current) {
          current = next;
          tops.emplace_back(x, m);
        } else {
          span.pop_back();
        }
      }
    }
    // Tops were collected tallest first; emit each chain bottom-up.
    for (const auto& [x, h] : tops) {
      const std::size_t start = columns.size();
      for (std::size_t t = h; t >= 1; --t) {
        columns.push_back(mat_vec(matrix_power(N, t - 1), x));
        diag.push_back(lambda);
      }
      for (std::size_t i = start + 1; i < columns.size(); ++i) eps[i] = 1;  // eps[i] joins rows i, i+1 (1-based)
    }
  }
  require(columns.size() == k, ErrorCode::invariant_violation, "Jordan basis has wrong size");
  return Matrix<F>::from_rows(f, columns, k).transpose();
}

}  // namespace detail

// Generalized Jordan normal form of a k x n matrix (k <= n).  Returns nullopt
// when the characteristic polynomial of the left block does not split (only
// possible over Q).
template <class F>
std::optional<GjnfResult<F>> generalized_jordan_form(const Matrix<F>& A) {
  const std::size_t k = A.rows(), n = A.cols();
  require(k <= n, ErrorCode::invalid_input, "generalized Jordan form needs k <= n");
  const F& base = A.field();
  const auto chi = char_poly(A.block(0, 0, k, k));
  const auto roots = factor_squarefree_roots(chi);
  if (!roots.split) return std::nullopt;
  const F& K = roots.field;
  const auto emb = detail::embedding_for(base, K);
  const Matrix<F> AK = map_matrix(A, emb, K);
  const Matrix<F> L = AK.block(0, 0, k, k);

  GjnfResult<F> out{K, roots.extension_degree, AK, Matrix<F>(K), Matrix<F>(K), Matrix<F>(K), {}, {}};
  const Matrix<F> S = k ? detail::jordan_basis(L, roots.roots, out.eigenvalues, out.epsilon) : Matrix<F>(K);
  if (k == 0) out.epsilon.assign(1, 0);
  const Matrix<F> R = inverse(S);

  // Column-echelonize the right block with the remaining column freedom.
  Matrix<F> C22 = Matrix<F>::identity(K, n - k);
  if (n > k && k > 0) {
    const Matrix<F> X = R * AK.block(0, k, k, n - k);
    auto rr = rref(X.transpose().hconcat(Matrix<F>::identity(K, n - k)));
    C22 = rr.reduced.block(0, k, n - k, n - k).transpose();
  }
  Matrix<F> C = Matrix<F>::identity(K, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) C(i, j) = S(i, j);
  for (std::size_t i = 0; i < n - k; ++i)
    for (std::size_t j = 0; j < n - k; ++j) C(k + i, k + j) = C22(i, j);
  out.row_change = R;
  out.col_change = C;
  out.normal_form = R * AK * C;
  return out;
}

// True when the leftmost k x k block is in Jordan form with 0/1 superdiagonal.
template <class F>
bool is_generalized_jordan(const Matrix<F>& A) {
  const F& f = A.field();
  const std::size_t k = A.rows();
  if (k > A.cols()) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (j == i + 1) {
        if (!f.is_zero(A(i, j)) && !(f.is_one(A(i, j)) && f.equal(A(i, i), A(j, j)))) return false;
      } else if (!f.is_zero(A(i, j))) {
        return false;
      }
    }
  return true;
}

}  // namespace fixdet
