#pragma once

#include <random>
#include <string>
#include <vector>

#include "fixdet/error.hpp"
#include "fixdet/field.hpp"
#include "fixdet/polynomial.hpp"

namespace fixdet {

template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  explicit Matrix(F field, std::size_t rows = 0, std::size_t cols = 0)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}
  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    require(a_.size() == rows_ * cols_, ErrorCode::invalid_input, "matrix entry count does not match shape");
  }
  Matrix(F field, const std::vector<std::vector<long long>>& ints) : field_(std::move(field)) {
    rows_ = ints.size();
    cols_ = rows_ ? ints[0].size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : ints) {
      require(row.size() == cols_, ErrorCode::invalid_input, "ragged matrix rows");
      for (auto v : row) a_.push_back(field_.from_int(v));
    }
  }

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  // I_{k,n}: ones on the main diagonal.
  static Matrix identity(const F& f, std::size_t k, std::size_t n) {
    Matrix m(f, k, n);
    for (std::size_t i = 0; i < std::min(k, n); ++i) m(i, i) = f.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Element>& data() const { return a_; }

  std::vector<Element> row(std::size_t i) const {
    return std::vector<Element>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_row(std::size_t i, const std::vector<Element>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  static Matrix from_rows(const F& f, const std::vector<std::vector<Element>>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!field_.is_zero(x)) return false;
    return true;
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, ErrorCode::invalid_input, "matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t l = 0; l < cols_; ++l) {
        const Element& x = (*this)(i, l);
        if (field_.is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(x, o(l, j)));
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::invalid_input, "matrix sum shape mismatch");
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
  }
  Matrix operator-(const Matrix& o) const { return *this + o.scaled(field_.neg(field_.one())); }
  Matrix scaled(const Element& s) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(a_[i], s);
    return r;
  }
  std::vector<Element> left_multiply(const std::vector<Element>& v) const {  // v * M
    std::vector<Element> r(cols_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      if (field_.is_zero(v[i])) continue;
      for (std::size_t j = 0; j < cols_; ++j) r[j] = field_.add(r[j], field_.mul(v[i], (*this)(i, j)));
    }
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  Matrix hconcat(const Matrix& o) const {
    require(rows_ == o.rows_, ErrorCode::invalid_input, "hconcat row mismatch");
    Matrix r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }
  Matrix vconcat(const Matrix& o) const {
    require(cols_ == o.cols_, ErrorCode::invalid_input, "vconcat column mismatch");
    Matrix r(field_, rows_ + o.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
    return r;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.equal(a_[i], o.a_[i])) return false;
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += field_.to_string((*this)(i, j));
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  F field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> a_;
};

template <class F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // 0-based column indices
};

template <class F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

// Basis of {x : M x = 0}, one vector per free column, in RREF order.
template <class F>
std::vector<std::vector<typename F::Element>> right_kernel(const Matrix<F>& m) {
  const F& f = m.field();
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Element> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = f.neg(rr.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of {v : v M = 0}, echelonized (rows of an RREF matrix).
template <class F>
std::vector<std::vector<typename F::Element>> left_kernel(const Matrix<F>& m) {
  auto basis = right_kernel(m.transpose());
  if (basis.empty()) return basis;
  auto rr = rref(Matrix<F>::from_rows(m.field(), basis, m.rows()));
  std::vector<std::vector<typename F::Element>> out;
  for (std::size_t i = 0; i < rr.rank; ++i) out.push_back(rr.reduced.row(i));
  return out;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  require(m.is_square(), ErrorCode::invalid_input, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  auto rr = rref(m.hconcat(Matrix<F>::identity(m.field(), n)));
  require(rr.rank >= n && (n == 0 || rr.pivots[n - 1] == n - 1), ErrorCode::invalid_input, "matrix is singular");
  return rr.reduced.block(0, n, n, n);
}

template <class F>
typename F::Element determinant(Matrix<F> m) {
  require(m.is_square(), ErrorCode::invalid_input, "determinant of non-square matrix");
  const F& f = m.field();
  auto det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && f.is_zero(m(p, c))) ++p;
    if (p == n) return f.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const auto inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(m(i, c))) continue;
      const auto factor = f.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

// Characteristic polynomial det(xI - M) via reduction to upper Hessenberg form.
template <class F>
Polynomial<F> char_poly(Matrix<F> h) {
  require(h.is_square(), ErrorCode::invalid_input, "characteristic polynomial of non-square matrix");
  const F& f = h.field();
  const std::size_t n = h.rows();
  for (std::size_t c = 0; c + 2 <= n; ++c) {
    std::size_t p = c + 1;
    while (p < n && f.is_zero(h(p, c))) ++p;
    if (p == n) continue;
    if (p != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(p, j), h(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, p), h(i, c + 1));
    }
    const auto inv = f.inv(h(c + 1, c));
    for (std::size_t i = c + 2; i < n; ++i) {
      if (f.is_zero(h(i, c))) continue;
      const auto u = f.mul(h(i, c), inv);
      for (std::size_t j = 0; j < n; ++j) h(i, j) = f.sub(h(i, j), f.mul(u, h(c + 1, j)));
      for (std::size_t r = 0; r < n; ++r) h(r, c + 1) = f.add(h(r, c + 1), f.mul(u, h(r, i)));
    }
  }
  // p_{m+1}(x) = (x - h_mm) p_m - sum_{i<m} h_im * prod_{j=i+1..m} h_{j,j-1} * p_i
  std::vector<Polynomial<F>> p;
  p.push_back(Polynomial<F>::constant(f, f.one()));
  for (std::size_t m = 0; m < n; ++m) {
    Polynomial<F> next = Polynomial<F>::linear(f, h(m, m)) * p[m];
    auto prod = f.one();
    for (std::size_t i = m; i-- > 0;) {
      prod = f.mul(prod, h(i + 1, i));
      if (f.is_zero(prod)) break;
      next -= p[i].scaled(f.mul(prod, h(i, m)));
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

template <class F>
Matrix<F> map_matrix(const Matrix<F>& m, const Embedding<F>& emb, const F& target) {
  std::vector<typename F::Element> e;
  e.reserve(m.data().size());
  for (const auto& x : m.data()) e.push_back(emb(x));
  return Matrix<F>(target, m.rows(), m.cols(), std::move(e));
}

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(f, rng);
  return m;
}

template <class F>
Matrix<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

}  // namespace fixdet
