#pragma once

#include <string>
#include <vector>

#include "fixdet/matrix.hpp"

namespace fixdet {

// A subspace of F^r held by the reduced row-echelon form of a basis, so equal
// subspaces have identical representatives.
template <class F>
class Subspace {
 public:
  using Element = typename F::Element;
  using Vector = std::vector<Element>;

  Subspace(F field, std::size_t ambient) : basis_(std::move(field), 0, ambient) {}
  // Span of the rows of `spanning`.
  explicit Subspace(const Matrix<F>& spanning) : basis_(spanning.field(), 0, spanning.cols()) {
    auto rr = rref(spanning);
    basis_ = rr.reduced.block(0, 0, rr.rank, spanning.cols());
    pivots_ = std::move(rr.pivots);
  }
  static Subspace span(const F& f, std::size_t ambient, const std::vector<Vector>& vectors) {
    return Subspace(Matrix<F>::from_rows(f, vectors, ambient));
  }
  static Subspace whole(const F& f, std::size_t ambient) { return Subspace(Matrix<F>::identity(f, ambient)); }
  // Trusts that `echelon` is already reduced (used by the enumerator).
  static Subspace from_echelon(Matrix<F> echelon, std::vector<std::size_t> pivots) {
    Subspace s(echelon.field(), echelon.cols());
    s.basis_ = std::move(echelon);
    s.pivots_ = std::move(pivots);
    return s;
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector vector(std::size_t i) const { return basis_.row(i); }

  bool contains(const Vector& v) const {
    Matrix<F> m = basis_.vconcat(Matrix<F>::from_rows(field(), {v}, ambient()));
    return rank(m) == dim();
  }
  bool contains(const Subspace& o) const { return rank(basis_.vconcat(o.basis_)) == dim(); }

  Subspace operator+(const Subspace& o) const { return Subspace(basis_.vconcat(o.basis_)); }

  Subspace intersect(const Subspace& o) const {
    if (dim() == 0 || o.dim() == 0) return Subspace(field(), ambient());
    // (a, b) with a U + b W = 0 gives a U in the intersection.
    const auto ker = left_kernel(basis_.vconcat(o.basis_));
    std::vector<Vector> vs;
    for (const auto& ab : ker) {
      Vector a(ab.begin(), ab.begin() + static_cast<std::ptrdiff_t>(dim()));
      vs.push_back(basis_.left_multiply(a));
    }
    if (vs.empty()) return Subspace(field(), ambient());
    return span(field(), ambient(), vs);
  }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

 private:
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

// Alternating bilinear form <x, y> = x G y^T on F^r, with G antisymmetric and
// zero on the diagonal.  Radical and rank are computed at construction.
template <class F>
class AlternatingForm {
 public:
  using Element = typename F::Element;
  using Vector = std::vector<Element>;

  explicit AlternatingForm(Matrix<F> gram) : gram_(std::move(gram)), radical_(gram_.field(), gram_.cols()) {
    const F& f = gram_.field();
    require(gram_.is_square(), ErrorCode::invalid_input, "Gram matrix must be square");
    for (std::size_t i = 0; i < gram_.rows(); ++i) {
      if (!f.is_zero(gram_(i, i)))
        fail(ErrorCode::invalid_input, "form is not alternating: diagonal entry (" + std::to_string(i + 1) + "," +
                                           std::to_string(i + 1) + ") is nonzero");
      for (std::size_t j = i + 1; j < gram_.cols(); ++j)
        if (!f.is_zero(f.add(gram_(i, j), gram_(j, i))))
          fail(ErrorCode::invalid_input, "form is not alternating: entries (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") and (" + std::to_string(j + 1) + "," +
                                             std::to_string(i + 1) + ") are not negatives");
    }
    const auto ker = left_kernel(gram_);
    radical_ = ker.empty() ? Subspace<F>(f, dim()) : Subspace<F>::span(f, dim(), ker);
    rank_ = dim() - radical_.dim();
    require(rank_ % 2 == 0, ErrorCode::invariant_violation, "alternating form of odd rank");
  }

  // block-diag(J2, ..., J2, 0) with `delta` copies of J2 = [[0,1],[-1,0]].
  static AlternatingForm standard(const F& f, std::size_t r, std::size_t delta) {
    require(2 * delta <= r, ErrorCode::invalid_input, "rank exceeds dimension");
    Matrix<F> g(f, r, r);
    for (std::size_t i = 0; i < delta; ++i) {
      g(2 * i, 2 * i + 1) = f.one();
      g(2 * i + 1, 2 * i) = f.neg(f.one());
    }
    return AlternatingForm(std::move(g));
  }

  const F& field() const { return gram_.field(); }
  const Matrix<F>& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  std::size_t rank() const { return rank_; }
  std::size_t delta() const { return rank_ / 2; }
  std::size_t degeneracy() const { return dim() - rank_; }  // p
  bool nondegenerate() const { return rank_ == dim(); }
  const Subspace<F>& radical() const { return radical_; }

  Element pair(const Vector& x, const Vector& y) const {
    const F& f = field();
    const auto xg = gram_.left_multiply(x);
    Element s = f.zero();
    for (std::size_t i = 0; i < y.size(); ++i) s = f.add(s, f.mul(xg[i], y[i]));
    return s;
  }

  AlternatingForm operator+(const AlternatingForm& o) const { return AlternatingForm(gram_ + o.gram_); }
  AlternatingForm scaled(const Element& s) const { return AlternatingForm(gram_.scaled(s)); }
  // Pullback P G P^T: the same form in the basis given by the rows of P.
  AlternatingForm congruent(const Matrix<F>& P) const { return AlternatingForm(P * gram_ * P.transpose()); }

 private:
  Matrix<F> gram_;
  Subspace<F> radical_;
  std::size_t rank_ = 0;
};

template <class F>
struct DarbouxBasis {
  Matrix<F> change;  // columns e1, f1, e2, f2, ..., then a radical basis
  std::size_t rank = 0;
};

// B^T G B = block-diag(J2, ..., J2, 0).
template <class F>
DarbouxBasis<F> darboux_basis(const AlternatingForm<F>& form) {
  using Vector = typename AlternatingForm<F>::Vector;
  const F& f = form.field();
  const std::size_t r = form.dim();
  std::vector<Vector> pool;
  for (std::size_t i = 0; i < r; ++i) pool.push_back(Matrix<F>::identity(f, r).row(i));
  std::vector<Vector> out;
  for (;;) {
    std::size_t ei = pool.size(), fi = pool.size();
    for (std::size_t i = 0; i < pool.size() && ei == pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        if (!f.is_zero(form.pair(pool[i], pool[j]))) {
          ei = i;
          fi = j;
          break;
        }
    if (ei == pool.size()) break;
    Vector e = pool[ei];
    Vector g = pool[fi];
    const auto s = f.inv(form.pair(e, g));
    for (auto& x : g) x = f.mul(x, s);
    std::vector<Vector> rest;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ei || i == fi) continue;
      Vector v = pool[i];
      const auto a = form.pair(v, g), b = form.pair(v, e);
      for (std::size_t c = 0; c < r; ++c) v[c] = f.add(f.sub(v[c], f.mul(a, e[c])), f.mul(b, g[c]));
      rest.push_back(std::move(v));
    }
    out.push_back(std::move(e));
    out.push_back(std::move(g));
    pool = std::move(rest);
  }
  const std::size_t rk = out.size();
  for (auto& v : pool) out.push_back(std::move(v));
  return {Matrix<F>::from_rows(f, out, r).transpose(), rk};
}

template <class F>
Matrix<F> restricted_gram(const AlternatingForm<F>& form, const Subspace<F>& V) {
  require(V.ambient() == form.dim(), ErrorCode::invalid_input, "subspace and form have different ambient dimension");
  return V.basis() * form.gram() * V.basis().transpose();
}

template <class F>
bool is_isotropic(const AlternatingForm<F>& form, const Subspace<F>& V) {
  return restricted_gram(form, V).is_zero();
}

template <class F>
AlternatingForm<F> restrict(const AlternatingForm<F>& form, const Subspace<F>& V) {
  return AlternatingForm<F>(restricted_gram(form, V));
}

template <class F>
Subspace<F> orthogonal_complement(const AlternatingForm<F>& form, const Subspace<F>& V) {
  require(V.ambient() == form.dim(), ErrorCode::invalid_input, "subspace and form have different ambient dimension");
  const F& f = form.field();
  if (V.dim() == 0) return Subspace<F>::whole(f, form.dim());
  const auto ker = right_kernel(V.basis() * form.gram());
  if (ker.empty()) return Subspace<F>(f, form.dim());
  return Subspace<F>::span(f, form.dim(), ker);
}

}  // namespace fixdet
