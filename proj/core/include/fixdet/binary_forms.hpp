#pragma once

#include <optional>
#include <vector>

#include "fixdet/matrix.hpp"
#include "fixdet/roots.hpp"

namespace fixdet {

// Homogeneous form of degree h in (lambda : mu), stored by its coefficients
// of lambda^i mu^(h-i), i.e. as the dehomogenization at mu = 1.
template <class F>
struct BinaryForm {
  Polynomial<F> dehom;
  int degree = 0;
  bool is_zero() const { return dehom.is_zero(); }
  // Vanishes at (1 : 0).
  bool vanishes_at_infinity() const { return degree > dehom.degree(); }
};

enum class CommonRootStatus { none, exists, all_zero };

template <class F>
struct CommonRoot {
  CommonRootStatus status = CommonRootStatus::none;
  // Witness (lambda : mu) over `field`; absent when the root is irrational over Q.
  std::optional<std::pair<typename F::Element, typename F::Element>> witness;
  std::optional<F> field;
  std::uint32_t field_degree = 1;  // relative to the forms' field
  bool at_infinity = false;
  std::optional<Polynomial<F>> gcd;  // gcd of the nonzero dehomogenizations
};

// Decides whether the forms share a root over the algebraic closure.
template <class F>
CommonRoot<F> binary_form_common_root(const std::vector<BinaryForm<F>>& forms, const F& base) {
  CommonRoot<F> out;
  bool infinity = true;
  std::optional<Polynomial<F>> g;
  for (const auto& form : forms) {
    if (form.is_zero()) continue;
    if (!form.vanishes_at_infinity()) infinity = false;
    g = g ? gcd(*g, form.dehom) : form.dehom.monic();
  }
  if (!g) {
    out.status = CommonRootStatus::all_zero;
    out.witness = std::make_pair(base.one(), base.zero());
    out.field = base;
    out.at_infinity = true;
    return out;
  }
  out.gcd = g;
  if (infinity) {
    out.status = CommonRootStatus::exists;
    out.witness = std::make_pair(base.one(), base.zero());
    out.field = base;
    out.at_infinity = true;
    return out;
  }
  if (g->degree() < 1) return out;
  out.status = CommonRootStatus::exists;
  if (auto root = first_root(*g)) {
    out.field = root->first;
    out.witness = std::make_pair(root->second, root->first.one());
    if constexpr (F::is_finite) out.field_degree = root->first.degree() / base.degree();
  }
  return out;
}

// Determinant of a square matrix of polynomials (fraction-free Bareiss).
template <class F>
Polynomial<F> polynomial_determinant(std::vector<std::vector<Polynomial<F>>> m, const F& f) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial<F>::constant(f, f.one());
  bool negate = false;
  Polynomial<F> prev = Polynomial<F>::constant(f, f.one());
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Polynomial<F>(f);
    if (p != c) {
      std::swap(m[p], m[c]);
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i)
      for (std::size_t j = c + 1; j < n; ++j) m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
    prev = m[c][c];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// All size x size minors of lambda*P + mu*Q as binary forms of degree `size`.
// The callback may return false to stop early.
template <class F, class Fn>
void for_each_pencil_minor(const Matrix<F>& P, const Matrix<F>& Q, std::size_t size, Fn&& fn) {
  const F& f = P.field();
  const std::size_t R = P.rows(), C = P.cols();
  if (size > R || size > C) return;
  std::vector<std::size_t> rs(size), cs(size);
  auto first = [](std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  };
  auto next = [](std::vector<std::size_t>& v, std::size_t n) {
    for (std::size_t i = v.size(); i-- > 0;) {
      if (v[i] < n - v.size() + i) {
        ++v[i];
        for (std::size_t j = i + 1; j < v.size(); ++j) v[j] = v[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  first(rs);
  do {
    first(cs);
    do {
      std::vector<std::vector<Polynomial<F>>> m(size);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) m[i].push_back(Polynomial<F>(f, {Q(rs[i], cs[j]), P(rs[i], cs[j])}));
      if (!fn(BinaryForm<F>{polynomial_determinant(std::move(m), f), static_cast<int>(size)})) return;
    } while (next(cs, C));
  } while (next(rs, R));
}

}  // namespace fixdet
