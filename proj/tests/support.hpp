#pragma once

// Instance generators shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <random>

#include "fixdet/forms.hpp"
#include "fixdet/residue.hpp"
#include "fixdet/tangent.hpp"

namespace fixdet::testing {

template <class F>
AlternatingForm<F> random_form(const F& f, std::size_t r, std::mt19937_64& rng) {
  Matrix<F> g(f, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      g(i, j) = random_element(f, rng);
      g(j, i) = f.neg(g(i, j));
    }
  return AlternatingForm<F>(g);
}

template <class F>
AlternatingForm<F> disguised_standard(const F& f, std::size_t r, std::size_t delta, std::mt19937_64& rng) {
  return AlternatingForm<F>::standard(f, r, delta).congruent(random_invertible(f, r, rng));
}

// Small-height random element over Q so that determinants stay manageable.
inline mpq_class small_element(const RationalField&, std::mt19937_64& rng) {
  return mpq_class(static_cast<long>(rng() % 7) - 3);
}
inline std::uint32_t small_element(const FiniteField& f, std::mt19937_64& rng) { return f.random(rng); }

template <class F>
Matrix<F> small_matrix(const F& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_element(f, rng);
  return m;
}

template <class F>
Matrix<F> small_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto m = small_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

// Random pencil with both pairings of full row rank.
template <class F>
FormPencil<F> random_surjective_pencil(const F& f, std::size_t k, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    FormPencil<F> p(small_matrix(f, k, n, rng), small_matrix(f, k, n, rng));
    if (p.surjective1 && p.surjective2) return p;
  }
}

// Random pencil of the shape ([I | 0], [J | X]) with J a Jordan matrix whose
// blocks share eigenvalues, then disguised by random bases of V and W and a
// random invertible recombination of the two pairings.  With `dependent` the
// columns of X at one eigenvalue lambda lie in the image of J - lambda I, so
// two blocks at lambda leave a rank drop of two; otherwise X is random.
template <class F>
FormPencil<F> adversarial_pencil(const F& f, std::size_t k, std::size_t n, bool dependent, std::mt19937_64& rng) {
  for (;;) {
    // Split k into blocks; the first two blocks share an eigenvalue.
    std::vector<std::size_t> blocks;
    std::size_t left = k;
    while (left > 0) {
      std::size_t b = 1 + rng() % std::min<std::size_t>(left, 2);
      blocks.push_back(b);
      left -= b;
    }
    Matrix<F> J(f, k, k);
    const auto shared = small_element(f, rng);
    std::size_t row = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto lam = b < 2 ? shared : small_element(f, rng);
      for (std::size_t t = 0; t < blocks[b]; ++t, ++row) {
        J(row, row) = lam;
        if (t + 1 < blocks[b]) J(row, row + 1) = f.one();
      }
    }
    Matrix<F> X = small_matrix(f, k, n - k, rng);
    if (dependent) {
      const Matrix<F> shift = J - Matrix<F>::identity(f, k).scaled(shared);
      X = shift * X;
    }
    const Matrix<F> A = J.hconcat(X);
    const Matrix<F> I = Matrix<F>::identity(f, k, n);
    const Matrix<F> P = small_invertible(f, k, rng), Q = small_invertible(f, n, rng), M = small_invertible(f, 2, rng);
    const Matrix<F> a = P * I * Q, b = P * A * Q;
    FormPencil<F> p(a.scaled(M(0, 0)) + b.scaled(M(0, 1)), a.scaled(M(1, 0)) + b.scaled(M(1, 1)));
    if (p.surjective1 && p.surjective2) return p;
  }
}


// Distinct small points of the field, shuffled.
inline std::vector<mpq_class> sample_points(const RationalField&, std::size_t n, std::mt19937_64& rng) {
  std::vector<mpq_class> pool;
  for (long v = -12; v <= 12; ++v) pool.push_back(mpq_class(v));
  for (long v = 1; v <= 5; ++v) pool.push_back(mpq_class(v, 2 * v + 1));
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  return pool;
}
inline std::vector<std::uint32_t> sample_points(const FiniteField& f, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t v = 0; v < f.order(); ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  return pool;
}

template <class F>
struct ModelSpec {
  long long a = 0, b = 0;
  std::vector<typename F::Element> D, Delta;
  RationalFunction<F> phi;
};

// A random admissible model: d in [-4, 0], 1 <= deg D <= 3, delta <= 2, the
// splitting type chosen inside the vanishing window, and phi = num / prod(z - R)
// over Delta with num nonzero on D and Delta.
template <class F>
ModelSpec<F> random_model_spec(const F& f, std::mt19937_64& rng) {
  for (;;) {
    const long long d = -static_cast<long long>(rng() % 5);
    const std::size_t degd = 1 + rng() % 3, delta = rng() % 3;
    const long long top = -d - 2 + static_cast<long long>(delta);  // max degree of num
    if (top < 0) continue;
    std::vector<long long> twists;
    for (long long a = d - static_cast<long long>(degd) - 1; a <= static_cast<long long>(degd) + 1; ++a) {
      const long long b = d - a;
      const long long dd = static_cast<long long>(degd), de = static_cast<long long>(delta);
      if (h1_line(a + dd) == 0 && h1_line(b + dd) == 0 && h0_line(a - dd - de) == 0 && h0_line(b - dd - de) == 0)
        twists.push_back(a);
    }
    if (twists.empty()) continue;
    const long long a = twists[rng() % twists.size()];
    const auto pts = sample_points(f, degd + delta, rng);
    std::vector<typename F::Element> D(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(degd));
    std::vector<typename F::Element> Delta(pts.begin() + static_cast<std::ptrdiff_t>(degd), pts.end());
    std::vector<typename F::Element> c(static_cast<std::size_t>(top) + 1);
    for (auto& x : c) x = small_element(f, rng);
    const Polynomial<F> num(f, c);
    if (num.is_zero()) continue;
    bool ok = true;
    for (const auto& p : pts) ok = ok && !f.is_zero(num(p));
    if (!ok) continue;
    auto den = Polynomial<F>::constant(f, f.one());
    for (const auto& R : Delta) den = den * Polynomial<F>::linear(f, R);
    return {a, d - a, D, Delta, RationalFunction<F>(num, den)};
  }
}

}  // namespace fixdet::testing
