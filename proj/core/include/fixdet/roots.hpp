#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fixdet/field.hpp"
#include "fixdet/polynomial.hpp"

namespace fixdet {

// Roots of a polynomial over the smallest field in which it splits.  Over a
// finite field that field may be an extension of the input's field; over Q
// only rational roots are found and anything left over is reported unsplit.
template <class F>
struct RootResult {
  bool split = false;
  F field;  // field containing the roots
  std::vector<std::pair<typename F::Element, int>> roots;
  Polynomial<F> unsplit;  // over the input field; constant when split
  std::uint32_t extension_degree = 1;
};

namespace detail {

template <class F>
int strip_root(Polynomial<F>& p, const typename F::Element& r) {
  int mult = 0;
  const auto lin = Polynomial<F>::linear(p.field(), r);
  while (p.degree() >= 1 && p.field().is_zero(p(r))) {
    p = p / lin;
    ++mult;
  }
  return mult;
}

// All roots of p lying in the finite field L (p already mapped into L).
inline std::vector<std::pair<std::uint32_t, int>> finite_roots(Polynomial<FiniteField> p) {
  const FiniteField& L = p.field();
  std::vector<std::pair<std::uint32_t, int>> roots;
  for (std::uint32_t a = 0; a < L.order() && p.degree() >= 1; ++a) {
    if (!L.is_zero(p(a))) continue;
    roots.emplace_back(a, strip_root(p, a));
  }
  return roots;
}

// Integer polynomial c[0] + c[1] x + ... evaluated modulo m.
inline mpz_class eval_mod(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = (acc * x + c[i]) % m;
    if (acc < 0) acc += m;
  }
  return acc;
}

// a/b with |a| <= bound_a, 0 < b <= bound_b and a = r b mod m, if one exists.
inline std::optional<mpq_class> rational_reconstruction(const mpz_class& r, const mpz_class& m, const mpz_class& bound_a,
                                                        const mpz_class& bound_b) {
  mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound_a) {
    const mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound_b) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

// Rational roots by Hensel lifting: roots modulo a prime l at which every
// root is simple, lifted until l^e exceeds 2 |c_0| |c_n|, then rebuilt as
// fractions and confirmed exactly.  Avoids factoring the coefficients.
inline std::vector<std::pair<mpq_class, int>> rational_roots(Polynomial<RationalField>& p) {
  const RationalField& Q = p.field();
  std::vector<std::pair<mpq_class, int>> roots;
  if (p.degree() < 1) return roots;
  if (Q.is_zero(p.coeff(0))) {
    int m = strip_root(p, mpq_class(0));
    roots.emplace_back(mpq_class(0), m);
  }
  if (p.degree() < 1) return roots;
  // Distinct roots only: work with the squarefree part, scaled to integers.
  const auto sqf = p / gcd(p, p.derivative());
  mpz_class den = 1;
  for (const auto& c : sqf.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> c, dc;
  for (const auto& x : sqf.coeffs()) c.push_back(mpz_class(x * den));
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<unsigned long>(i));
  const mpz_class bound_a = abs(c.front()), bound_b = abs(c.back()), target = 2 * bound_a * bound_b;

  std::vector<mpq_class> found;
  for (unsigned long l = 3;; l += 2) {
    if (!is_prime(l) || c.back() % l == 0) continue;
    const mpz_class L(l);
    std::vector<mpz_class> simple;
    bool ok = true;
    for (unsigned long x = 0; x < l && ok; ++x) {
      if (eval_mod(c, x, L) != 0) continue;
      if (eval_mod(dc, x, L) == 0) ok = false;
      simple.emplace_back(x);
    }
    if (!ok) continue;
    for (auto r : simple) {
      mpz_class m = L;
      while (m <= target) {
        m *= m;
        mpz_class inv;
        mpz_class d = eval_mod(dc, r, m);
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        r = (r - eval_mod(c, r, m) * inv) % m;
        if (r < 0) r += m;
      }
      if (auto cand = rational_reconstruction(r, m, bound_a, bound_b); cand && Q.is_zero(sqf(*cand)))
        found.push_back(*cand);
    }
    break;
  }
  std::sort(found.begin(), found.end());
  for (const auto& x : found) roots.emplace_back(x, strip_root(p, x));
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return roots;
}

}  // namespace detail

inline RootResult<RationalField> factor_squarefree_roots(const Polynomial<RationalField>& p) {
  require(!p.is_zero(), ErrorCode::invalid_input, "roots of the zero polynomial");
  Polynomial<RationalField> rest = p;
  auto roots = detail::rational_roots(rest);
  RootResult<RationalField> r{rest.degree() == 0, p.field(), std::move(roots), rest, 1};
  return r;
}

// Finite fields: exhaustive evaluation in F_q, then in F_{q^e} for e = 2, 3, ...
// until every root is accounted for.
inline RootResult<FiniteField> factor_squarefree_roots(const Polynomial<FiniteField>& p) {
  require(!p.is_zero(), ErrorCode::invalid_input, "roots of the zero polynomial");
  const FiniteField& base = p.field();
  const int degree = p.degree();
  for (std::uint32_t e = 1;; ++e) {
    std::uint64_t order = 1;
    bool too_big = false;
    for (std::uint32_t i = 0; i < e; ++i) {
      order *= base.order();
      if (order > FiniteField::max_order) too_big = true;
    }
    if (too_big) break;
    FiniteField L = FiniteField::of_order(order);
    Embedding<FiniteField> emb(base, L);
    auto roots = detail::finite_roots(map_polynomial(p, emb, L));
    int total = 0;
    for (const auto& [r, m] : roots) total += m;
    if (total == degree) {
      return {true, L, std::move(roots), Polynomial<FiniteField>::constant(base, p.lead()), e};
    }
  }
  // Unreachable for desk-scale inputs: report what the base field sees.
  Polynomial<FiniteField> rest = p;
  auto roots = detail::finite_roots(rest);
  for (const auto& [r, m] : roots)
    for (int i = 0; i < m; ++i) rest = rest / Polynomial<FiniteField>::linear(base, r);
  return {false, base, std::move(roots), rest, 1};
}

// Smallest field containing at least one root of p (degree >= 1), and that root.
inline std::optional<std::pair<FiniteField, std::uint32_t>> first_root(const Polynomial<FiniteField>& p) {
  const FiniteField& base = p.field();
  if (p.degree() < 1) return std::nullopt;
  std::uint64_t order = base.order();
  while (order <= FiniteField::max_order) {
    FiniteField L = FiniteField::of_order(order);
    Embedding<FiniteField> emb(base, L);
    auto mapped = map_polynomial(p, emb, L);
    for (std::uint32_t a = 0; a < L.order(); ++a)
      if (L.is_zero(mapped(a))) return std::make_pair(L, a);
    order *= base.order();
  }
  return std::nullopt;
}

inline std::optional<std::pair<RationalField, mpq_class>> first_root(const Polynomial<RationalField>& p) {
  if (p.degree() < 1) return std::nullopt;
  Polynomial<RationalField> rest = p;
  auto roots = detail::rational_roots(rest);
  if (roots.empty()) return std::nullopt;
  return std::make_pair(RationalField{}, roots.front().first);
}

}  // namespace fixdet
