#include "doctest.h"

#include <random>

#include "fixdet/binary_forms.hpp"
#include "fixdet/jordan.hpp"
#include "fixdet/matrix.hpp"
#include "fixdet/roots.hpp"

using namespace fixdet;

namespace {

const RationalField Q;

template <class F>
Polynomial<F> poly(const F& f, std::vector<long long> c) {
  std::vector<typename F::Element> e;
  for (auto v : c) e.push_back(f.from_int(v));
  return Polynomial<F>(f, e);
}

// Naive oracle: Leibniz expansion.
template <class F>
typename F::Element leibniz(const Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> perm(m.rows());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  auto total = f.zero();
  do {
    auto term = f.one();
    for (std::size_t i = 0; i < perm.size(); ++i) term = f.mul(term, m(i, perm[i]));
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rref examples") {
  auto a = rref(Matrix<RationalField>(Q, {{1, 2}, {2, 4}}));
  CHECK(a.rank == 1);
  CHECK(a.pivots == std::vector<std::size_t>{0});
  CHECK(rank(Matrix<RationalField>::identity(Q, 3)) == 3);
  const auto F2 = FiniteField::of_order(2);
  auto b = rref(Matrix<FiniteField>(F2, {{0, 1}, {0, 0}}));
  CHECK(b.rank == 1);
  CHECK(b.pivots == std::vector<std::size_t>{1});
}

TEST_CASE("rref is idempotent and rank is stable under extension") {
  std::mt19937_64 rng(11);
  const auto F3 = FiniteField::of_order(3), F27 = FiniteField::of_order(27);
  Embedding<FiniteField> emb(F3, F27);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(F3, 1 + rng() % 5, 1 + rng() % 6, rng);
    if (trial % 3 == 0) m.set_row(0, std::vector<std::uint32_t>(m.cols(), 0));
    auto once = rref(m);
    CHECK(rref(once.reduced).reduced == once.reduced);
    CHECK(rank(map_matrix(m, emb, F27)) == once.rank);
  }
}

TEST_CASE("left kernel examples and invariant") {
  CHECK(left_kernel(Matrix<RationalField>(Q, {{1, 0, 0}, {0, 1, 0}})).empty());
  auto k = left_kernel(Matrix<RationalField>(Q, {{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] * -1 == k[0][1] * 2);  // proportional to (2, -1)
  CHECK(left_kernel(Matrix<RationalField>(Q, 3, 2)).size() == 3);

  std::mt19937_64 rng(5);
  const auto F5 = FiniteField::of_order(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(F5, 1 + rng() % 6, 1 + rng() % 4, rng);
    auto ker = left_kernel(m);
    CHECK(ker.size() + rank(m) == m.rows());
    for (const auto& v : ker) {
      auto prod = m.left_multiply(v);
      for (auto x : prod) CHECK(x == 0);
    }
  }
}

TEST_CASE("determinant and inverse agree with naive oracles") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(Q, 4, 4, rng);
    CHECK(determinant(m) == leibniz(m));
    if (determinant(m) != 0) CHECK(m * inverse(m) == Matrix<RationalField>::identity(Q, 4));
  }
  CHECK_THROWS_AS(inverse(Matrix<RationalField>(Q, {{1, 2}, {2, 4}})), Error);
}

TEST_CASE("char_poly examples") {
  const auto F5 = FiniteField::of_order(5), F3 = FiniteField::of_order(3);
  CHECK(char_poly(Matrix<FiniteField>(F5, {{2, 0}, {0, 2}})) == poly(F5, {3, 1}) * poly(F5, {3, 1}));
  CHECK(char_poly(Matrix<RationalField>(Q, {{0, 1}, {0, 0}})) == poly(Q, {0, 0, 1}));
  CHECK(char_poly(Matrix<FiniteField>(F3, {{0, -1}, {1, 0}})) == poly(F3, {1, 0, 1}));
}

TEST_CASE("char_poly matches det(xI - M) at sample points") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    auto m = random_matrix(Q, n, n, rng);
    if (trial % 4 == 0) m(n - 1, 0) = 0;
    const auto chi = char_poly(m);
    CHECK(chi.degree() == static_cast<int>(n));
    CHECK(chi.lead() == 1);
    for (long x = -2; x <= 2; ++x) {
      auto shifted = Matrix<RationalField>::identity(Q, n).scaled(mpq_class(x)) - m;
      CHECK(chi(mpq_class(x)) == determinant(shifted));
    }
  }
}

TEST_CASE("factor_squarefree_roots examples") {
  const auto F5 = FiniteField::of_order(5);
  auto a = factor_squarefree_roots(poly(F5, {-1, 0, 1}));
  CHECK(a.split);
  REQUIRE(a.roots.size() == 2);
  CHECK(a.roots[0] == std::make_pair(1u, 1));
  CHECK(a.roots[1] == std::make_pair(4u, 1));

  auto b = factor_squarefree_roots(poly(Q, {0, 0, 1}));
  CHECK(b.split);
  REQUIRE(b.roots.size() == 1);
  CHECK(b.roots[0].first == 0);
  CHECK(b.roots[0].second == 2);

  auto c = factor_squarefree_roots(poly(Q, {-2, 0, 1}));
  CHECK_FALSE(c.split);
  CHECK(c.unsplit == poly(Q, {-2, 0, 1}));
}

TEST_CASE("finite roots extend the field until the polynomial splits") {
  const auto F3 = FiniteField::of_order(3);
  // (x^2 + 1)(x - 1): splits over F_9.
  auto r = factor_squarefree_roots(poly(F3, {1, 0, 1}) * poly(F3, {-1, 1}));
  CHECK(r.split);
  CHECK(r.extension_degree == 2);
  CHECK(r.field.order() == 9);
  // x^3 - x - 1 is irreducible over F_3 and x^2 + 1 needs degree 2: lcm = 6.
  auto s = factor_squarefree_roots(poly(F3, {-1, -1, 0, 1}) * poly(F3, {1, 0, 1}));
  CHECK(s.split);
  CHECK(s.extension_degree == 6);
}

TEST_CASE("roots reproduce the input") {
  std::mt19937_64 rng(13);
  const auto F7 = FiniteField::of_order(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long long> c(2 + rng() % 4);
    for (auto& x : c) x = static_cast<long long>(rng() % 7);
    c.back() = 1 + rng() % 6;
    auto p = poly(F7, c);
    auto r = factor_squarefree_roots(p);
    REQUIRE(r.split);
    Embedding<FiniteField> emb(F7, r.field);
    auto prod = map_polynomial(r.unsplit, emb, r.field);
    for (auto [root, m] : r.roots)
      for (int i = 0; i < m; ++i) prod *= Polynomial<FiniteField>::linear(r.field, root);
    CHECK(prod == map_polynomial(p, emb, r.field));
  }
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long long> c(2 + rng() % 4);
    for (auto& x : c) x = static_cast<long long>(rng() % 7) - 3;
    if (c.back() == 0) c.back() = 2;
    auto p = poly(Q, c) * poly(Q, {static_cast<long long>(rng() % 5) - 2, 3});
    auto r = factor_squarefree_roots(p);
    auto prod = r.unsplit;
    for (auto [root, m] : r.roots)
      for (int i = 0; i < m; ++i) prod *= Polynomial<RationalField>::linear(Q, root);
    CHECK(prod == p);
  }
}

TEST_CASE("generalized Jordan form fixed points") {
  auto a = generalized_jordan_form(Matrix<RationalField>(Q, {{0, 1, 0}, {0, 0, 0}}));
  REQUIRE(a);
  CHECK(a->normal_form == Matrix<RationalField>(Q, {{0, 1, 0}, {0, 0, 0}}));
  CHECK(a->eigenvalues == std::vector<mpq_class>{0, 0});
  CHECK(a->epsilon == std::vector<int>{0, 1, 0});

  auto b = generalized_jordan_form(Matrix<RationalField>(Q, {{1, 0, 0}, {0, 1, 0}}));
  REQUIRE(b);
  CHECK(b->eigenvalues == std::vector<mpq_class>{1, 1});
  CHECK(b->epsilon == std::vector<int>{0, 0, 0});

  const auto F5 = FiniteField::of_order(5);
  auto c = generalized_jordan_form(Matrix<FiniteField>(F5, {{2, 1}, {0, 2}}));
  REQUIRE(c);
  CHECK(c->normal_form == Matrix<FiniteField>(F5, {{2, 1}, {0, 2}}));
  CHECK(c->eigenvalues == std::vector<std::uint32_t>{2, 2});
  CHECK(c->epsilon == std::vector<int>{0, 1, 0});

  CHECK_FALSE(generalized_jordan_form(Matrix<RationalField>(Q, {{0, 2}, {1, 0}})));
}

TEST_CASE("generalized Jordan form round trip on random and nilpotent inputs") {
  std::mt19937_64 rng(17);
  const auto F5 = FiniteField::of_order(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng() % 4, n = k + rng() % 3;
    Matrix<FiniteField> A = random_matrix(F5, k, n, rng);
    if (trial % 3 == 0) {
      // Conjugate of a Jordan matrix with repeated eigenvalues.
      Matrix<FiniteField> J(F5, k, k);
      const std::uint32_t lam = rng() % 5;
      for (std::size_t i = 0; i < k; ++i) J(i, i) = (i % 2 == 0) ? lam : (lam + 1) % 5;
      for (std::size_t i = 0; i + 2 < k; i += 2) J(i, i + 2) = 0;
      if (k >= 3) J(0, 1) = 0, J(0, 2) = 0;
      if (k >= 2 && J(0, 0) == J(1, 1)) J(0, 1) = 1;
      auto P = random_invertible(F5, k, rng);
      auto L = inverse(P) * J * P;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) A(i, j) = L(i, j);
    }
    auto g = generalized_jordan_form(A);
    REQUIRE(g);
    CHECK(g->row_change * g->input * g->col_change == g->normal_form);
    CHECK(is_generalized_jordan(g->normal_form));
    CHECK(g->row_change * inverse(g->row_change) == Matrix<FiniteField>::identity(g->field, k));
    CHECK(rank(g->col_change) == n);
    for (std::size_t i = 0; i < k; ++i) CHECK(g->normal_form(i, i) == g->eigenvalues[i]);
    for (std::size_t i = 1; i < k; ++i) CHECK(g->normal_form(i - 1, i) == static_cast<std::uint32_t>(g->epsilon[i]));
  }
}

TEST_CASE("binary form common roots") {
  auto form = [](std::vector<long long> c, int h) { return BinaryForm<RationalField>{poly(Q, c), h}; };
  // lambda*mu and lambda^2: common root (0:1)
  auto a = binary_form_common_root<RationalField>({form({0, 1}, 2), form({0, 0, 1}, 2)}, Q);
  CHECK(a.status == CommonRootStatus::exists);
  REQUIRE(a.witness);
  CHECK(a.witness->first == 0);
  CHECK(a.witness->second == 1);
  // lambda and mu
  auto b = binary_form_common_root<RationalField>({form({0, 1}, 1), form({1}, 1)}, Q);
  CHECK(b.status == CommonRootStatus::none);
  // lambda^2 - mu^2 and lambda - mu: (1:1)
  auto c = binary_form_common_root<RationalField>({form({-1, 0, 1}, 2), form({-1, 1}, 1)}, Q);
  CHECK(c.status == CommonRootStatus::exists);
  REQUIRE(c.witness);
  CHECK(c.witness->first == 1);
  CHECK(c.witness->second == 1);
  // mu^2 and lambda*mu share (1:0)
  auto d = binary_form_common_root<RationalField>({form({1}, 2), form({0, 1}, 2)}, Q);
  CHECK(d.at_infinity);
  // irrational common root: existence only
  auto e = binary_form_common_root<RationalField>({form({-2, 0, 1}, 2), form({-2, 0, 1}, 3)}, Q);
  CHECK(e.status == CommonRootStatus::exists);
  CHECK_FALSE(e.witness);
  auto z = binary_form_common_root<RationalField>({form({}, 2)}, Q);
  CHECK(z.status == CommonRootStatus::all_zero);
  // over F_3, lambda^2 + mu^2 has its root in F_9
  const auto F3 = FiniteField::of_order(3);
  auto f = binary_form_common_root<FiniteField>({BinaryForm<FiniteField>{poly(F3, {1, 0, 1}), 2}}, F3);
  CHECK(f.status == CommonRootStatus::exists);
  CHECK(f.field_degree == 2);
}

TEST_CASE("polynomial determinant agrees with pointwise evaluation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    auto P = random_matrix(Q, n, n, rng), R = random_matrix(Q, n, n, rng);
    if (trial % 5 == 0) P(0, 0) = 0, R(0, 0) = 0;
    std::optional<BinaryForm<RationalField>> det;
    for_each_pencil_minor(P, R, n, [&](BinaryForm<RationalField> f) {
      det = f;
      return true;
    });
    REQUIRE(det);
    for (long x = -3; x <= 3; ++x) CHECK(det->dehom(mpq_class(x)) == determinant(P.scaled(mpq_class(x)) + R));
  }
}

TEST_CASE("rational roots with large coefficients") {
  // (1000003 x - 999983)(x + 2/7)^2 (x^2 + 1000033): coefficients near 10^12.
  const Polynomial<RationalField> lin(Q, {mpq_class(-999983), mpq_class(1000003)});
  const Polynomial<RationalField> dbl(Q, {mpq_class(2, 7), mpq_class(1)});
  const Polynomial<RationalField> quad(Q, {mpq_class(1000033), mpq_class(0), mpq_class(1)});
  auto r = factor_squarefree_roots(lin * dbl * dbl * quad);
  CHECK_FALSE(r.split);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == std::make_pair(mpq_class(-2, 7), 2));
  CHECK(r.roots[1] == std::make_pair(mpq_class(999983, 1000003), 1));
  CHECK(r.unsplit.degree() == 2);

  // Random products of linear factors with 12-digit entries.
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    Polynomial<RationalField> p = Polynomial<RationalField>::constant(Q, mpq_class(1));
    std::vector<mpq_class> expect;
    for (int i = 0; i < 4; ++i) {
      mpq_class x(static_cast<long>(rng() % 2'000'000'000'000) - 1'000'000'000'000,
                  static_cast<long>(1 + rng() % 1'000'000));
      x.canonicalize();
      expect.push_back(x);
      p = p * Polynomial<RationalField>::linear(Q, x);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    auto s = factor_squarefree_roots(p);
    CHECK(s.split);
    REQUIRE(s.roots.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(s.roots[i].first == expect[i]);
  }
}
