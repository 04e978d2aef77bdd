#include "doctest.h"

#include <random>

#include "fixdet/forms.hpp"

using namespace fixdet;

namespace {

const RationalField Q;

template <class F>
Subspace<F> span_of(const F& f, std::size_t r, std::vector<std::vector<long long>> rows) {
  return Subspace<F>(Matrix<F>(f, rows));
}

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
Matrix<F> darboux_normal(const F& f, std::size_t r, std::size_t rank) {
  return AlternatingForm<F>::standard(f, r, rank / 2).gram();
}

}  // namespace

TEST_CASE("alternating validation names the offending entry") {
  const auto F2 = FiniteField::of_order(2);
  // Symmetric = antisymmetric in characteristic 2, but the diagonal must vanish.
  try {
    AlternatingForm<FiniteField>(Matrix<FiniteField>(F2, {{1, 1}, {1, 0}}));
    FAIL("accepted a nonzero diagonal");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
  try {
    AlternatingForm<RationalField>(Matrix<RationalField>(Q, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}));
    FAIL("accepted a symmetric form");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
}

TEST_CASE("radical examples") {
  const auto F5 = FiniteField::of_order(5);
  CHECK(AlternatingForm<FiniteField>::standard(F5, 4, 2).radical().dim() == 0);
  const auto half = AlternatingForm<FiniteField>::standard(F5, 4, 1);
  CHECK(half.radical() == span_of(F5, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  const auto zero = AlternatingForm<RationalField>(Matrix<RationalField>(Q, 3, 3));
  CHECK(zero.radical() == Subspace<RationalField>::whole(Q, 3));
  CHECK(zero.degeneracy() == 3);
}

TEST_CASE("darboux examples") {
  const auto J4 = AlternatingForm<RationalField>::standard(Q, 4, 2);
  auto d = darboux_basis(J4);
  CHECK(d.rank == 4);
  CHECK(d.change == Matrix<RationalField>::identity(Q, 4));
  CHECK(darboux_basis(AlternatingForm<RationalField>(Matrix<RationalField>(Q, 3, 3))).rank == 0);
  const AlternatingForm<RationalField> g(Matrix<RationalField>(Q, {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}));
  auto b = darboux_basis(g);
  CHECK(b.rank == 2);
  CHECK(b.change.transpose() * g.gram() * b.change == darboux_normal(Q, 3, 2));
}

TEST_CASE("darboux identity for random forms") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {2, 3, 5}) {
    const auto F = FiniteField::of_order(q);
    for (int t = 0; t < 100; ++t) {
      const std::size_t r = 1 + rng() % 7;
      auto f = random_form(F, r, rng);
      auto d = darboux_basis(f);
      CHECK(d.rank == f.rank());
      CHECK(rank(d.change) == r);
      CHECK(d.change.transpose() * f.gram() * d.change == darboux_normal(F, r, d.rank));
      CHECK(f.radical().dim() + f.rank() == r);
    }
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng() % 6;
    auto f = random_form(Q, r, rng);
    auto d = darboux_basis(f);
    CHECK(d.change.transpose() * f.gram() * d.change == darboux_normal(Q, r, d.rank));
  }
}

TEST_CASE("isotropy examples") {
  const auto J4 = AlternatingForm<RationalField>::standard(Q, 4, 2);
  // Darboux order e1, f1, e2, f2.
  CHECK(is_isotropic(J4, span_of(Q, 4, {{3, 1, 4, 1}})));
  CHECK_FALSE(is_isotropic(J4, span_of(Q, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  CHECK(is_isotropic(J4, span_of(Q, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}})));
}

TEST_CASE("orthogonal complement examples") {
  const auto J4 = AlternatingForm<RationalField>::standard(Q, 4, 2);
  CHECK(orthogonal_complement(J4, span_of(Q, 4, {{1, 0, 0, 0}, {0, 0, 1, 1}})).dim() == 2);
  const auto half = AlternatingForm<RationalField>::standard(Q, 4, 1);
  CHECK(orthogonal_complement(half, half.radical()) == Subspace<RationalField>::whole(Q, 4));
  // V meets K = span(e3, e4) in a line.
  const auto V = span_of(Q, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}});
  CHECK(V.intersect(half.radical()).dim() == 1);
  CHECK(orthogonal_complement(half, V).dim() == 3);
}

TEST_CASE("complement dimension formula holds exhaustively over F2 and F3") {
  std::mt19937_64 rng(8);
  for (std::uint64_t q : {2, 3}) {
    const auto F = FiniteField::of_order(q);
    for (std::size_t r = 1; r <= 4; ++r) {
      auto f = random_form(F, r, rng);
      // Every subspace spanned by up to two vectors drawn from a small grid.
      for (int trial = 0; trial < 60; ++trial) {
        auto V = Subspace<FiniteField>(random_matrix(F, 1 + rng() % r, r, rng));
        CHECK(orthogonal_complement(f, V).dim() == r - V.dim() + V.intersect(f.radical()).dim());
        CHECK(is_isotropic(f, V) == restrict(f, V).gram().is_zero());
      }
    }
  }
}

TEST_CASE("restrict examples") {
  const auto J4 = AlternatingForm<RationalField>::standard(Q, 4, 2);
  CHECK(restrict(J4, span_of(Q, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}})).gram().is_zero());
  CHECK(restrict(J4, Subspace<RationalField>::whole(Q, 4)).gram() == J4.gram());
  // Rank-4 form on Q^6 with radical span(e5, e6); a 3-plane meeting it in a line.
  const auto f = AlternatingForm<RationalField>::standard(Q, 6, 2);
  const auto V = span_of(Q, 6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}});
  CHECK(V.intersect(f.radical()).dim() == 1);
  CHECK(restrict(f, V).rank() == 2);
}

TEST_CASE("subspaces compare by echelon form") {
  const auto a = span_of(Q, 3, {{1, 1, 0}, {0, 1, 1}});
  const auto b = span_of(Q, 3, {{1, 2, 1}, {2, 3, 1}});
  CHECK(a == b);
  CHECK(a.contains(std::vector<mpq_class>{1, 0, -1}));
  CHECK_FALSE(a.contains(std::vector<mpq_class>{0, 0, 1}));
  CHECK((a + span_of(Q, 3, {{0, 0, 1}})).dim() == 3);
}
