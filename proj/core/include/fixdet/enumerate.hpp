#pragma once

// k-subspaces of F_q^n, isotropic strata, point-count fitting and the
// degeneration family that links neighbouring strata.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fixdet/forms.hpp"

namespace fixdet {

constexpr std::uint64_t default_ceiling = 100'000'000;

// Gaussian binomial [n choose k]_q.
mpz_class gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q);
// C(m, 2) with the clamp C(m, 2) = 0 for m < 2.
long long choose2(long long m);

// Every k-subspace of F_q^n exactly once, as reduced echelon bases.  Pivot
// patterns run in colexicographic order; free entries count like an odometer
// with the first free entry moving fastest.
class SubspaceStream {
 public:
  using Pattern = std::vector<std::size_t>;

  SubspaceStream(std::size_t n, std::size_t k, const FiniteField& field, std::uint64_t ceiling = default_ceiling);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return k_; }
  const FiniteField& field() const { return field_; }
  mpz_class size() const { return gaussian_binomial(n_, k_, field_.order()); }

  // Pivot patterns in colexicographic order.
  std::vector<Pattern> patterns() const;
  // Number of subspaces with the given pivot pattern.
  std::uint64_t pattern_size(const Pattern& pivots) const;
  // Visits the subspaces of one partition; the callback may return false to stop.
  bool for_each_in(const Pattern& pivots, const std::function<bool(const Subspace<FiniteField>&)>& fn) const;
  bool for_each(const std::function<bool(const Subspace<FiniteField>&)>& fn) const;

 private:
  std::size_t n_, k_;
  FiniteField field_;
};

struct StratumReport {
  std::size_t r = 0, p = 0, delta = 0, k = 0;
  std::uint64_t q = 0;
  std::map<std::size_t, std::uint64_t> strata;  // i = dim(V n K) -> count, nonzero entries only
  std::uint64_t total = 0;
};

enum class StrataEngine { automatic, cells, brute };

struct StrataOptions {
  std::uint64_t ceiling = default_ceiling;
  unsigned jobs = 1;
  StrataEngine engine = StrataEngine::automatic;
};

// Isotropic k-subspaces of (F_q^r, form) bucketed by dim(V n radical).
StratumReport strata_counts(const AlternatingForm<FiniteField>& form, std::size_t k, const StrataOptions& opts = {});
// Upper bound on the cell engine's work for the ceiling check.
mpz_class strata_work_bound(std::size_t r, std::size_t k, std::uint64_t q);

struct DimensionFit {
  std::map<std::uint64_t, mpz_class> samples;
  std::vector<mpz_class> coefficients;  // ascending powers of q
  int degree = -1;                      // -1 for the zero polynomial
  std::string method;                   // "lagrange" or "q-adic"
  mpz_class operator()(std::uint64_t q) const;
  std::string to_string() const;
};

// Integer polynomial through all samples.  Lagrange interpolation on all but
// the largest q, validated on it; when that fails, the base-q digits of the
// largest sample (then balanced digits) are tried and validated on every
// other sample.  Throws FIT_MISMATCH if neither reproduces the data.
DimensionFit fit_dimension(const std::map<std::uint64_t, mpz_class>& samples);

// Expected degrees from the stratification.
long long expected_total_degree(long long r, long long k, long long delta);
long long expected_stratum_degree(long long r, long long p, long long k, long long i);

// Isotropic k-subspaces for every form in the list (brute force).
std::uint64_t count_multi_isotropic(const std::vector<AlternatingForm<FiniteField>>& forms, std::size_t k,
                                    std::uint64_t ceiling = default_ceiling);

// --- degeneration witness -------------------------------------------------

template <class F>
struct WitnessCheck {
  typename F::Element t;
  bool isotropic = false;
  std::size_t dim = 0;
  std::size_t radical_meet = 0;  // dim(F_t n K)
};

template <class F>
struct DegenerationWitness {
  bool needed = true;  // false: NO_WITNESS_NEEDED (minimal stratum)
  std::size_t i = 0, k = 0;
  std::vector<typename F::Element> e;
  std::size_t replaced = 0;                            // 1-based index of e_i in the adapted basis
  std::vector<std::vector<typename F::Element>> basis;  // e_1..e_k, first i spanning F0 n K
  std::vector<WitnessCheck<F>> checks;
  bool verified = false;
};

template <class F>
Subspace<F> witness_member(const DegenerationWitness<F>& w, const F& f, const typename F::Element& t) {
  auto rows = w.basis;
  auto& v = rows[w.replaced - 1];
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(t, w.e[c]));
  return Subspace<F>::span(f, v.size(), rows);
}

// For F0 in stratum i > max(0, k - delta): a vector e in F0-perp outside
// span(K, F0) such that F_t = span(e_1, .., e_i + t e, .., e_k) lies in stratum
// i - 1 for t != 0.  Over a finite field every t is checked; over Q the
// values t = -2..2 are.
template <class F>
DegenerationWitness<F> degeneration_witness(const AlternatingForm<F>& form, const Subspace<F>& F0) {
  const F& f = form.field();
  require(F0.ambient() == form.dim(), ErrorCode::invalid_input, "subspace and form have different ambient dimension");
  require(is_isotropic(form, F0), ErrorCode::not_isotropic, "F0 is not isotropic");
  const Subspace<F>& K = form.radical();
  const Subspace<F> meet = F0.intersect(K);
  DegenerationWitness<F> w;
  w.k = F0.dim();
  w.i = meet.dim();
  const long long floor = std::max<long long>(0, static_cast<long long>(w.k) - static_cast<long long>(form.delta()));
  if (static_cast<long long>(w.i) < floor)
    fail(ErrorCode::invariant_violation, "isotropic subspace meets the radical below k - delta");
  if (static_cast<long long>(w.i) == floor) {
    w.needed = false;
    return w;
  }
  // Adapted basis: F0 n K first, then echelon vectors of F0 completing it.
  for (std::size_t j = 0; j < meet.dim(); ++j) w.basis.push_back(meet.vector(j));
  for (std::size_t j = 0; j < F0.dim(); ++j) {
    auto v = F0.vector(j);
    auto trial = w.basis;
    trial.push_back(v);
    if (rank(Matrix<F>::from_rows(f, trial, form.dim())) == trial.size()) w.basis = std::move(trial);
  }
  const Subspace<F> perp = orthogonal_complement(form, F0);
  const Subspace<F> span_kf = K + F0;
  for (std::size_t j = 0; j < perp.dim(); ++j) {
    if (!span_kf.contains(perp.vector(j))) {
      w.e = perp.vector(j);
      break;
    }
  }
  if (w.e.empty()) fail(ErrorCode::invariant_violation, "F0-perp is contained in span(K, F0)");
  w.replaced = w.i;

  std::vector<typename F::Element> ts;
  if constexpr (F::is_finite) {
    for (std::uint32_t t = 0; t < f.order(); ++t) ts.push_back(t);
  } else {
    for (long t = -2; t <= 2; ++t) ts.push_back(f.from_int(t));
  }
  w.verified = true;
  for (const auto& t : ts) {
    const Subspace<F> Ft = witness_member(w, f, t);
    WitnessCheck<F> c{t, is_isotropic(form, Ft), Ft.dim(), Ft.intersect(K).dim()};
    const bool ok = f.is_zero(t) ? (Ft == F0) : (c.isotropic && c.dim == w.k && c.radical_meet + 1 == w.i);
    w.verified = w.verified && ok && c.isotropic;
    w.checks.push_back(c);
  }
  return w;
}

}  // namespace fixdet
