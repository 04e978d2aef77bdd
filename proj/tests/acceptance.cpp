// Acceptance runner: one PASS/FAIL line per criterion.  Exit status 0 when
// every criterion passes, 4 when criterion 4 finds a disagreement, 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixdet/bn.hpp"
#include "fixdet/enumerate.hpp"
#include "fixdet/jordan.hpp"
#include "report.hpp"
#include "support.hpp"

using namespace fixdet;
using namespace fixdet::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string str(std::size_t v) { return std::to_string(v); }

// --- 1, 2, 10: dimension-law campaign ---------------------------------------

tools::DimensionLawResult campaign(std::vector<std::uint64_t> qs, unsigned jobs) {
  tools::DimensionLawConfig cfg;
  cfg.q_list = std::move(qs);
  cfg.jobs = jobs;
  cfg.ceiling = 1'000'000'000;
  cfg.seed = 2024;
  return tools::dimension_law_campaign(cfg);
}

const std::vector<std::uint64_t> kSpecQs{2, 3, 5, 7};
// k(r - k) + 2 <= 11 orders: enough for a validated interpolation at every degree.
const std::vector<std::uint64_t> kWideQs{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17};

Outcome criterion1(const tools::DimensionLawResult& base, const tools::DimensionLawResult& wide, double secs) {
  const bool ok = base.fit_failures == 0 && wide.fit_failures == 0 && secs < 600;
  return {ok, str(base.cases) + " cases; fit/degree failures " + str(base.fit_failures) + " on q in {2,3,5,7}, " +
                  str(wide.fit_failures) + " on 11 orders up to 17; " + std::to_string(secs) + " s"};
}

Outcome criterion2(const tools::DimensionLawResult& base, const tools::DimensionLawResult& wide) {
  const bool ok = base.window_failures == 0 && wide.window_failures == 0;
  return {ok, str(base.cases) + " cases; window exceptions " + str(base.window_failures) + " + " +
                  str(wide.window_failures)};
}

Outcome criterion10() {
  const std::string a = campaign(kSpecQs, 1).report.dump(2), b = campaign(kSpecQs, 8).report.dump(2);
  const std::string c = campaign(kWideQs, 1).report.dump(2), d = campaign(kWideQs, 8).report.dump(2);
  return {a == b && c == d, "jobs 1 vs 8: " + str(a.size()) + " and " + str(c.size()) + " bytes, " +
                                (a == b && c == d ? "identical" : "DIFFERENT")};
}

// --- 3: degeneration witness ------------------------------------------------

Outcome criterion3() {
  std::mt19937_64 rng(3);
  std::size_t points = 0, failures = 0;
  for (std::uint64_t q : {2, 3}) {
    const auto F = FiniteField::of_order(q);
    for (std::size_t r = 1; r <= 5; ++r)
      for (std::size_t delta = 0; 2 * delta <= r; ++delta) {
        const auto form = disguised_standard(F, r, delta, rng);
        const auto& K = form.radical();
        for (std::size_t k = 1; k <= r; ++k) {
          const std::size_t floor = k > delta ? k - delta : 0;
          SubspaceStream(r, k, F).for_each([&](const Subspace<FiniteField>& V) {
            if (!is_isotropic(form, V)) return true;
            const std::size_t i = V.intersect(K).dim();
            if (i <= floor) return true;
            ++points;
            const auto w = degeneration_witness(form, V);
            bool ok = w.needed && w.verified && orthogonal_complement(form, V).contains(w.e) && !(K + V).contains(w.e);
            for (std::uint32_t t = 0; ok && t < q; ++t) {
              const auto Ft = witness_member(w, F, t);
              if (t == 0) ok = Ft == V;
              else ok = is_isotropic(form, Ft) && Ft.dim() == k && Ft.intersect(K).dim() == i - 1;
            }
            failures += !ok;
            return true;
          });
        }
      }
  }
  return {failures == 0 && points > 0, str(points) + " non-minimal points, " + str(failures) + " exceptions"};
}

// --- 4, 6: pencil dependence -------------------------------------------------

template <class F>
struct PencilTally {
  std::size_t checked = 0, dependent = 0, disagreements = 0;
  std::vector<FormPencil<F>> dependent_pencils;
};

template <class F>
void check_pencil(const FormPencil<F>& p, PencilTally<F>& t) {
  ++t.checked;
  const bool by_rank = !dependence_space(p).empty();
  const auto cert = pencil_rank_drop(p);
  if (by_rank != cert.dependent) ++t.disagreements;
  if (cert.dependent && cert.v_prime) {
    // V' spans a 2-dimensional left kernel of the witness combination.
    const F& K = *cert.witness_field;
    const auto emb = detail::embedding_for(p.field(), K);
    const auto comb = map_matrix(p.psi1, emb, K).scaled(cert.witness->first) +
                      map_matrix(p.psi2, emb, K).scaled(cert.witness->second);
    if (rank(*cert.v_prime) != 2 || !(*cert.v_prime * comb).is_zero()) ++t.disagreements;
  }
  if (by_rank) {
    ++t.dependent;
    t.dependent_pencils.push_back(p);
  }
}

template <class F>
PencilTally<F> pencil_campaign(const F& f, std::size_t random_count, std::size_t adversarial_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PencilTally<F> t;
  for (std::size_t c = 0; c < random_count; ++c) {
    const std::size_t k = 1 + rng() % 4, n = k + rng() % (8 - k);
    check_pencil(random_surjective_pencil(f, k, n, rng), t);
  }
  for (std::size_t c = 0; c < adversarial_count; ++c) {
    const std::size_t k = 2 + rng() % 3, n = k + rng() % (8 - k);
    check_pencil(adversarial_pencil(f, k, n, c % 2 == 0, rng), t);
  }
  return t;
}

template <class F>
std::string tally_text(const char* name, const PencilTally<F>& t) {
  return std::string(name) + " " + str(t.checked) + " (" + str(t.dependent) + " dependent, " + str(t.disagreements) +
         " disagreements)";
}

struct ExtractionTally {
  std::size_t checked = 0, skipped_nonsplit = 0, exceptions = 0;
};

template <class F>
void extraction_check(const FormPencil<F>& p, ExtractionTally& t) {
  const std::size_t k = p.k(), n = p.n();
  const auto norm = normalize_pencil(p);
  const auto g = generalized_jordan_form(norm.a);
  if (!g) {
    ++t.skipped_nonsplit;
    return;
  }
  ++t.checked;
  const F& K = g->field;
  const Matrix<F>& A = g->normal_form;
  const auto space = dependence_space(FormPencil<F>(Matrix<F>::identity(K, k, n), A));
  if (space.empty()) {
    ++t.exceptions;
    return;
  }
  const auto vs = extract_dependence_vectors(A, split_dependence(K, space.front()).c_prime);
  std::vector<std::vector<typename F::Element>> rows;
  bool ok = true;
  for (const auto& [i, v] : vs) {
    const auto shift = A - Matrix<F>::identity(K, k, n).scaled(A(i, i));
    for (const auto& x : shift.left_multiply(v)) ok = ok && K.is_zero(x);
    rows.push_back(v);
  }
  ok = ok && !rows.empty() && rank(Matrix<F>::from_rows(K, rows, k)) >= 2;
  t.exceptions += !ok;
}

// --- 5: smoothness ---------------------------------------------------------------

Outcome criterion5() {
  const auto F3 = FiniteField::of_order(3);
  std::mt19937_64 rng(5);
  std::size_t pairs = 0, planes = 0, smooth = 0, disagreements = 0;
  while (pairs < 24) {
    const auto f1 = disguised_standard(F3, 4, 2, rng), f2 = disguised_standard(F3, 4, 2, rng);
    ++pairs;
    SubspaceStream(4, 2, F3).for_each([&](const Subspace<FiniteField>& V) {
      if (!is_isotropic(f1, V) || !is_isotropic(f2, V)) return true;
      ++planes;
      const auto rep = msg_smoothness_at(f1, f2, V);
      const bool independent = !rep.criterion.dependent;
      smooth += independent;
      if ((rep.codimension == 2) != independent || rep.expected != 2 || !rep.agree) ++disagreements;
      return true;
    });
  }
  return {disagreements == 0 && planes > 0, str(pairs) + " pairs, " + str(planes) + " planes (" + str(smooth) +
                                                " smooth), " + str(disagreements) + " disagreements"};
}

// --- 7: residue construction ---------------------------------------------------

template <class F>
void residue_models(const F& f, std::size_t count, std::uint64_t seed, std::size_t& checked, std::size_t& exceptions) {
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < count; ++c) {
    const auto s = random_model_spec(f, rng);
    const auto model = build_residue_model(f, s.a, s.b, s.D, s.Delta, s.phi);
    const auto check = check_residue_model(model);
    const auto& G = model.form.gram();
    bool alternating = true;
    for (std::size_t i = 0; i < G.rows(); ++i)
      for (std::size_t j = 0; j < G.cols(); ++j)
        alternating = alternating && f.is_zero(f.add(G(i, j), G(j, i))) && (i != j || f.is_zero(G(i, j)));
    const long long degd = static_cast<long long>(model.deg_d()), delta = static_cast<long long>(model.delta());
    const bool ok = alternating && check.nondegenerate &&
                    static_cast<long long>(check.dim_e) == 4 * degd + 2 * delta &&
                    static_cast<long long>(check.radical_m) == 2 * degd && check.dim_s && *check.s_isotropic &&
                    static_cast<long long>(*check.dim_s) == model.d() + 2 * degd + 2 &&
                    static_cast<long long>(*check.dim_s_meet_m) == model.h0_e() && check.ok;
    ++checked;
    exceptions += !ok;
  }
}

Outcome criterion7() {
  std::size_t checked = 0, exceptions = 0;
  residue_models(RationalField{}, 30, 71, checked, exceptions);
  residue_models(FiniteField::of_order(7), 30, 72, checked, exceptions);
  return {exceptions == 0 && checked >= 40, str(checked) + " models over Q and F7, " + str(exceptions) + " exceptions"};
}

// --- 8: injectivity ---------------------------------------------------------------

template <class F>
void injectivity_runs(const F& f, std::size_t count, std::uint64_t seed, std::size_t& checked, std::size_t& failures) {
  std::mt19937_64 rng(seed);
  const std::vector<RationalFunction<F>> phis{RationalFunction<F>(Polynomial<F>::constant(f, f.one())),
                                              RationalFunction<F>(Polynomial<F>::x(f))};
  for (std::size_t c = 0; c < count; ++c) {
    // z dz vanishes at 0, so D avoids it.
    const std::size_t deg = 3 + rng() % 3;
    auto D = sample_points(f, deg + 1, rng);
    const auto zero = std::find_if(D.begin(), D.end(), [&](const auto& P) { return f.is_zero(P); });
    D.erase(zero == D.end() ? D.end() - 1 : zero);
    const auto rep = pencil_injectivity(phis, -1, -2, D);
    ++checked;
    failures += !(rep.injective && !rep.sampled && rep.gcd && rep.m == 2);
  }
}

Outcome criterion8() {
  std::size_t checked = 0, failures = 0;
  injectivity_runs(FiniteField::of_order(7), 15, 81, checked, failures);
  injectivity_runs(RationalField{}, 15, 82, checked, failures);
  return {failures == 0, str(checked) + " divisors of degree 3..5 over F7 and Q, " + str(failures) + " failures"};
}

// --- 9: formula identities -------------------------------------------------------

Outcome criterion9() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checks = 0, failures = 0;
  for (long long k = 1; k <= 50; ++k)
    for (long long g = 1; g <= 50; ++g, ++checks)
      failures += rho_omega(k, g) != rho(2, 2 * g - 2, k, g) - static_cast<long>(g) + mpz_class(static_cast<long>(k * (k - 1) / 2));
  for (long long g = 0; g <= 10'000; ++g, ++checks) failures += rho(2, g - 2, 2, g) - 1 != static_cast<long>(2 * g - 8);
  for (long long r = 1; r <= 12; ++r)
    for (long long s = 0; s <= r; ++s)
      for (long long t = 0; 2 * t <= r; ++t)
        for (long long k = 1; k <= t; ++k)
          for (long long delta = 0; 2 * delta <= s; ++delta, ++checks) failures += codim_bound_single(k, r, s, t, delta) < 1;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 1.0,
          str(checks) + " identities, " + str(failures) + " failures, " + std::to_string(secs) + " s"};
}

void report(int n, const Outcome& o, bool& all) {
  std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
  std::fflush(stdout);
  all = all && o.pass;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  bool all = true;

  tools::DimensionLawResult base, wide;
  double secs = 0;
  const Outcome c1 = guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    base = campaign(kSpecQs, 1);
    wide = campaign(kWideQs, 1);
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return criterion1(base, wide, secs);
  });
  report(1, c1, all);
  report(2, guarded([&] { return base.cases ? criterion2(base, wide) : Outcome{false, "campaign did not run"}; }), all);
  report(3, guarded(criterion3), all);

  PencilTally<FiniteField> t5, t7;
  PencilTally<RationalField> tq;
  const Outcome c4 = guarded([&] {
    t5 = pencil_campaign(FiniteField::of_order(5), 500, 60, 45);
    t7 = pencil_campaign(FiniteField::of_order(7), 500, 60, 47);
    tq = pencil_campaign(RationalField{}, 100, 40, 40);
    const std::size_t bad = t5.disagreements + t7.disagreements + tq.disagreements;
    return Outcome{bad == 0, tally_text("F5", t5) + "; " + tally_text("F7", t7) + "; " + tally_text("Q", tq) +
                                 "; adversarial " + str(160)};
  });
  report(4, c4, all);
  const bool disagreement = t5.disagreements + t7.disagreements + tq.disagreements > 0;

  report(5, guarded(criterion5), all);

  report(6, guarded([&] {
           ExtractionTally t;
           for (const auto& p : t5.dependent_pencils) extraction_check(p, t);
           for (const auto& p : t7.dependent_pencils) extraction_check(p, t);
           for (const auto& p : tq.dependent_pencils) extraction_check(p, t);
           return Outcome{t.exceptions == 0 && t.checked > 0,
                          str(t.checked) + " dependent instances, " + str(t.skipped_nonsplit) +
                              " non-split over Q skipped, " + str(t.exceptions) + " exceptions"};
         }),
         all);
  report(7, guarded(criterion7), all);
  report(8, guarded(criterion8), all);
  report(9, guarded(criterion9), all);
  report(10, guarded(criterion10), all);

  if (disagreement) return 4;
  return all ? 0 : 1;
}
