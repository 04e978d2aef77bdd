#include "fixdet/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace fixdet {

mpz_class gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  mpz_class num = 1, den = 1, Q = static_cast<unsigned long>(q);
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), Q.get_mpz_t(), n - i);
    mpz_pow_ui(b.get_mpz_t(), Q.get_mpz_t(), i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

long long choose2(long long m) { return m >= 2 ? m * (m - 1) / 2 : 0; }

long long expected_total_degree(long long r, long long k, long long delta) {
  return k * (r - k) - choose2(k) + choose2(k - delta);
}

long long expected_stratum_degree(long long r, long long p, long long k, long long i) {
  return i * (p - i) + (k - i) * (r - k) - choose2(k - i);
}

// ---------------------------------------------------------------------------
// Subspace stream

SubspaceStream::SubspaceStream(std::size_t n, std::size_t k, const FiniteField& field, std::uint64_t ceiling)
    : n_(n), k_(k), field_(field) {
  require(k <= n, ErrorCode::invalid_input, "subspace dimension exceeds ambient dimension");
  if (size() > mpz_class(static_cast<unsigned long>(ceiling)))
    fail(ErrorCode::ceiling_exceeded, "Gaussian binomial [" + std::to_string(n) + " choose " + std::to_string(k) +
                                          "]_" + std::to_string(field.order()) + " = " + size().get_str() +
                                          " exceeds the enumeration ceiling " + std::to_string(ceiling));
}

std::vector<SubspaceStream::Pattern> SubspaceStream::patterns() const {
  std::vector<Pattern> out;
  Pattern c(k_);
  for (std::size_t i = 0; i < k_; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    // Colex successor: bump the lowest entry that can move.
    std::size_t i = 0;
    while (i < k_ && c[i] + 1 == (i + 1 < k_ ? c[i + 1] : n_)) ++i;
    if (i == k_) break;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
  }
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> free_positions(const SubspaceStream::Pattern& piv, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (std::size_t c = piv[j] + 1; c < n; ++c)
      if (!is_pivot[c]) out.emplace_back(j, c);
  return out;
}

std::uint64_t ipow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= q;
  return r;
}

template <class Task, class Result>
std::vector<Result> run_tasks(const std::vector<Task>& tasks, unsigned jobs,
                              const std::function<Result(const Task&)>& work) {
  std::vector<Result> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = work(tasks[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace

std::uint64_t SubspaceStream::pattern_size(const Pattern& pivots) const {
  return ipow(field_.order(), free_positions(pivots, n_).size());
}

bool SubspaceStream::for_each_in(const Pattern& pivots,
                                 const std::function<bool(const Subspace<FiniteField>&)>& fn) const {
  const auto free = free_positions(pivots, n_);
  Matrix<FiniteField> m(field_, k_, n_);
  for (std::size_t j = 0; j < k_; ++j) m(j, pivots[j]) = 1;
  const std::uint32_t q = field_.order();
  for (;;) {
    if (!fn(Subspace<FiniteField>::from_echelon(m, pivots))) return false;
    std::size_t d = 0;
    while (d < free.size()) {
      auto& x = m(free[d].first, free[d].second);
      if (++x < q) break;
      x = 0;
      ++d;
    }
    if (d == free.size()) return true;
  }
}

bool SubspaceStream::for_each(const std::function<bool(const Subspace<FiniteField>&)>& fn) const {
  for (const auto& p : patterns())
    if (!for_each_in(p, fn)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cell engine
//
// Rows of the echelon basis are chosen from the last pivot upwards.  The only
// state that matters is W = span(b_l G) over the chosen rows: a new row must be
// orthogonal to W, and the final stratum is k - dim W.  The first row is never
// enumerated; its contribution follows from two affine rank computations.

namespace {

constexpr std::size_t kMax = 16;
using Vec = std::array<std::uint32_t, kMax>;

struct Span {
  std::size_t n = 0;
  std::array<Vec, kMax> rows{};
  std::array<std::size_t, kMax> piv{};
};

class CellEngine {
 public:
  CellEngine(const AlternatingForm<FiniteField>& form, std::size_t k)
      : F_(form.field()), r_(form.dim()), k_(k), q_(form.field().order()) {
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) G_[i][j] = form.gram()(i, j);
  }

  std::vector<std::uint64_t> count(const SubspaceStream::Pattern& piv) const {
    std::vector<std::uint64_t> out(k_ + 1, 0);
    if (k_ == 0) {
      out[0] = 1;
      return out;
    }
    std::vector<bool> is_pivot(r_, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::vector<std::size_t>> free(k_);
    for (std::size_t j = 0; j < k_; ++j)
      for (std::size_t c = piv[j] + 1; c < r_; ++c)
        if (!is_pivot[c]) free[j].push_back(c);
    Span empty;
    descend(piv, free, k_ - 1, empty, 1, out);
    return out;
  }

 private:
  void reduce(const Span& W, Vec& v) const {
    for (std::size_t i = 0; i < W.n; ++i) {
      const std::uint32_t c = v[W.piv[i]];
      if (!c) continue;
      const std::uint32_t nc = F_.neg(c);
      for (std::size_t j = W.piv[i]; j < r_; ++j) v[j] = F_.add(v[j], F_.mul(nc, W.rows[i][j]));
    }
  }
  // Adds v (already reduced) to W; returns false if v is zero.
  bool insert(Span& W, Vec v) const {
    std::size_t p = 0;
    while (p < r_ && v[p] == 0) ++p;
    if (p == r_) return false;
    const std::uint32_t inv = F_.inv(v[p]);
    for (std::size_t j = p; j < r_; ++j) v[j] = F_.mul(v[j], inv);
    std::size_t at = W.n;
    while (at > 0 && W.piv[at - 1] > p) {
      W.rows[at] = W.rows[at - 1];
      W.piv[at] = W.piv[at - 1];
      --at;
    }
    W.rows[at] = v;
    W.piv[at] = p;
    ++W.n;
    return true;
  }

  // Solves A x = b for m unknowns; returns rank, or -1 if inconsistent.  On
  // success fills a particular solution and a null-space basis.
  int solve(std::vector<Vec>& A, std::vector<std::uint32_t>& b, std::size_t m, Vec* x0,
            std::vector<Vec>* null) const {
    std::size_t row = 0;
    std::array<std::size_t, kMax> pc{};
    for (std::size_t c = 0; c < m && row < A.size(); ++c) {
      std::size_t p = row;
      while (p < A.size() && A[p][c] == 0) ++p;
      if (p == A.size()) continue;
      std::swap(A[p], A[row]);
      std::swap(b[p], b[row]);
      const std::uint32_t inv = F_.inv(A[row][c]);
      for (std::size_t j = c; j < m; ++j) A[row][j] = F_.mul(A[row][j], inv);
      b[row] = F_.mul(b[row], inv);
      for (std::size_t i = 0; i < A.size(); ++i) {
        if (i == row || A[i][c] == 0) continue;
        const std::uint32_t f = F_.neg(A[i][c]);
        for (std::size_t j = c; j < m; ++j) A[i][j] = F_.add(A[i][j], F_.mul(f, A[row][j]));
        b[i] = F_.add(b[i], F_.mul(f, b[row]));
      }
      pc[row++] = c;
    }
    for (std::size_t i = row; i < A.size(); ++i)
      if (b[i] != 0) return -1;
    if (x0) {
      x0->fill(0);
      for (std::size_t i = 0; i < row; ++i) (*x0)[pc[i]] = b[i];
    }
    if (null) {
      null->clear();
      std::array<bool, kMax> piv{};
      for (std::size_t i = 0; i < row; ++i) piv[pc[i]] = true;
      for (std::size_t c = 0; c < m; ++c) {
        if (piv[c]) continue;
        Vec v{};
        v[c] = 1;
        for (std::size_t i = 0; i < row; ++i) v[pc[i]] = F_.neg(A[i][c]);
        null->push_back(v);
      }
    }
    return static_cast<int>(row);
  }

  // Orthogonality to W for a row with pivot p and free columns fc: one
  // equation per basis vector w: sum_c w[c] x_c = -w[p].
  void constraints(const Span& W, std::size_t p, const std::vector<std::size_t>& fc, std::vector<Vec>& A,
                   std::vector<std::uint32_t>& b) const {
    A.clear();
    b.clear();
    for (std::size_t i = 0; i < W.n; ++i) {
      Vec a{};
      for (std::size_t t = 0; t < fc.size(); ++t) a[t] = W.rows[i][fc[t]];
      A.push_back(a);
      b.push_back(F_.neg(W.rows[i][p]));
    }
  }

  // x -> (e_p + sum x_t e_{fc[t]}) G, as a constant plus one vector per unknown.
  Vec image_of(std::size_t p, const std::vector<std::size_t>& fc, const Vec& x) const {
    Vec v{};
    for (std::size_t j = 0; j < r_; ++j) v[j] = G_[p][j];
    for (std::size_t t = 0; t < fc.size(); ++t) {
      if (!x[t]) continue;
      for (std::size_t j = 0; j < r_; ++j) v[j] = F_.add(v[j], F_.mul(x[t], G_[fc[t]][j]));
    }
    return v;
  }
  Vec linear_image(const std::vector<std::size_t>& fc, const Vec& x) const {
    Vec v{};
    for (std::size_t t = 0; t < fc.size(); ++t) {
      if (!x[t]) continue;
      for (std::size_t j = 0; j < r_; ++j) v[j] = F_.add(v[j], F_.mul(x[t], G_[fc[t]][j]));
    }
    return v;
  }

  void descend(const SubspaceStream::Pattern& piv, const std::vector<std::vector<std::size_t>>& free, std::size_t j,
               const Span& W, std::uint64_t mult, std::vector<std::uint64_t>& out) const {
    const std::size_t p = piv[j];
    const auto& fc = free[j];
    const std::size_t m = fc.size();
    std::vector<Vec> A;
    std::vector<std::uint32_t> b;
    constraints(W, p, fc, A, b);
    if (j == 0) {
      const int rk = solve(A, b, m, nullptr, nullptr);
      if (rk < 0) return;
      const std::uint64_t total = ipow(q_, m - static_cast<std::size_t>(rk));
      // Rows with b_0 G in W: add the conditions red(b_0 G) = 0.
      constraints(W, p, fc, A, b);
      Vec base{};
      for (std::size_t c = 0; c < r_; ++c) base[c] = G_[p][c];
      reduce(W, base);
      std::vector<Vec> cols(m);
      for (std::size_t t = 0; t < m; ++t) {
        Vec v{};
        for (std::size_t c = 0; c < r_; ++c) v[c] = G_[fc[t]][c];
        reduce(W, v);
        cols[t] = v;
      }
      for (std::size_t c = 0; c < r_; ++c) {
        Vec a{};
        bool any = base[c] != 0;
        for (std::size_t t = 0; t < m; ++t) {
          a[t] = cols[t][c];
          any = any || a[t] != 0;
        }
        if (!any) continue;
        A.push_back(a);
        b.push_back(F_.neg(base[c]));
      }
      const int rk2 = solve(A, b, m, nullptr, nullptr);
      const std::uint64_t inside = rk2 < 0 ? 0 : ipow(q_, m - static_cast<std::size_t>(rk2));
      out[k_ - W.n] += mult * inside;
      if (total > inside) out[k_ - W.n - 1] += mult * (total - inside);
      return;
    }
    Vec x0{};
    std::vector<Vec> null;
    if (solve(A, b, m, &x0, &null) < 0) return;
    Vec y0 = image_of(p, fc, x0);
    reduce(W, y0);
    // Independent directions of the image modulo W.
    Span U;
    std::vector<Vec> dirs;
    for (const auto& nvec : null) {
      Vec y = linear_image(fc, nvec);
      reduce(W, y);
      Vec t = y;
      reduce(U, t);
      if (insert(U, t)) dirs.push_back(y);
    }
    const std::size_t rho = dirs.size();
    const std::uint64_t fiber = ipow(q_, null.size() - rho);
    Vec t0 = y0;
    reduce(U, t0);
    const bool linear = std::all_of(t0.begin(), t0.begin() + static_cast<std::ptrdiff_t>(r_),
                                    [](std::uint32_t v) { return v == 0; });
    std::array<std::uint32_t, kMax> coef{};
    auto point = [&](bool with_y0) {
      Vec y{};
      if (with_y0) y = y0;
      for (std::size_t i = 0; i < rho; ++i)
        if (coef[i])
          for (std::size_t c = 0; c < r_; ++c) y[c] = F_.add(y[c], F_.mul(coef[i], dirs[i][c]));
      return y;
    };
    if (linear) {
      // Image is the subspace U (+ W): points on one line give the same state.
      descend(piv, free, j - 1, W, mult * fiber, out);
      for (std::size_t lead = 0; lead < rho; ++lead) {
        // Projective points whose first nonzero coordinate is `lead` and equals 1.
        coef.fill(0);
        coef[lead] = 1;
        for (;;) {
          Span next = W;
          Vec y = point(false);
          reduce(next, y);
          insert(next, y);
          descend(piv, free, j - 1, next, mult * fiber * (q_ - 1), out);
          std::size_t d = lead + 1;
          while (d < rho) {
            if (++coef[d] < q_) break;
            coef[d] = 0;
            ++d;
          }
          if (d >= rho) break;
        }
      }
    } else {
      coef.fill(0);
      for (;;) {
        Span next = W;
        Vec y = point(true);
        reduce(next, y);
        insert(next, y);
        descend(piv, free, j - 1, next, mult * fiber, out);
        std::size_t d = 0;
        while (d < rho) {
          if (++coef[d] < q_) break;
          coef[d] = 0;
          ++d;
        }
        if (d >= rho) break;
      }
    }
  }

  FiniteField F_;
  std::size_t r_, k_;
  std::uint32_t q_;
  std::array<std::array<std::uint32_t, kMax>, kMax> G_{};
};

}  // namespace

mpz_class strata_work_bound(std::size_t r, std::size_t k, std::uint64_t q) {
  if (k <= 1) return 1;
  // Rows 2..k are enumerated: bounded by the number of (k-1)-subspaces of the
  // last r-1 coordinates, times k for the per-node elimination.
  return gaussian_binomial(r - 1, k - 1, q) * static_cast<unsigned long>(k);
}

StratumReport strata_counts(const AlternatingForm<FiniteField>& form, std::size_t k, const StrataOptions& opts) {
  const std::size_t r = form.dim();
  require(k <= r, ErrorCode::invalid_input, "k exceeds the dimension of the space");
  const FiniteField& F = form.field();
  StratumReport rep{r, form.degeneracy(), form.delta(), k, F.order(), {}, 0};
  StrataEngine engine = opts.engine;
  if (engine == StrataEngine::automatic) engine = r <= kMax ? StrataEngine::cells : StrataEngine::brute;
  require(engine != StrataEngine::cells || r <= kMax, ErrorCode::invalid_input, "cell engine supports r <= 16");

  std::vector<std::uint64_t> counts(k + 1, 0);
  if (engine == StrataEngine::brute) {
    SubspaceStream stream(r, k, F, opts.ceiling);
    const auto patterns = stream.patterns();
    std::function<std::vector<std::uint64_t>(const SubspaceStream::Pattern&)> work =
        [&](const SubspaceStream::Pattern& piv) {
          std::vector<std::uint64_t> c(k + 1, 0);
          stream.for_each_in(piv, [&](const Subspace<FiniteField>& V) {
            if (is_isotropic(form, V)) ++c[k - rank(V.basis() * form.gram())];
            return true;
          });
          return c;
        };
    for (const auto& c : run_tasks(patterns, opts.jobs, work))
      for (std::size_t i = 0; i <= k; ++i) counts[i] += c[i];
  } else {
    const mpz_class bound = strata_work_bound(r, k, F.order());
    if (bound > mpz_class(static_cast<unsigned long>(opts.ceiling)))
      fail(ErrorCode::ceiling_exceeded, "stratum count work bound " + bound.get_str() + " exceeds the ceiling " +
                                            std::to_string(opts.ceiling));
    SubspaceStream stream(r, k, F, ~std::uint64_t{0});
    const CellEngine cells(form, k);
    std::function<std::vector<std::uint64_t>(const SubspaceStream::Pattern&)> work =
        [&](const SubspaceStream::Pattern& piv) { return cells.count(piv); };
    for (const auto& c : run_tasks(stream.patterns(), opts.jobs, work))
      for (std::size_t i = 0; i <= k; ++i) counts[i] += c[i];
  }
  for (std::size_t i = 0; i <= k; ++i) {
    if (counts[i] == 0) continue;
    rep.strata[i] = counts[i];
    rep.total += counts[i];
  }
  return rep;
}

std::uint64_t count_multi_isotropic(const std::vector<AlternatingForm<FiniteField>>& forms, std::size_t k,
                                    std::uint64_t ceiling) {
  require(!forms.empty(), ErrorCode::invalid_input, "no forms given");
  const std::size_t r = forms.front().dim();
  for (const auto& f : forms)
    require(f.dim() == r && f.field() == forms.front().field(), ErrorCode::invalid_input,
            "forms must share the ambient space");
  SubspaceStream stream(r, k, forms.front().field(), ceiling);
  std::uint64_t count = 0;
  stream.for_each([&](const Subspace<FiniteField>& V) {
    count += std::all_of(forms.begin(), forms.end(), [&](const auto& f) { return is_isotropic(f, V); });
    return true;
  });
  return count;
}

// ---------------------------------------------------------------------------
// Fitting

mpz_class DimensionFit::operator()(std::uint64_t q) const {
  mpz_class acc = 0, Q = static_cast<unsigned long>(q);
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * Q + coefficients[i];
  return acc;
}

std::string DimensionFit::to_string() const {
  if (coefficients.empty()) return "0";
  std::string out;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    const mpz_class& c = coefficients[i];
    if (c == 0) continue;
    const mpz_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1 || i == 0) out += a.get_str();
    if (i > 0) {
      if (a != 1) out += "*";
      out += "q";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

std::optional<std::vector<mpz_class>> lagrange(const std::vector<std::pair<std::uint64_t, mpz_class>>& pts) {
  const RationalField Qf;
  Polynomial<RationalField> acc(Qf);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Polynomial<RationalField> term = Polynomial<RationalField>::constant(Qf, mpq_class(pts[i].second));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const mpq_class xi(static_cast<unsigned long>(pts[i].first)), xj(static_cast<unsigned long>(pts[j].first));
      term = term * Polynomial<RationalField>::linear(Qf, xj).scaled(Qf.inv(xi - xj));
    }
    acc += term;
  }
  std::vector<mpz_class> out;
  for (const auto& c : acc.coeffs()) {
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

std::vector<mpz_class> digits(mpz_class n, std::uint64_t q, bool balanced) {
  std::vector<mpz_class> out;
  const mpz_class Q = static_cast<unsigned long>(q);
  while (n != 0) {
    mpz_class d;
    mpz_fdiv_r(d.get_mpz_t(), n.get_mpz_t(), Q.get_mpz_t());
    if (balanced && 2 * d > Q) d -= Q;
    out.push_back(d);
    n = (n - d) / Q;
  }
  return out;
}

}  // namespace

DimensionFit fit_dimension(const std::map<std::uint64_t, mpz_class>& samples) {
  require(samples.size() >= 2, ErrorCode::invalid_input, "fitting needs at least two samples");
  DimensionFit fit;
  fit.samples = samples;
  auto matches_all = [&](const DimensionFit& f) {
    for (const auto& [q, v] : samples)
      if (f(q) != v) return false;
    return true;
  };
  auto finish = [&](std::vector<mpz_class> c, const char* method) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    fit.coefficients = std::move(c);
    fit.degree = static_cast<int>(fit.coefficients.size()) - 1;
    fit.method = method;
  };
  std::vector<std::pair<std::uint64_t, mpz_class>> pts(samples.begin(), samples.end());
  pts.pop_back();
  if (auto c = lagrange(pts)) {
    finish(*c, "lagrange");
    if (matches_all(fit)) return fit;
  }
  const auto& [qmax, vmax] = *samples.rbegin();
  for (bool balanced : {false, true}) {
    finish(digits(vmax, qmax, balanced), "q-adic");
    if (matches_all(fit)) return fit;
  }
  std::string data;
  for (const auto& [q, v] : samples) data += " " + std::to_string(q) + ":" + v.get_str();
  fail(ErrorCode::fit_mismatch, "no integer polynomial reproduces the samples" + data);
}

}  // namespace fixdet
