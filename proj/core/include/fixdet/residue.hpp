#pragma once

// Rational differentials f dz on the projective line, their residues, and the
// residue pairing on E(D)/E(-D-Delta) for E = O(a) + O(b).

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "fixdet/binary_forms.hpp"
#include "fixdet/forms.hpp"

namespace fixdet {

// num/den in lowest terms with monic denominator.
template <class F>
class RationalFunction {
 public:
  using Element = typename F::Element;
  using Poly = Polynomial<F>;

  explicit RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field().one())) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), ErrorCode::invalid_input, "rational function with zero denominator");
    const F& f = den_.field();
    if (num_.is_zero()) {
      den_ = Poly::constant(f, f.one());
      return;
    }
    const Poly g = gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
    const Element s = f.inv(den_.lead());
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }

  const F& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // deg num - deg den; meaningless for zero.
  int degree() const { return num_.degree() - den_.degree(); }

  RationalFunction operator*(const RationalFunction& o) const { return {num_ * o.num_, den_ * o.den_}; }
  RationalFunction operator+(const RationalFunction& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
  RationalFunction operator-(const RationalFunction& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
  RationalFunction scaled(const Element& s) const { return {num_.scaled(s), den_}; }
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  bool has_pole_at(const Element& p) const { return field().is_zero(den_(p)); }
  Element operator()(const Element& p) const {
    require(!has_pole_at(p), ErrorCode::invalid_input, "evaluating a rational function at a pole");
    return field().div(num_(p), den_(p));
  }
  std::string to_string(const std::string& var = "z") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  Poly num_, den_;
};

namespace detail {

// First `count` coefficients of the power series n/h, h(0) != 0.
template <class F>
std::vector<typename F::Element> series_quotient(const Polynomial<F>& n, const Polynomial<F>& h, std::size_t count) {
  const F& f = n.field();
  const auto h0 = f.inv(h.coeff(0));
  std::vector<typename F::Element> q(count, f.zero());
  for (std::size_t i = 0; i < count; ++i) {
    auto s = n.coeff(i);
    for (std::size_t j = 1; j <= i; ++j) s = f.sub(s, f.mul(h.coeff(j), q[i - j]));
    q[i] = f.mul(s, h0);
  }
  return q;
}

}  // namespace detail

// Laurent coefficients of f at P for orders lo..hi.
template <class F>
std::vector<typename F::Element> laurent(const RationalFunction<F>& fn, const typename F::Element& P, int lo, int hi) {
  const F& f = fn.field();
  std::vector<typename F::Element> out;
  if (hi < lo) return out;
  const auto N = fn.num().taylor_shift(P);
  auto D = fn.den().taylor_shift(P);
  int m = 0;
  while (f.is_zero(D.coeff(static_cast<std::size_t>(m)))) ++m;
  std::vector<typename F::Element> hc(D.coeffs().begin() + m, D.coeffs().end());
  const Polynomial<F> h(f, std::move(hc));
  const auto top = hi + m;
  const auto series = top >= 0 ? detail::series_quotient(N, h, static_cast<std::size_t>(top) + 1)
                               : std::vector<typename F::Element>{};
  for (int o = lo; o <= hi; ++o) out.push_back(o + m >= 0 ? series[static_cast<std::size_t>(o + m)] : f.zero());
  return out;
}

template <class F>
typename F::Element residue_at(const RationalFunction<F>& fn, const typename F::Element& P) {
  if (!fn.has_pole_at(P)) return fn.field().zero();
  return laurent(fn, P, -1, -1).front();
}

// z = 1/w, dz = -dw/w^2.
template <class F>
typename F::Element residue_at_infinity(const RationalFunction<F>& fn) {
  const F& f = fn.field();
  if (fn.is_zero()) return f.zero();
  const int dn = fn.num().degree(), dd = fn.den().degree();
  const int want = dn - dd + 1;
  if (want < 0) return f.zero();
  const auto s = detail::series_quotient(fn.num().reversed(static_cast<std::size_t>(dn)),
                                         fn.den().reversed(static_cast<std::size_t>(dd)), static_cast<std::size_t>(want) + 1);
  return f.neg(s[static_cast<std::size_t>(want)]);
}

namespace detail {

// Extended Euclid: inverse of a modulo g (coprime).
inline Polynomial<RationalField> inverse_mod(const Polynomial<RationalField>& a, const Polynomial<RationalField>& g) {
  const RationalField& Q = g.field();
  Polynomial<RationalField> r0 = g, r1 = a % g, s0(Q), s1 = Polynomial<RationalField>::constant(Q, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  require(r0.degree() == 0, ErrorCode::invariant_violation, "element is not invertible modulo g");
  return s0.scaled(Q.inv(r0.coeff(0))) % g;
}

// Squarefree decomposition (characteristic 0): p = prod g_i^i, monic p.
inline std::vector<std::pair<Polynomial<RationalField>, int>> yun(const Polynomial<RationalField>& p) {
  std::vector<std::pair<Polynomial<RationalField>, int>> out;
  if (p.degree() < 1) return out;
  const auto dp = p.derivative();
  const auto a0 = gcd(p, dp);
  auto b = p / a0, c = dp / a0;
  auto d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    const auto g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

// Coefficients of p(t + w) as a polynomial in w over Q[t]/(g).
inline std::vector<Polynomial<RationalField>> shift_mod(const Polynomial<RationalField>& p,
                                                        const Polynomial<RationalField>& g) {
  const RationalField& Q = g.field();
  const auto t = Polynomial<RationalField>::x(Q);
  std::vector<Polynomial<RationalField>> out(std::max(p.degree() + 1, 1), Polynomial<RationalField>(Q));
  for (int k = 0; k <= p.degree(); ++k) {
    std::vector<Polynomial<RationalField>> powers(static_cast<std::size_t>(k) + 1, Polynomial<RationalField>::constant(Q, 1));
    for (int e = 1; e <= k; ++e) powers[static_cast<std::size_t>(e)] = (powers[static_cast<std::size_t>(e) - 1] * t) % g;
    for (int j = 0; j <= k; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
      out[static_cast<std::size_t>(j)] +=
          powers[static_cast<std::size_t>(k - j)].scaled(p.coeff(static_cast<std::size_t>(k)) * mpq_class(binom));
    }
  }
  for (auto& c : out) c = c % g;
  return out;
}

inline mpq_class trace_mod(const Polynomial<RationalField>& a, const Polynomial<RationalField>& g) {
  mpq_class tr = 0;
  auto basis = Polynomial<RationalField>::constant(g.field(), 1);
  for (int i = 0; i < g.degree(); ++i) {
    tr += ((a * basis) % g).coeff(static_cast<std::size_t>(i));
    basis = basis.shifted(1) % g;
  }
  return tr;
}

// Sum of residues of num/den over the roots of g (squarefree, coprime to
// den / g^m), each a pole of order m.
inline mpq_class residue_trace(const RationalFunction<RationalField>& fn, const Polynomial<RationalField>& g, int m) {
  const RationalField& Q = g.field();
  const auto N = shift_mod(fn.num(), g), D = shift_mod(fn.den(), g);
  for (int j = 0; j < m; ++j)
    require(D[static_cast<std::size_t>(j)].is_zero(), ErrorCode::invariant_violation, "pole order bookkeeping failed");
  const std::size_t count = static_cast<std::size_t>(m);
  std::vector<Polynomial<RationalField>> q(count, Polynomial<RationalField>(Q));
  auto coeff = [](const std::vector<Polynomial<RationalField>>& v, std::size_t i, const RationalField& f) {
    return i < v.size() ? v[i] : Polynomial<RationalField>(f);
  };
  const auto h0inv = inverse_mod(D[count], g);
  for (std::size_t i = 0; i < count; ++i) {
    auto s = coeff(N, i, Q);
    for (std::size_t j = 1; j <= i; ++j) s -= (coeff(D, count + j, Q) * q[i - j]) % g;
    q[i] = (s * h0inv) % g;
  }
  return trace_mod(q[count - 1], g);
}

}  // namespace detail

// Sum of all residues, including infinity.  The caller checks it is zero.
template <class F>
struct ResidueSum {
  F field;  // where the finite residues were computed
  typename F::Element value;
  bool is_zero = false;
};

inline ResidueSum<FiniteField> residue_sum(const RationalFunction<FiniteField>& fn) {
  const FiniteField& base = fn.field();
  if (fn.den().degree() < 1) {
    const auto v = residue_at_infinity(fn);
    return {base, v, base.is_zero(v)};
  }
  const auto roots = factor_squarefree_roots(fn.den());
  const FiniteField& K = roots.field;
  const Embedding<FiniteField> emb(base, K);
  const RationalFunction<FiniteField> lifted(map_polynomial(fn.num(), emb, K), map_polynomial(fn.den(), emb, K));
  auto sum = emb(residue_at_infinity(fn));
  for (const auto& [root, mult] : roots.roots) sum = K.add(sum, residue_at(lifted, root));
  return {K, sum, K.is_zero(sum)};
}

inline ResidueSum<RationalField> residue_sum(const RationalFunction<RationalField>& fn) {
  const RationalField Q;
  mpq_class sum = residue_at_infinity(fn);
  auto rest = fn.den();
  for (const auto& [root, mult] : detail::rational_roots(rest)) sum += residue_at(fn, root);
  for (const auto& [g, m] : detail::yun(rest.monic())) sum += detail::residue_trace(fn, g, m);
  return {Q, sum, sum == 0};
}

// --- residue model ----------------------------------------------------------

template <class F>
struct ResidueCoordinate {
  typename F::Element point;
  bool in_d = false;  // otherwise a point of Delta
  int summand = 0;    // 0 for O(a), 1 for O(b)
  int order = 0;      // Laurent order in (z - P)
};

// Twists h^0(O(m)) and h^1(O(m)) on the projective line.
inline long long h0_line(long long m) { return std::max(0LL, m + 1); }
inline long long h1_line(long long m) { return std::max(0LL, -m - 1); }

template <class F>
struct ResidueModel {
  using Element = typename F::Element;
  F field;
  long long a = 0, b = 0;  // E = O(a) + O(b), d = a + b
  std::vector<Element> d_points, delta_points;
  RationalFunction<F> phi;  // phi(l) = f l dz
  std::vector<ResidueCoordinate<F>> coords;
  AlternatingForm<F> form;
  Subspace<F> m_subspace;  // image of E/E(-D-Delta)

  long long d() const { return a + b; }
  std::size_t deg_d() const { return d_points.size(); }
  std::size_t delta() const { return delta_points.size(); }
  long long h0_e() const { return h0_line(a) + h0_line(b); }
  // h^1(E(D)) = h^0(E(-D-Delta)) = 0
  bool vanishing_holds() const {
    const long long dd = static_cast<long long>(deg_d()), de = static_cast<long long>(delta());
    return h1_line(a + dd) == 0 && h1_line(b + dd) == 0 && h0_line(a - dd - de) == 0 && h0_line(b - dd - de) == 0;
  }
};

namespace detail {

template <class F>
Polynomial<F> vanishing_polynomial(const F& f, const std::vector<typename F::Element>& pts) {
  auto p = Polynomial<F>::constant(f, f.one());
  for (const auto& P : pts) p = p * Polynomial<F>::linear(f, P);
  return p;
}

// (z - P)^e as a rational function.
template <class F>
RationalFunction<F> power_at(const F& f, const typename F::Element& P, int e) {
  auto p = Polynomial<F>::constant(f, f.one());
  for (int i = 0; i < std::abs(e); ++i) p = p * Polynomial<F>::linear(f, P);
  if (e >= 0) return RationalFunction<F>(p);
  return RationalFunction<F>(Polynomial<F>::constant(f, f.one()), p);
}

template <class F>
void require_distinct(std::vector<typename F::Element> pts, const char* what) {
  std::sort(pts.begin(), pts.end());
  require(std::adjacent_find(pts.begin(), pts.end()) == pts.end(), ErrorCode::invalid_input,
          std::string(what) + " has a repeated point");
}

}  // namespace detail

// Differential phi = f dz as a morphism O(d) -> omega(Delta) = O(-2 + delta):
// poles of f simple and inside Delta, deg f <= -d - 2.
template <class F>
ResidueModel<F> build_residue_model(const F& f, long long a, long long b, std::vector<typename F::Element> D,
                                    std::vector<typename F::Element> Delta, const RationalFunction<F>& phi) {
  detail::require_distinct<F>(D, "D");
  detail::require_distinct<F>(Delta, "Delta");
  for (const auto& P : D)
    for (const auto& R : Delta)
      require(!f.equal(P, R), ErrorCode::support_collision, "D and Delta share a point");
  const long long d = a + b;
  require(!phi.is_zero(), ErrorCode::degree_mismatch, "phi is zero");
  require(phi.degree() <= -d - 2, ErrorCode::degree_mismatch,
          "phi = f dz needs deg f <= -d - 2 to be regular at infinity");
  const auto delta_poly = detail::vanishing_polynomial(f, Delta);
  require((delta_poly % phi.den()).is_zero(), ErrorCode::degree_mismatch,
          "phi has a pole outside Delta or a pole of order above one");
  for (const auto& R : Delta)
    require(phi.has_pole_at(R), ErrorCode::support_collision, "phi vanishes at a point of Delta");
  for (const auto& P : D) require(!f.is_zero(phi(P)), ErrorCode::support_collision, "phi vanishes at a point of D");

  std::vector<std::pair<typename F::Element, bool>> pts;
  for (const auto& P : D) pts.emplace_back(P, true);
  for (const auto& R : Delta) pts.emplace_back(R, false);
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<ResidueCoordinate<F>> coords;
  for (const auto& [P, in_d] : pts)
    for (int s = 0; s < 2; ++s)
      for (int o = in_d ? -1 : 0; o <= 0; ++o) coords.push_back({P, in_d, s, o});

  const std::size_t N = coords.size();
  Matrix<F> g(f, N, N);
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = 0; v < N; ++v) {
      const auto &cu = coords[u], &cv = coords[v];
      if (cu.summand == cv.summand || !f.equal(cu.point, cv.point)) continue;
      auto r = residue_at(phi * detail::power_at(f, cu.point, cu.order + cv.order), cu.point);
      g(u, v) = cu.summand == 0 ? r : f.neg(r);
    }
  std::vector<std::vector<typename F::Element>> mrows;
  for (std::size_t u = 0; u < N; ++u)
    if (coords[u].order == 0) {
      std::vector<typename F::Element> e(N, f.zero());
      e[u] = f.one();
      mrows.push_back(std::move(e));
    }
  std::sort(D.begin(), D.end());
  std::sort(Delta.begin(), Delta.end());
  return ResidueModel<F>{f,
                         a,
                         b,
                         std::move(D),
                         std::move(Delta),
                         phi,
                         std::move(coords),
                         AlternatingForm<F>(std::move(g)),
                         Subspace<F>::span(f, N, mrows)};
}

// Image of H^0(E(D)) in the Laurent-tail coordinates, from the monomial basis
// z^j / prod_D (z - P), j = 0 .. twist + deg D, of each summand.
template <class F>
Matrix<F> global_section_basis(const ResidueModel<F>& model) {
  require(model.vanishing_holds(), ErrorCode::vanishing_violated,
          "h^1(E(D)) or h^0(E(-D-Delta)) is nonzero for this splitting type");
  const F& f = model.field;
  const auto den = detail::vanishing_polynomial(f, model.d_points);
  const std::size_t N = model.coords.size();
  std::vector<std::vector<typename F::Element>> rows;
  for (int s = 0; s < 2; ++s) {
    const long long top = (s == 0 ? model.a : model.b) + static_cast<long long>(model.deg_d());
    for (long long j = 0; j <= top; ++j) {
      const RationalFunction<F> g(Polynomial<F>::constant(f, f.one()).shifted(static_cast<std::size_t>(j)), den);
      std::vector<typename F::Element> row(N, f.zero());
      for (std::size_t u = 0; u < N; ++u) {
        const auto& c = model.coords[u];
        if (c.summand == s) row[u] = laurent(g, c.point, c.order, c.order).front();
      }
      rows.push_back(std::move(row));
    }
  }
  return Matrix<F>::from_rows(f, rows, N);
}

template <class F>
Subspace<F> global_section_subspace(const ResidueModel<F>& model) {
  return Subspace<F>(global_section_basis(model));
}

template <class F>
struct ResidueModelCheck {
  bool alternating = true;  // enforced by construction
  bool nondegenerate = false;
  std::size_t dim_e = 0, dim_m = 0, radical_m = 0;
  std::optional<std::size_t> dim_s, dim_s_meet_m;
  std::optional<bool> s_isotropic;
  long long expected_dim_s = 0, h0_e = 0;
  bool ok = false;
};

// Every dimension and isotropy claim about a model, computed.
template <class F>
ResidueModelCheck<F> check_residue_model(const ResidueModel<F>& model) {
  ResidueModelCheck<F> c;
  const long long degd = static_cast<long long>(model.deg_d()), delta = static_cast<long long>(model.delta());
  c.nondegenerate = model.form.radical().dim() == 0;
  c.dim_e = model.coords.size();
  c.dim_m = model.m_subspace.dim();
  c.radical_m = restrict(model.form, model.m_subspace).radical().dim();
  c.expected_dim_s = model.d() + 2 * degd + 2;
  c.h0_e = model.h0_e();
  c.ok = c.nondegenerate && static_cast<long long>(c.dim_e) == 4 * degd + 2 * delta &&
         static_cast<long long>(c.dim_m) == 2 * degd + 2 * delta && static_cast<long long>(c.radical_m) == 2 * degd;
  if (model.vanishing_holds()) {
    const auto S = global_section_subspace(model);
    c.dim_s = S.dim();
    c.s_isotropic = is_isotropic(model.form, S);
    c.dim_s_meet_m = S.intersect(model.m_subspace).dim();
    c.ok = c.ok && *c.s_isotropic && static_cast<long long>(*c.dim_s) == c.expected_dim_s &&
           static_cast<long long>(*c.dim_s_meet_m) == c.h0_e;
  }
  return c;
}

// --- injectivity of form pencils on global sections -------------------------

template <class F>
struct InjectivityReport {
  std::size_t m = 0, dim_s = 0;
  bool injective = false;
  bool sampled = false;  // m > 2: random combinations only
  std::optional<std::vector<typename F::Element>> failing_combination;  // over the base field
  std::optional<Polynomial<F>> gcd;                                      // m = 2
  bool compressed = false;  // m = 2 settled by random column compressions
};

// For forms induced by phi_1..phi_m (Delta empty) on E(D)/E(-D): does every
// nonzero combination induce an injective map H^0(E(D)) -> dual?
template <class F>
InjectivityReport<F> pencil_injectivity(const std::vector<RationalFunction<F>>& phis, long long a, long long b,
                                        const std::vector<typename F::Element>& D, std::uint64_t seed = 1,
                                        std::size_t samples = 64) {
  require(!phis.empty(), ErrorCode::invalid_input, "no forms given");
  const F& f = phis.front().field();
  std::vector<Matrix<F>> images;
  Matrix<F> basis(f);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const auto model = build_residue_model(f, a, b, D, {}, phis[i]);
    if (i == 0) basis = global_section_basis(model);
    images.push_back(basis * model.form.gram());
  }
  // Independence of the phi_i as sections.
  {
    int top = 0;
    for (const auto& p : phis) top = std::max(top, p.num().degree());
    std::vector<std::vector<typename F::Element>> rows;
    for (const auto& p : phis) {
      std::vector<typename F::Element> r;
      for (int e = 0; e <= top; ++e) r.push_back(p.num().coeff(static_cast<std::size_t>(e)));
      rows.push_back(std::move(r));
    }
    require(rank(Matrix<F>::from_rows(f, rows, static_cast<std::size_t>(top) + 1)) == phis.size(),
            ErrorCode::invalid_input, "the forms phi_i are linearly dependent");
  }
  InjectivityReport<F> out;
  out.m = phis.size();
  out.dim_s = basis.rows();
  const std::size_t s = basis.rows();
  if (out.m == 1) {
    out.injective = rank(images[0]) == s;
    if (!out.injective) out.failing_combination = std::vector<typename F::Element>{f.one()};
    return out;
  }
  if (out.m == 2) {
    // Cauchy-Binet: det((lambda A + mu B) R) is a combination of the maximal
    // minors, so coprime compressed determinants already certify injectivity.
    {
      std::mt19937_64 rng(seed);
      std::optional<Polynomial<F>> g;
      bool infinity = true;
      for (int t = 0; t < 3; ++t) {
        const Matrix<F> R = random_matrix(f, images[0].cols(), s, rng);
        for_each_pencil_minor(images[0] * R, images[1] * R, s, [&](BinaryForm<F> mi) {
          if (!mi.is_zero()) {
            if (!mi.vanishes_at_infinity()) infinity = false;
            g = g ? gcd(*g, mi.dehom) : mi.dehom.monic();
          }
          return false;
        });
        if (g && !infinity && g->degree() < 1) {
          out.injective = true;
          out.compressed = true;
          out.gcd = g;
          return out;
        }
      }
    }
    std::vector<BinaryForm<F>> minors;
    std::optional<Polynomial<F>> g;
    bool infinity = true;
    for_each_pencil_minor(images[0], images[1], s, [&](BinaryForm<F> mi) {
      if (!mi.is_zero()) {
        if (!mi.vanishes_at_infinity()) infinity = false;
        g = g ? gcd(*g, mi.dehom) : mi.dehom.monic();
      }
      minors.push_back(std::move(mi));
      return infinity || !g || g->degree() >= 1;
    });
    const auto root = binary_form_common_root(minors, f);
    out.gcd = root.gcd;
    out.injective = root.status == CommonRootStatus::none;
    if (!out.injective && root.witness && root.field_degree == 1)
      out.failing_combination = std::vector<typename F::Element>{root.witness->first, root.witness->second};
    return out;
  }
  out.sampled = true;
  std::mt19937_64 rng(seed);
  out.injective = true;
  for (std::size_t t = 0; t < samples + out.m; ++t) {
    std::vector<typename F::Element> lam(out.m, f.zero());
    if (t < out.m) {
      lam[t] = f.one();
    } else {
      for (auto& x : lam) x = random_element(f, rng);
    }
    bool zero = true;
    for (const auto& x : lam) zero = zero && f.is_zero(x);
    if (zero) continue;
    Matrix<F> comb(f, s, images[0].cols());
    for (std::size_t i = 0; i < out.m; ++i) comb = comb + images[i].scaled(lam[i]);
    if (rank(comb) < s) {
      out.injective = false;
      out.failing_combination = lam;
      break;
    }
  }
  return out;
}

// Smallest prefix of `points` (taken as D) at which the pencil is injective
// and the vanishing conditions hold.
template <class F>
std::optional<std::size_t> injectivity_threshold(const std::vector<RationalFunction<F>>& phis, long long a, long long b,
                                                 const std::vector<typename F::Element>& points) {
  for (std::size_t n = 1; n <= points.size(); ++n) {
    const long long nn = static_cast<long long>(n);
    if (h1_line(a + nn) || h1_line(b + nn) || h0_line(a - nn) || h0_line(b - nn)) continue;
    std::vector<typename F::Element> D(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n));
    if (pencil_injectivity(phis, a, b, D).injective) return n;
  }
  return std::nullopt;
}

}  // namespace fixdet
