#include "fixdet/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

#include "fixdet/error.hpp"

namespace fixdet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "INVALID_INPUT";
    case ErrorCode::guard_violation: return "GUARD_VIOLATION";
    case ErrorCode::not_isotropic: return "NOT_ISOTROPIC";
    case ErrorCode::not_surjective: return "NOT_SURJECTIVE";
    case ErrorCode::malformed: return "MALFORMED";
    case ErrorCode::fit_mismatch: return "FIT_MISMATCH";
    case ErrorCode::support_collision: return "SUPPORT_COLLISION";
    case ErrorCode::degree_mismatch: return "DEGREE_MISMATCH";
    case ErrorCode::vanishing_violated: return "VANISHING_VIOLATED";
    case ErrorCode::ceiling_exceeded: return "CEILING_EXCEEDED";
    case ErrorCode::invariant_violation: return "INVARIANT_VIOLATION";
  }
  return "UNKNOWN";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ceiling_exceeded: return 3;
    case ErrorCode::invariant_violation: return 4;
    default: return 2;
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), e};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q" || text == "q" || text == "QQ") return rationals();
  std::uint64_t q = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::invalid_input, "field must be Q or a prime power, got '" + std::string(text) + "'");
  auto [p, e] = prime_power_decomposition(q);
  if (p == 0) fail(ErrorCode::invalid_input, "field order " + std::to_string(q) + " is not a prime power");
  return finite(p, e);
}

std::uint64_t FieldSpec::order() const {
  if (kind == Kind::rationals) return 0;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return q;
}

std::string FieldSpec::to_string() const {
  if (kind == Kind::rationals) return "Q";
  return "F" + std::to_string(order());
}

// ---------------------------------------------------------------------------
// Rationals

mpq_class RationalField::inv(const mpq_class& a) const {
  if (sgn(a) == 0) fail(ErrorCode::invalid_input, "division by zero in Q");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), a.get_mpq_t());
  return r;
}

mpq_class RationalField::random(std::mt19937_64& rng, long bound) const {
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return mpq_class(static_cast<long>(rng() % span) - bound);
}

mpq_class RationalField::parse(std::string_view text) const {
  mpq_class v;
  if (v.set_str(std::string(text), 10) != 0)
    fail(ErrorCode::invalid_input, "cannot parse rational '" + std::string(text) + "'");
  if (sgn(v.get_den()) == 0) fail(ErrorCode::invalid_input, "zero denominator in '" + std::string(text) + "'");
  v.canonicalize();
  return v;
}

// ---------------------------------------------------------------------------
// Finite fields

namespace {

using Poly = std::vector<std::uint32_t>;  // ascending coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv_lead = [&] {
    std::uint64_t r = 1, b = m.back(), n = p - 2;
    while (n) {
      if (n & 1) r = r * b % p;
      b = b * b % p;
      n >>= 1;
    }
    return r;
  }();
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t e = f.size() - 1;
  if (e <= 1) return true;
  // f is irreducible iff gcd(f, x^{p^i} - x) = 1 for 1 <= i <= e/2.
  Poly h = {0, 1};
  for (std::size_t i = 1; i <= e / 2; ++i) {
    Poly acc = {1};
    Poly base = h;
    for (std::uint32_t n = p; n; n >>= 1) {
      if (n & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    h = acc;
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly canonical_modulus(std::uint32_t p, std::uint32_t e) {
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    Poly f(e + 1, 0);
    std::uint64_t v = m;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    f[e] = 1;
    if (f[0] != 0 && irreducible(f, p)) return f;
  }
  fail(ErrorCode::invariant_violation, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::shared_ptr<const FiniteField::Tables> build_tables(std::uint32_t p, std::uint32_t e) {
  auto t = std::make_shared<FiniteField::Tables>();
  t->p = p;
  t->e = e;
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < e; ++i) q64 *= p;
  const auto q = static_cast<std::uint32_t>(q64);
  t->q = q;
  t->prime = (e == 1);
  t->modulus = canonical_modulus(p, e);
  t->powers_of_p.resize(e + 1);
  t->powers_of_p[0] = 1;
  for (std::uint32_t i = 1; i <= e; ++i) t->powers_of_p[i] = t->powers_of_p[i - 1] * p;

  auto to_poly = [&](std::uint32_t a) {
    Poly r(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      r[i] = a % p;
      a /= p;
    }
    trim(r);
    return r;
  };
  auto from_poly = [&](const Poly& r) {
    std::uint32_t a = 0;
    for (std::size_t i = r.size(); i-- > 0;) a = a * p + r[i];
    return a;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (e == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    return from_poly(poly_mulmod(to_poly(a), to_poly(b), t->modulus, p));
  };
  auto digit_add = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  };

  t->neg_tab.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t r = 0, scale = 1, x = a;
    for (std::uint32_t i = 0; i < e; ++i) {
      r += ((p - x % p) % p) * scale;
      x /= p;
      scale *= p;
    }
    t->neg_tab[a] = r;
  }

  constexpr std::uint32_t table_limit = 256;
  if (q <= table_limit) {
    t->add_tab.resize(std::size_t{q} * q);
    t->mul_tab.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        t->add_tab[a * q + b] = digit_add(a, b);
        t->mul_tab[a * q + b] = slow_mul(a, b);
      }
  }

  t->inv_tab.assign(q, 0);
  if (e > 1 && q > table_limit) {
    // Log/exp tables from a primitive element.
    const auto factors = prime_factors(q - 1);
    auto slow_pow = [&](std::uint32_t a, std::uint64_t n) {
      std::uint32_t r = 1;
      while (n) {
        if (n & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        n >>= 1;
      }
      return r;
    };
    std::uint32_t g = 0;
    for (std::uint32_t c = 2; c < q; ++c) {
      bool primitive = true;
      for (auto l : factors)
        if (slow_pow(c, (q - 1) / l) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        g = c;
        break;
      }
    }
    if (q == 2) g = 1;
    t->log_tab.assign(q, 0);
    t->exp_tab.assign(q, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
      t->exp_tab[i] = x;
      t->log_tab[x] = i;
      x = slow_mul(x, g);
    }
    for (std::uint32_t a = 1; a < q; ++a) t->inv_tab[a] = t->exp_tab[(q - 1 - t->log_tab[a]) % (q - 1)];
  } else {
    for (std::uint32_t a = 1; a < q; ++a) {
      if (t->inv_tab[a] != 0) continue;
      for (std::uint32_t b = 1; b < q; ++b) {
        const std::uint32_t prod = t->mul_tab.empty() ? slow_mul(a, b) : t->mul_tab[a * q + b];
        if (prod == 1) {
          t->inv_tab[a] = b;
          t->inv_tab[b] = a;
          break;
        }
      }
    }
  }
  return t;
}

}  // namespace

std::uint32_t FiniteField::Tables::add_digits(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < e; ++i) {
    r += ((a % p + b % p) % p) * powers_of_p[i];
    a /= p;
    b /= p;
  }
  return r;
}

FiniteField FiniteField::of_order(std::uint64_t q) {
  auto [p, e] = prime_power_decomposition(q);
  if (p == 0) fail(ErrorCode::invalid_input, std::to_string(q) + " is not a prime power");
  if (q > max_order) fail(ErrorCode::ceiling_exceeded, "field order " + std::to_string(q) + " exceeds supported maximum");
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const Tables>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, build_tables(p, e)).first;
  return FiniteField(it->second);
}

FiniteField FiniteField::from_spec(const FieldSpec& spec) {
  if (!spec.is_finite()) fail(ErrorCode::invalid_input, "expected a finite field");
  if (!is_prime(spec.p)) fail(ErrorCode::invalid_input, "characteristic " + std::to_string(spec.p) + " is not prime");
  return of_order(spec.order());
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) fail(ErrorCode::invalid_input, "division by zero in " + spec().to_string());
  return t_->inv_tab[a];
}

std::vector<std::uint32_t> FiniteField::digits(Element a) const {
  std::vector<std::uint32_t> d(t_->e, 0);
  for (std::uint32_t i = 0; i < t_->e; ++i) {
    d[i] = a % t_->p;
    a /= t_->p;
  }
  return d;
}

FiniteField::Element FiniteField::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() > t_->e) fail(ErrorCode::invalid_input, "too many coefficients for " + spec().to_string());
  Element a = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= t_->p) fail(ErrorCode::invalid_input, "coefficient out of range for " + spec().to_string());
    a = a * t_->p + d[i];
  }
  return a;
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t n) const {
  Element r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

std::string FiniteField::to_string(Element a) const {
  if (t_->e == 1) return std::to_string(a);
  std::string out = "[";
  const auto d = digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d[i]);
  }
  return out + "]";
}

Embedding<FiniteField>::Embedding(const FiniteField& from, const FiniteField& to) : from_(from), to_(to) {
  if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
    fail(ErrorCode::invalid_input, from.spec().to_string() + " does not embed in " + to.spec().to_string());
  // Image of the generator: a root of the source modulus in the target.
  const auto& m = from.modulus();
  FiniteField::Element gamma = 0;
  if (from.degree() > 1) {
    bool found = false;
    for (FiniteField::Element c = 0; c < to.order() && !found; ++c) {
      FiniteField::Element acc = 0;
      for (std::size_t i = m.size(); i-- > 0;) acc = to.add(to.mul(acc, c), to.from_int(m[i]));
      if (acc == 0) {
        gamma = c;
        found = true;
      }
    }
    if (!found) fail(ErrorCode::invariant_violation, "modulus has no root in extension");
  }
  image_.resize(from.order());
  for (FiniteField::Element a = 0; a < from.order(); ++a) {
    if (from.degree() == 1) {
      image_[a] = to.from_int(a);
      continue;
    }
    const auto d = from.digits(a);
    FiniteField::Element acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = to.add(to.mul(acc, gamma), to.from_int(d[i]));
    image_[a] = acc;
  }
}

}  // namespace fixdet
