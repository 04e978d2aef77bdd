#pragma once

// Exact scalar fields: the rationals (GMP-backed, always reduced) and finite
// fields GF(p^e) with table-driven arithmetic.  Both expose the same
// value-level interface so the linear algebra can be written once as
// templates over the field type.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace fixdet {

struct FieldSpec {
  enum class Kind { rationals, finite };
  Kind kind = Kind::rationals;
  std::uint32_t p = 0;
  std::uint32_t e = 1;

  static FieldSpec rationals() { return {}; }
  static FieldSpec finite(std::uint32_t p, std::uint32_t e = 1) { return {Kind::finite, p, e}; }
  // Accepts "Q" or a prime power such as "7" or "9".
  static FieldSpec parse(std::string_view text);

  bool is_finite() const { return kind == Kind::finite; }
  std::uint64_t order() const;  // 0 for the rationals
  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;
};

// Returns (p, e) with q = p^e, or (0, 0) when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decomposition(std::uint64_t q);
bool is_prime(std::uint64_t n);

class RationalField {
 public:
  using Element = mpq_class;
  static constexpr bool is_finite = false;

  FieldSpec spec() const { return FieldSpec::rationals(); }
  std::uint32_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  // Total order used for deterministic sorting of roots.
  bool less(const Element& a, const Element& b) const { return a < b; }

  Element random(std::mt19937_64& rng, long bound = 9) const;
  std::string to_string(const Element& a) const { return a.get_str(); }
  Element parse(std::string_view text) const;

  bool operator==(const RationalField&) const { return true; }
};

class FiniteField {
 public:
  using Element = std::uint32_t;
  static constexpr bool is_finite = true;
  // Largest supported order; log/exp tables are sized by q.
  static constexpr std::uint64_t max_order = 1u << 20;

  // The field of order q with the canonical modulus: the first monic
  // irreducible polynomial of degree e over F_p in colexicographic order of
  // its lower coefficients.  Instances are cached, so equal orders compare equal.
  static FiniteField of_order(std::uint64_t q);
  static FiniteField from_spec(const FieldSpec& spec);

  FieldSpec spec() const { return FieldSpec::finite(t_->p, t_->e); }
  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t degree() const { return t_->e; }
  std::uint32_t order() const { return t_->q; }
  // Monic modulus, ascending coefficients, size e + 1.
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const {
    const long long p = t_->p;
    return static_cast<Element>(((v % p) + p) % p);
  }

  Element add(Element a, Element b) const {
    const Tables& t = *t_;
    if (t.prime) {
      const Element s = a + b;
      return s >= t.p ? s - t.p : s;
    }
    if (!t.add_tab.empty()) return t.add_tab[a * t.q + b];
    return t.add_digits(a, b);
  }
  Element neg(Element a) const { return t_->neg_tab[a]; }
  Element sub(Element a, Element b) const { return add(a, t_->neg_tab[b]); }
  Element mul(Element a, Element b) const {
    const Tables& t = *t_;
    if (!t.mul_tab.empty()) return t.mul_tab[a * t.q + b];
    if (t.prime) return static_cast<Element>(std::uint64_t{a} * b % t.p);
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = t.log_tab[a] + t.log_tab[b];
    if (s >= t.q - 1) s -= t.q - 1;
    return t.exp_tab[s];
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }
  bool less(Element a, Element b) const { return a < b; }

  // Coordinates over the prime field: element index = sum digits[i] * p^i.
  std::vector<std::uint32_t> digits(Element a) const;
  Element from_digits(std::span<const std::uint32_t> digits) const;
  Element pow(Element a, std::uint64_t n) const;

  Element random(std::mt19937_64& rng) const { return static_cast<Element>(rng() % t_->q); }
  std::string to_string(Element a) const;

  bool operator==(const FiniteField& other) const { return t_ == other.t_; }

  struct Tables {
    std::uint32_t p = 0, e = 0, q = 0;
    bool prime = false;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> add_tab, mul_tab;  // q*q when q is small
    std::vector<std::uint32_t> neg_tab, inv_tab;
    std::vector<std::uint32_t> log_tab, exp_tab;
    std::vector<std::uint32_t> powers_of_p;
    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;
  };
  // Raw tables for hot loops that bypass the value interface.
  const Tables& tables() const { return *t_; }

 private:
  explicit FiniteField(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

// Inclusion of a finite field into an extension of it (or the identity on
// the rationals).  The image of the generator is the first root of the small
// field's modulus found by scanning the large field.
template <class F>
class Embedding;

template <>
class Embedding<RationalField> {
 public:
  Embedding() = default;
  Embedding(const RationalField&, const RationalField&) {}
  const mpq_class& operator()(const mpq_class& a) const { return a; }
  std::uint32_t relative_degree() const { return 1; }
};

template <>
class Embedding<FiniteField> {
 public:
  Embedding(const FiniteField& from, const FiniteField& to);
  FiniteField::Element operator()(FiniteField::Element a) const { return image_[a]; }
  std::uint32_t relative_degree() const { return to_.degree() / from_.degree(); }
  const FiniteField& source() const { return from_; }
  const FiniteField& target() const { return to_; }

 private:
  FiniteField from_, to_;
  std::vector<FiniteField::Element> image_;
};

// Uniform random element helper for generic code.
inline mpq_class random_element(const RationalField& f, std::mt19937_64& rng) { return f.random(rng); }
inline std::uint32_t random_element(const FiniteField& f, std::mt19937_64& rng) { return f.random(rng); }

}  // namespace fixdet
