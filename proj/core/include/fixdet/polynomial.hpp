#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fixdet/error.hpp"
#include "fixdet/field.hpp"

namespace fixdet {

// Dense univariate polynomial, ascending coefficients, no trailing zeros.
template <class F>
class Polynomial {
 public:
  using Element = typename F::Element;

  explicit Polynomial(F field) : field_(std::move(field)) {}
  Polynomial(F field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { normalize(); }

  static Polynomial constant(const F& f, Element v) { return Polynomial(f, {std::move(v)}); }
  static Polynomial x(const F& f) { return Polynomial(f, {f.zero(), f.one()}); }
  // x - a
  static Polynomial linear(const F& f, const Element& a) { return Polynomial(f, {f.neg(a), f.one()}); }

  const F& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Element lead() const { return c_.empty() ? field_.zero() : c_.back(); }

  Element operator()(const Element& x) const {
    Element acc = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Element> r(std::max(c_.size(), o.c_.size()), field_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(i), o.coeff(i));
    return Polynomial(field_, std::move(r));
  }
  Polynomial operator-() const {
    std::vector<Element> r(c_.size(), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = field_.neg(c_[i]);
    return Polynomial(field_, std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial(field_);
    std::vector<Element> r(c_.size() + o.c_.size() - 1, field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (field_.is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
    }
    return Polynomial(field_, std::move(r));
  }
  Polynomial scaled(const Element& s) const {
    std::vector<Element> r(c_.size(), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = field_.mul(c_[i], s);
    return Polynomial(field_, std::move(r));
  }
  Polynomial shifted(std::size_t k) const {  // times x^k
    if (is_zero()) return *this;
    std::vector<Element> r(k, field_.zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return Polynomial(field_, std::move(r));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  // Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    require(!d.is_zero(), ErrorCode::invalid_input, "polynomial division by zero");
    std::vector<Element> rem = c_;
    if (rem.size() < d.c_.size()) return {Polynomial(field_), *this};
    std::vector<Element> quo(rem.size() - d.c_.size() + 1, field_.zero());
    const Element inv_lead = field_.inv(d.lead());
    for (std::size_t i = quo.size(); i-- > 0;) {
      const Element c = field_.mul(rem[i + d.c_.size() - 1], inv_lead);
      quo[i] = c;
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] = field_.sub(rem[i + j], field_.mul(c, d.c_[j]));
    }
    rem.resize(d.c_.size() - 1);
    return {Polynomial(field_, std::move(quo)), Polynomial(field_, std::move(rem))};
  }
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(lead()));
  }
  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial(field_);
    std::vector<Element> r(c_.size() - 1, field_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<long long>(i)));
    return Polynomial(field_, std::move(r));
  }
  // Coefficient list reversed with respect to formal degree n >= degree().
  Polynomial reversed(std::size_t n) const {
    std::vector<Element> r(n + 1, field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
    return Polynomial(field_, std::move(r));
  }
  // p(x + a)
  Polynomial taylor_shift(const Element& a) const {
    std::vector<Element> r = c_;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] = field_.add(r[j - 1], field_.mul(a, r[j]));
    return Polynomial(field_, std::move(r));
  }

  bool operator==(const Polynomial& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!field_.equal(c_[i], o.c_[i])) return false;
    return true;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (field_.is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      const bool unit = field_.is_one(c_[i]);
      if (i == 0 || !unit) out += field_.to_string(c_[i]);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }
  F field_;
  std::vector<Element> c_;
};

template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class F, class G>
Polynomial<G> map_polynomial(const Polynomial<F>& p, const Embedding<F>& emb, const G& target) {
  std::vector<typename G::Element> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.push_back(emb(a));
  return Polynomial<G>(target, std::move(c));
}

}  // namespace fixdet
