#include "fixdet/bn.hpp"

#include <string>

#include "fixdet/error.hpp"

namespace fixdet {

mpz_class binom2(const mpz_class& m) {
  if (m < 2) return 0;
  return m * (m - 1) / 2;
}

namespace {

mpz_class z(long long v) { return mpz_class(std::to_string(v)); }

void guard(long long k, long long r, long long s, long long t, long long delta) {
  require(k >= 0 && delta >= 0, ErrorCode::guard_violation, "k and delta must be nonnegative");
  require(k <= t, ErrorCode::guard_violation, "needs k <= t");
  require(s <= r, ErrorCode::guard_violation, "needs s <= r");
  require(2 * t <= r, ErrorCode::guard_violation, "needs 2t <= r");
}

}  // namespace

mpz_class rho(long long r, long long d, long long k, long long g) {
  const mpz_class R = z(r), D = z(d), K = z(k), G = z(g);
  return R * R * (G - 1) + 1 - K * (K - D + R * (G - 1));
}

mpz_class rho_omega(long long k, long long g) { return 3 * z(g) - 3 - binom2(z(k) + 1); }

mpz_class rho1(long long d, long long k, long long g, long long delta) {
  return rho(2, d, k, g) - z(g) + binom2(z(k) - z(delta));
}

mpz_class rho2(long long d, long long k, long long g) { return rho(2, d, k, g) - z(g) + 2 * binom2(z(k)); }

bool new_comps(long long k, long long g, long long delta, long long m) {
  return binom2(z(k) - z(delta)) > z(g) || (m >= 2 && 2 * binom2(z(k)) > z(g));
}

mpz_class codim_bound_single(long long k, long long r, long long s, long long t, long long delta) {
  guard(k, r, s, t, delta);
  return z(k) * (2 * z(r) - z(s) - z(t)) - binom2(z(k) - z(delta));
}

mpz_class codim_bound_double(long long k, long long r, long long s, long long t) {
  guard(k, r, s, t, 0);
  return z(k) * (2 * z(r) - z(s) - z(t)) - 2 * binom2(z(k));
}

}  // namespace fixdet
