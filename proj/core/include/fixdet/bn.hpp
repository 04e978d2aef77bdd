#pragma once

// Brill-Noether numerology for rank-2 bundles with fixed determinant.
// Binomials C(m, 2) are clamped to 0 for m < 2.

#include <gmpxx.h>

namespace fixdet {

mpz_class binom2(const mpz_class& m);

// r^2 (g - 1) + 1 - k (k - d + r (g - 1))
mpz_class rho(long long r, long long d, long long k, long long g);
// 3g - 3 - C(k + 1, 2)
mpz_class rho_omega(long long k, long long g);
// rho(2, d, k, g) - g + C(k - delta, 2)
mpz_class rho1(long long d, long long k, long long g, long long delta);
// rho(2, d, k, g) - g + 2 C(k, 2)
mpz_class rho2(long long d, long long k, long long g);
// C(k - delta, 2) > g, or m >= 2 and 2 C(k, 2) > g
bool new_comps(long long k, long long g, long long delta, long long m);

// k (2r - s - t) - C(k - delta, 2); GUARD_VIOLATION unless k <= t, s <= r, 2t <= r
// (and k, delta >= 0).
mpz_class codim_bound_single(long long k, long long r, long long s, long long t, long long delta);
// k (2r - s - t) - 2 C(k, 2), same guards.
mpz_class codim_bound_double(long long k, long long r, long long s, long long t);

}  // namespace fixdet
