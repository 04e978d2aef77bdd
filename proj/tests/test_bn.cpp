#include "doctest.h"

#include "fixdet/bn.hpp"
#include "fixdet/error.hpp"

using namespace fixdet;

TEST_CASE("rho examples") {
  CHECK(rho(1, 2, 1, 2) == 2);
  CHECK(rho(2, 4, 2, 3) == 5);
  for (long g = 0; g <= 30; ++g) {
    CHECK(rho(2, g - 2, 2, g) == 2 * g - 7);
    CHECK(rho(2, g - 2, 2, g) - 1 == 2 * g - 8);
  }
}

TEST_CASE("rho_omega") {
  CHECK(rho_omega(2, 5) == 9);
  CHECK(rho_omega(0, 7) == 18);
  CHECK(rho_omega(3, 7) == 12);
  CHECK(rho(2, 12, 3, 7) - 7 + 3 == 12);
  for (long k = 1; k <= 20; ++k)
    for (long g = 1; g <= 20; ++g) CHECK(rho_omega(k, g) == rho(2, 2 * g - 2, k, g) - g + binom2(k));
}

TEST_CASE("rho1 and rho2") {
  for (long k = 0; k <= 8; ++k)
    for (long g = 1; g <= 8; ++g) {
      CHECK(rho1(2 * g - 2, k, g, 0) == rho_omega(k, g));
      for (long delta = k > 0 ? k - 1 : 0; delta <= k + 2; ++delta) CHECK(rho1(5, k, g, delta) == rho(2, 5, k, g) - g);
      CHECK(rho2(3, k, g) - rho1(3, k, g, 0) == binom2(k));
      for (long delta = 0; delta <= 4; ++delta) {
        CHECK(rho1(1, k, g, delta) >= rho(2, 1, k, g) - g);
        CHECK((rho1(1, k, g, delta) == rho(2, 1, k, g) - g) == (k - delta <= 1));
      }
    }
  CHECK(binom2(-3) == 0);
  CHECK(binom2(1) == 0);
  CHECK(binom2(5) == 10);
}

TEST_CASE("new components predicate") {
  CHECK(new_comps(6, 10, 0, 1));
  CHECK_FALSE(new_comps(3, 10, 0, 2));
  CHECK(new_comps(5, 10, 0, 2));  // 2 * 10 > 10
  for (long k = 0; k <= 10; ++k) CHECK_FALSE(new_comps(k, 0, k, 1));
}

TEST_CASE("codimension bounds") {
  CHECK(codim_bound_single(0, 4, 2, 2, 0) == 0);
  // Instantiation from the residue construction: r = 4 deg D + 2 delta,
  // s = 2 deg D + 2 delta, t = d + 2 deg D + 2 - 2g.
  for (long degd = 3; degd <= 6; ++degd)
    for (long delta = 0; delta <= 2; ++delta)
      for (long g = 0; g <= 2; ++g) {
        const long d = 2 * g - 2 + delta, r = 4 * degd + 2 * delta, s = 2 * degd + 2 * delta,
                        t = d + 2 * degd + 2 - 2 * g;
        for (long k = 1; k <= t; ++k)
          CHECK(codim_bound_single(k, r, s, t, delta) ==
                k * (4 * degd + 2 * delta - d - 2 + 2 * g) - binom2(k - delta));
      }
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_input;
  };
  CHECK(code([] { codim_bound_single(3, 4, 2, 2, 0); }) == ErrorCode::guard_violation);
  CHECK(code([] { codim_bound_single(1, 4, 5, 2, 0); }) == ErrorCode::guard_violation);
  CHECK(code([] { codim_bound_double(1, 4, 2, 3); }) == ErrorCode::guard_violation);
}

TEST_CASE("codimension bound is positive under the guards") {
  for (long r = 1; r <= 12; ++r)
    for (long s = 0; s <= r; ++s)
      for (long t = 0; 2 * t <= r; ++t)
        for (long k = 1; k <= t; ++k)
          for (long delta = 0; 2 * delta <= s; ++delta) CHECK(codim_bound_single(k, r, s, t, delta) >= 1);
}
