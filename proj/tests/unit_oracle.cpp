#include "doctest.h"
#include "padic/oracle.hpp"
#include "util.hpp"

#include <boost/multiprecision/cpp_int.hpp>

using namespace padic;
using namespace padic::testutil;

namespace {

CurveSpec curve(const std::string& s, const RingSpec& ring) {
  return curve_derived(parse_poly(s, {"x", "y"}, ring), ring);
}

bool all_zero(const std::vector<Res>& v) {
  for (Res c : v)
    if (c) return false;
  return true;
}

// Random curve with P(0,0) = 0 and a unit y-coefficient.
CurveSpec random_curve(Rng& rng, const RingSpec& ring, int max_i, int max_j, int extra_terms) {
  for (;;) {
    std::vector<std::pair<std::vector<std::int32_t>, Res>> ts;
    Res u = 0;
    while (u % ring.p == 0) u = static_cast<Res>(rand_int(rng, 1, static_cast<int>(ring.modulus) - 1));
    ts.push_back({{0, 1}, u});
    for (int k = 0; k < extra_terms; ++k) {
      std::int32_t i = rand_int(rng, 0, max_i), j = rand_int(rng, 0, max_j);
      if (i == 0 && j == 0) continue;
      ts.push_back({{i, j}, static_cast<Res>(rand_int(rng, 0, static_cast<int>(ring.modulus) - 1))});
    }
    MultiPoly p = mp_from_terms(2, std::move(ts), ring);
    if (reduce_coeffs(p, ring.p).deg_var(1) < 1) continue;
    try {
      return curve_derived(p, ring);
    } catch (const InvalidCurve&) {
    }
  }
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("newton solver reproduces pinned prefixes") {
  RingSpec r8(2, 3);
  auto motzkin = series_solve(curve("x*y^2+(x+1)*y+x", r8), 7, r8);
  CHECK(motzkin.coeffs == std::vector<Res>{0, 7, 1, 6, 4, 7, 5, 5});
  CHECK(motzkin.method == "newton");

  RingSpec r512(2, 9);
  auto catalan = series_solve(curve("y^2-y+x", r512), 6, r512);
  CHECK(catalan.coeffs == std::vector<Res>{0, 1, 1, 2, 5, 14, 42});

  RingSpec r2(2, 1);
  auto geo = series_solve(curve("(x+1)*y+x", r2), 9, r2);
  CHECK(geo.coeffs == std::vector<Res>{0, 1, 1, 1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("newton residual vanishes and reductions commute") {
  Rng rng(101);
  for (auto ring : {RingSpec(2, 3), RingSpec(3, 2), RingSpec(5, 2)}) {
    for (int t = 0; t < 8; ++t) {
      CurveSpec c = random_curve(rng, ring, 3, 3, 6);
      auto sp = series_solve(c, 60, ring);
      CHECK(sp.coeffs.size() == 61);
      CHECK(all_zero(curve_residual(c, sp.coeffs, ring)));

      for (unsigned beta = 1; beta < ring.alpha; ++beta) {
        RingSpec low = ring.truncated(beta);
        CurveSpec cl = curve_derived(c.P, low);
        auto spl = series_solve(cl, 60, low);
        for (std::size_t n = 0; n <= 60; ++n)
          CHECK(spl.coeffs[n] == sp.coeffs[n] % low.modulus);
      }
    }
  }
}

TEST_CASE("diagonal expansion matches pinned values") {
  RingSpec r4(2, 2);
  auto spec = diagonal_derived(parse_poly("1", {"x", "y"}, r4),
                               parse_poly("1-x-y", {"x", "y"}, r4), r4);
  auto d = diagonal_expand(spec, 3, r4);
  CHECK(d.coeffs == std::vector<Res>{1, 2, 2, 0});  // central binomials mod 4

  auto one = diagonal_expand(spec, 0, r4);
  CHECK(one.coeffs == std::vector<Res>{1});

  SUBCASE("central binomials against exact big-integer arithmetic") {
    RingSpec r27(3, 3);
    auto spec27 = diagonal_derived(parse_poly("1", {"x", "y"}, r27),
                                   parse_poly("1-x-y", {"x", "y"}, r27), r27);
    auto d27 = diagonal_expand(spec27, 20, r27);
    namespace mp = boost::multiprecision;
    mp::cpp_int binom = 1;
    for (std::size_t n = 0; n <= 20; ++n) {
      if (n) binom = binom * 2 * n * (2 * n - 1) / (n * n);  // C(2n,n) recurrence
      CHECK(d27.coeffs[n] == static_cast<Res>(binom % 27));
    }
  }

  SUBCASE("three-variable diagonal gives central trinomials") {
    RingSpec r4b(2, 2);
    auto vars3 = default_vars(3);
    auto spec3 = diagonal_derived(parse_poly("1", vars3, r4b),
                                  parse_poly("1-x1-x2-x3", vars3, r4b), r4b);
    auto d3 = diagonal_expand(spec3, 12, r4b);
    namespace mp = boost::multiprecision;
    for (std::size_t n = 0; n <= 12; ++n) {
      mp::cpp_int v = 1;  // (3n)! / n!^3
      for (std::size_t k = 1; k <= 3 * n; ++k) v *= k;
      mp::cpp_int f = 1;
      for (std::size_t k = 1; k <= n; ++k) f *= k;
      v /= f * f * f;
      CHECK(d3.coeffs[n] == static_cast<Res>(v % 4));
    }
  }

  SUBCASE("unit denominator is required") {
    CHECK_THROWS_AS(diagonal_derived(parse_poly("1", {"x", "y"}, r4),
                                     parse_poly("x+y", {"x", "y"}, r4), r4),
                    InvalidDenominator);
    CHECK_THROWS_AS(diagonal_derived(parse_poly("1", {"x", "y"}, r4),
                                     parse_poly("2+x+y", {"x", "y"}, r4), r4),
                    InvalidDenominator);
  }
}

TEST_CASE("shear consistency ties the two oracles together") {
  Rng rng(102);
  for (auto ring : {RingSpec(2, 3), RingSpec(3, 2)}) {
    for (int t = 0; t < 6; ++t) {
      CurveSpec c = random_curve(rng, ring, 2, 2, 5);
      auto direct = series_solve(c, 40, ring);
      auto sheared = diagonal_expand(shear_diagonal(c), 40, ring);
      CHECK(direct.coeffs == sheared.coeffs);
    }
  }
  RingSpec r8(2, 3);
  CurveSpec m = curve("x*y^2+(x+1)*y+x", r8);
  CHECK(series_solve(m, 30, r8).coeffs == diagonal_expand(shear_diagonal(m), 30, r8).coeffs);
}

TEST_CASE("kernel prefix counting") {
  RingSpec r2(2, 1);
  SeriesPrefix constant{r2, std::vector<Res>(512, 1), "newton"};
  CHECK(kernel_prefixes(constant, 4, 16) == 1);

  auto geo = series_solve(curve("(x+1)*y+x", r2), 16 * 16 - 1, r2);
  CHECK(kernel_prefixes(geo, 4, 16) == 2);

  SUBCASE("monotone in e_max") {
    RingSpec r8(2, 3);
    auto sp = series_solve(curve("x*y^2+(x+1)*y+x", r8), (1 << 6) * 32 - 1, r8);
    std::size_t prev = 0;
    for (unsigned e = 0; e <= 6; ++e) {
      std::size_t k = kernel_prefixes(sp, e, 32);
      CHECK(k >= prev);
      prev = k;
    }
  }

  SUBCASE("insufficient prefix is rejected") {
    CHECK_THROWS_AS(kernel_prefixes(constant, 9, 16), PreconditionViolated);
  }
}

}  // TEST_SUITE
