#include "doctest.h"
#include "padic/poly.hpp"
#include "util.hpp"

using namespace padic;
using namespace padic::testutil;

namespace {

MultiPoly mp2(const std::string& s, const RingSpec& ring) {
  return parse_poly(s, {"x", "y"}, ring);
}
BiLaurent bi2(const std::string& s, const RingSpec& ring) {
  return to_bilaurent(mp2(s, ring));
}

// The running example denominator: x*y + (x+1) + x*y^-1.
BiLaurent motzkin_q(const RingSpec& ring) {
  return bi_from_terms({{1, 1, 1}, {1, 0, 1}, {0, 0, 1}, {1, -1, 1}}, ring);
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("parse builds canonical sparse polynomials") {
  RingSpec r8(2, 3);
  MultiPoly a = mp2("x*y^2+(x+1)*y+x", r8);
  CHECK(a.t.size() == 4);
  CHECK(a.coeff({1, 2}) == 1);
  CHECK(a.coeff({1, 1}) == 1);
  CHECK(a.coeff({0, 1}) == 1);
  CHECK(a.coeff({1, 0}) == 1);

  MultiPoly b = mp2("y+x", r8);
  CHECK(b.coeff({0, 1}) == 1);
  CHECK(b.coeff({1, 0}) == 1);
  CHECK(b.t.size() == 2);

  SUBCASE("coefficients reduce into the ring") {
    RingSpec r4(2, 2);
    CHECK(mp2("5*x", r4).coeff({1, 0}) == 1);
    CHECK(mp2("-x", r4).coeff({1, 0}) == 3);
    CHECK(mp2("x-x", r4).is_zero());
    CHECK(mp2("10", r4).coeff({0, 0}) == 2);
  }
}

TEST_CASE("parse rejects malformed input with a position") {
  RingSpec r4(2, 2);
  CHECK_THROWS_AS(mp2("x+*y", r4), ParseError);
  try {
    mp2("x+*y", r4);
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
  try {
    mp2("x+w", r4);
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(mp2("x+w", r4), UnknownVariable);
  CHECK_THROWS_AS(mp2("2x", r4), ParseError);        // no implicit multiplication
  CHECK_THROWS_AS(mp2("x^-2", r4), ParseError);      // polynomial carrier
  CHECK_THROWS_AS(mp2("", r4), ParseError);
  CHECK_THROWS_AS(mp2("(x+1", r4), ParseError);
  CHECK_THROWS_AS(mp2("x^y", r4), ParseError);
  CHECK_NOTHROW(parse_laurent("z^-2+z", "z", r4));
  CHECK_THROWS_AS(parse_laurent("(z+1)^-1", "z", r4), ParseError);
  CHECK(parse_laurent("-z^2-z+1", "z", r4).coeff(2) == 3);
  CHECK(parse_laurent("3*z^-1", "z", r4).coeff(-1) == 3);
}

TEST_CASE("unary minus and precedence") {
  RingSpec r9(3, 2);
  CHECK(mp2("-x*y", r9).coeff({1, 1}) == 8);      // (-x)*y
  CHECK(mp2("x-x*y", r9).coeff({1, 1}) == 8);
  CHECK(mp2("x^2*y", r9).coeff({2, 1}) == 1);     // ^ binds before *
  CHECK(mp2("(x+1)^2", r9) == mp2("x^2+2*x+1", r9));
  CHECK(mp2(" x + y ", r9) == mp2("x+y", r9));
}

TEST_CASE("cartier on bivariate values") {
  RingSpec r2(2, 1);
  BiLaurent s = bi2("x^2*y^2+x*y", r2);
  CHECK(cartier(s, 0, 0, 2) == bi2("x*y", r2));
  CHECK(cartier(bi2("x^3+x*y^2", r2), 1, 0, 2) == bi2("x+y", r2));
  CHECK(cartier(BiLaurent{}, 1, 1, 2).is_zero());

  SUBCASE("negative y-exponents use floored congruences") {
    RingSpec r4(2, 2);
    // x y^-1 has (i, j) = (1, -1) = (1, 1) mod 2.
    BiLaurent q = bi_from_terms({{1, -1, 3}}, r4);
    CHECK(cartier(q, 1, 1, 2) == bi_from_terms({{0, -1, 3}}, r4));
    CHECK(cartier(q, 1, 0, 2).is_zero());
  }

  SUBCASE("linearity") {
    Rng rng(77);
    RingSpec r9(3, 2);
    for (int t = 0; t < 50; ++t) {
      BiLaurent a = rand_bi(rng, r9, 6, -4, 6, 8), b = rand_bi(rng, r9, 6, -4, 6, 8);
      unsigned r = rand_int(rng, 0, 2), s = rand_int(rng, 0, 2);
      CHECK(cartier(add(a, b, r9), r, s, 3) ==
            add(cartier(a, r, s, 3), cartier(b, r, s, 3), r9));
    }
  }

  SUBCASE("digit decomposition reassembles the value") {
    Rng rng(78);
    for (auto ring : {RingSpec(2, 2), RingSpec(3, 2)}) {
      for (int t = 0; t < 30; ++t) {
        BiLaurent s = rand_bi(rng, ring, 5, -5, 5, 10);
        BiLaurent sum;
        for (unsigned r = 0; r < ring.p; ++r)
          for (unsigned c = 0; c < ring.p; ++c) {
            BiLaurent part = frobenius_sub(cartier(s, r, c, ring.p), ring.p);
            sum = add(sum, shift(part, static_cast<int>(r), static_cast<int>(c)), ring);
          }
        CHECK(sum == s);
      }
    }
  }
}

TEST_CASE("projections slice one variable") {
  RingSpec r8(2, 3);
  BiLaurent q = motzkin_q(r8);
  CHECK(project(q, 'x', 0) == uni_from_terms({{0, 1}}, r8));
  CHECK(project(q, 'x', 1) == uni_from_terms({{1, 1}, {0, 1}, {-1, 1}}, r8));
  CHECK(project(q, 'y', 0) == uni_from_terms({{1, 1}, {0, 1}}, r8));
  CHECK(project(q, 'y', 5).is_zero());
}

TEST_CASE("products and powers") {
  RingSpec r2(2, 1);
  CHECK(pow(bi2("x+1", r2), 2, r2) == bi2("x^2+1", r2));
  CHECK(mul(bi2("x+y", r2), BiLaurent{}, r2).is_zero());

  SUBCASE("frobenius defect of the running example is divisible by p") {
    RingSpec r8(2, 3);
    BiLaurent q = motzkin_q(r8);
    BiLaurent delta = sub(frobenius_sub(q, 2), pow(q, 2, r8), r8);
    CHECK(!delta.is_zero());
    CHECK(divisible_coeffs(delta, 2));
  }

  SUBCASE("monomial budget trips") {
    RingSpec r97(97, 1);
    BiLaurent a = pow(bi2("x+1", r97), 20, r97);   // 21 terms
    BiLaurent b = pow(bi2("y+1", r97), 20, r97);
    CHECK_THROWS_AS(mul(a, b, r97, 100), BudgetExceeded);
    CHECK(mul(a, b, r97, 441).size() == 441);
  }
}

TEST_CASE("lifting the exponent") {
  // A = B mod p forces A^(p^(a-1)) = B^(p^(a-1)) mod p^a.
  Rng rng(79);
  for (auto ring : {RingSpec(2, 3), RingSpec(3, 2)}) {
    std::uint64_t lift = upow(ring.p, ring.alpha - 1);
    for (int t = 0; t < 20; ++t) {
      BiLaurent a = rand_bi(rng, ring, 3, -2, 3, 5);
      BiLaurent noise = rand_bi(rng, ring, 3, -2, 3, 5);
      BiLaurent b = add(a, mul_scalar(noise, ring.p, ring), ring);
      CHECK(pow(a, lift, ring) == pow(b, lift, ring));
    }
  }
}

TEST_CASE("cartier absorbs perfect powers") {
  // Lambda_{r,s}(G * F^(p^a)) = Lambda_{r,s}(G) * F^(p^(a-1)) mod p^a.
  Rng rng(80);
  for (auto ring : {RingSpec(2, 2), RingSpec(3, 2)}) {
    std::uint64_t pa = upow(ring.p, ring.alpha);
    std::uint64_t pa1 = upow(ring.p, ring.alpha - 1);
    for (int t = 0; t < 12; ++t) {
      BiLaurent f = rand_bi(rng, ring, 1, -1, 1, 3);
      BiLaurent g = rand_bi(rng, ring, 4, -3, 4, 6);
      for (unsigned r = 0; r < ring.p; ++r)
        for (unsigned s = 0; s < ring.p; ++s) {
          BiLaurent lhs = cartier(mul(g, pow(f, pa, ring), ring), r, s, ring.p);
          BiLaurent rhs = mul(cartier(g, r, s, ring.p), pow(f, pa1, ring), ring);
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("module support is closed under the operations") {
  Rng rng(81);
  RingSpec r4(2, 2);
  for (int t = 0; t < 40; ++t) {
    BiLaurent a = rand_bi_module(rng, r4, 5, 5, 8), b = rand_bi_module(rng, r4, 5, 5, 8);
    CHECK(a.minkowski_ok());
    CHECK(add(a, b, r4).minkowski_ok());
    CHECK(mul(a, b, r4).minkowski_ok());
    CHECK(cartier(a, rand_int(rng, 0, 1), 0, 2).minkowski_ok());
  }
}

TEST_CASE("printing is canonical and parse-stable") {
  RingSpec r8(2, 3);
  CHECK(print(MultiPoly{}) == "0");
  CHECK(print(BiLaurent{}) == "0");
  CHECK(print(mp2("y+x", r8)) == "y+x");
  CHECK(print(mp2("x*y^2+(x+1)*y+x", r8)) == "y+x+x*y+x*y^2");
  CHECK(print(parse_laurent("-z^2-z+1", "z", r8)) == "1+7*z+7*z^2");

  Rng rng(82);
  for (auto ring : {RingSpec(2, 3), RingSpec(5, 1)}) {
    for (int t = 0; t < 30; ++t) {
      MultiPoly a = rand_mp(rng, ring, 2, 5, 7);
      CHECK(parse_poly(print(a), {"x", "y"}, ring) == a);
      MultiPoly b = rand_mp(rng, ring, 3, 4, 6);
      CHECK(parse_poly(print(b), default_vars(3), ring) == b);
      UniLaurent u = rand_uni(rng, ring, -4, 4, 6);
      CHECK(parse_laurent(print(u), "z", ring) == u);
    }
  }
}

TEST_CASE("exact division over the prime field") {
  RingSpec r2(2, 1);
  Rng rng(83);
  SUBCASE("univariate roundtrip") {
    for (auto p : {2ull, 3ull, 5ull}) {
      RingSpec fp(p, 1);
      for (int t = 0; t < 40; ++t) {
        UniLaurent a = rand_uni(rng, fp, -3, 5, 5), b = rand_uni(rng, fp, -2, 4, 4);
        if (b.is_zero()) continue;
        auto q = divide_exact_fp(mul(a, b, fp), b, p);
        REQUIRE(q.has_value());
        CHECK(reduce_coeffs(*q, p) == reduce_coeffs(a, p));
      }
    }
  }
  SUBCASE("bivariate roundtrip") {
    for (auto p : {2ull, 3ull}) {
      RingSpec fp(p, 1);
      for (int t = 0; t < 40; ++t) {
        BiLaurent a = rand_bi(rng, fp, 4, -3, 3, 6), b = rand_bi(rng, fp, 3, -2, 2, 5);
        if (b.is_zero()) continue;
        auto q = divide_exact_fp(mul(a, b, fp), b, p);
        REQUIRE(q.has_value());
        CHECK(reduce_coeffs(*q, p) == reduce_coeffs(a, p));
      }
    }
  }
  SUBCASE("non-multiples are refused") {
    CHECK(!divide_exact_fp(bi2("x^2+x+1", r2), bi2("x+1", r2), 2).has_value());
    CHECK(!divide_exact_fp(bi2("x^2*y+x+1", r2), bi2("x*y+1", r2), 2).has_value());
    CHECK(!divide_exact_fp(uni_from_terms({{2, 1}, {0, 1}}, RingSpec(3, 1)),
                           uni_from_terms({{1, 1}, {0, 1}}, RingSpec(3, 1)), 3)
               .has_value());
  }
}

TEST_CASE("curve validation derives degrees") {
  RingSpec r8(2, 3);
  CurveSpec motzkin = curve_derived(mp2("x*y^2+(x+1)*y+x", r8), r8);
  CHECK(motzkin.h == 1);
  CHECK(motzkin.d == 2);
  CHECK(motzkin.Py == motzkin_q(r8));
  CHECK(motzkin.hk == std::vector<int>{1, 1, 1});
  CHECK(motzkin.dk == std::vector<int>{2, 2, 2});
  CHECK_FALSE(motzkin.polynomial_trivial);

  RingSpec r4(2, 2);
  CurveSpec fib = curve_derived(mp2("(x+1)*y+x", r4), r4);
  CHECK(fib.h == 1);
  CHECK(fib.d == 1);

  CHECK_THROWS_AS(curve_derived(mp2("y^2+x", r4), r4), InvalidCurve);
  CHECK_THROWS_AS(curve_derived(mp2("y+x+1", r4), r4), InvalidCurve);  // P(0,0) != 0
  CHECK_THROWS_AS(curve_derived(mp2("2*y+x", r4), r4), InvalidCurve);  // dP/dy(0,0) even

  SUBCASE("degrees can grow with the exponent") {
    RingSpec r4b(2, 2);
    CurveSpec c = curve_derived(mp2("(x+1)*y+x+2*x^3", r4b), r4b);
    CHECK(c.h == 1);
    CHECK(c.hk == std::vector<int>{1, 3});
  }
}

TEST_CASE("y times the y-derivative") {
  RingSpec r8(2, 3);
  BiLaurent w = y_dy(bi2("x*y^2+(x+1)*y+x", r8), r8);
  CHECK(w == bi2("2*x*y^2+(x+1)*y", r8));
  CHECK(y_dy(bi2("x", r8), r8).is_zero());
}

}  // TEST_SUITE
