#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "padic/automaton.hpp"
#include "padic/oracle.hpp"

using namespace padic;

namespace {

CurveSpec curve_of(const std::string& text, const RingSpec& ring) {
  return curve_derived(parse_poly(text, {"x", "y"}, ring), ring);
}

DiagonalSpec diag_of(const std::string& num, const std::string& den, unsigned m,
                     const RingSpec& ring) {
  std::vector<std::string> vars = {"x", "y", "z", "w"};
  vars.resize(m);
  return diagonal_derived(parse_poly(num, vars, ring), parse_poly(den, vars, ring), ring);
}

bool zero_symbol_preserves_outputs(const Automaton& a) {
  auto p = static_cast<std::size_t>(a.ring.p);
  for (std::uint32_t s = 0; s < a.size(); ++s)
    if (a.outputs[a.next[s * p]] != a.outputs[s]) return false;
  return true;
}

}  // namespace

TEST_SUITE("automaton") {

TEST_CASE("pinned unminimized state counts") {
  CHECK(build_algebraic(curve_of("(x+1)*y+x", RingSpec(2, 2))).size() == 6);
  CHECK(build_algebraic(curve_of("(x+1)*y+x", RingSpec(2, 3))).size() == 10);
  CHECK(build_algebraic(curve_of("(4*x+1)*y+x", RingSpec(3, 2))).size() == 14);
  CHECK(build_algebraic(curve_of("(3*x^2+x+1)*y+x^2", RingSpec(2, 2))).size() == 18);
  CHECK(build_algebraic(curve_of("(x^3+x+1)*y+x^3", RingSpec(2, 2))).size() == 70);
  CHECK(build_algebraic(curve_of("(x+2)*y^2+(x+1)*y+x", RingSpec(2, 2))).size() == 18);
}

TEST_CASE("pinned Motzkin evaluations mod 8") {
  RingSpec ring(2, 3);
  Automaton a = build_algebraic(curve_of("x*y^2+(x+1)*y+x", ring));
  CHECK(eval(a, 0) == 0);
  CHECK(eval(a, 5) == 7);  // a(5) = -9
  const Res expect[] = {0, 7, 1, 6, 4, 7, 5, 5};
  for (std::uint64_t n = 0; n < 8; ++n) CHECK(eval(a, n) == expect[n]);
}

TEST_CASE("every built automaton matches the series oracle") {
  struct Cfg {
    RingSpec ring;
    const char* curve;
  };
  const Cfg cfgs[] = {
      {RingSpec(2, 2), "(x+1)*y+x"},
      {RingSpec(2, 3), "x*y^2+(x+1)*y+x"},
      {RingSpec(2, 2), "(x^3+x+1)*y+x^3"},
      {RingSpec(3, 2), "(4*x+1)*y+x"},
      {RingSpec(3, 2), "(x+2)*y^2+(x+1)*y+x"},
      {RingSpec(5, 1), "(x+1)*y^2+(x+4)*y+x^2"},
  };
  for (const auto& cfg : cfgs) {
    CurveSpec c = curve_of(cfg.curve, cfg.ring);
    Automaton a = build_algebraic(c);
    SeriesPrefix f = series_solve(c, 300, cfg.ring);
    for (std::uint64_t n = 0; n < 300; ++n) CHECK(eval(a, n) == f.coeffs[n]);
    CHECK(zero_symbol_preserves_outputs(a));
  }
}

TEST_CASE("appending most-significant zeros never changes the evaluation") {
  RingSpec ring(2, 3);
  Automaton a = build_algebraic(curve_of("x*y^2+(x+1)*y+x", ring));
  for (std::uint64_t n : {0ull, 1ull, 5ull, 100ull}) {
    std::uint32_t q = a.initial;
    for (std::uint64_t v = n; v; v /= 2) q = a.next[q * 2 + v % 2];
    Res base = a.outputs[q];
    for (int extra = 0; extra < 4; ++extra) {
      q = a.next[q * 2];
      CHECK(a.outputs[q] == base);
    }
    CHECK(base == eval(a, n));
  }
}

TEST_CASE("minimization reaches the kernel size and is idempotent") {
  RingSpec r21(2, 1);
  CurveSpec c = curve_of("(x+1)*y+x", r21);
  Automaton a = build_algebraic(c);
  Automaton m = minimize(a);
  CHECK(m.size() == 2);  // sequence 0,1,1,1,...
  CHECK(m.size() <= a.size());
  CHECK(minimize(m).size() == m.size());
  SeriesPrefix f = series_solve(c, 1024, r21);
  CHECK(m.size() == kernel_prefixes(f, 5, 32));
  for (std::uint64_t n = 0; n < 200; ++n) CHECK(eval(m, n) == f.coeffs[n]);

  RingSpec r23(2, 3);
  CurveSpec cm = curve_of("x*y^2+(x+1)*y+x", r23);
  Automaton am = build_algebraic(cm);
  Automaton mm = minimize(am);
  CHECK(mm.size() <= am.size());
  CHECK(minimize(mm).size() == mm.size());
  SeriesPrefix fm = series_solve(cm, 4096, r23);
  CHECK(mm.size() == kernel_prefixes(fm, 6, 64));
  for (std::uint64_t n = 0; n < 500; ++n) CHECK(eval(mm, n) == fm.coeffs[n]);
  CHECK(zero_symbol_preserves_outputs(mm));
}

TEST_CASE("both minimizers produce the identical automaton") {
  for (const char* text : {"(x+1)*y+x", "x*y^2+(x+1)*y+x", "(3*x^2+x+1)*y+x^2"}) {
    Automaton a = build_algebraic(curve_of(text, RingSpec(2, 2)));
    CHECK(minimize(a) == minimize_hopcroft(a));
  }
  Automaton a3 = build_algebraic(curve_of("(x+2)*y^2+(x+1)*y+x", RingSpec(3, 2)));
  CHECK(minimize(a3) == minimize_hopcroft(a3));
}

TEST_CASE("two-variable diagonals agree with the lattice oracle") {
  RingSpec ring(2, 2);
  DiagonalSpec spec = diag_of("1", "1+3*x+3*y", 2, ring);  // 1/(1-x-y): C(2n,n)
  Automaton a = build_diagonal(spec);
  SeriesPrefix d = diagonal_expand(spec, 200, ring);
  for (std::uint64_t n = 0; n <= 200; ++n) CHECK(eval(a, n) == d.coeffs[n]);
  CHECK(zero_symbol_preserves_outputs(a));

  RingSpec r1(2, 1);
  Automaton m1 = minimize(build_diagonal(diag_of("1", "1+x+y", 2, r1)));
  CHECK(m1.size() == 2);  // C(2n,n) mod 2 = 1,0,0,0,...
  CHECK(eval(m1, 0) == 1);
  for (std::uint64_t n = 1; n < 64; ++n) CHECK(eval(m1, n) == 0);
}

TEST_CASE("the sheared curve diagonal generates the algebraic sequence") {
  struct Cfg {
    RingSpec ring;
    const char* curve;
  };
  const Cfg cfgs[] = {
      {RingSpec(2, 2), "x*y^2+(x+1)*y+x"},
      {RingSpec(2, 3), "(x+1)*y+x"},
      {RingSpec(3, 2), "(x+2)*y^2+(x+1)*y+x"},
  };
  for (const auto& cfg : cfgs) {
    CurveSpec c = curve_of(cfg.curve, cfg.ring);
    Automaton alg = build_algebraic(c);
    Automaton dia = build_diagonal(shear_diagonal(c));
    for (std::uint64_t n = 0; n < 200; ++n) CHECK(eval(alg, n) == eval(dia, n));
    CHECK(minimize(alg).size() == minimize(dia).size());
  }
}

TEST_CASE("three-variable diagonals keep polynomial states") {
  RingSpec ring(2, 2);
  DiagonalSpec spec = diag_of("1", "1+3*x+3*y+3*z", 3, ring);  // (3n)!/n!^3 mod 4
  Automaton a = build_diagonal(spec);
  SeriesPrefix d = diagonal_expand(spec, 40, ring);
  for (std::uint64_t n = 0; n <= 40; ++n) CHECK(eval(a, n) == d.coeffs[n]);
  CHECK(zero_symbol_preserves_outputs(a));
  CHECK(!a.keys.empty());

  RingSpec r31(3, 1);
  DiagonalSpec s3 = diag_of("1+z", "1+2*x+2*y+2*z+x*y*z", 3, r31);
  Automaton a3 = build_diagonal(s3);
  SeriesPrefix d3 = diagonal_expand(s3, 40, r31);
  for (std::uint64_t n = 0; n <= 40; ++n) CHECK(eval(a3, n) == d3.coeffs[n]);
}

TEST_CASE("denominators without a unit constant term are rejected") {
  RingSpec ring(2, 2);
  CHECK_THROWS_AS(diag_of("1", "x+y", 2, ring), InvalidDenominator);
  CHECK_THROWS_AS(diag_of("1", "2+x+y+z", 3, ring), InvalidDenominator);
  DiagonalSpec forged = diag_of("1", "1+x+y", 2, ring);
  forged.den = parse_poly("x+y", {"x", "y"}, ring);
  CHECK_THROWS_AS(build_diagonal(forged), InvalidDenominator);
}

TEST_CASE("state caps abort oversized constructions") {
  BuildOptions opts;
  opts.state_cap = 3;
  CHECK_THROWS_AS(build_algebraic(curve_of("(x+1)*y+x", RingSpec(2, 2)), opts),
                  StateBudgetExceeded);
}

TEST_CASE("JSON serialization round-trips and is deterministic") {
  RingSpec ring(2, 2);
  Automaton a = build_algebraic(curve_of("(x+1)*y+x", ring));
  std::string j = serialize(a, "json");
  CHECK(deserialize(j) == a);
  CHECK(serialize(build_algebraic(curve_of("(x+1)*y+x", ring)), "json") == j);

  BuildOptions par;
  par.workers = 3;
  CHECK(serialize(build_algebraic(curve_of("(x+1)*y+x", ring), par), "json") == j);

  auto doc = nlohmann::json::parse(j);
  CHECK(doc["version"] == 1);
  CHECK(doc["p"] == "2");
  CHECK(doc["alpha"] == "2");
  CHECK(doc["initial"] == 0);
  CHECK(doc["states"].size() == 6);
  CHECK(doc["states"][0]["next"].size() == 2);
  CHECK(doc["states"][0]["output"].is_string());

  BuildOptions bare;
  bare.keep_keys = false;
  Automaton b = build_algebraic(curve_of("(x+1)*y+x", ring), bare);
  CHECK(b.keys.empty());
  CHECK(deserialize(serialize(b, "json")) == b);
}

TEST_CASE("malformed serializations are rejected") {
  RingSpec ring(2, 2);
  Automaton a = build_algebraic(curve_of("(x+1)*y+x", ring));
  CHECK_THROWS_AS(serialize(a, "yaml"), UnsupportedFormat);
  CHECK_THROWS_AS(deserialize("not json"), UnsupportedFormat);
  CHECK_THROWS_AS(deserialize("{\"version\": 2}"), UnsupportedFormat);
  std::string j = serialize(a, "json");
  auto doc = nlohmann::json::parse(j);
  doc["states"][2]["next"][0] = 99;
  CHECK_THROWS_AS(deserialize(doc.dump()), UnsupportedFormat);
}

TEST_CASE("DOT export lists one node per state and p edges each") {
  Automaton one;
  one.ring = RingSpec(3, 1);
  one.source = "handmade";
  one.outputs = {2};
  one.next = {0, 0, 0};
  std::string dot = serialize(one, "dot");
  CHECK(dot.find("digraph") != std::string::npos);
  std::size_t loops = 0;
  for (std::size_t at = dot.find("q0 -> q0"); at != std::string::npos;
       at = dot.find("q0 -> q0", at + 1))
    ++loops;
  CHECK(loops == 3);

  Automaton a = build_algebraic(curve_of("(x+1)*y+x", RingSpec(2, 2)));
  std::string d = serialize(a, "dot");
  std::size_t edges = 0;
  for (std::size_t at = d.find("->"); at != std::string::npos; at = d.find("->", at + 1))
    ++edges;
  CHECK(edges == a.size() * 2);
}

TEST_CASE("state keys are canonical digit tuples") {
  RingSpec ring(2, 2);
  CurveSpec c = curve_of("(x+1)*y+x", ring);
  Automaton a = build_algebraic(c);
  REQUIRE(a.keys.size() == a.size());
  CHECK(a.keys[0] == digit_key(initial_digits(c, ring)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = i + 1; k < a.size(); ++k) CHECK(a.keys[i] != a.keys[k]);
}

}  // TEST_SUITE
