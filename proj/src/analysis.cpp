#include "padic/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "padic/budget.hpp"
#include "padic/errors.hpp"
#include "padic/modarith.hpp"

namespace padic {

namespace {

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a && b > std::numeric_limits<std::uint64_t>::max() / a) throw BudgetExceeded(what);
  return a * b;
}

std::uint64_t upow_checked(std::uint64_t p, unsigned e, const char* what) {
  std::uint64_t r = 1;
  while (e--) r = mul_checked(r, p, what);
  return r;
}

void guard_expansion(std::uint64_t e) {
  std::size_t cap = monomial_budget();
  if (cap && e > cap) throw BudgetExceeded("power expansion exponent exceeds monomial budget");
}

}  // namespace

// ---------------------------------------------------------------------------
// Orbit of a digit tuple under the symbol-0 transition.

OrbitRecord orbit_zero(const DigitTuple& start, const ZTable& zt, std::size_t cap) {
  if (!cap) cap = orbit_budget();
  std::unordered_map<std::string, std::size_t> seen;
  DigitTuple cur = start;
  for (std::size_t idx = 0;; ++idx) {
    if (cap && idx >= cap) throw OrbitBudgetExceeded(cap);
    auto [it, fresh] = seen.try_emplace(digit_key(cur), idx);
    if (!fresh) return {it->second, idx - it->second};
    cur = digit_step(cur, 0, zt);
  }
}

// ---------------------------------------------------------------------------
// Dense arithmetic in F_p[z] for the factorization routines. Coefficient
// index = degree; no trailing zeros; the empty vector is the zero polynomial.

namespace {

using Fx = std::vector<Res>;

void fx_trim(Fx& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fx_deg(const Fx& a) { return static_cast<int>(a.size()) - 1; }

bool fx_is_one(const Fx& a) { return a.size() == 1 && a[0] == 1; }

Fx fx_add(const Fx& a, const Fx& b, std::uint64_t p) {
  Fx c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p;
  fx_trim(c);
  return c;
}

Fx fx_sub(const Fx& a, const Fx& b, std::uint64_t p) {
  Fx c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + p - b[i]) % p;
  fx_trim(c);
  return c;
}

Fx fx_mul(const Fx& a, const Fx& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fx c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<Res>((c[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p);
  }
  fx_trim(c);
  return c;
}

Res fx_inv_scalar(Res a, std::uint64_t p) { return inv(a % p, RingSpec(p, 1)); }

Fx fx_scale(Fx a, Res s, std::uint64_t p) {
  for (auto& c : a) c = static_cast<Res>((static_cast<unsigned __int128>(c) * s) % p);
  fx_trim(a);
  return a;
}

Fx fx_monic(const Fx& a, std::uint64_t p) {
  if (a.empty()) return a;
  return fx_scale(a, fx_inv_scalar(a.back(), p), p);
}

// Quotient and remainder; b must be nonzero.
std::pair<Fx, Fx> fx_divmod(Fx a, const Fx& b, std::uint64_t p) {
  require(!b.empty(), "division by the zero polynomial");
  if (a.size() < b.size()) {
    fx_trim(a);
    return {{}, std::move(a)};
  }
  Res li = fx_inv_scalar(b.back(), p);
  Fx q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- > b.size() - 1;) {
    if (!a[i]) continue;
    Res f = static_cast<Res>((static_cast<unsigned __int128>(a[i]) * li) % p);
    std::size_t off = i - (b.size() - 1);
    q[off] = f;
    for (std::size_t j = 0; j < b.size(); ++j) {
      Res sub = static_cast<Res>(static_cast<unsigned __int128>(f) * b[j] % p);
      a[off + j] = (a[off + j] + p - sub) % p;
    }
  }
  fx_trim(a);
  fx_trim(q);
  return {std::move(q), std::move(a)};
}

Fx fx_mod(const Fx& a, const Fx& b, std::uint64_t p) { return fx_divmod(Fx(a), b, p).second; }

Fx fx_div_exact(const Fx& a, const Fx& b, std::uint64_t p) {
  auto [q, r] = fx_divmod(Fx(a), b, p);
  require(r.empty(), "inexact polynomial division");
  return q;
}

Fx fx_gcd(Fx a, Fx b, std::uint64_t p) {
  while (!b.empty()) {
    Fx r = fx_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fx_monic(a, p);
}

Fx fx_powmod(Fx base, std::uint64_t e, const Fx& f, std::uint64_t p) {
  Fx r{1};
  base = fx_mod(base, f, p);
  while (e) {
    if (e & 1) r = fx_mod(fx_mul(r, base, p), f, p);
    e >>= 1;
    if (e) base = fx_mod(fx_mul(base, base, p), f, p);
  }
  return r;
}

Fx fx_deriv(const Fx& a, std::uint64_t p) {
  Fx d;
  for (std::size_t i = 1; i < a.size(); ++i)
    d.push_back(static_cast<Res>((static_cast<unsigned __int128>(a[i]) * (i % p)) % p));
  fx_trim(d);
  return d;
}

// p-th root of a polynomial in z^p: Frobenius fixes F_p, so just reindex.
Fx fx_pth_root(const Fx& a, std::uint64_t p) {
  Fx r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
  fx_trim(r);
  return r;
}

// Monic squarefree parts with multiplicities (char-p complete algorithm:
// the derivative-zero residue is a p-th power and recurses with mult * p).
void fx_squarefree(const Fx& f, unsigned mult, std::uint64_t p,
                   std::vector<std::pair<Fx, unsigned>>& out) {
  if (fx_deg(f) <= 0) return;
  Fx c = fx_gcd(f, fx_deriv(f, p), p);
  Fx w = fx_div_exact(f, c, p);
  unsigned i = 1;
  while (!fx_is_one(w)) {
    Fx y = fx_gcd(w, c, p);
    Fx z = fx_div_exact(w, y, p);
    if (fx_deg(z) > 0) out.emplace_back(fx_monic(z, p), mult * i);
    w = std::move(y);
    c = fx_div_exact(c, w, p);
    ++i;
  }
  if (!fx_is_one(c)) fx_squarefree(fx_pth_root(c, p), mult * p, p, out);
}

// Splits a squarefree product of degree-d irreducibles into its factors.
void fx_equal_degree(const Fx& f, unsigned d, std::uint64_t p, std::mt19937_64& rng,
                     std::vector<Fx>& out) {
  unsigned n = static_cast<unsigned>(fx_deg(f));
  if (n == d) {
    out.push_back(fx_monic(f, p));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Fx a(n, 0);
    for (auto& c : a) c = coeff(rng);
    fx_trim(a);
    if (fx_deg(a) < 1) continue;
    Fx b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2.
      b = a;
      Fx cur = a;
      for (unsigned i = 1; i < d; ++i) {
        cur = fx_mod(fx_mul(cur, cur, p), f, p);
        b = fx_add(b, cur, p);
      }
    } else {
      std::uint64_t e = (upow_checked(p, d, "equal-degree split exponent") - 1) / 2;
      b = fx_sub(fx_powmod(a, e, f, p), Fx{1}, p);
    }
    Fx g = fx_gcd(b, f, p);
    if (fx_deg(g) > 0 && fx_deg(g) < fx_deg(f)) {
      fx_equal_degree(g, d, p, rng, out);
      fx_equal_degree(fx_div_exact(f, g, p), d, p, rng, out);
      return;
    }
  }
  die("equal-degree split did not converge");
}

constexpr std::uint64_t kEqualDegreeSeed = 0x9e3779b97f4a7c15ull;

}  // namespace

FpFactorization factor_fp(const UniLaurent& r, std::uint64_t p) {
  require(p >= 2 && is_prime_u64(p), "factorization needs a prime modulus");
  UniLaurent rp = reduce_coeffs(r, p);
  if (rp.is_zero()) throw ZeroPolynomial();
  FpFactorization out;
  out.seed = kEqualDegreeSeed;
  out.e0 = rp.mindeg();
  UniLaurent body = shift(rp, -out.e0);
  Fx f(static_cast<std::size_t>(body.deg()) + 1, 0);
  for (const auto& tm : body.t) f[static_cast<std::size_t>(tm.e)] = tm.c;
  out.unit = f.back();
  f = fx_monic(f, p);

  std::vector<std::pair<Fx, unsigned>> sqf;
  fx_squarefree(f, 1, p, sqf);
  std::mt19937_64 rng(kEqualDegreeSeed);
  RingSpec fp(p, 1);
  std::vector<std::pair<Fx, unsigned>> raw;
  for (const auto& [part, mult] : sqf) {
    // Distinct-degree split of the squarefree part, then equal-degree split.
    Fx g = part;
    Fx zp{0, 1};
    Fx h = fx_mod(zp, g, p);
    std::vector<std::pair<Fx, unsigned>> stages;
    for (unsigned dd = 1; 2 * dd <= static_cast<unsigned>(fx_deg(g)); ++dd) {
      h = fx_powmod(h, p, g, p);
      Fx sep = fx_gcd(fx_sub(h, zp, p), g, p);
      if (fx_deg(sep) > 0) {
        stages.emplace_back(sep, dd);
        g = fx_div_exact(g, sep, p);
        h = fx_mod(h, g, p);
      }
      if (fx_deg(g) == 0) break;
    }
    if (fx_deg(g) > 0) stages.emplace_back(g, static_cast<unsigned>(fx_deg(g)));
    for (const auto& [prod, dd] : stages) {
      std::vector<Fx> irr;
      fx_equal_degree(prod, dd, p, rng, irr);
      for (auto& fac : irr) raw.emplace_back(std::move(fac), mult);
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });

  Fx check{out.unit};
  for (const auto& [fac, mult] : raw) {
    for (unsigned i = 0; i < mult; ++i) check = fx_mul(check, fac, p);
    std::vector<UniTerm> terms;
    for (std::size_t i = 0; i < fac.size(); ++i)
      if (fac[i]) terms.push_back({static_cast<std::int32_t>(i), fac[i]});
    out.factors.emplace_back(uni_from_terms(std::move(terms), fp), mult);
  }
  Fx want(static_cast<std::size_t>(body.deg()) + 1, 0);
  for (const auto& tm : body.t) want[static_cast<std::size_t>(tm.e)] = tm.c;
  fx_trim(want);
  require(check == want, "factorization product mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Period of the coefficient sequence of 1/T.

namespace {

// Coefficients of 1/t to the requested length; t must have a unit constant
// term and no negative exponents.
std::vector<Res> inverse_series(const UniLaurent& t, const RingSpec& ring, std::size_t len) {
  int degt = t.deg();
  require(degt >= 0 && t.mindeg() == 0, "series inverse needs a unit constant term");
  std::vector<Res> tc(static_cast<std::size_t>(degt) + 1, 0);
  for (const auto& tm : t.t) tc[static_cast<std::size_t>(tm.e)] = tm.c % ring.modulus;
  Res c0i = inv(tc[0], ring);
  std::vector<Res> b(len, 0);
  if (!len) return b;
  b[0] = c0i;
  for (std::size_t n = 1; n < len; ++n) {
    Res acc = 0;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(degt) && k <= n; ++k)
      acc = ring.add(acc, ring.mul(tc[k], b[n - k]));
    b[n] = ring.mul(ring.neg(acc), c0i);
  }
  return b;
}

// Minimal period within [1, bound] of the eventually periodic tail, plus the
// first index from which that period holds.
std::pair<std::uint64_t, std::size_t> detect_period(const std::vector<Res>& b,
                                                    std::uint64_t bound) {
  std::size_t n = b.size();
  std::size_t anchor = n / 2;
  for (std::uint64_t per = 1; per <= bound && per < n; ++per) {
    bool ok = true;
    for (std::size_t i = anchor; i + per < n; ++i)
      if (b[i] != b[i + per]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::size_t s = anchor;
    while (s > 0 && b[s - 1] == b[s - 1 + per]) --s;
    return {per, s};
  }
  throw HypothesisViolated("no period found within the theoretical bound");
}

void guard_window(std::size_t w) {
  std::size_t cap = orbit_budget();
  if (cap && w > cap) throw BudgetExceeded("period detection window exceeds orbit budget");
}

}  // namespace

PeriodReport period_rational(const UniLaurent& r, const RingSpec& ring) {
  UniLaurent rr = reduce_coeffs(r, ring.modulus);
  UniLaurent rp = reduce_coeffs(rr, ring.p);
  if (rp.is_zero()) throw HypothesisViolated("denominator vanishes mod p");
  int e0 = rp.mindeg();
  if (e0 < -1 || e0 > 0) throw HypothesisViolated("z-order of the denominator mod p must be 0 or -1");
  if (rr.mindeg() < e0)
    throw HypothesisViolated("lowest coefficient of the denominator must be a unit mod p");

  std::uint64_t half = upow(ring.p, ring.alpha - 1);
  guard_expansion(half);
  UniLaurent t = pow(rr, half, ring);
  t = shift(t, -t.mindeg());
  std::size_t degt = static_cast<std::size_t>(std::max(t.deg(), 0));

  PeriodReport rep;
  rep.e0 = e0;
  FpFactorization fac = factor_fp(t, ring.p);
  std::uint64_t maxmult = 1, lcmord = 1;
  for (const auto& [f, mult] : fac.factors) {
    maxmult = std::max(maxmult, static_cast<std::uint64_t>(mult));
    std::uint64_t q = upow_checked(ring.p, static_cast<unsigned>(f.deg()), "period bound");
    lcmord = mul_checked(lcmord / gcd_u64(lcmord, q - 1), q - 1, "period bound");
  }
  rep.bound_mod_p =
      mul_checked(upow_checked(ring.p, static_cast<unsigned>(ceil_log(maxmult, ring.p)),
                               "period bound"),
                  lcmord, "period bound");

  std::size_t w1 = 4 * rep.bound_mod_p + degt + 16;
  guard_window(w1);
  auto bp = inverse_series(t, ring.truncated(1), w1);
  auto [m, s1] = detect_period(bp, rep.bound_mod_p);
  (void)s1;
  require(rep.bound_mod_p % m == 0, "mod-p period must divide its bound");
  rep.empirical_mod_p = m;
  rep.bound = mul_checked(half, m, "period bound");
  rep.bound_weak = mul_checked(mul_checked(half, half, "period bound"), m, "period bound");

  std::size_t w2 = 4 * rep.bound_weak + degt + 16;
  guard_window(w2);
  auto ba = inverse_series(t, ring, w2);
  auto [ma, s2] = detect_period(ba, rep.bound_weak);
  require(rep.bound % ma == 0, "full period must divide its bound");
  rep.empirical = ma;

  unsigned zeros = 0;
  for (std::size_t i = 0; i < ma; ++i) {
    if (ba[s2 + ma - 1 - i] != 0) break;
    ++zeros;
  }
  rep.trailing_zeros = zeros;
  return rep;
}

// ---------------------------------------------------------------------------
// Univariate section orbits.

UniLaurent univariate_step(const UniLaurent& s, const UniLaurent& r, const RingSpec& ring) {
  std::uint64_t e = upow(ring.p, ring.alpha) - upow(ring.p, ring.alpha - 1);
  guard_expansion(e);
  UniLaurent rpow = pow(reduce_coeffs(r, ring.modulus), e, ring);
  return cartier(mul(reduce_coeffs(s, ring.modulus), rpow, ring), 0, ring.p);
}

UnivariateOrbit univariate_orbit(const UniLaurent& s, const UniLaurent& r, const RingSpec& ring,
                                 std::size_t cap) {
  UniLaurent rr = reduce_coeffs(r, ring.modulus);
  UniLaurent rp = reduce_coeffs(rr, ring.p);
  if (rp.is_zero()) throw PreconditionViolated("denominator vanishes mod p");
  std::uint64_t half = upow(ring.p, ring.alpha - 1);
  UniLaurent cur = reduce_coeffs(s, ring.modulus);
  if (!cur.is_zero()) {
    if (cur.mindeg() < 1 - static_cast<long long>(half))
      throw PreconditionViolated("state extends below 1 - p^(alpha-1)");
    if (cur.deg() > 0 && static_cast<unsigned __int128>(cur.deg()) >
                             static_cast<unsigned __int128>(half) *
                                 static_cast<unsigned>(rp.deg()))
      throw PreconditionViolated("state degree exceeds p^(alpha-1) deg(denominator mod p)");
  }

  UnivariateOrbit out;
  FpFactorization fac = factor_fp(rr, ring.p);
  std::uint64_t maxmult = 1, ell = 1;
  for (const auto& [f, mult] : fac.factors) {
    maxmult = std::max(maxmult, static_cast<std::uint64_t>(mult));
    ell = lcm_u64(ell, static_cast<std::uint64_t>(f.deg()));
  }
  unsigned t1 = static_cast<unsigned>(
                    floor_log(static_cast<std::uint64_t>(std::max(fac.e0, 1)), ring.p)) +
                ring.alpha;
  unsigned t2 = static_cast<unsigned>(ceil_log(maxmult, ring.p)) + 2 * (ring.alpha - 1);
  out.transient_bound = std::max(t1, t2);
  out.period_bound = ell;

  std::uint64_t e = upow(ring.p, ring.alpha) - half;
  guard_expansion(e);
  UniLaurent rpow = pow(rr, e, ring);
  if (!cap) cap = orbit_budget();
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t idx = 0;; ++idx) {
    if (cap && idx >= cap) throw OrbitBudgetExceeded(cap);
    auto [it, fresh] = seen.try_emplace(print(cur), idx);
    if (!fresh) {
      out.orbit = {it->second, idx - it->second};
      return out;
    }
    cur = cartier(mul(cur, rpow, ring), 0, ring.p);
  }
}

// ---------------------------------------------------------------------------
// Partition lcm maxima.

namespace {

// All lcm values achievable by partitions with sum <= n.
std::vector<std::uint64_t> lcm_values(unsigned n) {
  std::vector<std::set<std::uint64_t>> dp(n + 1);
  dp[0].insert(1);
  for (unsigned t = 1; t <= n; ++t) {
    dp[t] = dp[t - 1];
    for (unsigned k = 1; k <= t; ++k)
      for (std::uint64_t v : dp[t - k])
        dp[t].insert(lcm_u64(k, v));
  }
  return {dp[n].begin(), dp[n].end()};
}

}  // namespace

std::uint64_t landau_g(unsigned n) {
  require(n >= 1, "landau_g needs n >= 1");
  require(n <= 128, "landau_g argument too large");
  return lcm_values(n).back();
}

std::uint64_t lcm_partitions(const std::vector<unsigned>& bounds) {
  require(!bounds.empty() && bounds.size() <= 4, "lcm_partitions takes 1 to 4 bounds");
  std::set<std::uint64_t> cur{1};
  for (unsigned b : bounds) {
    require(b >= 1, "lcm_partitions bounds must be >= 1");
    require(b <= 128, "lcm_partitions bound too large");
    std::vector<std::uint64_t> vals = lcm_values(b);
    std::set<std::uint64_t> next;
    for (std::uint64_t u : cur)
      for (std::uint64_t v : vals) next.insert(lcm_u64(u, v));
    cur = std::move(next);
  }
  return *cur.rbegin();
}

// ---------------------------------------------------------------------------
// Degree-derived size bounds.

namespace {

// alpha (alpha+1) (a alpha + b) / 6, which is always an integer for the
// lattice point counts below.
BigInt box_dim(unsigned alpha, long long a, long long b) {
  BigInt n = BigInt(alpha) * (alpha + 1) * (BigInt(a) * alpha + b);
  require(n % 6 == 0, "box dimension formula must be integral");
  return n / 6;
}

unsigned to_exponent(const BigInt& n) {
  require(n >= 0, "bound exponent must be nonnegative");
  if (n > 4000000) throw BudgetExceeded("bound exponent too large to exponentiate");
  return n.convert_to<unsigned>();
}

BigInt geometric_sum(std::uint64_t p, unsigned u) {
  BigInt s = 0, pk = 1;
  for (unsigned k = 0; k < u; ++k) {
    s += pk;
    pk *= p;
  }
  return s;
}

}  // namespace

BoundReport bound_report(const CurveSpec& curve) {
  const RingSpec& ring = curve.ring;
  if (curve.h < 1) throw PreconditionViolated("degree box bounds need deg_x >= 1");
  BoundReport r;
  r.h = static_cast<unsigned>(curve.h);
  r.d = static_cast<unsigned>(curve.d);
  long long hd = static_cast<long long>(r.h) * r.d;
  r.dim_w = box_dim(ring.alpha, 2 * hd - 1, hd + 1);
  r.dim_v = box_dim(ring.alpha, 2 * hd - 1, (r.h + 3) * static_cast<long long>(r.d) + 1);
  r.dim_v_interior =
      r.dim_w - BigInt(ring.alpha) * (ring.alpha + 1) / 2 * (r.h + r.d - 1);
  r.p_pow_dim = pow(BigInt(ring.p), to_exponent(r.dim_w));
  r.transient = transient_steps(curve);

  std::uint64_t half = upow(ring.p, ring.alpha - 1);
  BiLaurent q = make_Q(curve);
  auto border_u = [&](long long gap) {
    std::uint64_t v = gap <= 0 ? 1
                               : mul_checked(half, static_cast<std::uint64_t>(gap),
                                             "border transient bound");
    return static_cast<unsigned>(floor_log(std::max<std::uint64_t>(v, 1), ring.p)) + 1;
  };
  r.border_left = border_u(static_cast<long long>(r.d) - 1 - project(q, 'x', 0).deg());
  r.border_right = border_u(static_cast<long long>(r.d) - 1 - project(q, 'x', curve.h).deg());
  r.border_top = border_u(static_cast<long long>(r.h) - project(q, 'y', curve.d - 1).deg());

  r.lcm_bound = lcm_partitions({r.h, r.d, r.d});
  r.landau_value = landau_g(r.h + 2 * r.d);
  require(r.lcm_bound <= r.landau_value, "partition lcm bound exceeds the Landau value");

  std::uint64_t maxhd = std::max<std::uint64_t>({r.h, r.d - 1, 1});
  r.state_bound = r.p_pow_dim +
                  pow(BigInt(ring.p), to_exponent(r.dim_v_interior)) * r.lcm_bound +
                  std::max({r.border_left, r.border_right, r.border_top}) +
                  static_cast<unsigned>(ceil_log(maxhd, ring.p)) +
                  std::max(ring.alpha, 2 * (ring.alpha - 1)) +
                  geometric_sum(ring.p, r.transient);
  if (ring.alpha == 1) {
    r.state_bound_mod_p =
        pow(BigInt(ring.p), r.h * r.d) +
        pow(BigInt(ring.p), (r.h - 1) * (r.d - 1)) * r.lcm_bound +
        static_cast<unsigned>(floor_log(std::max<std::uint64_t>(r.h, 1), ring.p)) +
        static_cast<unsigned>(ceil_log(maxhd, ring.p)) + 3;
  }

  r.diagonal_dim =
      BigInt(ring.alpha) * (ring.alpha + 1) * (2 * ring.alpha + 1) * r.h * r.d;
  require(r.diagonal_dim % 6 == 0, "box dimension formula must be integral");
  r.diagonal_dim /= 6;

  DiagonalSpec sheared = shear_diagonal(curve);
  BigInt m = 0;
  for (unsigned k = 0; k < ring.alpha; ++k) {
    BigInt prod = 1;
    for (int hi : sheared.hi) prod *= BigInt(k + 1) * hi + 1;
    m += prod;
  }
  r.multivariate_states = m;
  return r;
}

BoundReport bound_report(const DiagonalSpec& spec) {
  const RingSpec& ring = spec.ring;
  BoundReport r;
  BigInt m = 0;
  for (unsigned k = 0; k < ring.alpha; ++k) {
    BigInt prod = 1;
    for (int hi : spec.hi) prod *= BigInt(k + 1) * hi + 1;
    m += prod;
  }
  r.multivariate_states = m;
  if (spec.m == 2) {
    r.h = static_cast<unsigned>(spec.hi[0]);
    r.d = static_cast<unsigned>(spec.hi[1]);
    r.diagonal_dim =
        BigInt(ring.alpha) * (ring.alpha + 1) * (2 * ring.alpha + 1) * r.h * r.d;
    require(r.diagonal_dim % 6 == 0, "box dimension formula must be integral");
    r.diagonal_dim /= 6;
    r.p_pow_dim = pow(BigInt(ring.p), to_exponent(r.diagonal_dim));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Residue statistics.

ResidueStats residue_stats(const Automaton& a) {
  std::size_t n = a.size();
  std::uint64_t p = a.ring.p;
  require(n > 0 && a.initial < n, "automaton must have a valid initial state");

  std::vector<char> reach(n, 0);
  std::vector<std::uint32_t> queue{a.initial};
  reach[a.initial] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::uint64_t s = 0; s < p; ++s) {
      std::uint32_t w = a.next[v * p + s];
      if (!reach[w]) {
        reach[w] = 1;
        queue.push_back(w);
      }
    }
  }

  // Strongly connected components of the reachable subgraph (iterative).
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> num(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> onstack(n, 0);
  std::vector<std::uint32_t> stk, comp_size;
  std::uint32_t counter = 0;
  struct Frame {
    std::uint32_t v;
    std::uint64_t sym;
  };
  for (std::uint32_t root : queue) {
    if (num[root] != kUnset) continue;
    std::vector<Frame> dfs{{root, 0}};
    num[root] = low[root] = counter++;
    stk.push_back(root);
    onstack[root] = 1;
    while (!dfs.empty()) {
      Frame& f = dfs.back();
      if (f.sym < p) {
        std::uint32_t w = a.next[f.v * p + f.sym];
        ++f.sym;
        if (num[w] == kUnset) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          onstack[w] = 1;
          dfs.push_back({w, 0});
        } else if (onstack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        std::uint32_t v = f.v;
        dfs.pop_back();
        if (!dfs.empty()) low[dfs.back().v] = std::min(low[dfs.back().v], low[v]);
        if (low[v] == num[v]) {
          std::uint32_t sz = 0;
          while (true) {
            std::uint32_t w = stk.back();
            stk.pop_back();
            onstack[w] = 0;
            comp[w] = static_cast<std::uint32_t>(comp_size.size());
            ++sz;
            if (w == v) break;
          }
          comp_size.push_back(sz);
        }
      }
    }
  }

  // A state lies on a cycle iff its component is nontrivial or it self-loops.
  std::vector<char> downstream(n, 0);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t v : queue) {
    bool cyc = comp_size[comp[v]] >= 2;
    for (std::uint64_t s = 0; !cyc && s < p; ++s) cyc = a.next[v * p + s] == v;
    if (cyc) {
      downstream[v] = 1;
      frontier.push_back(v);
    }
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    std::uint32_t v = frontier[head];
    for (std::uint64_t s = 0; s < p; ++s) {
      std::uint32_t w = a.next[v * p + s];
      if (!downstream[w]) {
        downstream[w] = 1;
        frontier.push_back(w);
      }
    }
  }

  // Infinitely many canonical inputs end at q iff q has an incoming edge with
  // a nonzero symbol from a state that infinitely many inputs reach. Walking
  // the all-zero tail of a state already on the cycle path never counts: such
  // inputs have a forbidden trailing zero digit.
  std::vector<char> infinitely(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!downstream[v]) continue;
    for (std::uint64_t s = 1; s < p; ++s) infinitely[a.next[v * p + s]] = 1;
  }

  std::set<Res> att, inf;
  for (std::uint32_t v : queue) att.insert(a.outputs[v]);
  for (std::uint32_t v = 0; v < n; ++v)
    if (infinitely[v]) inf.insert(a.outputs[v]);

  ResidueStats out;
  out.attained.assign(att.begin(), att.end());
  out.attained_infinitely.assign(inf.begin(), inf.end());
  out.modulus = a.ring.modulus;
  return out;
}

// ---------------------------------------------------------------------------
// Cross-precision digit compatibility.

bool digit_compat_check(const CurveSpec& curve, unsigned beta,
                        const std::vector<unsigned>& word) {
  const RingSpec& ring = curve.ring;
  if (beta < 1 || beta > ring.alpha) throw PreconditionViolated("beta must lie in [1, alpha]");
  for (unsigned s : word)
    if (s >= ring.p) throw PreconditionViolated("word symbols must be digits below p");

  RingSpec rb = ring.truncated(beta);
  CurveSpec cb = curve_derived(reduce_coeffs(curve.P, rb.modulus), rb);
  ZTable za = build_ztable(make_Q(curve), ring);
  ZTable zb = build_ztable(make_Q(cb), rb);
  DigitTuple ta = initial_digits(curve, ring);
  DigitTuple tb = initial_digits(cb, rb);
  for (unsigned s : word) {
    ta = digit_step(ta, s, za);
    tb = digit_step(tb, s, zb);
  }
  for (unsigned k = 0; k < beta; ++k)
    if (!(ta.digits[k] == tb.digits[k])) return false;
  return true;
}

}  // namespace padic
