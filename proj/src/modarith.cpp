#include "padic/modarith.hpp"

namespace padic {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t upow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    require(r <= std::numeric_limits<std::uint64_t>::max() / p, "upow overflow");
    r *= p;
  }
  return r;
}

RingSpec::RingSpec(std::uint64_t p_, unsigned alpha_) : p(p_), alpha(alpha_) {
  if (alpha_ < 1) throw BadConfig("alpha must be >= 1");
  if (!is_prime_u64(p_)) throw BadConfig("p = " + std::to_string(p_) + " is not prime");
  // p^alpha must stay below 2^63: fixed-width residues keep state hashing fast.
  unsigned __int128 m = 1;
  for (unsigned i = 0; i < alpha_; ++i) {
    m *= p_;
    if (m >= (static_cast<unsigned __int128>(1) << 63))
      throw BadConfig("p^alpha exceeds 2^63; reduce alpha or p");
  }
  modulus = static_cast<std::uint64_t>(m);
}

RingSpec RingSpec::truncated(unsigned beta) const {
  require(beta >= 1 && beta <= alpha, "truncated ring exponent out of range");
  RingSpec r;
  r.p = p;
  r.alpha = beta;
  r.modulus = upow(p, beta);
  return r;
}

Res pow_mod(Res a, std::uint64_t e, const RingSpec& ring) {
  Res base = ring.reduce_u(a), acc = 1 % ring.modulus;
  while (e) {
    if (e & 1) acc = ring.mul(acc, base);
    base = ring.mul(base, base);
    e >>= 1;
  }
  return acc;
}

Res inv(Res a, const RingSpec& ring) {
  a = ring.reduce_u(a);
  if (a % ring.p == 0) throw NonUnit(std::to_string(a) + " mod " + std::to_string(ring.modulus));
  // Extended Euclid on (a, p^alpha); gcd is 1 since a is a unit.
  long long m = static_cast<long long>(ring.modulus);
  long long r0 = m, r1 = static_cast<long long>(a), s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  require(r0 == 1, "inv: gcd is not 1");
  return ring.reduce_i(s0);
}

int valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return kValInfinity;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int floor_log(std::uint64_t n, std::uint64_t p) {
  require(n >= 1, "floor_log of 0");
  int e = 0;
  while (n >= p) {
    n /= p;
    ++e;
  }
  return e;
}

int ceil_log(std::uint64_t n, std::uint64_t p) {
  require(n >= 1, "ceil_log of 0");
  int e = 0;
  std::uint64_t v = 1;
  while (v < n) {
    require(v <= std::numeric_limits<std::uint64_t>::max() / p, "ceil_log overflow");
    v *= p;
    ++e;
  }
  return e;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

}  // namespace padic
