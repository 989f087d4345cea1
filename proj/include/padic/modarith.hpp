#pragma once

#include <cstdint>
#include <limits>

#include "padic/errors.hpp"

namespace padic {

using Res = std::uint64_t;  // element of Z/p^alpha, value in [0, modulus)

// Sentinel for valuation(0): no finite power of p divides 0 maximally.
inline constexpr int kValInfinity = std::numeric_limits<int>::max();

// The coefficient ring Z/p^alpha. Immutable once constructed.
struct RingSpec {
  std::uint64_t p = 2;
  unsigned alpha = 1;
  std::uint64_t modulus = 2;  // p^alpha

  RingSpec() = default;
  RingSpec(std::uint64_t p_, unsigned alpha_);

  Res reduce_u(std::uint64_t v) const { return v % modulus; }
  Res reduce_i(long long v) const {
    long long r = v % static_cast<long long>(modulus);
    if (r < 0) r += static_cast<long long>(modulus);
    return static_cast<Res>(r);
  }
  Res add(Res a, Res b) const {
    Res s = a + b;  // modulus < 2^63, no overflow
    return s >= modulus ? s - modulus : s;
  }
  Res sub(Res a, Res b) const { return a >= b ? a - b : a + modulus - b; }
  Res neg(Res a) const { return a ? modulus - a : 0; }
  Res mul(Res a, Res b) const {
    return static_cast<Res>((static_cast<unsigned __int128>(a) * b) % modulus);
  }
  // Ring with the same p and smaller exponent, for mod-p^beta reductions.
  RingSpec truncated(unsigned beta) const;
};

bool is_prime_u64(std::uint64_t n);

// a^e mod p^alpha by square-and-multiply.
Res pow_mod(Res a, std::uint64_t e, const RingSpec& ring);

// Inverse of a unit; throws NonUnit when p | a.
Res inv(Res a, const RingSpec& ring);

// Largest e with p^e | n; kValInfinity for n = 0.
int valuation(std::uint64_t n, std::uint64_t p);

// floor(log_p(n)) for n >= 1.
int floor_log(std::uint64_t n, std::uint64_t p);
// ceil(log_p(n)) for n >= 1.
int ceil_log(std::uint64_t n, std::uint64_t p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// p^e as uint64; aborts on overflow (callers stay below 2^63 by construction).
std::uint64_t upow(std::uint64_t p, unsigned e);

}  // namespace padic
