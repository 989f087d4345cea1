#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padic/automaton.hpp"
#include "padic/numeration.hpp"
#include "padic/poly.hpp"

namespace padic {

using BigInt = boost::multiprecision::cpp_int;

// Orbit shape of an eventually periodic iteration: the first `transient`
// terms are never revisited, then a cycle of length `period` repeats.
struct OrbitRecord {
  std::size_t transient = 0;
  std::size_t period = 1;
  std::size_t size() const { return transient + period; }
  bool operator==(const OrbitRecord&) const = default;
};

// Orbit of a digit tuple under the symbol-0 transition. cap = 0 uses the
// environment orbit budget; exceeding it throws OrbitBudgetExceeded.
OrbitRecord orbit_zero(const DigitTuple& start, const ZTable& zt, std::size_t cap = 0);

// Factorization over F_p of a nonzero univariate Laurent value:
//   R mod p = unit * z^e0 * prod factors[i].first ^ factors[i].second,
// every factor monic irreducible, sorted by (degree, coefficients).
// The equal-degree split is randomized; seed records the generator seed used.
struct FpFactorization {
  Res unit = 1;
  int e0 = 0;
  std::vector<std::pair<UniLaurent, unsigned>> factors;
  std::uint64_t seed = 0;
};

// Throws ZeroPolynomial when r vanishes mod p.
FpFactorization factor_fp(const UniLaurent& r, std::uint64_t p);

// Period data for the coefficient sequence of 1/T, T = R^(p^(alpha-1))
// normalized to unit constant term. Requires the z-order of R mod p to be
// 0 or -1 with a unit lowest coefficient; violations throw HypothesisViolated.
struct PeriodReport {
  int e0 = 0;                          // z-order of R mod p
  std::uint64_t empirical_mod_p = 1;   // measured period of 1/T mod p
  std::uint64_t empirical = 1;         // measured period of 1/T mod p^alpha
  std::uint64_t bound_mod_p = 1;       // p^ceil(log_p e) * lcm(p^deg(R_i) - 1)
  std::uint64_t bound = 1;             // p^(alpha-1) * empirical_mod_p
  std::uint64_t bound_weak = 1;        // p^(2(alpha-1)) * empirical_mod_p
  unsigned trailing_zeros = 0;         // zeros ending the mod-p^alpha period
};

PeriodReport period_rational(const UniLaurent& r, const RingSpec& ring);

// One step of the univariate section operator S -> Lambda_0(S R^(p^alpha - p^(alpha-1))).
UniLaurent univariate_step(const UniLaurent& s, const UniLaurent& r, const RingSpec& ring);

// Orbit of S under univariate_step, with the degree-derived bounds: the orbit
// size is at most transient_bound + period_bound. Requires
//   1 - p^(alpha-1) <= mindeg S  and  deg S <= p^(alpha-1) deg(R mod p)
// (zero S is always admissible); violations throw PreconditionViolated.
struct UnivariateOrbit {
  OrbitRecord orbit;
  unsigned transient_bound = 0;
  std::uint64_t period_bound = 1;
};

UnivariateOrbit univariate_orbit(const UniLaurent& s, const UniLaurent& r,
                                 const RingSpec& ring, std::size_t cap = 0);

// Largest lcm of any partition with sum <= n (n >= 1).
std::uint64_t landau_g(unsigned n);
// Largest lcm(lcm(s_1), ..., lcm(s_k)) over partitions s_i with sum <= bounds[i];
// 1 <= k <= 4, every bound >= 1.
std::uint64_t lcm_partitions(const std::vector<unsigned>& bounds);

// Size bounds derived from degrees alone, before building anything.
struct BoundReport {
  unsigned h = 0, d = 0;  // mod-p x-degree and y-degree of the input
  BigInt dim_w;           // lattice points of the digit degree boxes W_k
  BigInt dim_v;           // same for the absorbing boxes V_k
  BigInt dim_v_interior;  // same for the interior boxes
  BigInt p_pow_dim;       // p^dim_w: digit tuples fitting in the boxes
  unsigned transient = 0; // steps until every state lies in V
  // Extra steps until the three border projections reach their limit degrees.
  unsigned border_left = 0, border_right = 0, border_top = 0;
  std::uint64_t lcm_bound = 1;    // max lcm over partition triples of (h, d, d)
  std::uint64_t landau_value = 1; // landau_g(h + 2d), always >= lcm_bound
  BigInt state_bound;             // unminimized automaton size bound
  BigInt state_bound_mod_p;       // sharper alpha = 1 form (0 when alpha > 1)
  BigInt diagonal_dim;            // box dimension for the bivariate diagonal
  BigInt multivariate_states;     // bound for explicit polynomial states
};

BoundReport bound_report(const CurveSpec& curve);
BoundReport bound_report(const DiagonalSpec& spec);

// Which residues the sequence attains, and which it attains infinitely often.
// Densities are the exact fractions size/modulus.
struct ResidueStats {
  std::vector<Res> attained;             // sorted, distinct
  std::vector<Res> attained_infinitely;  // sorted, subset of attained
  std::uint64_t modulus = 0;             // p^alpha
};

ResidueStats residue_stats(const Automaton& a);

// True when the first beta digits of the full-precision state tuple match the
// precision-beta tuple after reading word (symbols < p, 1 <= beta <= alpha).
bool digit_compat_check(const CurveSpec& curve, unsigned beta,
                        const std::vector<unsigned>& word);

}  // namespace padic
