#pragma once

#include <string>
#include <vector>

#include "padic/poly.hpp"

namespace padic {

// Base-p/Q digit tuple (T_0, ..., T_{alpha-1}): every coefficient lies in
// D = {0,...,p-1}, and the represented value is
//   val(t) = (T_0 + T_1 (p/Q) + ... + T_{alpha-1} (p/Q)^{alpha-1}) Q^{p^{alpha-1}-1}.
struct DigitTuple {
  std::vector<BiLaurent> digits;
  bool operator==(const DigitTuple&) const = default;
  bool is_zero() const {
    for (const auto& d : digits)
      if (!d.is_zero()) return false;
    return true;
  }
};

// Canonical byte key (terms are already sorted); stable across runs.
std::string digit_key(const DigitTuple& t);

// The D-lift of den mod p with the same monomial support.
BiLaurent make_lift(const BiLaurent& den, const RingSpec& ring);
// Lift of P/y for a validated curve: deg_x = h, deg_y = d-1, unit constant term.
BiLaurent make_Q(const CurveSpec& curve);

// Digits of num * den^(p^(alpha-1)-1) mod p^alpha, computed without expanding
// the big power; Q must be the supported lift of den mod p.
DigitTuple initial_digits_of(const BiLaurent& num, const BiLaurent& den, const BiLaurent& Q,
                             const RingSpec& ring);
// Algebraic case: num = y dP/dy, den = P/y.
DigitTuple initial_digits(const CurveSpec& curve, const RingSpec& ring);

// Expanded value of a digit tuple. Test-scale only: expands Q^(p^(alpha-1)-1),
// guarded by the monomial budget.
BiLaurent val(const DigitTuple& t, const BiLaurent& Q, const RingSpec& ring);
// Unique digit tuple with val(rep(S)) = S; NotRepresentable when none exists.
// Same budget guard as val.
DigitTuple rep(const BiLaurent& S, const BiLaurent& Q, const RingSpec& ring);

// Canonicalize a raw digit sequence (arbitrary ring coefficients) into a
// DigitTuple of the same value: T_k'' = p U_k + R_k, U_k * Q carries into
// position k+1; the final carry falls beyond precision p^alpha and is dropped.
DigitTuple carry_normalize(std::vector<BiLaurent> raw, const BiLaurent& Q, const RingSpec& ring);

// Precomputed transition tables. Z[j][k] is the auxiliary polynomial
//   sum_{m=k+1}^{k+j+1} binom(k+j+1, m) Q^{pm-k-1} Delta^{k+j+1-m}  mod p^{j+1},
// Delta = Q(x^p, y^p) - Q^p, pre-binned by exponent residues mod p so that
// Lambda_{r,s}(T * Z) is a single merge per stored term.
struct ZTable {
  RingSpec ring;
  BiLaurent Q;
  BiLaurent delta;
  std::vector<std::vector<BiLaurent>> z;        // z[j][k], 0 <= j < alpha - k
  // bins[j][k][rx * p + ry]: terms with exponents = (rx, ry) mod p, exponents
  // already floor-divided by p.
  std::vector<std::vector<std::vector<std::vector<BiTerm>>>> bins;
  std::vector<BiLaurent> qpow;                  // Q^0 .. Q^(p*alpha-1) mod p^alpha
};

ZTable build_ztable(const BiLaurent& Q, const RingSpec& ring);

// Digit-space transition: the digit tuple of Lambda_{r,s}(val(t) Q^{p^a - p^(a-1)}),
// computed without expanding val(t). The algebraic automaton uses s = 0, the
// bivariate diagonal uses s = r. The optional trace receives the U_{k,j} table.
DigitTuple digit_step_rs(const DigitTuple& t, unsigned r, unsigned s, const ZTable& zt,
                         std::vector<std::vector<BiLaurent>>* utable = nullptr);
DigitTuple digit_step(const DigitTuple& t, unsigned r, const ZTable& zt);

// Output value of a state in digit space:
//   sum_k ct(T_k) p^k c^{-(k+1)} mod p^alpha, c = ct(Q).
Res output_of(const DigitTuple& t, const BiLaurent& Q, const RingSpec& ring);

// Degree boxes deciding membership by pure exponent checks on each digit.
enum class BoxKind { W, V, VInterior };
struct DigitBox {
  BoxKind kind;
  int h = 1, d = 1;
  bool contains(const DigitTuple& t) const;
};

// Steps after which every state (from arbitrary symbols) lies in V.
unsigned transient_steps(const CurveSpec& curve);

}  // namespace padic
