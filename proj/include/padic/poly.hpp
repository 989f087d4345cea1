#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "padic/modarith.hpp"

namespace padic {

// Degree sentinels for the zero polynomial: deg(0) = kNegInf, mindeg(0) = kPosInf.
// Callers must branch before doing arithmetic with these.
inline constexpr int kNegInf = std::numeric_limits<int>::min();
inline constexpr int kPosInf = std::numeric_limits<int>::max();

// ---------------------------------------------------------------------------
// Bivariate Laurent polynomials: x-exponents >= 0, y-exponents any integer.

struct BiTerm {
  std::int32_t i;  // x-exponent, >= 0
  std::int32_t j;  // y-exponent
  Res c;           // nonzero residue
  bool operator==(const BiTerm&) const = default;
};

struct BiLaurent {
  // Sorted by (i, j) ascending; no zero coefficients.
  std::vector<BiTerm> t;

  bool is_zero() const { return t.empty(); }
  bool operator==(const BiLaurent&) const = default;

  int deg_x() const;
  int deg_y() const;
  int mindeg_x() const;
  int mindeg_y() const;
  Res coeff(int i, int j) const;
  Res ct() const { return coeff(0, 0); }
  // Every term satisfies j >= -i (closed under add/mul/cartier; states live here).
  bool minkowski_ok() const;
  std::size_t size() const { return t.size(); }
};

BiLaurent bi_from_terms(std::vector<BiTerm> terms, const RingSpec& ring);
BiLaurent bi_monomial(int i, int j, Res c, const RingSpec& ring);
BiLaurent bi_const(Res c, const RingSpec& ring);

BiLaurent add(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring);
BiLaurent sub(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring);
BiLaurent neg(const BiLaurent& a, const RingSpec& ring);
BiLaurent mul(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring,
              std::size_t monomial_budget = 0);  // 0 = unguarded
BiLaurent mul_scalar(const BiLaurent& a, Res s, const RingSpec& ring);
BiLaurent pow(const BiLaurent& a, std::uint64_t e, const RingSpec& ring,
              std::size_t monomial_budget = 0);
// Coefficients reduced mod m (m | modulus); zero terms dropped. Result ring: same p.
BiLaurent reduce_coeffs(const BiLaurent& a, std::uint64_t m);
// Substitute x -> x^p, y -> y^p.
BiLaurent frobenius_sub(const BiLaurent& a, std::uint64_t p);
// Cartier operator: keeps terms with (i, j) = (r, s) mod p, divides exponents by p.
BiLaurent cartier(const BiLaurent& a, unsigned r, unsigned s, std::uint64_t p);
// Multiply every term by x^di y^dj.
BiLaurent shift(const BiLaurent& a, int di, int dj);

// True iff every coefficient is divisible by m.
bool divisible_coeffs(const BiLaurent& a, std::uint64_t m);
// Divide every coefficient by dv; nullopt when some coefficient is not divisible.
std::optional<BiLaurent> div_coeffs_checked(const BiLaurent& a, std::uint64_t dv);

// ---------------------------------------------------------------------------
// Univariate Laurent polynomials in z.

struct UniTerm {
  std::int32_t e;
  Res c;
  bool operator==(const UniTerm&) const = default;
};

struct UniLaurent {
  std::vector<UniTerm> t;  // sorted by exponent ascending; no zero coefficients

  bool is_zero() const { return t.empty(); }
  bool operator==(const UniLaurent&) const = default;
  int deg() const { return t.empty() ? kNegInf : t.back().e; }
  int mindeg() const { return t.empty() ? kPosInf : t.front().e; }
  Res coeff(int e) const;
};

UniLaurent uni_from_terms(std::vector<UniTerm> terms, const RingSpec& ring);
UniLaurent uni_monomial(int e, Res c, const RingSpec& ring);
UniLaurent add(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring);
UniLaurent sub(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring);
UniLaurent mul(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring);
UniLaurent pow(const UniLaurent& a, std::uint64_t e, const RingSpec& ring);
UniLaurent reduce_coeffs(const UniLaurent& a, std::uint64_t m);
UniLaurent cartier(const UniLaurent& a, unsigned r, std::uint64_t p);
UniLaurent shift(const UniLaurent& a, int de);
bool divisible_coeffs(const UniLaurent& a, std::uint64_t m);
std::optional<UniLaurent> div_coeffs_checked(const UniLaurent& a, std::uint64_t dv);

// Exact division over F_p (both inputs taken mod p); nullopt if not divisible.
std::optional<UniLaurent> divide_exact_fp(const UniLaurent& a, const UniLaurent& b,
                                          std::uint64_t p);
std::optional<BiLaurent> divide_exact_fp(const BiLaurent& a, const BiLaurent& b,
                                         std::uint64_t p);

// Univariate slice of a bivariate value at a fixed exponent of the other variable:
// axis 'x': fix x-exponent = index, keep y-exponents; axis 'y': fix y-exponent.
UniLaurent project(const BiLaurent& s, char axis, int index);

// ---------------------------------------------------------------------------
// Multivariate polynomials (all exponents >= 0), m >= 1 variables.

struct MultiPoly {
  unsigned m = 1;
  // Terms sorted by exponent vector (lexicographic); no zero coefficients.
  std::vector<std::pair<std::vector<std::int32_t>, Res>> t;

  bool is_zero() const { return t.empty(); }
  bool operator==(const MultiPoly&) const = default;
  int deg_var(unsigned v) const;  // kNegInf for 0
  Res coeff(const std::vector<std::int32_t>& e) const;
  Res ct() const;
};

MultiPoly mp_from_terms(unsigned m, std::vector<std::pair<std::vector<std::int32_t>, Res>> terms,
                        const RingSpec& ring);
MultiPoly add(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring);
MultiPoly sub(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring,
              std::size_t monomial_budget = 0);
MultiPoly pow(const MultiPoly& a, std::uint64_t e, const RingSpec& ring,
              std::size_t monomial_budget = 0);
MultiPoly reduce_coeffs(const MultiPoly& a, std::uint64_t m);
// Keeps terms with every exponent = r mod p, divides all exponents by p.
MultiPoly cartier_diag(const MultiPoly& a, unsigned r, std::uint64_t p);

BiLaurent to_bilaurent(const MultiPoly& a);           // m == 2
MultiPoly to_multipoly(const BiLaurent& a);           // requires j >= 0
UniLaurent to_unilaurent(const MultiPoly& a);         // m == 1

// ---------------------------------------------------------------------------
// Text form. Canonical printing sorts terms ascending; parse(print(v)) = v.

std::string print(const BiLaurent& a);
std::string print(const UniLaurent& a);
std::string print(const MultiPoly& a);
std::string print(const MultiPoly& a, const std::vector<std::string>& vars);

// Grammar: expr := term (('+'|'-') term)*; term := unary ('*' unary)*;
// unary := '-' unary | factor; factor := atom ('^' exponent)?;
// atom := integer | var | '(' expr ')'; exponent := ['-'] integer.
// No implicit multiplication. Integer coefficients are reduced mod p^alpha.
// Variables must come from vars; exponents must be >= 0 (MultiPoly carrier).
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                     const RingSpec& ring);
// Same grammar but negative exponents allowed; single variable.
UniLaurent parse_laurent(const std::string& text, const std::string& var,
                         const RingSpec& ring);

// Names used by parse/print per arity: m=1 -> {z}, m=2 -> {x,y}, else {x1..xm}.
std::vector<std::string> default_vars(unsigned m);

// ---------------------------------------------------------------------------
// Validated curve input: P bivariate, P(0,0) = 0, dP/dy(0,0) a unit mod p.

struct CurveSpec {
  RingSpec ring;
  MultiPoly P;        // coefficients already reduced mod p^alpha
  BiLaurent Pxy;      // P as a bivariate value
  BiLaurent Py;       // P/y (y-exponents shifted down by one)
  int h = 0;          // deg_x(P mod p)
  int d = 1;          // deg_y(P mod p)
  std::vector<int> hk, dk;  // deg_x / deg_y of (P mod p^(k+1)), 0 <= k < alpha
  bool polynomial_trivial = false;  // h == 0: the series solution is a polynomial mod p
};

CurveSpec curve_derived(const MultiPoly& P, const RingSpec& ring);

// y * dP/dy: multiplies each coefficient by its y-exponent.
BiLaurent y_dy(const BiLaurent& a, const RingSpec& ring);

// Validated rational-diagonal input num/den in m >= 2 variables.
struct DiagonalSpec {
  RingSpec ring;
  unsigned m = 2;
  MultiPoly num, den;     // coefficients reduced mod p^alpha
  std::vector<int> hi;    // per variable: max(deg_i(num mod p), deg_i(den mod p)), >= 0
};

// Throws InvalidDenominator when den(0,...,0) is not a unit mod p.
DiagonalSpec diagonal_derived(const MultiPoly& num, const MultiPoly& den, const RingSpec& ring);

// The diagonal presentation of a curve's series: x -> x*y shear, so that the
// sequence of diagonal_derived(y*dP/dy(xy,y), P(xy,y)/y) matches the curve's.
DiagonalSpec shear_diagonal(const CurveSpec& curve);

}  // namespace padic
