#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "padic/poly.hpp"

namespace padic {

// Ground-truth coefficient prefixes a(0..N), produced independently of the
// automaton pipeline so the two can be cross-checked.
struct SeriesPrefix {
  RingSpec ring;
  std::vector<Res> coeffs;  // length N+1
  std::string method;       // "newton" | "diagonal" | "automaton"
};

// Coefficients of the unique series F with F(0) = 0 and P(x, F) = 0, by Newton
// iteration on truncated series (the unit dP/dy(0,0) makes the division legal).
SeriesPrefix series_solve(const CurveSpec& curve, std::size_t n_max, const RingSpec& ring);

// P(x, f) truncated to f's length; identically zero iff f solves the curve.
std::vector<Res> curve_residual(const CurveSpec& curve, const std::vector<Res>& f,
                                const RingSpec& ring);

// Diagonal coefficients of num/den by dense truncated expansion on the
// (n_max+1)^m lattice. Guarded by the monomial budget.
SeriesPrefix diagonal_expand(const DiagonalSpec& spec, std::size_t n_max, const RingSpec& ring);

// Number of distinct length-L prefixes among the subsequences a(p^e n + r),
// 0 <= e <= e_max, 0 <= r < p^e. Monotone lower bound for the kernel size.
std::size_t kernel_prefixes(const SeriesPrefix& s, unsigned e_max, std::size_t L);

}  // namespace padic
