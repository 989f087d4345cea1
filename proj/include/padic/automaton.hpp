#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic/numeration.hpp"
#include "padic/poly.hpp"

namespace padic {

// Deterministic finite automaton with output, reading base-p digits least
// significant first. State 0 is initial; next is a flat table indexed
// state * p + symbol. Numbering is BFS discovery order (symbols ascending),
// so two builds of the same input are identical.
struct Automaton {
  RingSpec ring;
  std::string source;
  std::uint32_t initial = 0;
  std::vector<Res> outputs;
  std::vector<std::uint32_t> next;
  std::vector<std::string> keys;  // canonical state keys; may be empty

  std::size_t size() const { return outputs.size(); }
  bool operator==(const Automaton& o) const {
    return ring.p == o.ring.p && ring.alpha == o.ring.alpha && source == o.source &&
           initial == o.initial && outputs == o.outputs && next == o.next && keys == o.keys;
  }
};

struct BuildOptions {
  unsigned workers = 1;
  std::size_t state_cap = 0;  // 0 = environment default
  bool keep_keys = true;
};

// Automaton for the coefficients of the power series solution of P(x, F) = 0,
// built over digit tuples: initial state digits of y dP/dy (P/y)^(p^(alpha-1)-1),
// transitions digit_step(., r), outputs from numeration.output_of.
Automaton build_algebraic(const CurveSpec& curve, const BuildOptions& opts = {});

// Automaton for the diagonal coefficients of num/den mod p^alpha. Two
// variables run through the digit machinery with the doubled selector
// (r, r); three or more keep explicit polynomial states
// S -> Lambda_{r,...,r}(S * lift(den)^(p^alpha - p^(alpha-1))).
Automaton build_diagonal(const DiagonalSpec& spec, const BuildOptions& opts = {});

// Minimal automaton generating the same outputs (Moore refinement); state
// count equals the p-kernel size. minimize_hopcroft must build the identical
// result by a different refinement strategy.
Automaton minimize(const Automaton& a);
Automaton minimize_hopcroft(const Automaton& a);

// a(n): walk the base-p digits of n, least significant first.
Res eval(const Automaton& a, std::uint64_t n);

// format "json": versioned schema, stable field order, byte-identical across
// runs. format "dot": digraph with symbol-labelled edges and output-labelled
// nodes. Anything else: UnsupportedFormat.
std::string serialize(const Automaton& a, const std::string& format);
Automaton deserialize(const std::string& text);

}  // namespace padic
