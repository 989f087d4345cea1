#include <cctype>

#include "padic/budget.hpp"
#include "padic/poly.hpp"

namespace padic {

namespace {

constexpr long long kMaxExponent = 1 << 20;

enum class Tok { Int, Var, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t off;        // 0-based offset of the first character
  Res value = 0;          // Int: reduced mod p^alpha
  long long raw = 0;      // Int: saturated at kMaxExponent + 1 for exponent checks
  std::string name;       // Var

  Token(Tok k, std::size_t o) : kind(k), off(o) {}
};

struct Lexer {
  const std::string& s;
  const RingSpec& ring;
  std::size_t pos = 0;

  Token next() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    std::size_t at = pos;
    if (pos >= s.size()) return {Tok::End, at};
    char c = s[pos];
    switch (c) {
      case '+': ++pos; return {Tok::Plus, at};
      case '-': ++pos; return {Tok::Minus, at};
      case '*': ++pos; return {Tok::Star, at};
      case '^': ++pos; return {Tok::Caret, at};
      case '(': ++pos; return {Tok::LParen, at};
      case ')': ++pos; return {Tok::RParen, at};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Tok::Int, at};
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        unsigned dig = static_cast<unsigned>(s[pos] - '0');
        t.value = ring.add(ring.mul(t.value, 10 % ring.modulus), dig % ring.modulus);
        if (t.raw <= kMaxExponent) t.raw = t.raw * 10 + dig;
        ++pos;
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      Token t{Tok::Var, at};
      t.name += c;
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        t.name += s[pos];
        ++pos;
      }
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
};

// expr := term (('+'|'-') term)*; term := unary ('*' unary)*;
// unary := '-' unary | factor; factor := atom ('^' exponent)?;
// atom := integer | var | '(' expr ')'; exponent := ['-'] integer.
template <typename Algebra>
struct Parser {
  Lexer lex;
  const Algebra& alg;
  Token cur;

  Parser(const std::string& s, const RingSpec& ring, const Algebra& a)
      : lex{s, ring}, alg(a), cur(lex.next()) {}

  void advance() { cur = lex.next(); }

  typename Algebra::V parse() {
    auto v = expr();
    if (cur.kind != Tok::End)
      throw ParseError("trailing input", cur.off);
    return v;
  }

  typename Algebra::V expr() {
    auto v = term();
    while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
      bool minus = cur.kind == Tok::Minus;
      advance();
      auto rhs = term();
      v = minus ? alg.sub(v, rhs) : alg.add(v, rhs);
    }
    return v;
  }

  typename Algebra::V term() {
    auto v = unary();
    while (cur.kind == Tok::Star) {
      advance();
      v = alg.mul(v, unary());
    }
    return v;
  }

  typename Algebra::V unary() {
    if (cur.kind == Tok::Minus) {
      advance();
      return alg.neg(unary());
    }
    return factor();
  }

  typename Algebra::V factor() {
    auto v = atom();
    if (cur.kind == Tok::Caret) {
      advance();
      bool negative = false;
      std::size_t sign_off = cur.off;
      if (cur.kind == Tok::Minus) {
        negative = true;
        advance();
      }
      if (cur.kind != Tok::Int)
        throw ParseError("expected integer exponent", cur.off);
      if (cur.raw > kMaxExponent)
        throw ParseError("exponent too large", cur.off);
      long long e = negative ? -cur.raw : cur.raw;
      advance();
      v = alg.pow_int(v, e, sign_off);
    }
    return v;
  }

  typename Algebra::V atom() {
    switch (cur.kind) {
      case Tok::Int: {
        auto v = alg.from_const(cur.value);
        advance();
        return v;
      }
      case Tok::Var: {
        auto v = alg.var(cur.name, cur.off);
        advance();
        return v;
      }
      case Tok::LParen: {
        advance();
        auto v = expr();
        if (cur.kind != Tok::RParen)
          throw ParseError("expected ')'", cur.off);
        advance();
        return v;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", cur.off);
      default:
        throw ParseError("expected a value", cur.off);
    }
  }
};

struct PolyAlgebra {
  using V = MultiPoly;
  const RingSpec& ring;
  const std::vector<std::string>& vars;

  V from_const(Res c) const {
    return mp_from_terms(static_cast<unsigned>(vars.size()),
                         {{std::vector<std::int32_t>(vars.size(), 0), c}}, ring);
  }
  V var(const std::string& name, std::size_t off) const {
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == name) {
        std::vector<std::int32_t> e(vars.size(), 0);
        e[k] = 1;
        return mp_from_terms(static_cast<unsigned>(vars.size()), {{e, 1}}, ring);
      }
    throw UnknownVariable(name, off);
  }
  V add(const V& a, const V& b) const { return padic::add(a, b, ring); }
  V sub(const V& a, const V& b) const { return padic::sub(a, b, ring); }
  V neg(const V& a) const { return padic::sub(from_const(0), a, ring); }
  V mul(const V& a, const V& b) const { return padic::mul(a, b, ring, monomial_budget()); }
  V pow_int(const V& a, long long e, std::size_t off) const {
    if (e < 0) throw ParseError("negative exponent not allowed for polynomials", off);
    return padic::pow(a, static_cast<std::uint64_t>(e), ring, monomial_budget());
  }
};

struct LaurentAlgebra {
  using V = UniLaurent;
  const RingSpec& ring;
  const std::string& name;

  V from_const(Res c) const { return uni_monomial(0, c, ring); }
  V var(const std::string& n, std::size_t off) const {
    if (n != name) throw UnknownVariable(n, off);
    return uni_monomial(1, 1, ring);
  }
  V add(const V& a, const V& b) const { return padic::add(a, b, ring); }
  V sub(const V& a, const V& b) const { return padic::sub(a, b, ring); }
  V neg(const V& a) const { return padic::sub(from_const(0), a, ring); }
  V mul(const V& a, const V& b) const { return padic::mul(a, b, ring); }
  V pow_int(const V& a, long long e, std::size_t off) const {
    if (e >= 0) return padic::pow(a, static_cast<std::uint64_t>(e), ring);
    if (a.t.size() != 1)
      throw ParseError("negative exponent needs a monomial base", off);
    if (a.t[0].c % ring.p == 0)
      throw ParseError("negative exponent needs a unit coefficient", off);
    V base = uni_monomial(-a.t[0].e, inv(a.t[0].c, ring), ring);
    return padic::pow(base, static_cast<std::uint64_t>(-e), ring);
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                     const RingSpec& ring) {
  PolyAlgebra alg{ring, vars};
  Parser<PolyAlgebra> p(text, ring, alg);
  return p.parse();
}

UniLaurent parse_laurent(const std::string& text, const std::string& var,
                         const RingSpec& ring) {
  LaurentAlgebra alg{ring, var};
  Parser<LaurentAlgebra> p(text, ring, alg);
  return p.parse();
}

}  // namespace padic
