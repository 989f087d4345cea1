#include "padic/poly.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace padic {

namespace {

inline std::uint64_t pack(std::int32_t i, std::int32_t j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}
inline std::int32_t unpack_i(std::uint64_t k) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(k >> 32));
}
inline std::int32_t unpack_j(std::uint64_t k) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(k));
}

BiLaurent bi_collect(const std::unordered_map<std::uint64_t, Res>& acc, std::uint64_t modulus) {
  BiLaurent r;
  r.t.reserve(acc.size());
  for (const auto& [k, c] : acc) {
    Res cc = c % modulus;
    if (cc) r.t.push_back({unpack_i(k), unpack_j(k), cc});
  }
  std::sort(r.t.begin(), r.t.end(), [](const BiTerm& a, const BiTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return r;
}

// Floored division helpers for Cartier with negative exponents.
inline bool congruent(std::int64_t v, std::int64_t r, std::int64_t p) {
  std::int64_t m = (v - r) % p;
  return m == 0;
}
inline std::int64_t fdiv(std::int64_t v, std::int64_t p) { return v / p; }  // exact only

}  // namespace

int BiLaurent::deg_x() const {
  if (t.empty()) return kNegInf;
  int m = t.front().i;
  for (const auto& tm : t) m = std::max(m, static_cast<int>(tm.i));
  return m;
}
int BiLaurent::deg_y() const {
  if (t.empty()) return kNegInf;
  int m = t.front().j;
  for (const auto& tm : t) m = std::max(m, static_cast<int>(tm.j));
  return m;
}
int BiLaurent::mindeg_x() const { return t.empty() ? kPosInf : t.front().i; }
int BiLaurent::mindeg_y() const {
  if (t.empty()) return kPosInf;
  int m = t.front().j;
  for (const auto& tm : t) m = std::min(m, static_cast<int>(tm.j));
  return m;
}
Res BiLaurent::coeff(int i, int j) const {
  BiTerm probe{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), 0};
  auto it = std::lower_bound(t.begin(), t.end(), probe, [](const BiTerm& a, const BiTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  if (it != t.end() && it->i == i && it->j == j) return it->c;
  return 0;
}
bool BiLaurent::minkowski_ok() const {
  for (const auto& tm : t)
    if (tm.j < -tm.i) return false;
  return true;
}

BiLaurent bi_from_terms(std::vector<BiTerm> terms, const RingSpec& ring) {
  std::unordered_map<std::uint64_t, Res> acc;
  for (const auto& tm : terms) {
    require(tm.i >= 0, "bivariate term with negative x-exponent");
    acc[pack(tm.i, tm.j)] += ring.reduce_u(tm.c) % ring.modulus;
    acc[pack(tm.i, tm.j)] %= ring.modulus;
  }
  return bi_collect(acc, ring.modulus);
}
BiLaurent bi_monomial(int i, int j, Res c, const RingSpec& ring) {
  return bi_from_terms({{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), c}}, ring);
}
BiLaurent bi_const(Res c, const RingSpec& ring) { return bi_monomial(0, 0, c, ring); }

BiLaurent add(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring) {
  std::unordered_map<std::uint64_t, Res> acc;
  acc.reserve(a.t.size() + b.t.size());
  for (const auto& tm : a.t) acc[pack(tm.i, tm.j)] = tm.c;
  for (const auto& tm : b.t) {
    auto& v = acc[pack(tm.i, tm.j)];
    v = ring.add(v, tm.c);
  }
  return bi_collect(acc, ring.modulus);
}
BiLaurent sub(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring) {
  std::unordered_map<std::uint64_t, Res> acc;
  acc.reserve(a.t.size() + b.t.size());
  for (const auto& tm : a.t) acc[pack(tm.i, tm.j)] = tm.c;
  for (const auto& tm : b.t) {
    auto& v = acc[pack(tm.i, tm.j)];
    v = ring.sub(v, tm.c);
  }
  return bi_collect(acc, ring.modulus);
}
BiLaurent neg(const BiLaurent& a, const RingSpec& ring) {
  BiLaurent r = a;
  for (auto& tm : r.t) tm.c = ring.neg(tm.c);
  return r;
}
BiLaurent mul(const BiLaurent& a, const BiLaurent& b, const RingSpec& ring,
              std::size_t monomial_budget) {
  std::unordered_map<std::uint64_t, Res> acc;
  acc.reserve(a.t.size() * 2);
  for (const auto& ta : a.t)
    for (const auto& tb : b.t) {
      auto& v = acc[pack(ta.i + tb.i, ta.j + tb.j)];
      v = ring.add(v, ring.mul(ta.c, tb.c));
      if (monomial_budget && acc.size() > monomial_budget)
        throw BudgetExceeded("monomial cap " + std::to_string(monomial_budget));
    }
  return bi_collect(acc, ring.modulus);
}
BiLaurent mul_scalar(const BiLaurent& a, Res s, const RingSpec& ring) {
  s = ring.reduce_u(s);
  std::unordered_map<std::uint64_t, Res> acc;
  for (const auto& tm : a.t) acc[pack(tm.i, tm.j)] = ring.mul(tm.c, s);
  return bi_collect(acc, ring.modulus);
}
BiLaurent pow(const BiLaurent& a, std::uint64_t e, const RingSpec& ring,
              std::size_t monomial_budget) {
  BiLaurent acc = bi_const(1, ring), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base, ring, monomial_budget);
    e >>= 1;
    if (e) base = mul(base, base, ring, monomial_budget);
  }
  return acc;
}
BiLaurent reduce_coeffs(const BiLaurent& a, std::uint64_t m) {
  BiLaurent r;
  for (const auto& tm : a.t) {
    Res c = tm.c % m;
    if (c) r.t.push_back({tm.i, tm.j, c});
  }
  return r;
}
BiLaurent frobenius_sub(const BiLaurent& a, std::uint64_t p) {
  BiLaurent r = a;
  for (auto& tm : r.t) {
    tm.i = static_cast<std::int32_t>(tm.i * static_cast<std::int64_t>(p));
    tm.j = static_cast<std::int32_t>(tm.j * static_cast<std::int64_t>(p));
  }
  std::sort(r.t.begin(), r.t.end(), [](const BiTerm& x, const BiTerm& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return r;
}
BiLaurent cartier(const BiLaurent& a, unsigned r, unsigned s, std::uint64_t p) {
  BiLaurent out;
  auto pp = static_cast<std::int64_t>(p);
  for (const auto& tm : a.t) {
    if (tm.i % pp != static_cast<std::int64_t>(r)) continue;  // i >= 0, r < p
    if (!congruent(tm.j, static_cast<std::int64_t>(s), pp)) continue;
    out.t.push_back({static_cast<std::int32_t>((tm.i - static_cast<std::int64_t>(r)) / pp),
                     static_cast<std::int32_t>(fdiv(tm.j - static_cast<std::int64_t>(s), pp)),
                     tm.c});
  }
  std::sort(out.t.begin(), out.t.end(), [](const BiTerm& x, const BiTerm& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return out;
}
BiLaurent shift(const BiLaurent& a, int di, int dj) {
  BiLaurent r = a;
  for (auto& tm : r.t) {
    tm.i += di;
    tm.j += dj;
    require(tm.i >= 0, "shift produced negative x-exponent");
  }
  return r;
}
bool divisible_coeffs(const BiLaurent& a, std::uint64_t m) {
  for (const auto& tm : a.t)
    if (tm.c % m) return false;
  return true;
}
std::optional<BiLaurent> div_coeffs_checked(const BiLaurent& a, std::uint64_t dv) {
  BiLaurent r;
  for (const auto& tm : a.t) {
    if (tm.c % dv) return std::nullopt;
    r.t.push_back({tm.i, tm.j, tm.c / dv});
  }
  return r;
}

// ---------------------------------------------------------------------------

Res UniLaurent::coeff(int e) const {
  auto it = std::lower_bound(t.begin(), t.end(), e,
                             [](const UniTerm& a, int v) { return a.e < v; });
  if (it != t.end() && it->e == e) return it->c;
  return 0;
}

UniLaurent uni_from_terms(std::vector<UniTerm> terms, const RingSpec& ring) {
  std::unordered_map<std::int64_t, Res> acc;
  for (const auto& tm : terms) {
    auto& v = acc[tm.e];
    v = ring.add(v, ring.reduce_u(tm.c));
  }
  UniLaurent r;
  for (const auto& [e, c] : acc)
    if (c) r.t.push_back({static_cast<std::int32_t>(e), c});
  std::sort(r.t.begin(), r.t.end(), [](const UniTerm& a, const UniTerm& b) { return a.e < b.e; });
  return r;
}
UniLaurent uni_monomial(int e, Res c, const RingSpec& ring) {
  return uni_from_terms({{static_cast<std::int32_t>(e), c}}, ring);
}
UniLaurent add(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring) {
  std::vector<UniTerm> ts = a.t;
  ts.insert(ts.end(), b.t.begin(), b.t.end());
  return uni_from_terms(std::move(ts), ring);
}
UniLaurent sub(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring) {
  std::vector<UniTerm> ts = a.t;
  for (const auto& tm : b.t) ts.push_back({tm.e, ring.neg(tm.c)});
  return uni_from_terms(std::move(ts), ring);
}
UniLaurent mul(const UniLaurent& a, const UniLaurent& b, const RingSpec& ring) {
  std::unordered_map<std::int64_t, Res> acc;
  for (const auto& ta : a.t)
    for (const auto& tb : b.t) {
      auto& v = acc[static_cast<std::int64_t>(ta.e) + tb.e];
      v = ring.add(v, ring.mul(ta.c, tb.c));
    }
  UniLaurent r;
  for (const auto& [e, c] : acc)
    if (c) r.t.push_back({static_cast<std::int32_t>(e), c});
  std::sort(r.t.begin(), r.t.end(), [](const UniTerm& x, const UniTerm& y) { return x.e < y.e; });
  return r;
}
UniLaurent pow(const UniLaurent& a, std::uint64_t e, const RingSpec& ring) {
  UniLaurent acc = uni_monomial(0, 1, ring), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base, ring);
    e >>= 1;
    if (e) base = mul(base, base, ring);
  }
  return acc;
}
UniLaurent reduce_coeffs(const UniLaurent& a, std::uint64_t m) {
  UniLaurent r;
  for (const auto& tm : a.t) {
    Res c = tm.c % m;
    if (c) r.t.push_back({tm.e, c});
  }
  return r;
}
UniLaurent cartier(const UniLaurent& a, unsigned r, std::uint64_t p) {
  UniLaurent out;
  auto pp = static_cast<std::int64_t>(p);
  for (const auto& tm : a.t) {
    if (!congruent(tm.e, static_cast<std::int64_t>(r), pp)) continue;
    out.t.push_back({static_cast<std::int32_t>(fdiv(tm.e - static_cast<std::int64_t>(r), pp)),
                     tm.c});
  }
  std::sort(out.t.begin(), out.t.end(),
            [](const UniTerm& x, const UniTerm& y) { return x.e < y.e; });
  return out;
}
UniLaurent shift(const UniLaurent& a, int de) {
  UniLaurent r = a;
  for (auto& tm : r.t) tm.e += de;
  return r;
}
bool divisible_coeffs(const UniLaurent& a, std::uint64_t m) {
  for (const auto& tm : a.t)
    if (tm.c % m) return false;
  return true;
}
std::optional<UniLaurent> div_coeffs_checked(const UniLaurent& a, std::uint64_t dv) {
  UniLaurent r;
  for (const auto& tm : a.t) {
    if (tm.c % dv) return std::nullopt;
    r.t.push_back({tm.e, tm.c / dv});
  }
  return r;
}

// Dense exact division in F_p[z]; inputs as (offset, coefficient vector).
namespace {
struct DensePoly {
  int off = 0;
  std::vector<Res> c;  // c[k] is the coefficient of z^(off+k); c.back() != 0
};
DensePoly densify(const UniLaurent& a, std::uint64_t p) {
  DensePoly d;
  UniLaurent ap = reduce_coeffs(a, p);
  if (ap.is_zero()) return d;
  d.off = ap.mindeg();
  d.c.assign(static_cast<std::size_t>(ap.deg() - ap.mindeg() + 1), 0);
  for (const auto& tm : ap.t) d.c[static_cast<std::size_t>(tm.e - d.off)] = tm.c % p;
  return d;
}
}  // namespace

std::optional<UniLaurent> divide_exact_fp(const UniLaurent& a, const UniLaurent& b,
                                          std::uint64_t p) {
  RingSpec fp(p, 1);
  DensePoly A = densify(a, p), B = densify(b, p);
  require(!B.c.empty(), "division by zero polynomial");
  if (A.c.empty()) return UniLaurent{};
  if (A.c.size() < B.c.size()) return std::nullopt;
  Res lead_inv = inv(B.c.back(), fp);
  std::vector<Res> rem = A.c, quot(A.c.size() - B.c.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Res q = fp.mul(rem[k + B.c.size() - 1], lead_inv);
    quot[k] = q;
    if (q)
      for (std::size_t s = 0; s < B.c.size(); ++s)
        rem[k + s] = fp.sub(rem[k + s], fp.mul(q, B.c[s]));
  }
  for (Res v : rem)
    if (v) return std::nullopt;
  UniLaurent out;
  for (std::size_t k = 0; k < quot.size(); ++k)
    if (quot[k])
      out.t.push_back({static_cast<std::int32_t>(A.off - B.off + static_cast<int>(k)), quot[k]});
  return out;
}

std::optional<BiLaurent> divide_exact_fp(const BiLaurent& a, const BiLaurent& b,
                                         std::uint64_t p) {
  RingSpec fp(p, 1);
  BiLaurent A = reduce_coeffs(a, p), B = reduce_coeffs(b, p);
  require(!B.is_zero(), "division by zero polynomial");
  if (A.is_zero()) return BiLaurent{};
  // Long division on leading y-slices; top slices of a product multiply, so each
  // quotient slice is forced and must divide exactly in F_p[x].
  int span_cap = (A.deg_y() - A.mindeg_y()) + 1;
  BiLaurent quot;
  int guard = 0;
  while (!A.is_zero()) {
    if (++guard > span_cap + 1) return std::nullopt;
    int ja = A.deg_y(), jb = B.deg_y();
    UniLaurent la = project(A, 'y', ja), lb = project(B, 'y', jb);
    auto cq = divide_exact_fp(la, lb, p);  // slice lives in F_p[x]
    if (!cq) return std::nullopt;
    if (cq->mindeg() < 0) return std::nullopt;
    BiLaurent piece;
    for (const auto& tm : cq->t) piece.t.push_back({tm.e, ja - jb, tm.c});
    std::sort(piece.t.begin(), piece.t.end(), [](const BiTerm& x, const BiTerm& y) {
      return x.i != y.i ? x.i < y.i : x.j < y.j;
    });
    quot = add(quot, piece, fp);
    A = sub(A, mul(piece, B, fp), fp);
    if (!A.is_zero() && A.deg_y() >= ja) return std::nullopt;
  }
  return quot;
}

UniLaurent project(const BiLaurent& s, char axis, int index) {
  UniLaurent out;
  for (const auto& tm : s.t) {
    if (axis == 'x' && tm.i == index) out.t.push_back({tm.j, tm.c});
    if (axis == 'y' && tm.j == index) out.t.push_back({tm.i, tm.c});
  }
  std::sort(out.t.begin(), out.t.end(),
            [](const UniTerm& a, const UniTerm& b) { return a.e < b.e; });
  return out;
}

// ---------------------------------------------------------------------------

int MultiPoly::deg_var(unsigned v) const {
  if (t.empty()) return kNegInf;
  int mx = 0;
  for (const auto& [e, c] : t) mx = std::max(mx, static_cast<int>(e[v]));
  return mx;
}
Res MultiPoly::coeff(const std::vector<std::int32_t>& e) const {
  for (const auto& [ee, c] : t)
    if (ee == e) return c;
  return 0;
}
Res MultiPoly::ct() const {
  return coeff(std::vector<std::int32_t>(m, 0));
}

MultiPoly mp_from_terms(unsigned m, std::vector<std::pair<std::vector<std::int32_t>, Res>> terms,
                        const RingSpec& ring) {
  std::map<std::vector<std::int32_t>, Res> acc;
  for (auto& [e, c] : terms) {
    require(e.size() == m, "exponent arity mismatch");
    for (auto v : e) require(v >= 0, "negative exponent in polynomial");
    Res& slot = acc[e];
    slot = ring.add(slot, ring.reduce_u(c));
  }
  MultiPoly r;
  r.m = m;
  for (auto& [e, c] : acc)
    if (c) r.t.emplace_back(e, c);
  return r;
}
MultiPoly add(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring) {
  require(a.m == b.m, "arity mismatch");
  auto ts = a.t;
  ts.insert(ts.end(), b.t.begin(), b.t.end());
  return mp_from_terms(a.m, std::move(ts), ring);
}
MultiPoly sub(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring) {
  require(a.m == b.m, "arity mismatch");
  auto ts = a.t;
  for (const auto& [e, c] : b.t) ts.emplace_back(e, ring.neg(c));
  return mp_from_terms(a.m, std::move(ts), ring);
}
MultiPoly mul(const MultiPoly& a, const MultiPoly& b, const RingSpec& ring,
              std::size_t monomial_budget) {
  require(a.m == b.m, "arity mismatch");
  std::map<std::vector<std::int32_t>, Res> acc;
  std::vector<std::int32_t> e(a.m);
  for (const auto& [ea, ca] : a.t)
    for (const auto& [eb, cb] : b.t) {
      for (unsigned v = 0; v < a.m; ++v) e[v] = ea[v] + eb[v];
      Res& slot = acc[e];
      slot = ring.add(slot, ring.mul(ca, cb));
      if (monomial_budget && acc.size() > monomial_budget)
        throw BudgetExceeded("monomial cap " + std::to_string(monomial_budget));
    }
  MultiPoly r;
  r.m = a.m;
  for (auto& [ee, c] : acc)
    if (c) r.t.emplace_back(ee, c);
  return r;
}
MultiPoly pow(const MultiPoly& a, std::uint64_t e, const RingSpec& ring,
              std::size_t monomial_budget) {
  MultiPoly acc = mp_from_terms(a.m, {{std::vector<std::int32_t>(a.m, 0), 1}}, ring);
  MultiPoly base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base, ring, monomial_budget);
    e >>= 1;
    if (e) base = mul(base, base, ring, monomial_budget);
  }
  return acc;
}
MultiPoly reduce_coeffs(const MultiPoly& a, std::uint64_t m) {
  MultiPoly r;
  r.m = a.m;
  for (const auto& [e, c] : a.t)
    if (c % m) r.t.emplace_back(e, c % m);
  return r;
}
MultiPoly cartier_diag(const MultiPoly& a, unsigned r, std::uint64_t p) {
  MultiPoly out;
  out.m = a.m;
  for (const auto& [e, c] : a.t) {
    bool keep = true;
    for (auto v : e)
      if (static_cast<std::uint64_t>(v) % p != r) {
        keep = false;
        break;
      }
    if (!keep) continue;
    std::vector<std::int32_t> ee(e.size());
    for (std::size_t k = 0; k < e.size(); ++k)
      ee[k] = static_cast<std::int32_t>((e[k] - static_cast<std::int32_t>(r)) / static_cast<std::int32_t>(p));
    out.t.emplace_back(std::move(ee), c);
  }
  std::sort(out.t.begin(), out.t.end());
  return out;
}

BiLaurent to_bilaurent(const MultiPoly& a) {
  require(a.m == 2, "bivariate view needs m = 2");
  BiLaurent r;
  for (const auto& [e, c] : a.t) r.t.push_back({e[0], e[1], c});
  std::sort(r.t.begin(), r.t.end(), [](const BiTerm& x, const BiTerm& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return r;
}
MultiPoly to_multipoly(const BiLaurent& a) {
  MultiPoly r;
  r.m = 2;
  for (const auto& tm : a.t) {
    require(tm.j >= 0, "negative y-exponent cannot become a polynomial term");
    r.t.emplace_back(std::vector<std::int32_t>{tm.i, tm.j}, tm.c);
  }
  std::sort(r.t.begin(), r.t.end());
  return r;
}
UniLaurent to_unilaurent(const MultiPoly& a) {
  require(a.m == 1, "univariate view needs m = 1");
  UniLaurent r;
  for (const auto& [e, c] : a.t) r.t.push_back({e[0], c});
  std::sort(r.t.begin(), r.t.end(),
            [](const UniTerm& x, const UniTerm& y) { return x.e < y.e; });
  return r;
}

// ---------------------------------------------------------------------------

namespace {
void append_power(std::string& s, const std::string& var, int e) {
  if (e == 0) return;
  s += s.empty() ? "" : "*";
  s += var;
  if (e != 1) {
    s += "^";
    s += std::to_string(e);
  }
}
std::string term_text(Res c, const std::vector<std::pair<std::string, int>>& powers) {
  std::string vars;
  for (const auto& [v, e] : powers) append_power(vars, v, e);
  if (vars.empty()) return std::to_string(c);
  if (c == 1) return vars;
  return std::to_string(c) + "*" + vars;
}
}  // namespace

std::string print(const BiLaurent& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& tm : a.t) {
    if (!s.empty()) s += "+";
    s += term_text(tm.c, {{"x", tm.i}, {"y", tm.j}});
  }
  return s;
}
std::string print(const UniLaurent& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& tm : a.t) {
    if (!s.empty()) s += "+";
    s += term_text(tm.c, {{"z", tm.e}});
  }
  return s;
}
std::vector<std::string> default_vars(unsigned m) {
  if (m == 1) return {"z"};
  if (m == 2) return {"x", "y"};
  std::vector<std::string> v;
  for (unsigned k = 1; k <= m; ++k) v.push_back("x" + std::to_string(k));
  return v;
}
std::string print(const MultiPoly& a, const std::vector<std::string>& vars) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : a.t) {
    std::vector<std::pair<std::string, int>> powers;
    for (unsigned v = 0; v < a.m; ++v) powers.emplace_back(vars[v], e[v]);
    if (!s.empty()) s += "+";
    s += term_text(c, powers);
  }
  return s;
}
std::string print(const MultiPoly& a) { return print(a, default_vars(a.m)); }

// ---------------------------------------------------------------------------

CurveSpec curve_derived(const MultiPoly& P, const RingSpec& ring) {
  require(P.m == 2, "curve polynomial must be bivariate");
  CurveSpec c;
  c.ring = ring;
  c.P = reduce_coeffs(P, ring.modulus);
  c.Pxy = to_bilaurent(c.P);
  if (c.Pxy.coeff(0, 0) != 0) throw InvalidCurve("P(0,0) must be 0");
  // dP/dy(0,0) is the coefficient of x^0 y^1; it must be a unit mod p.
  if (c.Pxy.coeff(0, 1) % ring.p == 0)
    throw InvalidCurve("dP/dy(0,0) must be a unit mod p (coefficient of y vanishes)");
  c.Py = shift(c.Pxy, 0, -1);
  BiLaurent pmodp = reduce_coeffs(c.Pxy, ring.p);
  c.h = pmodp.deg_x();
  c.d = pmodp.deg_y();
  require(c.d >= 1, "deg_y(P mod p) must be >= 1");
  for (unsigned k = 0; k < ring.alpha; ++k) {
    BiLaurent pk = reduce_coeffs(c.Pxy, upow(ring.p, k + 1));
    c.hk.push_back(pk.deg_x());
    c.dk.push_back(pk.deg_y());
  }
  c.polynomial_trivial = (c.h == 0);
  return c;
}

BiLaurent y_dy(const BiLaurent& a, const RingSpec& ring) {
  BiLaurent r;
  for (const auto& tm : a.t) {
    Res c = ring.mul(tm.c, ring.reduce_i(tm.j));
    if (c) r.t.push_back({tm.i, tm.j, c});
  }
  return r;
}

DiagonalSpec diagonal_derived(const MultiPoly& num, const MultiPoly& den, const RingSpec& ring) {
  require(num.m == den.m, "numerator/denominator arity mismatch");
  if (den.m < 2) throw BadConfig("diagonal needs at least 2 variables");
  DiagonalSpec s;
  s.ring = ring;
  s.m = den.m;
  s.num = reduce_coeffs(num, ring.modulus);
  s.den = reduce_coeffs(den, ring.modulus);
  if (s.den.ct() % ring.p == 0)
    throw InvalidDenominator("constant term must be a unit mod p");
  MultiPoly np = reduce_coeffs(s.num, ring.p), dp = reduce_coeffs(s.den, ring.p);
  for (unsigned v = 0; v < s.m; ++v) {
    int dn = np.is_zero() ? 0 : np.deg_var(v);
    int dd = dp.deg_var(v);  // nonzero: unit constant term
    s.hi.push_back(std::max({dn, dd, 0}));
  }
  return s;
}

DiagonalSpec shear_diagonal(const CurveSpec& curve) {
  const RingSpec& ring = curve.ring;
  std::vector<std::pair<std::vector<std::int32_t>, Res>> nt, dt;
  for (const auto& tm : curve.Pxy.t) {
    // x^i y^j -> x^i y^(i+j); P(0,0) = 0 makes i+j >= 1.
    require(tm.i + tm.j >= 1, "curve monomial below the shear line");
    Res w = ring.mul(tm.c, ring.reduce_i(tm.j));
    if (w) nt.push_back({{tm.i, tm.i + tm.j}, w});
    dt.push_back({{tm.i, tm.i + tm.j - 1}, tm.c});
  }
  MultiPoly num = mp_from_terms(2, std::move(nt), ring);
  MultiPoly den = mp_from_terms(2, std::move(dt), ring);
  return diagonal_derived(num, den, ring);
}

}  // namespace padic
