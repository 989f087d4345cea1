#include "padic/numeration.hpp"

#include <algorithm>
#include <unordered_map>

#include "padic/budget.hpp"

namespace padic {

namespace {

inline std::uint64_t pack(std::int32_t i, std::int32_t j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

std::uint64_t binom_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (unsigned t = 1; t <= k; ++t) {
    acc = acc * (n - k + t) / t;
    require(acc <= ~0ull, "binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

BiLaurent sorted_terms(std::vector<BiTerm> ts) {
  BiLaurent r;
  r.t = std::move(ts);
  std::sort(r.t.begin(), r.t.end(), [](const BiTerm& a, const BiTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return r;
}

// Digit-by-digit solve of S = sum_k T_k p^k Q^offs[k] over F_p at each level.
DigitTuple digit_solve(const BiLaurent& S, const std::vector<BiLaurent>& qpow,
                       const std::vector<unsigned>& offs, const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  std::uint64_t p = ring.p;
  DigitTuple t;
  BiLaurent acc = S;
  std::uint64_t pk = 1;
  for (unsigned k = 0; k < alpha; ++k) {
    BiLaurent e = reduce_coeffs(acc, pk * p);
    auto g = div_coeffs_checked(e, pk);
    if (!g) throw NotRepresentable("level " + std::to_string(k) + " not divisible by p^k");
    auto digit = divide_exact_fp(*g, qpow[offs[k]], p);
    if (!digit)
      throw NotRepresentable("level " + std::to_string(k) + " quotient is not a polynomial");
    t.digits.push_back(*digit);
    acc = sub(acc, mul_scalar(mul(*digit, qpow[offs[k]], ring, monomial_budget()),
                              ring.reduce_u(pk), ring),
              ring);
    pk *= p;
  }
  require(reduce_coeffs(acc, ring.modulus).is_zero(), "digit solve left a nonzero remainder");
  return t;
}

// Expanding Q^e term by term is the dominant cost of value/representation
// conversions; refuse exponents that cannot possibly fit the monomial budget.
void check_expansion_budget(std::uint64_t e) {
  std::uint64_t cap = monomial_budget();
  if (cap && e > cap) throw BudgetExceeded("power expansion exponent exceeds monomial budget");
}

std::vector<BiLaurent> q_powers(const BiLaurent& Q, unsigned count, const RingSpec& ring) {
  std::vector<BiLaurent> qp;
  qp.reserve(count + 1);
  qp.push_back(bi_const(1, ring));
  for (unsigned e = 1; e <= count; ++e)
    qp.push_back(mul(qp.back(), Q, ring, monomial_budget()));
  return qp;
}

// Lambda_{r,s}(T * Z) with Z pre-binned and pre-divided; coefficients mod m.
BiLaurent cartier_mul_binned(const BiLaurent& t, const std::vector<std::vector<BiTerm>>& bins,
                             unsigned r, unsigned s, std::uint64_t p, std::uint64_t m) {
  std::unordered_map<std::uint64_t, Res> acc;
  auto pp = static_cast<std::int64_t>(p);
  for (const auto& tm : t.t) {
    auto ra = static_cast<std::int64_t>(tm.i % pp);
    std::int64_t rb = ((tm.j % pp) + pp) % pp;
    std::int64_t re = (static_cast<std::int64_t>(r) + pp - ra) % pp;
    std::int64_t rf = (static_cast<std::int64_t>(s) + pp - rb) % pp;
    std::int64_t cx = (ra + re - static_cast<std::int64_t>(r)) / pp;  // 0 or 1
    std::int64_t cy = (rb + rf - static_cast<std::int64_t>(s)) / pp;
    std::int64_t base_i = tm.i / pp + cx;
    std::int64_t base_j = (tm.j - rb) / pp + cy;
    for (const auto& z : bins[static_cast<std::size_t>(re * pp + rf)]) {
      auto& slot = acc[pack(static_cast<std::int32_t>(base_i + z.i),
                            static_cast<std::int32_t>(base_j + z.j))];
      slot = static_cast<Res>((slot + static_cast<unsigned __int128>(tm.c) * z.c) % m);
    }
  }
  std::vector<BiTerm> out;
  out.reserve(acc.size());
  for (const auto& [key, c] : acc)
    if (c)
      out.push_back({static_cast<std::int32_t>(static_cast<std::uint32_t>(key >> 32)),
                     static_cast<std::int32_t>(static_cast<std::uint32_t>(key)), c});
  return sorted_terms(std::move(out));
}

}  // namespace

std::string digit_key(const DigitTuple& t) {
  std::string k;
  for (const auto& d : t.digits) {
    k += '#';
    for (const auto& tm : d.t) {
      k += std::to_string(tm.i);
      k += ',';
      k += std::to_string(tm.j);
      k += ',';
      k += std::to_string(tm.c);
      k += ';';
    }
  }
  return k;
}

BiLaurent make_lift(const BiLaurent& den, const RingSpec& ring) {
  BiLaurent q = reduce_coeffs(den, ring.p);
  require(q.ct() % ring.p != 0, "lift needs a unit constant term");
  return q;
}

BiLaurent make_Q(const CurveSpec& curve) { return make_lift(curve.Py, curve.ring); }

DigitTuple initial_digits_of(const BiLaurent& num, const BiLaurent& den, const BiLaurent& Q,
                             const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  require(divisible_coeffs(sub(Q, den, ring), ring.p), "Q must lift den mod p");

  // A = Q^alpha / den mod p^alpha, computable because Q - den = 0 mod p:
  // A = sum_{m=1}^{alpha} binom(alpha, m) den^(m-1) (Q - den)^(alpha-m).
  BiLaurent dprime = sub(Q, den, ring);
  std::vector<BiLaurent> denp = {bi_const(1, ring)}, dp = {bi_const(1, ring)};
  for (unsigned e = 1; e < alpha; ++e) {
    denp.push_back(mul(denp.back(), den, ring, monomial_budget()));
    dp.push_back(mul(dp.back(), dprime, ring, monomial_budget()));
  }
  BiLaurent a;
  for (unsigned m = 1; m <= alpha; ++m) {
    Res c = ring.reduce_u(binom_u64(alpha, m));
    if (!c) continue;
    a = add(a, mul_scalar(mul(denp[m - 1], dp[alpha - m], ring, monomial_budget()), c, ring),
            ring);
  }
  BiLaurent g = mul(num, a, ring, monomial_budget());

  std::vector<BiLaurent> qpow = q_powers(Q, alpha - 1, ring);
  std::vector<unsigned> offs(alpha);
  for (unsigned k = 0; k < alpha; ++k) offs[k] = alpha - 1 - k;
  try {
    return digit_solve(g, qpow, offs, ring);
  } catch (const NotRepresentable&) {
    die("initial state has no digit representation");
  }
}

DigitTuple initial_digits(const CurveSpec& curve, const RingSpec& ring) {
  return initial_digits_of(y_dy(curve.Pxy, ring), curve.Py, make_Q(curve), ring);
}

BiLaurent val(const DigitTuple& t, const BiLaurent& Q, const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  require(t.digits.size() == alpha, "digit count must equal alpha");
  std::uint64_t big = upow(ring.p, alpha - 1) - 1;  // p^(alpha-1) - 1
  require(big >= alpha - 1, "exponent arithmetic underflow");
  check_expansion_budget(big);
  std::vector<BiLaurent> qpow = q_powers(Q, static_cast<unsigned>(big), ring);
  BiLaurent s;
  std::uint64_t pk = 1;
  for (unsigned k = 0; k < alpha; ++k) {
    s = add(s,
            mul_scalar(mul(t.digits[k], qpow[big - k], ring, monomial_budget()),
                       ring.reduce_u(pk), ring),
            ring);
    pk *= ring.p;
  }
  return s;
}

DigitTuple rep(const BiLaurent& S, const BiLaurent& Q, const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  std::uint64_t big = upow(ring.p, alpha - 1) - 1;
  check_expansion_budget(big);
  std::vector<BiLaurent> qpow = q_powers(Q, static_cast<unsigned>(big), ring);
  std::vector<unsigned> offs(alpha);
  for (unsigned k = 0; k < alpha; ++k) offs[k] = static_cast<unsigned>(big - k);
  return digit_solve(S, qpow, offs, ring);
}

DigitTuple carry_normalize(std::vector<BiLaurent> raw, const BiLaurent& Q, const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  require(raw.size() == alpha, "raw digit count must equal alpha");
  DigitTuple t;
  BiLaurent carry;
  for (unsigned k = 0; k < alpha; ++k) {
    BiLaurent cur = add(raw[k], carry, ring);
    std::vector<BiTerm> low, high;
    for (const auto& tm : cur.t) {
      Res r = tm.c % ring.p, u = tm.c / ring.p;
      if (r) low.push_back({tm.i, tm.j, r});
      if (u) high.push_back({tm.i, tm.j, u});
    }
    t.digits.push_back(sorted_terms(std::move(low)));
    if (k + 1 < alpha)
      carry = mul(sorted_terms(std::move(high)), Q, ring, monomial_budget());
  }
  return t;
}

ZTable build_ztable(const BiLaurent& Q, const RingSpec& ring) {
  unsigned alpha = ring.alpha;
  std::uint64_t p = ring.p;
  ZTable zt;
  zt.ring = ring;
  zt.Q = Q;
  zt.delta = sub(frobenius_sub(Q, p), pow(Q, p, ring, monomial_budget()), ring);
  require(divisible_coeffs(zt.delta, p), "frobenius defect must vanish mod p");

  unsigned qmax = static_cast<unsigned>(p) * alpha;  // covers pm-k-1 <= p*alpha - 1
  zt.qpow = q_powers(Q, qmax, ring);
  std::vector<BiLaurent> dpow = {bi_const(1, ring)};
  for (unsigned e = 1; e < alpha; ++e)
    dpow.push_back(mul(dpow.back(), zt.delta, ring, monomial_budget()));

  zt.z.resize(alpha);
  zt.bins.resize(alpha);
  for (unsigned j = 0; j < alpha; ++j) {
    zt.z[j].resize(alpha - j);
    zt.bins[j].resize(alpha - j);
    std::uint64_t modj = upow(p, j + 1);
    for (unsigned k = 0; k + j < alpha; ++k) {
      BiLaurent z;
      for (unsigned m = k + 1; m <= k + j + 1; ++m) {
        Res c = binom_u64(k + j + 1, m) % modj;
        if (!c) continue;
        BiLaurent part = mul(zt.qpow[p * m - k - 1], dpow[k + j + 1 - m], ring,
                             monomial_budget());
        z = add(z, mul_scalar(part, c, ring), ring);
      }
      z = reduce_coeffs(z, modj);
      zt.z[j][k] = z;

      auto& bins = zt.bins[j][k];
      bins.assign(static_cast<std::size_t>(p * p), {});
      auto pp = static_cast<std::int64_t>(p);
      for (const auto& tm : z.t) {
        std::int64_t re = tm.i % pp;
        std::int64_t rf = ((tm.j % pp) + pp) % pp;
        bins[static_cast<std::size_t>(re * pp + rf)].push_back(
            {static_cast<std::int32_t>(tm.i / pp),
             static_cast<std::int32_t>((tm.j - rf) / pp), tm.c});
      }
    }
  }
  return zt;
}

DigitTuple digit_step_rs(const DigitTuple& t, unsigned r, unsigned s, const ZTable& zt,
                         std::vector<std::vector<BiLaurent>>* utable) {
  const RingSpec& ring = zt.ring;
  unsigned alpha = ring.alpha;
  std::uint64_t p = ring.p;
  require(t.digits.size() == alpha, "digit count must equal alpha");
  if (utable) utable->assign(alpha, {});

  std::vector<BiLaurent> raw(alpha);
  for (unsigned k = 0; k < alpha; ++k) {
    const BiLaurent& tk = t.digits[k];
    std::vector<BiLaurent> u;
    for (unsigned j = 0; k + j < alpha; ++j) {
      std::uint64_t modj = upow(p, j + 1);
      RingSpec ringj = ring.truncated(j + 1);
      BiLaurent e = cartier_mul_binned(tk, zt.bins[j][k], r, s, p, modj);
      std::uint64_t pi = 1;
      for (unsigned i = 0; i < j; ++i) {
        BiLaurent back = mul(u[i], reduce_coeffs(zt.qpow[j - i], modj), ringj,
                             monomial_budget());
        e = sub(e, mul_scalar(back, pi % modj, ringj), ringj);
        pi *= p;
      }
      auto uj = div_coeffs_checked(e, pi);
      require(uj.has_value(), "digit transition level not divisible by p^j");
      u.push_back(reduce_coeffs(*uj, p));
      raw[k + j] = add(raw[k + j], u.back(), ring);
    }
    if (utable) (*utable)[k] = std::move(u);
  }
  return carry_normalize(std::move(raw), zt.Q, ring);
}

DigitTuple digit_step(const DigitTuple& t, unsigned r, const ZTable& zt) {
  return digit_step_rs(t, r, 0, zt);
}

Res output_of(const DigitTuple& t, const BiLaurent& Q, const RingSpec& ring) {
  Res ci = inv(Q.ct(), ring);
  Res out = 0, pk = 1, cpow = ci;
  for (const auto& d : t.digits) {
    out = ring.add(out, ring.mul(d.ct(), ring.mul(pk, cpow)));
    pk = ring.reduce_u(pk * ring.p);
    cpow = ring.mul(cpow, ci);
  }
  return out;
}

bool DigitBox::contains(const DigitTuple& t) const {
  for (std::size_t k = 0; k < t.digits.size(); ++k) {
    auto kk = static_cast<int>(k);
    int xmax = (kk + 1) * h - (kind == BoxKind::V ? 0 : 1);
    int xmin = kind == BoxKind::VInterior ? 1 : 0;
    int ymax = (kk + 1) * (d - 1) - (kind == BoxKind::VInterior ? 1 : 0);
    for (const auto& tm : t.digits[k].t) {
      if (tm.i < xmin || tm.i > xmax) return false;
      if (tm.j > ymax) return false;
      if (tm.j < -std::min(static_cast<int>(tm.i), kk)) return false;
    }
  }
  return true;
}

unsigned transient_steps(const CurveSpec& curve) {
  const RingSpec& ring = curve.ring;
  unsigned alpha = ring.alpha;
  long long ha = curve.hk[alpha - 1], da = curve.dk[alpha - 1];
  long long arg = std::max(static_cast<long long>(alpha) * (ha - curve.h),
                           static_cast<long long>(alpha) * (da - curve.d) + 1);
  if (arg < 1) arg = 1;
  return static_cast<unsigned>(floor_log(static_cast<std::uint64_t>(arg), ring.p)) + 1;
}

}  // namespace padic
