#include "padic/oracle.hpp"

#include <algorithm>
#include <set>

#include "padic/budget.hpp"

namespace padic {

namespace {

using Series = std::vector<Res>;  // dense, index = x-exponent

// Truncated product. Moduli small enough to accumulate without per-term
// reduction take the fast path; the guard keeps the u128 sum from wrapping.
Series series_mul(const Series& a, const Series& b, std::size_t n, const RingSpec& ring) {
  Series out(n, 0);
  bool fast = ring.modulus < (1ull << 24);
  if (fast) {
    for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
      if (!a[i]) continue;
      std::uint64_t ai = a[i];
      std::size_t jmax = std::min(b.size(), n - i);
      for (std::size_t j = 0; j < jmax; ++j)
        out[i + j] = (out[i + j] + ai * b[j]) % ring.modulus;
    }
    return out;
  }
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
    if (!a[i]) continue;
    std::size_t jmax = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j)
      out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
  }
  return out;
}

Series series_add(const Series& a, const Series& b, std::size_t n, const RingSpec& ring) {
  Series out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Res x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    out[i] = ring.add(x, y);
  }
  return out;
}

Series series_inv(const Series& f, std::size_t n, const RingSpec& ring) {
  require(!f.empty() && f[0] % ring.p != 0, "series inverse needs a unit constant term");
  Series g(n, 0);
  Res c0 = inv(f[0], ring);
  g[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    Res acc = 0;
    std::size_t tmax = std::min(k, f.size() - 1);
    for (std::size_t t = 1; t <= tmax; ++t)
      acc = ring.add(acc, ring.mul(f[t], g[k - t]));
    g[k] = ring.mul(ring.neg(acc), c0);
  }
  return g;
}

// P grouped by y-exponent: dense x-coefficient rows cy[j].
std::vector<Series> y_rows(const BiLaurent& pxy) {
  int d = pxy.deg_y();
  require(pxy.mindeg_y() >= 0, "curve polynomial has negative y-exponents");
  std::vector<Series> rows(static_cast<std::size_t>(d) + 1);
  for (const auto& tm : pxy.t) {
    auto& row = rows[static_cast<std::size_t>(tm.j)];
    if (row.size() <= static_cast<std::size_t>(tm.i)) row.resize(tm.i + 1, 0);
    row[static_cast<std::size_t>(tm.i)] = tm.c;
  }
  return rows;
}

// Horner evaluation of sum_j rows[j] * f^j, truncated to length n.
Series horner(const std::vector<Series>& rows, const Series& f, std::size_t n,
              const RingSpec& ring) {
  Series acc(n, 0);
  for (std::size_t j = rows.size(); j-- > 0;) {
    acc = series_mul(acc, f, n, ring);
    acc = series_add(acc, rows[j], n, ring);
  }
  return acc;
}

}  // namespace

std::vector<Res> curve_residual(const CurveSpec& curve, const std::vector<Res>& f,
                                const RingSpec& ring) {
  return horner(y_rows(curve.Pxy), f, f.size(), ring);
}

SeriesPrefix series_solve(const CurveSpec& curve, std::size_t n_max, const RingSpec& ring) {
  std::size_t want = n_max + 1;
  auto rows = y_rows(curve.Pxy);
  std::vector<Series> drows(rows.size() ? rows.size() - 1 : 0);
  for (std::size_t j = 1; j < rows.size(); ++j) {
    drows[j - 1] = rows[j];
    for (auto& c : drows[j - 1]) c = ring.mul(c, ring.reduce_u(j));
  }

  Series f{0};
  std::size_t prec = 1;
  while (prec < want) {
    prec = std::min(prec * 2, want);
    f.resize(prec, 0);
    Series pf = horner(rows, f, prec, ring);
    Series pyf = horner(drows, f, prec, ring);
    Series corr = series_mul(pf, series_inv(pyf, prec, ring), prec, ring);
    for (std::size_t i = 0; i < prec; ++i) f[i] = ring.sub(f[i], corr[i]);
  }
  require(f[0] == 0, "series solution must vanish at 0");
  return {ring, std::move(f), "newton"};
}

SeriesPrefix diagonal_expand(const DiagonalSpec& spec, std::size_t n_max, const RingSpec& ring) {
  unsigned m = spec.m;
  std::size_t side = n_max + 1;
  double cells = 1;
  for (unsigned v = 0; v < m; ++v) cells *= static_cast<double>(side);
  std::size_t cap = monomial_budget();
  if (cap && cells > static_cast<double>(cap) * 8)
    throw BudgetExceeded("diagonal lattice of " + std::to_string(cells) + " cells");
  std::size_t total = 1;
  for (unsigned v = 0; v < m; ++v) total *= side;

  // Strides for row-major indexing; a term exponent vector maps to one offset.
  std::vector<std::size_t> stride(m);
  stride[m - 1] = 1;
  for (unsigned v = m - 1; v-- > 0;) stride[v] = stride[v + 1] * side;
  auto offset_of = [&](const std::vector<std::int32_t>& e) -> std::size_t {
    std::size_t o = 0;
    for (unsigned v = 0; v < m; ++v) o += stride[v] * static_cast<std::size_t>(e[v]);
    return o;
  };

  // Denominator terms that fit the lattice, constant term separated.
  struct DenTerm {
    std::size_t off;
    std::vector<std::int32_t> e;
    Res c;
  };
  Res c0 = spec.den.ct();
  Res c0i = inv(c0, ring);
  std::vector<DenTerm> dterms;
  for (const auto& [e, c] : spec.den.t) {
    if (std::all_of(e.begin(), e.end(),
                    [&](std::int32_t v) { return static_cast<std::size_t>(v) < side; })) {
      std::size_t o = offset_of(e);
      if (o != 0) dterms.push_back({o, e, c});
    }
  }

  // inv[v] with den * inv = 1 on the truncated lattice: every dependency
  // offset v - t is smaller, so one ascending pass fills the grid.
  std::vector<Res> invg(total, 0);
  invg[0] = c0i;
  std::vector<std::int32_t> idx(m, 0);
  for (std::size_t v = 1; v < total; ++v) {
    unsigned pos = m;
    while (pos-- > 0) {
      if (++idx[pos] < static_cast<std::int32_t>(side)) break;
      idx[pos] = 0;
    }
    Res acc = 0;
    for (const auto& dt : dterms) {
      bool ok = true;
      for (unsigned q = 0; q < m; ++q)
        if (dt.e[q] > idx[q]) {
          ok = false;
          break;
        }
      if (ok) acc = ring.add(acc, ring.mul(dt.c, invg[v - dt.off]));
    }
    invg[v] = ring.mul(ring.neg(acc), c0i);
  }

  // Diagonal of num * inv: a(n) = sum over num terms e of inv at (n,...,n) - e.
  std::vector<Res> out(side, 0);
  for (std::size_t n = 0; n < side; ++n) {
    Res acc = 0;
    for (const auto& [e, c] : spec.num.t) {
      bool ok = true;
      std::size_t o = 0;
      for (unsigned v = 0; v < m; ++v) {
        if (static_cast<std::size_t>(e[v]) > n) {
          ok = false;
          break;
        }
        o += stride[v] * (n - static_cast<std::size_t>(e[v]));
      }
      if (ok) acc = ring.add(acc, ring.mul(c, invg[o]));
    }
    out[n] = acc;
  }
  return {ring, std::move(out), "diagonal"};
}

std::size_t kernel_prefixes(const SeriesPrefix& s, unsigned e_max, std::size_t L) {
  std::uint64_t p = s.ring.p;
  std::uint64_t pe = 1;
  for (unsigned e = 0; e < e_max; ++e) {
    require(pe <= (1ull << 40) / p, "kernel prefix range overflow");
    pe *= p;
  }
  if (s.coeffs.size() < pe * L)
    throw PreconditionViolated("series prefix shorter than p^e_max * L");

  std::set<std::vector<Res>> seen;
  std::uint64_t stride = 1;
  for (unsigned e = 0; e <= e_max; ++e) {
    for (std::uint64_t r = 0; r < stride; ++r) {
      std::vector<Res> prefix(L);
      for (std::size_t n = 0; n < L; ++n) prefix[n] = s.coeffs[stride * n + r];
      seen.insert(std::move(prefix));
    }
    stride *= p;
  }
  return seen.size();
}

}  // namespace padic
