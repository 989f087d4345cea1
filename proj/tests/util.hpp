#pragma once

#include <random>

#include "padic/poly.hpp"

namespace padic::testutil {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline BiLaurent rand_bi(Rng& rng, const RingSpec& ring, int max_i, int min_j, int max_j,
                         int nterms) {
  std::vector<BiTerm> ts;
  for (int k = 0; k < nterms; ++k) {
    auto i = static_cast<std::int32_t>(rand_int(rng, 0, max_i));
    auto j = static_cast<std::int32_t>(rand_int(rng, min_j, max_j));
    auto c = static_cast<Res>(rand_int(rng, 0, static_cast<int>(ring.modulus) - 1));
    ts.push_back({i, j, c});
  }
  return bi_from_terms(std::move(ts), ring);
}

// Support restricted to j >= -i (the module automaton states live in).
inline BiLaurent rand_bi_module(Rng& rng, const RingSpec& ring, int max_i, int max_j,
                                int nterms) {
  std::vector<BiTerm> ts;
  for (int k = 0; k < nterms; ++k) {
    auto i = static_cast<std::int32_t>(rand_int(rng, 0, max_i));
    auto j = static_cast<std::int32_t>(rand_int(rng, -i, max_j));
    auto c = static_cast<Res>(rand_int(rng, 0, static_cast<int>(ring.modulus) - 1));
    ts.push_back({i, j, c});
  }
  return bi_from_terms(std::move(ts), ring);
}

inline UniLaurent rand_uni(Rng& rng, const RingSpec& ring, int min_e, int max_e, int nterms) {
  std::vector<UniTerm> ts;
  for (int k = 0; k < nterms; ++k) {
    auto e = static_cast<std::int32_t>(rand_int(rng, min_e, max_e));
    auto c = static_cast<Res>(rand_int(rng, 0, static_cast<int>(ring.modulus) - 1));
    ts.push_back({e, c});
  }
  return uni_from_terms(std::move(ts), ring);
}

inline MultiPoly rand_mp(Rng& rng, const RingSpec& ring, unsigned m, int max_e, int nterms) {
  std::vector<std::pair<std::vector<std::int32_t>, Res>> ts;
  for (int k = 0; k < nterms; ++k) {
    std::vector<std::int32_t> e(m);
    for (auto& v : e) v = static_cast<std::int32_t>(rand_int(rng, 0, max_e));
    ts.emplace_back(e, static_cast<Res>(rand_int(rng, 0, static_cast<int>(ring.modulus) - 1)));
  }
  return mp_from_terms(m, std::move(ts), ring);
}

}  // namespace padic::testutil
