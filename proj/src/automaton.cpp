#include "padic/automaton.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "padic/budget.hpp"
#include "padic/errors.hpp"

namespace padic {

namespace {

// Runs work(lo, hi) over [0, n) split among the workers; exceptions from any
// worker are rethrown on the calling thread.
void run_chunked(std::size_t n, unsigned workers,
                 const std::function<void(std::size_t, std::size_t)>& work) {
  if (workers <= 1 || n < 2) {
    work(0, n);
    return;
  }
  auto w = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::size_t chunk = (n + w - 1) / w;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errs(w);
  for (unsigned t = 0; t < w; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, t, lo, hi] {
      try {
        work(lo, hi);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// Level-synchronous BFS over abstract states. Workers compute the images of
// the whole level in parallel; interning and numbering happen in a single
// deterministic merge pass (level order, symbols ascending), so the result is
// independent of the worker count.
template <typename State, typename StepFn, typename KeyFn, typename OutFn>
Automaton bfs_build(const RingSpec& ring, std::string source, State s0, const StepFn& step,
                    const KeyFn& key, const OutFn& out, const BuildOptions& opts) {
  auto p = static_cast<std::size_t>(ring.p);
  std::size_t cap = opts.state_cap ? opts.state_cap : state_budget();

  Automaton a;
  a.ring = ring;
  a.source = std::move(source);

  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<State> frontier;
  auto intern = [&](State s, std::string k) -> std::pair<std::uint32_t, bool> {
    auto [it, fresh] = index.try_emplace(std::move(k), static_cast<std::uint32_t>(index.size()));
    if (fresh) {
      if (cap && index.size() > cap) throw StateBudgetExceeded(cap);
      a.outputs.push_back(out(s));
      if (opts.keep_keys) a.keys.push_back(it->first);
      frontier.push_back(std::move(s));
    }
    return {it->second, fresh};
  };
  std::string k0 = key(s0);
  intern(std::move(s0), std::move(k0));

  std::size_t first_id = 0;
  while (!frontier.empty()) {
    std::vector<State> level = std::move(frontier);
    frontier.clear();
    const std::size_t n = level.size();
    std::vector<State> images(n * p);
    run_chunked(n, opts.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t r = 0; r < p; ++r)
          images[i * p + r] = step(level[i], static_cast<unsigned>(r));
    });
    a.next.resize((first_id + n) * p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < p; ++r) {
        State& img = images[i * p + r];
        std::string k = key(img);
        a.next[(first_id + i) * p + r] = intern(std::move(img), std::move(k)).first;
      }
    first_id += n;
  }
  return a;
}

// Quotient of a by a congruence given as block ids; the result is BFS
// renumbered from the initial block. Block representatives are the smallest
// original state ids, so keys and outputs are deterministic.
Automaton quotient(const Automaton& a, const std::vector<std::uint32_t>& block,
                   std::size_t nblocks) {
  auto p = static_cast<std::size_t>(a.ring.p);
  std::vector<std::uint32_t> rep(nblocks, UINT32_MAX);
  for (std::uint32_t s = 0; s < a.size(); ++s)
    if (rep[block[s]] == UINT32_MAX) rep[block[s]] = s;

  Automaton m;
  m.ring = a.ring;
  m.source = a.source;
  std::vector<std::uint32_t> newid(nblocks, UINT32_MAX);
  std::deque<std::uint32_t> queue;
  newid[block[a.initial]] = 0;
  queue.push_back(block[a.initial]);
  std::vector<std::uint32_t> order = {block[a.initial]};
  while (!queue.empty()) {
    std::uint32_t b = queue.front();
    queue.pop_front();
    for (std::size_t r = 0; r < p; ++r) {
      std::uint32_t tb = block[a.next[rep[b] * p + r]];
      if (newid[tb] == UINT32_MAX) {
        newid[tb] = static_cast<std::uint32_t>(order.size());
        order.push_back(tb);
        queue.push_back(tb);
      }
    }
  }
  m.outputs.resize(order.size());
  m.next.resize(order.size() * p);
  if (!a.keys.empty()) m.keys.resize(order.size());
  for (std::uint32_t id = 0; id < order.size(); ++id) {
    std::uint32_t b = order[id];
    m.outputs[id] = a.outputs[rep[b]];
    if (!a.keys.empty()) m.keys[id] = a.keys[rep[b]];
    for (std::size_t r = 0; r < p; ++r) m.next[id * p + r] = newid[block[a.next[rep[b] * p + r]]];
  }
  return m;
}

std::vector<std::uint32_t> blocks_by_output(const Automaton& a, std::size_t* count) {
  std::vector<std::uint32_t> block(a.size());
  std::unordered_map<Res, std::uint32_t> first;
  for (std::uint32_t s = 0; s < a.size(); ++s)
    block[s] = first.try_emplace(a.outputs[s], static_cast<std::uint32_t>(first.size()))
                   .first->second;
  *count = first.size();
  return block;
}

}  // namespace

Automaton build_algebraic(const CurveSpec& curve, const BuildOptions& opts) {
  const RingSpec& ring = curve.ring;
  BiLaurent q = make_Q(curve);
  ZTable zt = build_ztable(q, ring);
  DigitTuple s0 = initial_digits(curve, ring);
  std::string source = "algebraic " + print(curve.P) + " mod " + std::to_string(ring.modulus);
  return bfs_build(
      ring, std::move(source), std::move(s0),
      [&](const DigitTuple& t, unsigned r) { return digit_step(t, r, zt); }, digit_key,
      [&](const DigitTuple& t) { return output_of(t, q, ring); }, opts);
}

Automaton build_diagonal(const DiagonalSpec& spec, const BuildOptions& opts) {
  const RingSpec& ring = spec.ring;
  if (spec.den.ct() % ring.p == 0)
    throw InvalidDenominator("denominator constant term must be a unit mod p");
  std::string source =
      "diagonal (" + print(spec.num) + ") / (" + print(spec.den) + ") mod " +
      std::to_string(ring.modulus);

  if (spec.m == 2) {
    BiLaurent num = to_bilaurent(spec.num), den = to_bilaurent(spec.den);
    BiLaurent q = make_lift(den, ring);
    ZTable zt = build_ztable(q, ring);
    DigitTuple s0 = initial_digits_of(num, den, q, ring);
    return bfs_build(
        ring, std::move(source), std::move(s0),
        [&](const DigitTuple& t, unsigned r) { return digit_step_rs(t, r, r, zt); }, digit_key,
        [&](const DigitTuple& t) { return output_of(t, q, ring); }, opts);
  }

  // Explicit polynomial states. The supported lift of den mod p may replace
  // den in the transition power because the exponent is a multiple of
  // p^(alpha-1); the initial state keeps full precision.
  std::uint64_t half = upow(ring.p, ring.alpha - 1);
  MultiPoly lift = reduce_coeffs(spec.den, ring.p);
  MultiPoly w = pow(lift, half * (ring.p - 1), ring, monomial_budget());
  MultiPoly s0 = mul(spec.num, pow(spec.den, half - 1, ring, monomial_budget()), ring,
                     monomial_budget());
  Res cinv = inv(pow_mod(spec.den.ct(), half, ring), ring);
  return bfs_build(
      ring, std::move(source), std::move(s0),
      [&](const MultiPoly& s, unsigned r) {
        return cartier_diag(mul(s, w, ring, monomial_budget()), r, ring.p);
      },
      [](const MultiPoly& s) { return print(s); },
      [&](const MultiPoly& s) { return ring.mul(s.ct(), cinv); }, opts);
}

Automaton minimize(const Automaton& a) {
  std::size_t count = 0;
  std::vector<std::uint32_t> block = blocks_by_output(a, &count);
  auto p = static_cast<std::size_t>(a.ring.p);
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig;
    std::vector<std::uint32_t> nb(a.size());
    for (std::uint32_t s = 0; s < a.size(); ++s) {
      std::vector<std::uint32_t> v(p + 1);
      v[0] = block[s];
      for (std::size_t r = 0; r < p; ++r) v[r + 1] = block[a.next[s * p + r]];
      nb[s] = sig.try_emplace(std::move(v), static_cast<std::uint32_t>(sig.size())).first->second;
    }
    bool stable = sig.size() == count;
    count = sig.size();
    block = std::move(nb);
    if (stable) break;
  }
  return quotient(a, block, count);
}

Automaton minimize_hopcroft(const Automaton& a) {
  const auto n = static_cast<std::uint32_t>(a.size());
  auto p = static_cast<std::size_t>(a.ring.p);
  std::vector<std::vector<std::uint32_t>> inv(static_cast<std::size_t>(n) * p);
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::size_t r = 0; r < p; ++r) inv[a.next[s * p + r] * p + r].push_back(s);

  std::size_t count = 0;
  std::vector<std::uint32_t> block = blocks_by_output(a, &count);
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t s = 0; s < n; ++s) members[block[s]].push_back(s);

  std::deque<std::pair<std::uint32_t, unsigned>> worklist;
  std::vector<std::vector<char>> queued(count, std::vector<char>(p, 1));
  for (std::uint32_t b = 0; b < count; ++b)
    for (unsigned r = 0; r < p; ++r) worklist.emplace_back(b, r);

  std::vector<char> marked(n, 0);
  while (!worklist.empty()) {
    auto [ba, r] = worklist.front();
    worklist.pop_front();
    queued[ba][r] = 0;

    // Blocks with a state whose r-successor lies in ba, and those states.
    std::vector<std::uint32_t> touched;
    std::vector<std::vector<std::uint32_t>> hits;
    for (std::uint32_t q : members[ba])
      for (std::uint32_t s : inv[q * p + r]) {
        if (!marked[s]) {
          marked[s] = 1;
          std::uint32_t b = block[s];
          auto it = std::find(touched.begin(), touched.end(), b);
          if (it == touched.end()) {
            touched.push_back(b);
            hits.emplace_back();
            it = touched.end() - 1;
          }
          hits[static_cast<std::size_t>(it - touched.begin())].push_back(s);
        }
      }
    for (std::size_t i = 0; i < touched.size(); ++i) {
      std::uint32_t b = touched[i];
      for (std::uint32_t s : hits[i]) marked[s] = 0;
      if (hits[i].size() == members[b].size()) continue;  // nothing split off
      auto nb = static_cast<std::uint32_t>(members.size());
      std::vector<std::uint32_t> stay;
      stay.reserve(members[b].size() - hits[i].size());
      for (std::uint32_t s : hits[i]) marked[s] = 1;
      for (std::uint32_t s : members[b])
        if (!marked[s]) stay.push_back(s);
      for (std::uint32_t s : hits[i]) {
        marked[s] = 0;
        block[s] = nb;
      }
      members.push_back(std::move(hits[i]));
      members[b] = std::move(stay);
      queued.emplace_back(p, 0);
      for (unsigned r2 = 0; r2 < p; ++r2) {
        bool small = members[nb].size() <= members[b].size();
        std::uint32_t add = queued[b][r2] ? nb : (small ? nb : b);
        if (!queued[add][r2]) {
          queued[add][r2] = 1;
          worklist.emplace_back(add, r2);
        }
      }
    }
  }
  return quotient(a, block, members.size());
}

Res eval(const Automaton& a, std::uint64_t n) {
  std::uint32_t q = a.initial;
  auto p = static_cast<std::size_t>(a.ring.p);
  for (; n; n /= a.ring.p) q = a.next[q * p + n % a.ring.p];
  return a.outputs[q];
}

std::string serialize(const Automaton& a, const std::string& format) {
  auto p = static_cast<std::size_t>(a.ring.p);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["p"] = std::to_string(a.ring.p);
    j["alpha"] = std::to_string(a.ring.alpha);
    j["source"] = a.source;
    j["initial"] = a.initial;
    auto states = nlohmann::ordered_json::array();
    for (std::uint32_t s = 0; s < a.size(); ++s) {
      nlohmann::ordered_json st;
      st["id"] = s;
      st["output"] = std::to_string(a.outputs[s]);
      auto nx = nlohmann::ordered_json::array();
      for (std::size_t r = 0; r < p; ++r) nx.push_back(a.next[s * p + r]);
      st["next"] = std::move(nx);
      if (!a.keys.empty()) st["key"] = a.keys[s];
      states.push_back(std::move(st));
    }
    j["states"] = std::move(states);
    return j.dump(2) + "\n";
  }
  if (format == "dot") {
    std::string out = "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::uint32_t s = 0; s < a.size(); ++s) {
      out += "  q" + std::to_string(s) + " [label=\"" + std::to_string(a.outputs[s]) + "\"";
      if (s == a.initial) out += ", shape=doublecircle";
      out += "];\n";
    }
    for (std::uint32_t s = 0; s < a.size(); ++s)
      for (std::size_t r = 0; r < p; ++r)
        out += "  q" + std::to_string(s) + " -> q" + std::to_string(a.next[s * p + r]) +
               " [label=\"" + std::to_string(r) + "\"];\n";
    return out + "}\n";
  }
  throw UnsupportedFormat("unknown serialization format: " + format);
}

Automaton deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UnsupportedFormat(std::string("invalid automaton JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) throw UnsupportedFormat("unknown schema version");
    std::uint64_t p = std::stoull(j.at("p").get<std::string>());
    auto alpha = static_cast<unsigned>(std::stoul(j.at("alpha").get<std::string>()));
    Automaton a;
    a.ring = RingSpec(p, alpha);
    a.source = j.value("source", std::string{});
    a.initial = j.at("initial").get<std::uint32_t>();
    const auto& states = j.at("states");
    a.outputs.reserve(states.size());
    a.next.reserve(states.size() * p);
    for (const auto& st : states) {
      if (st.at("id").get<std::size_t>() != a.outputs.size())
        throw UnsupportedFormat("state ids must be consecutive from 0");
      a.outputs.push_back(a.ring.reduce_u(std::stoull(st.at("output").get<std::string>())));
      const auto& nx = st.at("next");
      if (nx.size() != p) throw UnsupportedFormat("state must have p successors");
      for (const auto& v : nx) a.next.push_back(v.get<std::uint32_t>());
      if (st.contains("key")) a.keys.push_back(st.at("key").get<std::string>());
    }
    if (!a.keys.empty() && a.keys.size() != a.outputs.size())
      throw UnsupportedFormat("keys must cover all states or none");
    if (a.initial >= a.outputs.size()) throw UnsupportedFormat("initial state out of range");
    for (std::uint32_t t : a.next)
      if (t >= a.outputs.size()) throw UnsupportedFormat("transition target out of range");
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw UnsupportedFormat(std::string("invalid automaton JSON: ") + e.what());
  }
}

}  // namespace padic
