// Command-line front end: builds and minimizes automata, evaluates terms,
// and prints orbit / period / bound / residue reports as text or JSON.
//
// Exit codes: 0 ok, 1 parse or usage error, 2 invalid mathematical input,
// 3 budget exceeded, 4 cross-validation failure, 10 internal error.

#include <cctype>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "padic/analysis.hpp"
#include "padic/automaton.hpp"
#include "padic/errors.hpp"
#include "padic/modarith.hpp"
#include "padic/numeration.hpp"
#include "padic/oracle.hpp"
#include "padic/poly.hpp"

namespace {

using nlohmann::ordered_json;
using namespace padic;

std::string dec(const BigInt& v) { return v.str(); }
template <class T>
std::string dec(T v) {
  return std::to_string(v);
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadConfig("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadConfig("cannot write " + path);
  out << text;
  if (!out.flush()) throw BadConfig("cannot write " + path);
}

// Options shared by every subcommand. Budgets land in the environment before
// the first library call, which reads each variable exactly once.
struct Common {
  bool json = false;
  bool deterministic = false;
  long long workers = -1;
  long long state_budget = -1;
  long long monomial_budget = -1;
  long long orbit_budget = -1;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--json", json, "emit a JSON report (all numbers are decimal strings)");
    cmd->add_flag("--deterministic", deterministic,
                  "omit the generated_at timestamp from JSON reports");
    cmd->add_option("--workers", workers,
                    "builder worker threads (default: available parallelism)");
    cmd->add_option("--state-budget", state_budget,
                    "abort builds beyond this many states (0 = unlimited)");
    cmd->add_option("--monomial-budget", monomial_budget,
                    "abort once an intermediate polynomial exceeds this many terms (0 = unlimited)");
    cmd->add_option("--orbit-budget", orbit_budget,
                    "abort orbit walks beyond this many steps (0 = unlimited)");
  }

  void apply() const {
    if (state_budget >= 0)
      setenv("PADIC_STATE_BUDGET", std::to_string(state_budget).c_str(), 1);
    if (monomial_budget >= 0)
      setenv("PADIC_MONOMIAL_BUDGET", std::to_string(monomial_budget).c_str(), 1);
    if (orbit_budget >= 0)
      setenv("PADIC_ORBIT_BUDGET", std::to_string(orbit_budget).c_str(), 1);
  }

  unsigned worker_count() const {
    if (workers > 0) return static_cast<unsigned>(workers);
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
  }

  void finish(ordered_json& j) const {
    if (!deterministic) j["generated_at"] = iso_now();
    std::cout << j.dump(2) << "\n";
  }
};

// Input selection shared by build and bounds: a curve polynomial, or a
// rational num/den in >= 2 variables whose diagonal is wanted.
struct InputArgs {
  std::uint64_t p = 2;
  unsigned alpha = 1;
  std::string mode = "algebraic";
  std::string poly;
  std::string num = "1";
  std::string den;
  std::string vars_csv;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "prime base")->required();
    cmd->add_option("--alpha", alpha, "exponent: outputs live mod p^alpha")->required();
    cmd->add_option("--mode", mode, "algebraic | diagonal | multivariate")
        ->check(CLI::IsMember({"algebraic", "diagonal", "multivariate"}));
    cmd->add_option("--poly", poly, "curve polynomial P(x,y) with P(0,0)=0");
    cmd->add_option("--num", num, "numerator (diagonal modes; default 1)");
    cmd->add_option("--den", den, "denominator with unit constant term (diagonal modes)");
    cmd->add_option("--vars", vars_csv,
                    "comma-separated variables (default x,y or x,y,z by mode)");
  }

  bool algebraic() const { return mode == "algebraic"; }

  std::vector<std::string> variables() const {
    if (vars_csv.empty())
      return mode == "multivariate" ? std::vector<std::string>{"x", "y", "z"}
                                    : std::vector<std::string>{"x", "y"};
    std::vector<std::string> out;
    std::string cur;
    for (char ch : vars_csv) {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.size() < 2) throw BadConfig("--vars needs at least two variables");
    return out;
  }

  CurveSpec curve(const RingSpec& ring) const {
    if (poly.empty()) throw BadConfig("--poly is required in algebraic mode");
    return curve_derived(parse_poly(poly, {"x", "y"}, ring), ring);
  }

  DiagonalSpec diagonal(const RingSpec& ring) const {
    if (den.empty()) throw BadConfig("--den is required in diagonal modes");
    std::vector<std::string> vars = variables();
    return diagonal_derived(parse_poly(num, vars, ring), parse_poly(den, vars, ring), ring);
  }
};

void bounds_text(std::ostream& os, const BoundReport& b, bool algebraic) {
  if (algebraic) {
    os << "degrees: h=" << b.h << ", d=" << b.d << "\n";
    os << "box dimension: " << b.dim_w << " (V " << b.dim_v << ", interior "
       << b.dim_v_interior << ")\n";
    os << "box states: " << b.p_pow_dim << "\n";
    os << "transient steps: " << b.transient << "\n";
    os << "border steps: " << b.border_left << " | " << b.border_right << " | "
       << b.border_top << "\n";
    os << "cycle lcm bound: " << b.lcm_bound << " (landau " << b.landau_value << ")\n";
    os << "state bound: " << b.state_bound << "\n";
    if (b.state_bound_mod_p != 0) os << "state bound mod p: " << b.state_bound_mod_p << "\n";
    os << "diagonal box dimension: " << b.diagonal_dim << "\n";
    os << "multivariate state bound: " << b.multivariate_states << "\n";
  } else {
    os << "multivariate state bound: " << b.multivariate_states << "\n";
    if (b.diagonal_dim != 0 || b.p_pow_dim != 0) {
      os << "degrees: h=" << b.h << ", d=" << b.d << "\n";
      os << "diagonal box dimension: " << b.diagonal_dim << "\n";
      os << "box states: " << b.p_pow_dim << "\n";
    }
  }
}

ordered_json bounds_json(const BoundReport& b, bool algebraic) {
  ordered_json j;
  if (algebraic) {
    j["h"] = dec(b.h);
    j["d"] = dec(b.d);
    j["dim_w"] = dec(b.dim_w);
    j["dim_v"] = dec(b.dim_v);
    j["dim_v_interior"] = dec(b.dim_v_interior);
    j["p_pow_dim"] = dec(b.p_pow_dim);
    j["transient"] = dec(b.transient);
    j["border_left"] = dec(b.border_left);
    j["border_right"] = dec(b.border_right);
    j["border_top"] = dec(b.border_top);
    j["lcm_bound"] = dec(b.lcm_bound);
    j["landau_value"] = dec(b.landau_value);
    j["state_bound"] = dec(b.state_bound);
    if (b.state_bound_mod_p != 0) j["state_bound_mod_p"] = dec(b.state_bound_mod_p);
    j["diagonal_dim"] = dec(b.diagonal_dim);
    j["multivariate_states"] = dec(b.multivariate_states);
  } else {
    j["multivariate_states"] = dec(b.multivariate_states);
    if (b.diagonal_dim != 0 || b.p_pow_dim != 0) {
      j["h"] = dec(b.h);
      j["d"] = dec(b.d);
      j["diagonal_dim"] = dec(b.diagonal_dim);
      j["p_pow_dim"] = dec(b.p_pow_dim);
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands.

struct BuildArgs {
  Common common;
  InputArgs input;
  std::string out_path;
  std::string dot_path;
  bool no_keys = false;
};

int cmd_build(const BuildArgs& a) {
  a.common.apply();
  RingSpec ring(a.input.p, a.input.alpha);
  BuildOptions opts;
  opts.workers = a.common.worker_count();
  opts.keep_keys = !a.no_keys;

  Automaton built;
  BoundReport bounds;
  if (a.input.algebraic()) {
    CurveSpec curve = a.input.curve(ring);
    bounds = bound_report(curve);
    built = build_algebraic(curve, opts);
  } else {
    DiagonalSpec spec = a.input.diagonal(ring);
    bounds = bound_report(spec);
    built = build_diagonal(spec, opts);
  }
  Automaton minimized = minimize(built);

  if (!a.out_path.empty()) write_file(a.out_path, serialize(minimized, "json"));
  if (!a.dot_path.empty()) write_file(a.dot_path, serialize(minimized, "dot"));

  if (!a.common.json) {
    std::cout << "states: " << built.size() << "\n";
    std::cout << "states minimized: " << minimized.size() << "\n";
    bounds_text(std::cout, bounds, a.input.algebraic());
    if (!a.out_path.empty()) std::cout << "wrote " << a.out_path << "\n";
    if (!a.dot_path.empty()) std::cout << "wrote " << a.dot_path << "\n";
    return 0;
  }
  ordered_json j;
  j["command"] = "build";
  j["mode"] = a.input.mode;
  j["p"] = dec(a.input.p);
  j["alpha"] = dec(a.input.alpha);
  j["source"] = built.source;
  j["states"] = dec(built.size());
  j["states_minimized"] = dec(minimized.size());
  j["bounds"] = bounds_json(bounds, a.input.algebraic());
  if (!a.out_path.empty()) j["artifact"] = a.out_path;
  if (!a.dot_path.empty()) j["dot"] = a.dot_path;
  a.common.finish(j);
  return 0;
}

struct EvalArgs {
  Common common;
  std::string automaton_path;
  std::uint64_t n = 0;
};

int cmd_eval(const EvalArgs& a) {
  a.common.apply();
  Automaton m = deserialize(read_file(a.automaton_path));
  Res value = eval(m, a.n);
  if (!a.common.json) {
    std::cout << value << "\n";
    return 0;
  }
  ordered_json j;
  j["command"] = "eval";
  j["p"] = dec(m.ring.p);
  j["alpha"] = dec(m.ring.alpha);
  j["source"] = m.source;
  j["n"] = dec(a.n);
  j["value"] = dec(value);
  a.common.finish(j);
  return 0;
}

struct OrbitArgs {
  Common common;
  InputArgs input;
};

int cmd_orbit(const OrbitArgs& a) {
  a.common.apply();
  RingSpec ring(a.input.p, a.input.alpha);
  CurveSpec curve = a.input.curve(ring);
  ZTable zt = build_ztable(make_Q(curve), ring);
  OrbitRecord rec = orbit_zero(initial_digits(curve, ring), zt);
  if (!a.common.json) {
    std::cout << "orbit transient: " << rec.transient << "\n";
    std::cout << "orbit period: " << rec.period << "\n";
    std::cout << "orbit size: " << rec.size() << "\n";
    return 0;
  }
  ordered_json j;
  j["command"] = "orbit";
  j["p"] = dec(a.input.p);
  j["alpha"] = dec(a.input.alpha);
  j["poly"] = a.input.poly;
  j["transient"] = dec(rec.transient);
  j["period"] = dec(rec.period);
  j["size"] = dec(rec.size());
  a.common.finish(j);
  return 0;
}

struct PeriodArgs {
  Common common;
  std::uint64_t p = 2;
  unsigned alpha = 1;
  std::string R;
};

int cmd_period(const PeriodArgs& a) {
  a.common.apply();
  RingSpec ring(a.p, a.alpha);
  PeriodReport rep = period_rational(parse_laurent(a.R, "z", ring), ring);
  if (!a.common.json) {
    std::cout << "z-order mod p: " << rep.e0 << "\n";
    std::cout << "empirical mod p: " << rep.empirical_mod_p << ", bound mod p: "
              << rep.bound_mod_p << "\n";
    std::cout << "empirical: " << rep.empirical << ", bound: " << rep.bound << " | "
              << rep.bound_weak << "\n";
    std::cout << "trailing zeros: " << rep.trailing_zeros << "\n";
    return 0;
  }
  ordered_json j;
  j["command"] = "period";
  j["p"] = dec(a.p);
  j["alpha"] = dec(a.alpha);
  j["R"] = a.R;
  j["e0"] = dec(rep.e0);
  j["empirical_mod_p"] = dec(rep.empirical_mod_p);
  j["bound_mod_p"] = dec(rep.bound_mod_p);
  j["empirical"] = dec(rep.empirical);
  j["bound"] = dec(rep.bound);
  j["bound_weak"] = dec(rep.bound_weak);
  j["trailing_zeros"] = dec(rep.trailing_zeros);
  a.common.finish(j);
  return 0;
}

struct BoundsArgs {
  Common common;
  InputArgs input;
};

int cmd_bounds(const BoundsArgs& a) {
  a.common.apply();
  RingSpec ring(a.input.p, a.input.alpha);
  BoundReport b = a.input.algebraic() ? bound_report(a.input.curve(ring))
                                      : bound_report(a.input.diagonal(ring));
  if (!a.common.json) {
    bounds_text(std::cout, b, a.input.algebraic());
    return 0;
  }
  ordered_json j;
  j["command"] = "bounds";
  j["mode"] = a.input.mode;
  j["p"] = dec(a.input.p);
  j["alpha"] = dec(a.input.alpha);
  j["bounds"] = bounds_json(b, a.input.algebraic());
  a.common.finish(j);
  return 0;
}

struct StatsArgs {
  Common common;
  InputArgs input;
  std::string automaton_path;
};

int cmd_stats(const StatsArgs& a) {
  a.common.apply();
  Automaton m;
  if (!a.automaton_path.empty()) {
    m = deserialize(read_file(a.automaton_path));
  } else {
    RingSpec ring(a.input.p, a.input.alpha);
    BuildOptions opts;
    opts.workers = a.common.worker_count();
    m = a.input.algebraic() ? build_algebraic(a.input.curve(ring), opts)
                            : build_diagonal(a.input.diagonal(ring), opts);
  }
  ResidueStats st = residue_stats(m);
  if (!a.common.json) {
    std::cout << "modulus: " << st.modulus << "\n";
    std::cout << "attained (" << st.attained.size() << "/" << st.modulus << "):";
    for (Res r : st.attained) std::cout << " " << r;
    std::cout << "\n";
    std::cout << "attained infinitely (" << st.attained_infinitely.size() << "/"
              << st.modulus << "):";
    for (Res r : st.attained_infinitely) std::cout << " " << r;
    std::cout << "\n";
    return 0;
  }
  ordered_json j;
  j["command"] = "stats";
  j["p"] = dec(m.ring.p);
  j["alpha"] = dec(m.ring.alpha);
  j["source"] = m.source;
  j["states"] = dec(m.size());
  j["modulus"] = dec(st.modulus);
  ordered_json att = ordered_json::array();
  for (Res r : st.attained) att.push_back(dec(r));
  ordered_json inf = ordered_json::array();
  for (Res r : st.attained_infinitely) inf.push_back(dec(r));
  j["attained"] = std::move(att);
  j["attained_infinitely"] = std::move(inf);
  a.common.finish(j);
  return 0;
}

struct CheckArgs {
  Common common;
  InputArgs input;
  std::uint64_t terms = 512;
  std::uint64_t words = 30;
};

// Cross-validation battery for one curve: the automaton against the series
// oracle, the digit transition against its definition on sampled states, and
// digit truncation against reduced-precision builds on random words.
int cmd_check(const CheckArgs& a) {
  a.common.apply();
  RingSpec ring(a.input.p, a.input.alpha);
  CurveSpec curve = a.input.curve(ring);
  BuildOptions opts;
  opts.workers = a.common.worker_count();

  struct Line {
    std::string name;
    bool ok;
    std::string details;
  };
  std::vector<Line> lines;

  Automaton m = build_algebraic(curve, opts);
  {
    SeriesPrefix f = series_solve(curve, a.terms ? a.terms - 1 : 0, ring);
    std::uint64_t bad = 0, first_bad = 0;
    for (std::uint64_t n = 0; n < f.coeffs.size(); ++n) {
      if (eval(m, n) != f.coeffs[n]) {
        if (!bad) first_bad = n;
        ++bad;
      }
    }
    lines.push_back({"oracle terms",
                     bad == 0,
                     bad == 0 ? dec(f.coeffs.size()) + " terms"
                              : dec(bad) + " mismatches, first at n=" + dec(first_bad)});
  }
  {
    BiLaurent q = make_Q(curve);
    ZTable zt = build_ztable(q, ring);
    std::uint64_t e = ring.modulus - ring.modulus / ring.p;
    BiLaurent qpow = pow(q, e, ring);
    std::vector<DigitTuple> sample{initial_digits(curve, ring)};
    for (std::size_t i = 0; i < sample.size() && sample.size() < 12; ++i) {
      for (unsigned r = 0; r < ring.p && sample.size() < 12; ++r) {
        DigitTuple t = digit_step(sample[i], r, zt);
        bool fresh = true;
        for (const DigitTuple& s : sample) fresh = fresh && !(s == t);
        if (fresh) sample.push_back(t);
      }
    }
    std::uint64_t bad = 0;
    for (const DigitTuple& t : sample) {
      BiLaurent s = val(t, q, ring);
      for (unsigned r = 0; r < ring.p; ++r) {
        DigitTuple direct = rep(cartier(mul(s, qpow, ring), r, 0, ring.p), q, ring);
        if (!(direct == digit_step(t, r, zt))) ++bad;
      }
    }
    lines.push_back({"digit transitions",
                     bad == 0,
                     bad == 0 ? dec(sample.size()) + " states x " + dec(ring.p) + " symbols"
                              : dec(bad) + " mismatches"});
  }
  {
    std::mt19937_64 rng(0x7f4a7c15u);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < a.words; ++i) {
      unsigned beta = 1 + static_cast<unsigned>(rng() % ring.alpha);
      std::vector<unsigned> word(rng() % 7);
      for (unsigned& sym : word) sym = static_cast<unsigned>(rng() % ring.p);
      if (!digit_compat_check(curve, beta, word)) ++bad;
    }
    lines.push_back({"precision truncation",
                     bad == 0,
                     bad == 0 ? dec(a.words) + " words" : dec(bad) + " mismatches"});
  }

  std::uint64_t failures = 0;
  for (const Line& l : lines) failures += l.ok ? 0 : 1;
  if (!a.common.json) {
    for (const Line& l : lines)
      std::cout << "check " << l.name << ": " << (l.ok ? "ok" : "FAIL") << " (" << l.details
                << ")\n";
    std::cout << (failures ? "checks failed\n" : "all checks passed\n");
    return failures ? 4 : 0;
  }
  ordered_json j;
  j["command"] = "check";
  j["p"] = dec(a.input.p);
  j["alpha"] = dec(a.input.alpha);
  j["poly"] = a.input.poly;
  ordered_json checks = ordered_json::array();
  for (const Line& l : lines) {
    ordered_json c;
    c["name"] = l.name;
    c["status"] = l.ok ? "ok" : "fail";
    c["details"] = l.details;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["failures"] = dec(failures);
  a.common.finish(j);
  return failures ? 4 : 0;
}

template <class F>
int guarded(F run) {
  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const BadConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedFormat& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidCurve& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDenominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonUnit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotRepresentable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroPolynomial& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 10;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automata for algebraic power series and rational diagonals mod p^alpha"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App* cb = app.add_subcommand("build", "build and minimize an automaton");
  build.input.attach(cb);
  build.common.attach(cb);
  cb->add_option("--out", build.out_path, "write the minimized automaton as JSON");
  cb->add_option("--dot", build.dot_path, "write the minimized automaton as DOT");
  cb->add_flag("--no-keys", build.no_keys, "drop canonical state keys from the artifact");

  EvalArgs ev;
  CLI::App* ce = app.add_subcommand("eval", "evaluate a stored automaton at one index");
  ce->add_option("--automaton", ev.automaton_path, "automaton JSON file")->required();
  ce->add_option("--n", ev.n, "index to evaluate")->required();
  ev.common.attach(ce);

  OrbitArgs orb;
  CLI::App* co = app.add_subcommand("orbit", "orbit of the initial state under symbol 0");
  orb.input.attach(co);
  orb.common.attach(co);

  PeriodArgs per;
  CLI::App* cp = app.add_subcommand("period", "period of the coefficients of 1/R^(p^(alpha-1))");
  cp->add_option("--R", per.R, "denominator R(z), unit constant term after normalization")
      ->required();
  cp->add_option("--p", per.p, "prime base")->required();
  cp->add_option("--alpha", per.alpha, "exponent: outputs live mod p^alpha")->required();
  per.common.attach(cp);

  BoundsArgs bnd;
  CLI::App* cn = app.add_subcommand("bounds", "size bounds from degrees alone, no build");
  bnd.input.attach(cn);
  bnd.common.attach(cn);

  StatsArgs st;
  CLI::App* cs = app.add_subcommand("stats", "residues attained, and attained infinitely often");
  st.input.attach(cs);
  cs->add_option("--automaton", st.automaton_path, "stored automaton instead of a fresh build");
  cs->get_option("--p")->required(false);
  cs->get_option("--alpha")->required(false);
  st.common.attach(cs);

  CheckArgs ck;
  CLI::App* cc = app.add_subcommand("check", "cross-validate a curve's automaton");
  ck.input.attach(cc);
  cc->add_option("--terms", ck.terms, "series terms to compare (default 512)");
  cc->add_option("--words", ck.words, "random truncation words to test (default 30)");
  ck.common.attach(cc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cb->parsed()) return guarded([&] { return cmd_build(build); });
  if (ce->parsed()) return guarded([&] { return cmd_eval(ev); });
  if (co->parsed()) return guarded([&] { return cmd_orbit(orb); });
  if (cp->parsed()) return guarded([&] { return cmd_period(per); });
  if (cn->parsed()) return guarded([&] { return cmd_bounds(bnd); });
  if (cs->parsed())
    return guarded([&] {
      if (st.automaton_path.empty() && (!cs->count("--p") || !cs->count("--alpha")))
        throw BadConfig("stats needs --automaton, or an input with --p and --alpha");
      return cmd_stats(st);
    });
  if (cc->parsed()) return guarded([&] { return cmd_check(ck); });
  return 1;
}
