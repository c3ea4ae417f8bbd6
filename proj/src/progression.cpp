#include "progressor/progression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "progressor/forgetting.hpp"
#include "progressor/fragments.hpp"
#include "progressor/simplify.hpp"

namespace prog {

const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::LE: return "LE";
    case Method::NR: return "NR";
    case Method::AC: return "AC";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  std::string l;
  for (char ch : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (l == "auto") return Method::Auto;
  if (l == "le") return Method::LE;
  if (l == "nr") return Method::NR;
  if (l == "ac") return Method::AC;
  throw Error("unknown method '" + s + "' (expected auto, le, nr or ac)");
}

bool SizeStats::bounds_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& b) { return b.holds(); });
}

std::string ProgressionResult::fragment_out() const {
  if (fo2_out && utc_out) return "both";
  if (fo2_out) return "FO2";
  if (utc_out) return "UTC";
  return "neither";
}

namespace {

// Moves every fluent atom at S0 to S_alpha. Atoms already at S_alpha stay.
Formula to_successor(const Formula& f, const GroundAction& alpha) {
  std::set<std::string> all;
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms)
    if (a.op() == Op::Fluent) all.insert(a.symbol());
  return unlift(lift(f, Term::init(), all), alpha.successor());
}

Theory to_successor(const Theory& t, const GroundAction& alpha) {
  Theory out;
  for (const auto& f : t) out.push_back(to_successor(f, alpha));
  return out;
}

std::set<std::string> nle_set(const Verdict& v) { return {v.split.nle.begin(), v.split.nle.end()}; }

void base_stats(SizeStats& st, const BasicActionTheory& bat, const GroundAction& alpha, const Verdict& v, bool una) {
  st.n = size(bat.init);
  st.m = 0;
  for (const auto& ssa : bat.ssas) st.m += size(instantiate_ssa(ssa, alpha, una));
  st.c = v.omega.c();
  st.d = static_cast<std::size_t>(v.graph.depth);
  st.a = static_cast<std::size_t>(std::max(0, bat.vocab.max_arity()));
  st.l = v.split.nle.size();
  st.b = alpha.args.size();
  st.k = 0;
  for (const auto& f : v.split.nle) st.k = std::max(st.k, size(instantiate_ssa(bat.ssa(f), alpha, una)));
}

double le_factor(const SizeStats& st) {
  return std::pow(2.0, static_cast<double>(st.c)) * static_cast<double>(4 * st.c * st.a + 4 * st.c + 3);
}

// Local forgetting of Omega over `t`, which may mention NLE fluents at S_alpha and LE fluents
// at both situations. Fills the result's theory, raw theory and LE stats.
void local_step(ProgressionResult& r, const BasicActionTheory& bat, const GroundAction& alpha, const Theory& t,
                std::size_t base_size, const char* check_name, const ProgressOptions& opts) {
  Theory all = t;
  for (const auto& s : dss_omega(bat, alpha, r.verdict.omega, opts.una)) all.push_back(s);
  std::vector<Formula> omega;
  for (const auto& o : r.verdict.omega.entries) omega.push_back(o.atom(Term::init()));
  LocalForgetOptions lo;
  lo.cap = opts.cap;
  lo.mode = opts.fragment;
  lo.una = opts.una;
  LocalForgetResult lf = forget_local(all, omega, lo);
  r.raw = to_successor(lf.raw, alpha);
  r.theory = to_successor(lf.theory, alpha);
  auto& st = r.stats;
  st.disjuncts = lf.disjuncts;
  st.raw_size = size(r.raw);
  st.output_size = size(r.theory);
  double bound = le_factor(st) * static_cast<double>(base_size + st.c * st.m + st.c);
  st.checks.push_back({check_name, static_cast<double>(st.raw_size), bound});
}

void finish(ProgressionResult& r, const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts) {
  Theory base = bat.init;
  for (const auto& s : instantiate_ssas(bat, alpha, opts.una)) base.push_back(s);
  r.fo2_in = check_fo2(base).ok;
  r.utc_in = check_utc(base).ok;
  auto f2 = check_fo2(r.theory);
  auto uc = check_utc(r.theory);
  r.fo2_out = f2.ok;
  r.utc_out = uc.ok;
  if (opts.fragment == Fragment::FO2 && r.fo2_in && !r.fo2_out)
    throw ClosureViolation("FO2 progression left the fragment: " + (f2.diagnostics.empty() ? "" : f2.diagnostics[0]));
  if (opts.fragment == Fragment::UTC && r.utc_in && !r.utc_out)
    throw ClosureViolation("UTC progression left the fragment: " + (uc.diagnostics.empty() ? "" : uc.diagnostics[0]));
  for (const auto& f : r.theory) require_uniform(f, alpha.successor());
}

ProgressionResult start(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts, Method m) {
  ProgressionResult r;
  r.method = m;
  r.mode = opts.fragment;
  r.verdict = check_bat_class(bat, alpha, opts.una);
  bool ok = m == Method::LE ? r.verdict.le : m == Method::NR ? r.verdict.nr : r.verdict.ac;
  if (!ok) {
    const std::string& w = m == Method::LE ? r.verdict.le_witness
                           : m == Method::NR ? r.verdict.nr_witness
                                             : r.verdict.ac_witness;
    throw ClassMismatch(std::string("not ") + to_string(m) + " wrt " + alpha.to_string() + ": " + w, r.verdict);
  }
  base_stats(r.stats, bat, alpha, r.verdict, opts.una);
  return r;
}

Formula gamma_at(const BasicActionTheory& bat, const std::string& f, bool positive, const GroundAction& alpha,
                 const Verdict& v, bool una) {
  return lifted_gamma(bat, f, positive, alpha, v.split, una);
}

}  // namespace

ProgressionResult progress_le(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts) {
  ProgressionResult r = start(bat, alpha, opts, Method::LE);
  r.stats.intermediate = r.stats.n;
  local_step(r, bat, alpha, bat.init, r.stats.n, "local forgetting", opts);
  finish(r, bat, alpha, opts);
  return r;
}

ProgressionResult progress_nr(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts) {
  ProgressionResult r = start(bat, alpha, opts, Method::NR);
  const Verdict& v = r.verdict;
  auto nle = nle_set(v);
  Term sa = alpha.successor();

  Theory t;
  for (const auto& s : bat.init) t.push_back(lift(s, Term::init(), nle));
  for (const auto& f : v.split.nle) {
    const SSA& ssa = bat.ssa(f);
    Formula gp = gamma_at(bat, f, true, alpha, v, opts.una);
    Formula gm = gamma_at(bat, f, false, alpha, v, opts.una);
    Formula now = Formula::fluent(f, ssa.param_terms(), sa);
    Formula before = Formula::lifted(f, ssa.param_terms());
    t.push_back(close_universally(Formula::disj({gp, Formula::negation(now), before})));
    t.push_back(close_universally(Formula::disj({Formula::negation(before), gm, now})));
    t.push_back(close_universally(Formula::disj({Formula::negation(gp), now})));
    t.push_back(close_universally(Formula::disj({Formula::negation(gm), Formula::negation(now)})));
  }

  std::vector<std::string> order = opts.nr_order;
  if (order.empty()) {
    order = v.split.nle;
    std::sort(order.begin(), order.end());
  }
  if (!opts.nr_order.empty()) {
    std::vector<std::string> a = order, b = v.split.nle;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw PreconditionError("forgetting order must list exactly the non-local-effect fluents");
  }
  std::size_t peak = size(t);
  for (const auto& f : order) {
    auto out = forget_predicate_semidef(t, Predicate::lifted(f), bat.ssa(f).params, opts.fragment);
    peak = std::max(peak, size(out.theory));
    t = simplify(out.theory, opts.una);
  }
  r.stats.intermediate = peak;
  double nm = static_cast<double>(r.stats.n + r.stats.m);
  r.stats.checks.push_back({"NLE forgetting", static_cast<double>(peak), 4.0 * nm * nm});
  local_step(r, bat, alpha, t, size(t), "local forgetting", opts);
  finish(r, bat, alpha, opts);
  return r;
}

ProgressionResult progress_ac(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts) {
  ProgressionResult r = start(bat, alpha, opts, Method::AC);
  const Verdict& v = r.verdict;
  auto& st = r.stats;
  auto nle = nle_set(v);
  Term sa = alpha.successor();
  const Fragment mode = opts.fragment;

  struct Pending {
    std::vector<Condition> nws, snc;
  };
  std::map<std::string, Pending> delta;
  Theory out;  // P-free sentences collected so far

  // Separate D_S0 into the Delta_F axioms and the rest.
  std::map<std::string, Theory> per_fluent;
  for (const auto& s : bat.init) {
    Formula l = lift(s, Term::init(), nle);
    std::string owner;
    for (const auto& f : v.split.nle)
      if (mentions(l, Predicate::lifted(f))) owner = f;
    if (owner.empty()) out.push_back(l);
    else per_fluent[owner].push_back(l);
  }
  std::map<std::string, std::size_t> original;
  for (const auto& f : v.split.nle) {
    const SSA& ssa = bat.ssa(f);
    auto a = analyze_semidef(per_fluent[f], Predicate::lifted(f), ssa.params, mode);
    if (!a.ok) throw PreconditionError("initial theory is not semi-definitional wrt " + f + ": " + a.witness);
    delta[f] = {a.nws, a.snc};
    for (const auto& s : a.rest) out.push_back(s);
    Condition n0 = conjoin(a.nws, ssa.params, mode), s0 = conjoin(a.snc, ssa.params, mode);
    original[f] = std::max(raw_size(n0.f), raw_size(s0.f));
    st.w = std::max(st.w, original[f]);
  }

  auto fold = [&](const std::string& g, const GoodForm& gf) {
    const SSA& gs = bat.ssa(g);
    SemidefParts parts = goodform_conditions(gf, Predicate::lifted(g), gs.params, mode);
    for (const auto& c : parts.nws) delta[g].nws.push_back(c);
    for (const auto& c : parts.snc) delta[g].snc.push_back(c);
    for (const auto& s : parts.rest)
      if (!s.is_true()) out.push_back(s);
  };

  std::map<std::string, std::size_t> updated;
  const double inc = static_cast<double>(4 * st.k + 6 * st.a + 10);
  std::size_t sum_w = 0;
  for (const auto& f : v.graph.topological_order(v.split.nle)) {
    const SSA& ssa = bat.ssa(f);
    Condition nws = conjoin(delta[f].nws, ssa.params, mode);
    Condition snc = conjoin(delta[f].snc, ssa.params, mode);
    std::size_t wf = std::max(raw_size(nws.f), raw_size(snc.f));
    updated[f] = wf;
    sum_w += wf;

    Formula now = Formula::fluent(f, ssa.param_terms(), sa);
    Formula not_now = Formula::negation(now);
    // (6a)
    out.push_back(close_universally(disjoin(nws, snc, ssa.params, mode).f));
    for (bool positive : {true, false}) {
      Formula g = gamma_at(bat, f, positive, alpha, v, opts.una);
      std::string target;
      for (const auto& t : positive ? v.graph.plus_targets.at(f) : v.graph.minus_targets.at(f))
        if (nle.count(t)) target = t;
      // positive: ~g+ | F(Sa)  and  g+ | ~F(Sa) | SNC
      // negative: ~g- | ~F(Sa) and  NWS | g- | F(Sa)
      Formula lit = positive ? now : not_now;
      Formula other = positive ? Formula::disj({not_now, snc.f}) : Formula::disj({nws.f, now});
      if (target.empty()) {
        out.push_back(close_universally(Formula::disj({Formula::negation(g), lit})));
        out.push_back(close_universally(Formula::disj({g, other})));
        continue;
      }
      Predicate p = Predicate::lifted(target);
      auto gf = is_good_form(g, p);
      if (!gf) throw PreconditionError("effect condition of " + f + " is not in good form wrt " + target);
      fold(target, or_goodform(negate_goodform(*gf), lit));
      fold(target, or_goodform(*gf, other));
    }
  }
  for (const auto& f : v.split.nle) {
    double bound = static_cast<double>(st.w);
    for (const auto& [a, b] : v.graph.edges)
      if (b == f && nle.count(a)) {
        bool twice = a != b && std::count(v.graph.plus_targets.at(a).begin(), v.graph.plus_targets.at(a).end(), f) &&
                     std::count(v.graph.minus_targets.at(a).begin(), v.graph.minus_targets.at(a).end(), f);
        bound += (twice ? 2.0 : 1.0) * (static_cast<double>(updated[a]) + inc);
      }
    st.checks.push_back({"condition size of " + f, static_cast<double>(updated[f]), bound});
  }
  st.aggregate = 4 * sum_w;
  st.checks.push_back({"aggregate condition size",
                       static_cast<double>(st.aggregate),
                       4.0 * std::pow(2.0, static_cast<double>(st.d + 1)) * static_cast<double>(st.l) *
                           (static_cast<double>(st.w) + inc)});
  st.intermediate = size(out);
  local_step(r, bat, alpha, out, st.intermediate, "local forgetting", opts);
  finish(r, bat, alpha, opts);
  return r;
}

ProgressionResult progress(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts) {
  switch (opts.method) {
    case Method::LE: return progress_le(bat, alpha, opts);
    case Method::NR: return progress_nr(bat, alpha, opts);
    case Method::AC: return progress_ac(bat, alpha, opts);
    case Method::Auto: break;
  }
  Verdict v = check_bat_class(bat, alpha, opts.una);
  if (v.le) return progress_le(bat, alpha, opts);
  if (v.nr) return progress_nr(bat, alpha, opts);
  if (v.ac) return progress_ac(bat, alpha, opts);
  throw ClassMismatch("no progression algorithm applies to " + alpha.to_string() + ": " + v.witness(), v);
}

BasicActionTheory progressed_bat(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressionResult& r) {
  BasicActionTheory out = bat;
  out.init.clear();
  for (const auto& f : r.theory) out.init.push_back(unlift(lift(f, alpha.successor()), Term::init()));
  return out;
}

}  // namespace prog
