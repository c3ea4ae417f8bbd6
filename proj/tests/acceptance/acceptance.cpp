// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "progressor/bench.hpp"
#include "progressor/forgetting.hpp"
#include "progressor/fragments.hpp"
#include "progressor/generators.hpp"
#include "progressor/mutation.hpp"
#include "progressor/oracle.hpp"
#include "progressor/progression.hpp"
#include "support.hpp"

using namespace prog;

namespace {

// tolerances
constexpr double kCorrectnessSeconds = 300;  // criterion 1 budget
constexpr int kCorrectnessDomain = 3;
constexpr int kGeneratedPerClass = 10;
constexpr int kAtomCases = 200, kLocalCases = 100, kSemidefCases = 100;
constexpr int kForgetDomain = 3;
constexpr int kLocalMaxC = 4;
constexpr int kLeMaxC = 8, kAcMaxD = 6, kGoodFormCases = 500;
constexpr double kNrExponent = 2.3, kAcSlope = 1.2, kLeExponent = 1.2;
constexpr int kFragmentPerClass = 50;
constexpr int kRewriteCases = 100, kRewriteDomain = 3;
constexpr int kMutations = 20;
constexpr int kMutationDomain = 3;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    ok = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Formula open(const Formula& f) { return strip_foralls(f).second; }
Formula all(const Theory& t) { return t.size() == 1 ? t[0] : Formula::conj(t); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// ---- 1 ------------------------------------------------------------------

Outcome correctness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  struct Item {
    std::string name;
    BasicActionTheory bat;
    GroundAction alpha;
    std::string cls;
  };
  std::vector<Item> items;
  for (auto& c : testing::load_corpus())
    items.push_back({c.name, c.bat, GroundAction::parse(c.action, c.bat.vocab), c.expected});
  gen::Rng rng(1001);
  for (auto cls : {BatClass::LE, BatClass::NR, BatClass::AC}) {
    gen::BatSpec spec;
    spec.cls = cls;
    for (int i = 0; i < kGeneratedPerClass; ++i) {
      auto g = gen::random_bat(rng, spec);
      items.push_back({g.name, g.bat, g.alpha, to_string(cls)});
    }
  }
  int per[3] = {0, 0, 0}, runs = 0;
  for (const auto& it : items) {
    per[it.cls == "LE" ? 0 : it.cls == "NR" ? 1 : 2]++;
    if (it.bat.vocab.fluents.size() > 3 || it.bat.vocab.constants.size() > 2)
      o.fail(it.name + ": more than 3 fluents or 2 constants");
    for (bool una : {true, false}) {
      try {
        ProgressOptions po;
        po.una = una;
        auto r = progress(it.bat, it.alpha, po);
        if (std::string(to_string(r.method)) != it.cls) o.fail(it.name + ": method " + to_string(r.method));
        OracleOptions oo;
        oo.una = una;
        auto v = check_progression(it.bat, it.alpha, r.theory, kCorrectnessDomain, oo);
        ++runs;
        if (!v.ok || v.probabilistic) o.fail(it.name + (una ? " una on: " : " una off: ") + v.detail);
      } catch (const Error& e) {
        o.fail(it.name + ": " + e.what());
      }
    }
  }
  double t = seconds_since(t0);
  if (per[0] < 10 || per[1] < 10 || per[2] < 10 || items.size() < 30) o.fail("corpus too small");
  if (t >= kCorrectnessSeconds) o.fail("took " + fmt(t) + " s");
  o.detail = std::to_string(items.size()) + " BATs (LE " + std::to_string(per[0]) + ", NR " + std::to_string(per[1]) +
             ", AC " + std::to_string(per[2]) + "), " + std::to_string(runs) + " oracle runs at N<=3, " + fmt(t) + " s";
  return o;
}

// ---- 2 ------------------------------------------------------------------

gen::Shape ground_shape() {
  gen::Shape s;
  s.preds = {{"P", 1}, {"Q", 1}, {"R", 2}, {"B", 0}};
  s.constants = {"a", "b"};
  s.pool = {"x", "y"};
  s.depth = 3;
  return s;
}

std::vector<Formula> atoms(gen::Rng& rng, int k) {
  std::vector<Formula> pool = {testing::parse("(P a)"), testing::parse("(P b)"), testing::parse("(Q a)"),
                               testing::parse("(R a b)"), testing::parse("(B)")};
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

Outcome forgetting() {
  Outcome o;
  gen::Rng rng(2001);
  auto s = ground_shape();
  for (int i = 0; i < kAtomCases; ++i) {
    Formula phi = testing::parse(gen::sentence(rng, s));
    Formula atom = atoms(rng, 1)[0];
    Formula out = forget_ground_atom(phi, atom);
    if (!check_atom_forgetting(phi, atom, out, kForgetDomain).ok)
      o.fail("atom: " + to_infix(phi) + " / " + to_infix(atom));
  }
  for (int i = 0; i < kLocalCases; ++i) {
    Theory t = {testing::parse(gen::sentence(rng, s)), testing::parse(gen::sentence(rng, s))};
    auto omega = atoms(rng, rng.uniform(1, kLocalMaxC));
    auto r = forget_local(t, omega);
    Formula it = all(t);
    for (const auto& a : omega) it = forget_ground_atom(it, a);
    if (!equivalent(r.theory, Theory{it}, kForgetDomain).ok) o.fail("local: " + to_infix(all(t)));
  }
  gen::Shape c;
  c.preds = {{"Q", 1}, {"S", 1}, {"E", 2}, {"B", 0}};
  c.constants = {"a", "b"};
  c.pool = {"z"};
  c.depth = 2;
  const PredKey hidden{Op::Rigid, "P", 0, 1};
  for (int i = 0; i < kSemidefCases; ++i) {
    Theory t;
    for (const auto& x : gen::semidef_theory(rng, c, "P", {"x"}, rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 1)))
      t.push_back(testing::parse(x));
    auto r = forget_predicate_semidef(t, Predicate::rigid("P"), {"y"});
    if (!check_forgetting(t, {hidden}, r.theory, kForgetDomain).ok) o.fail("semidef: " + to_infix(all(t)));
  }
  o.detail = std::to_string(kAtomCases) + " atom, " + std::to_string(kLocalCases) + " local (c<=4), " +
             std::to_string(kSemidefCases) + " semi-definitional cases, N<=3";
  return o;
}

// ---- 3 ------------------------------------------------------------------

Outcome bounds() {
  Outcome o;
  std::vector<int> cs, ds;
  for (int c = 1; c <= kLeMaxC; ++c) cs.push_back(c);
  for (int d = 0; d <= kAcMaxD; ++d) ds.push_back(d);
  std::size_t rows = 0;
  for (const auto& r : bench::run("le", cs, 3001)) {
    ++rows;
    if (!r.holds()) o.fail("le c=" + std::to_string(r.param) + ": " + fmt(r.measured) + " > " + fmt(r.bound));
  }
  for (const auto& r : bench::run("ac", ds, 3002)) {
    ++rows;
    if (!r.holds()) o.fail("ac d=" + std::to_string(r.param) + ": " + fmt(r.measured) + " > " + fmt(r.bound));
  }

  gen::Rng rng(3003);
  gen::Shape s;
  s.preds = {{"Q", 1}, {"S", 1}, {"E", 2}, {"B", 0}};
  s.constants = {"a", "b"};
  s.pool = {"z"};
  s.depth = 2;
  const Predicate p = Predicate::rigid("P");
  const std::vector<std::vector<std::string>> args = {{"x"}, {"a"}};
  for (int i = 0; i < kGoodFormCases; ++i) {
    const auto& t = args[static_cast<std::size_t>(i) % args.size()];
    std::vector<std::string> scope = t[0] == "x" ? std::vector<std::string>{"x"} : std::vector<std::string>{};
    Formula phi = open(testing::parse(gen::goodform(rng, s, "P", t, scope)));
    auto gf = is_good_form(phi, p);
    if (!gf) {
      o.fail("not in good form: " + to_infix(phi));
      continue;
    }
    Formula whole = assemble(*gf, p);
    std::size_t a = std::max<std::size_t>(free_vars(whole).size(), 1);
    std::size_t sz = size(whole), w = condition_size(*gf);
    auto parts = goodform_to_semidef(*gf, p, {"y"});
    Formula neg = assemble(negate_goodform(*gf), p);
    Formula chi = open(testing::parse(gen::formula(rng, s, scope)));
    Formula dis = assemble(or_goodform(*gf, chi), p);
    std::string where = to_infix(whole);
    if (size(parts.combined) > sz + 7 * a + 2) o.fail("semidef size: " + where);
    if (condition_size(open(parts.combined), p) > w + 3 * a + 1) o.fail("semidef condition size: " + where);
    if (size(neg) > 3 * sz) o.fail("negation size: " + where);
    if (condition_size(neg, p) > 3 * w + 2) o.fail("negation condition size: " + where);
    if (size(dis) > sz + 3 * size(chi) + 3) o.fail("disjunction size: " + where);
    if (condition_size(dis, p) > w + size(chi) + 1) o.fail("disjunction condition size: " + where);
  }
  o.detail = std::to_string(rows) + " bench rows (le c<=8, ac d<=6), " + std::to_string(kGoodFormCases) +
             " good-form inputs";
  return o;
}

// ---- 4 ------------------------------------------------------------------

Outcome shapes() {
  Outcome o;
  auto nr = bench::shape_fit("nr", bench::run("nr", {2, 4, 8, 16, 32}, 4001));
  auto ac = bench::shape_fit("ac", bench::run("ac", {0, 1, 2, 3, 4, 5, 6}, 4002));
  auto le = bench::shape_fit("le", bench::run("le", {2, 4, 8, 16, 32, 64}, 4003, true));
  if (nr.slope > kNrExponent) o.fail("nr exponent " + fmt(nr.slope));
  if (ac.slope > kAcSlope) o.fail("ac slope " + fmt(ac.slope));
  if (le.slope > kLeExponent) o.fail("le exponent " + fmt(le.slope));
  o.detail = "nr exponent " + fmt(nr.slope) + " <= 2.3, ac log2 slope " + fmt(ac.slope) + " <= 1.2, le exponent " +
             fmt(le.slope) + " <= 1.2";
  return o;
}

// ---- 5 ------------------------------------------------------------------

Outcome closure() {
  Outcome o;
  gen::Rng rng(5001);
  int runs = 0;
  for (auto frag : {Fragment::FO2, Fragment::UTC})
    for (auto cls : {BatClass::LE, BatClass::NR, BatClass::AC}) {
      gen::BatSpec spec;
      spec.cls = cls;
      spec.fragment = frag;
      for (int i = 0; i < kFragmentPerClass; ++i) {
        auto g = gen::random_bat(rng, spec);
        ProgressOptions po;
        po.fragment = frag;
        try {
          auto r = progress(g.bat, g.alpha, po);
          ++runs;
          bool in = frag == Fragment::FO2 ? r.fo2_in : r.utc_in;
          bool out = frag == Fragment::FO2 ? check_fo2(r.theory).ok : check_utc(r.theory).ok;
          if (!in) o.fail(g.name + ": input not in " + to_string(frag));
          if (!out) o.fail(g.name + ": output left " + std::string(to_string(frag)));
        } catch (const Error& e) {
          o.fail(g.name + ": " + e.what());
        }
      }
    }
  o.detail = std::to_string(runs) + " fragment-mode progressions (50 FO2 and 50 UTC per class)";
  return o;
}

// ---- 6 ------------------------------------------------------------------

Outcome rewrites() {
  Outcome o;
  Vocabulary v;
  v.rigids = {{"P", 1}, {"T", 2}, {"Q", 1}, {"S", 1}, {"B", 0}};
  v.actions = {{"A", 0}};
  v.constants = {"a", "b"};
  auto parse = [&](const std::string& s) { return parse_sentence(s, v); };
  gen::Shape s;
  s.preds = {{"Q", 1}, {"S", 1}, {"B", 0}};
  s.constants = {"a", "b"};
  s.pool = {};
  s.quantifiers = false;
  s.depth = 2;
  gen::Rng rng(6001);
  const std::vector<std::vector<std::string>> cases = {{"a"}, {"x"}, {"a", "b"}, {"x", "b"}, {"a", "y"}, {"x", "y"}};
  int n = 0;
  for (const auto& t : cases) {
    bool unary = t.size() == 1;
    Predicate p = Predicate::rigid(unary ? "P" : "T");
    std::vector<std::string> y = unary ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    for (int i = 0; i < kRewriteCases; ++i) {
      Formula phi = open(parse(gen::goodform(rng, s, unary ? "P" : "T", t, y)));
      Theory out = fo2_semidef_rewrite(phi, p, y);
      ++n;
      if (!equivalent(out, {close_universally(phi)}, kRewriteDomain).ok) o.fail("fo2: " + to_infix(phi));
      if (!check_fo2(out).ok || !is_semi_definitional(out, p)) o.fail("fo2 shape: " + to_infix(phi));
    }
  }
  const std::vector<std::vector<std::string>> targets = {{"x"}, {"a"}, {"y"}};
  const Predicate p = Predicate::rigid("P");
  for (int i = 0; i < kRewriteCases; ++i) {
    const auto& t = targets[static_cast<std::size_t>(i) % targets.size()];
    Formula phi = open(parse(gen::goodform(rng, s, "P", t, {"x", "y"})));
    Theory out = utc_semidef_rewrite(phi, p, {"u"});
    ++n;
    if (!equivalent(out, {close_universally(phi)}, kRewriteDomain).ok) o.fail("utc: " + to_infix(phi));
    if (!check_utc(out).ok || !is_semi_definitional(out, p)) o.fail("utc shape: " + to_infix(phi));
  }
  o.detail = std::to_string(n) + " rewrites (100 per FO2 case, 100 UTC), N<=3";
  return o;
}

// ---- 7 ------------------------------------------------------------------

Outcome mutations() {
  Outcome o;
  auto corpus = testing::load_corpus();
  int caught = 0, tried = 0, redrawn = 0;
  for (std::size_t i = 0; tried < kMutations && i < corpus.size(); ++i) {
    const auto& c = corpus[(i * 7) % corpus.size()];
    auto alpha = GroundAction::parse(c.action, c.bat.vocab);
    auto r = progress(c.bat, alpha);
    Fault f = tried % 2 == 0 ? Fault::DropConjunct : Fault::FlipLiteral;
    if (fault_sites(r.theory, f) == 0) f = f == Fault::DropConjunct ? Fault::FlipLiteral : Fault::DropConjunct;
    std::size_t sites = fault_sites(r.theory, f);
    if (sites == 0) continue;
    // a redundant conjunct or literal gives an equivalent theory, which no
    // sound check can reject; move on to the next site in that case
    gen::Rng rng(7001 + i);
    std::size_t site = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(sites) - 1));
    Theory bad;
    bool found = false;
    for (std::size_t k = 0; k < sites && !found; ++k) {
      bad = inject(r.theory, f, (site + k) % sites);
      found = !equivalent(bad, r.theory, kMutationDomain).ok;
      if (!found) ++redrawn;
    }
    if (!found) continue;
    ++tried;
    auto v = check_progression(c.bat, alpha, bad, kMutationDomain);
    if (!v.ok && !v.witness.empty())
      ++caught;
    else
      o.fail(c.name + " survived " + to_string(f));
  }
  if (tried < kMutations) o.fail("only " + std::to_string(tried) + " outputs had a non-vacuous fault site");
  o.detail = std::to_string(caught) + "/" + std::to_string(tried) + " mutated outputs rejected with a counterexample at N<=3, " +
             std::to_string(redrawn) + " vacuous sites skipped";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"correctness suite", correctness}, {"forgetting oracles", forgetting}, {"size bounds", bounds},
      {"asymptotic shape", shapes},       {"fragment closure", closure},     {"rewrite fidelity", rewrites},
      {"mutation sensitivity", mutations}};
  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_ok = all_ok && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << " ("
              << fmt(seconds_since(t0)) << " s)\n";
    for (const auto& f : o.failures) std::cout << "     " << f << '\n';
    std::cout.flush();
  }
  return all_ok ? 0 : 1;
}
