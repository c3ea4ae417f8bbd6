#include <algorithm>
#include <set>

#include "doctest.h"
#include "progressor/classification.hpp"
#include "progressor/generators.hpp"
#include "progressor/oracle.hpp"
#include "support.hpp"

using namespace prog;
using testing::parse;

namespace {

struct Case {
  BasicActionTheory bat;
  GroundAction alpha;
};

Case load(const std::string& text, const std::string& action) {
  Case c{parse_bat(text), {}};
  c.alpha = GroundAction::parse(action, c.bat.vocab);
  return c;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// The matrix below the universal closure added by the parser.
Formula open(const std::string& s) { return strip_foralls(parse(s)).second; }

Theory lifted(const std::vector<std::string>& texts) {
  Theory t;
  for (const auto& s : texts) t.push_back(parse(s));
  return t;
}

std::vector<gen::GeneratedBat> sample(std::uint64_t seed, BatClass cls, int count) {
  gen::Rng rng(seed);
  gen::BatSpec spec;
  spec.cls = cls;
  std::vector<gen::GeneratedBat> out;
  for (int i = 0; i < count; ++i) {
    spec.fluents = 2 + i % 2;
    spec.constants = 1 + i % 2;
    out.push_back(gen::random_bat(rng, spec));
  }
  return out;
}

}  // namespace

// ---- fluent split -------------------------------------------------------

TEST_CASE("a pattern covering the parameters is local") {
  auto c = load("(vocab (fluent F 1) (fluent G 1) (action A 1) (const a)) (ssa F (x) (pos A (x) (z) (G z)))", "A(a)");
  auto s = classify_fluents(c.bat, c.alpha);
  CHECK(contains(s.le, "F"));
  CHECK(s.is_le("F"));
}

TEST_CASE("a free parameter outside the pattern is non-local") {
  auto c = load("(vocab (fluent F 1) (fluent G 1) (action A 1) (const a)) (ssa F (x) (pos A (y) () (G x)))", "A(a)");
  auto s = classify_fluents(c.bat, c.alpha);
  CHECK(contains(s.nle, "F"));
  CHECK_FALSE(s.is_le("F"));
}

TEST_CASE("no entry for the action is vacuously local") {
  auto c = load("(vocab (fluent F 1) (action A 1) (action B 0) (const a)) (ssa F (x) (pos A (y) () true))", "B");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.split.nle.empty());
  CHECK(v.omega.c() == 0);
  CHECK(v.bat_class == BatClass::LE);
}

// ---- characteristic set -------------------------------------------------

TEST_CASE("a toggled fluent contributes one entry") {
  auto c = load(testing::slurp(std::string(CORPUS_DIR) + "/le_toggle.bat"), "T(c)");
  auto v = check_bat_class(c.bat, c.alpha);
  REQUIRE(v.omega.c() == 1);
  CHECK(v.omega.entries[0].fluent == "F");
  CHECK(v.omega.entries[0].args == std::vector<std::string>{"c"});
}

TEST_CASE("an action affecting nothing has an empty characteristic set") {
  auto c = load("(vocab (fluent F 1) (action A 1) (action N 0) (const a)) (ssa F (x) (pos A (x) () true))", "N");
  CHECK(check_bat_class(c.bat, c.alpha).omega.c() == 0);
}

TEST_CASE("two fluents on two arguments stay within l times b to the a") {
  auto c = load(
      "(vocab (fluent F 1) (fluent G 1) (action A 2) (const c1 c2))"
      "(ssa F (x) (pos A (x y) () true) (neg A (y x) () true))"
      "(ssa G (x) (pos A (y x) () true) (neg A (x y) () (not (F x))))",
      "A(c1,c2)");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.bat_class == BatClass::LE);
  CHECK(v.omega.c() == 4);
  CHECK(v.omega.c() <= 2 * 2);
}

TEST_CASE("dss_omega instantiates one axiom per entry") {
  auto c = load(testing::slurp(std::string(CORPUS_DIR) + "/le_toggle.bat"), "T(c)");
  auto v = check_bat_class(c.bat, c.alpha);
  Theory d = dss_omega(c.bat, c.alpha, v.omega);
  REQUIRE(d.size() == 1);
  Term cc = Term::constant("c");
  Formula want = Formula::iff(Formula::fluent("F", {cc}, c.alpha.successor()),
                              Formula::negation(Formula::fluent("F", {cc}, Term::init())));
  CHECK(equivalent(d, Theory{want}, 3).ok);
}

// ---- semi-definitional theories ------------------------------------------

TEST_CASE("implications in both directions are semi-definitional") {
  Theory t = lifted({"(forall (x) (implies (P x) (Q x)))", "(forall (x) (implies (S x) (P x)))"});
  auto a = analyze_semidef(t, Predicate::rigid("P"), {"x"});
  REQUIRE(a.ok);
  REQUIRE(a.wsc().size() == 1);
  REQUIRE(a.snc.size() == 1);
  CHECK(is_semi_definitional(t, Predicate::rigid("P")));
}

TEST_CASE("two occurrences are not semi-definitional") {
  Theory t = lifted({"(forall (x y) (or (P x) (P y)))"});
  auto a = analyze_semidef(t, Predicate::rigid("P"), {"x"});
  CHECK_FALSE(a.ok);
  CHECK(a.witness.find("occurs 2 times") != std::string::npos);
}

TEST_CASE("absence of the predicate is semi-definitional") {
  Theory t = lifted({"(forall (x) (Q x))"});
  auto a = analyze_semidef(t, Predicate::rigid("P"), {"x"});
  CHECK(a.ok);
  CHECK(a.nws.empty());
  CHECK(a.snc.empty());
  CHECK(a.rest.size() == 1);
}

TEST_CASE("a nested occurrence is not semi-definitional") {
  Theory t = lifted({"(forall (x) (implies (Q x) (exists (y) (and (R x y) (P y)))))"});
  CHECK_FALSE(is_semi_definitional(t, Predicate::rigid("P")));
}

// ---- good form ----------------------------------------------------------

TEST_CASE("the three-part shape") {
  auto gf = is_good_form(open("(and (or (Q x) (P x)) (or (S x) (not (P x))) (E x x))"), Predicate::rigid("P"));
  REQUIRE(gf);
  CHECK(gf->pos == Formula::rigid("Q", {Term::var("x")}));
  CHECK(gf->neg == Formula::rigid("S", {Term::var("x")}));
  REQUIRE(gf->args);
  CHECK(gf->args->size() == 1);
}

TEST_CASE("two positive occurrences are not good form") {
  CHECK_FALSE(is_good_form(open("(and (P x) (P y))"), Predicate::rigid("P")));
}

TEST_CASE("a formula without the predicate is good form") {
  auto gf = is_good_form(open("(forall (y) (R x y))"), Predicate::rigid("P"));
  REQUIRE(gf);
  CHECK(gf->pos == Formula::truth());
  CHECK(gf->neg == Formula::truth());
  CHECK_FALSE(gf->args);
}

TEST_CASE("good form is matched up to conjunct order") {
  Predicate p = Predicate::rigid("P");
  auto a = is_good_form(open("(and (E x x) (or (not (P a)) (S x)) (or (P a) (Q x)))"), p);
  REQUIRE(a);
  CHECK(a->args->at(0) == Term::constant("a"));
}

// ---- dependency graph and classes ---------------------------------------

TEST_CASE("dependency graph examples") {
  auto one = load(
      "(vocab (fluent F 1) (fluent G 1) (action go 0) (const a))"
      "(ssa F (x) (pos go () () (G x)))",
      "go");
  auto g1 = check_bat_class(one.bat, one.alpha).graph;
  CHECK(g1.edges == std::vector<std::pair<std::string, std::string>>{{"F", "G"}});
  CHECK(g1.depth == 1);

  auto chain = load(
      "(vocab (fluent F 1) (fluent G 1) (fluent H 1) (action go 0) (const a))"
      "(ssa F (x) (pos go () () (G x))) (ssa G (x) (pos go () () (H x))) (ssa H (x) (pos go () () true))",
      "go");
  auto g2 = check_bat_class(chain.bat, chain.alpha).graph;
  CHECK(g2.depth == 2);
  CHECK(g2.acyclic);
  CHECK(g2.topological_order({"F", "G", "H"}) == std::vector<std::string>{"F", "G", "H"});
  CHECK(g2.to_dot().find("\"F\" -> \"G\"") != std::string::npos);
}

TEST_CASE("a chain of non-local fluents is AC and not NR") {
  auto c = load(testing::slurp(std::string(CORPUS_DIR) + "/ac_chain.bat"), "go");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.bat_class == BatClass::AC);
  CHECK_FALSE(v.nr);
  CHECK(v.nr_witness.find("mentions non-local-effect fluent G") != std::string::npos);
}

TEST_CASE("mutual dependency is rejected with the cycle") {
  auto c = load(
      "(vocab (fluent F 1) (fluent G 1) (action go 0) (const a))"
      "(ssa F (x) (pos go () () (G x))) (ssa G (x) (pos go () () (F x)))",
      "go");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.bat_class == BatClass::None);
  CHECK_FALSE(v.graph.acyclic);
  CHECK(v.ac_witness.find("dependency cycle") != std::string::npos);
  CHECK(v.graph.cycle.front() == v.graph.cycle.back());
  CHECK(v.witness().find("not AC") != std::string::npos);
  CHECK_THROWS_AS(v.graph.topological_order({"F", "G"}), PreconditionError);
}

TEST_CASE("a local fluent reading a non-local one blocks the global classes") {
  auto c = load(
      "(vocab (fluent L 1) (fluent N 1) (rigid Q 1) (action go 1) (const a))"
      "(init (forall (x) (implies (N x) (Q x))))"
      "(ssa L (x) (pos go (x) () (N a)))"
      "(ssa N (x) (pos go (y) () (Q x)))",
      "go(a)");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.bat_class == BatClass::None);
  CHECK(v.nr_witness.find("local-effect fluent L mentions non-local-effect fluent N") != std::string::npos);
}

TEST_CASE("an all-local theory admits every class") {
  auto c = load(testing::slurp(std::string(CORPUS_DIR) + "/le_toggle.bat"), "T(c)");
  auto v = check_bat_class(c.bat, c.alpha);
  CHECK(v.bat_class == BatClass::LE);
  CHECK(v.admits(BatClass::LE));
  CHECK(v.admits(BatClass::NR));
  CHECK(v.admits(BatClass::AC));
  CHECK(v.graph.edges.empty());
  CHECK(v.graph.depth == 0);
}

TEST_CASE("the corpus matches its class headers") {
  for (const auto& e : testing::load_corpus())
    for (bool una : {true, false}) {
      auto alpha = GroundAction::parse(e.action, e.bat.vocab);
      auto v = check_bat_class(e.bat, alpha, una);
      CHECK_MESSAGE(to_string(v.bat_class) == e.expected, e.name << " una=" << una << ": " << v.witness());
    }
}

// ---- fragments ----------------------------------------------------------

TEST_CASE("fo2 examples") {
  CHECK(check_fo2(lifted({"(forall (x y) (implies (H x y) (G x)))"})).ok);
  auto tri = check_fo2(lifted({"(exists (x) (exists (y) (exists (z) (and (E x y) (E y z) (E z x)))))"}));
  CHECK_FALSE(tri.ok);
  CHECK_FALSE(tri.diagnostics.empty());
  CHECK(check_fo2(lifted({"(forall (x) (implies (P x) (exists (x) (Q x))))"})).ok);
}

TEST_CASE("fo2 rejects high arity") {
  auto bat = parse_bat("(vocab (rigid T 3) (action A 0) (const a)) (init (T a a a))");
  auto f = check_fo2(bat.init);
  CHECK_FALSE(f.ok);
  CHECK(f.diagnostics.front().find("arity") != std::string::npos);
}

TEST_CASE("utc examples") {
  CHECK(check_utc(lifted({"(forall (x y) (or (not (H x y)) (R x x)))"})).ok);
  CHECK_FALSE(check_utc(lifted({"(exists (x) (P x))"})).ok);
  CHECK(check_utc(lifted({"(or (P a) (Q b))"})).ok);
  CHECK_FALSE(check_utc(lifted({"(forall (x) (or (P x) (exists (y) (R x y))))"})).ok);
}

// ---- properties ---------------------------------------------------------

TEST_CASE("the split partitions the fluents") {
  for (auto cls : {BatClass::LE, BatClass::NR, BatClass::AC})
    for (const auto& g : sample(31 + static_cast<int>(cls), cls, 12)) {
      auto s = classify_fluents(g.bat, g.alpha);
      std::set<std::string> all, seen;
      for (const auto& f : g.bat.vocab.fluents) all.insert(f.name);
      for (const auto& f : s.le) CHECK(seen.insert(f).second);
      for (const auto& f : s.nle) CHECK(seen.insert(f).second);
      CHECK(seen == all);
    }
}

TEST_CASE("omega stays within the counting bound and mentions only local fluents") {
  for (auto cls : {BatClass::LE, BatClass::NR, BatClass::AC})
    for (const auto& g : sample(41 + static_cast<int>(cls), cls, 12)) {
      auto v = check_bat_class(g.bat, g.alpha);
      std::size_t l = g.bat.vocab.fluents.size(), b = g.alpha.args.size();
      std::size_t a = static_cast<std::size_t>(g.bat.vocab.max_arity()), bound = l;
      for (std::size_t i = 0; i < a; ++i) bound *= b;
      CHECK(v.omega.c() <= bound);
      for (const auto& e : v.omega.entries) CHECK(v.split.is_le(e.fluent));
    }
}

TEST_CASE("every AC verdict satisfies the dependency restriction") {
  for (const auto& g : sample(51, BatClass::AC, 20)) {
    auto v = check_bat_class(g.bat, g.alpha);
    REQUIRE(v.ac);
    std::set<std::string> nle(v.split.nle.begin(), v.split.nle.end());
    for (const auto& f : v.split.nle)
      for (bool positive : {true, false}) {
        std::vector<std::string> nt;
        for (const auto& t : positive ? v.graph.plus_targets[f] : v.graph.minus_targets[f])
          if (nle.count(t)) nt.push_back(t);
        CHECK(nt.size() <= 1);
        if (nt.size() == 1)
          CHECK(is_good_form(lifted_gamma(g.bat, f, positive, g.alpha, v.split), Predicate::lifted(nt[0])));
      }
  }
}

TEST_CASE("separable NR theories are AC of depth at most one") {
  for (const auto& g : sample(61, BatClass::NR, 20)) {
    auto v = check_bat_class(g.bat, g.alpha);
    REQUIRE(v.nr);
    // the generator never writes an initial sentence over two NLE fluents
    CHECK(v.ac);
    CHECK(v.graph.depth <= 1);
  }
}

TEST_CASE("fragment checks are closed under conjunction") {
  gen::Rng rng(71);
  gen::Shape two;
  two.preds = {{"P", 1}, {"Q", 1}, {"R", 2}, {"F", 1}};
  two.constants = {"a"};
  two.pool = {"x", "y"};
  int both_fo2 = 0, both_utc = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = parse(gen::sentence(rng, two)), g = parse(gen::sentence(rng, two));
    if (check_fo2({f}).ok && check_fo2({g}).ok) {
      ++both_fo2;
      CHECK(check_fo2({f, g}).ok);
      CHECK(check_fo2({Formula::conj({f, g})}).ok);
    }
    gen::Shape qf = two;
    qf.quantifiers = false;
    Formula m1 = open(gen::formula(rng, qf, {"x", "y"})), m2 = open(gen::formula(rng, qf, {"x"}));
    Formula u1 = close_universally(m1), u2 = close_universally(m2);
    if (check_utc({u1}).ok && check_utc({u2}).ok) {
      ++both_utc;
      CHECK(check_utc({u1, u2}).ok);
      CHECK(check_utc({close_universally(Formula::conj({m1, m2}))}).ok);
    }
  }
  CHECK(both_fo2 > 50);
  CHECK(both_utc > 50);
}
