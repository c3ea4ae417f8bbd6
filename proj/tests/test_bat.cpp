#include "doctest.h"
#include "progressor/generators.hpp"
#include "progressor/oracle.hpp"
#include "support.hpp"

using namespace prog;

namespace {

const char* kBase = "(vocab (fluent F 1) (fluent G 1) (rigid P 1) (action A 1) (action B 1) (const c d))\n";

BasicActionTheory bat_of(const std::string& rest) { return parse_bat(std::string(kBase) + rest); }

Formula sentence(const BasicActionTheory& bat, const std::string& s) { return parse_sentence(s, bat.vocab); }

GroundAction act(const BasicActionTheory& bat, const std::string& s) { return GroundAction::parse(s, bat.vocab); }

// Universal closure of a <-> b.
Formula same(const Formula& a, const Formula& b) { return close_universally(Formula::iff(a, b)); }

bool valid(const Formula& f, int n) { return entails(Theory{}, f, n).ok; }

std::string error_of(const std::string& text) {
  try {
    parse_bat(text);
  } catch (const ParseError& e) {
    return e.what();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("an init sentence over a unary fluent") {
  auto bat = parse_bat("(vocab (fluent F 1) (action A 1) (const c1)) (init (F c1))");
  REQUIRE(bat.init.size() == 1);
  CHECK(bat.init[0] == Formula::fluent("F", {Term::constant("c1")}, Term::init()));
}

TEST_CASE("a positive effect entry") {
  auto bat = bat_of("(ssa F (pos A (x) () (G x)))");
  const SSA& s = bat.ssa("F");
  REQUIRE(s.pos.size() == 1);
  CHECK(s.neg.empty());
  CHECK(s.pos[0].action == "A");
  CHECK(s.pos[0].pattern == std::vector<Term>{Term::var("x")});
  CHECK(s.pos[0].zvars.empty());
  CHECK(s.pos[0].body == Formula::fluent("G", {Term::var("x")}, situation_var()));
}

TEST_CASE("fluents without an axiom get the frame axiom") {
  auto bat = bat_of("(ssa F (pos A (x) () true))");
  REQUIRE(bat.ssas.size() == 2);
  CHECK(bat.ssa("G").pos.empty());
  CHECK(bat.ssa("G").neg.empty());
}

TEST_CASE("parse errors") {
  CHECK(error_of(std::string(kBase) + "(ssa K (pos A (x) () true))").find("'K'") != std::string::npos);
  CHECK(error_of(std::string(kBase) + "(init (F c d))").find("F") != std::string::npos);
  CHECK(error_of(std::string(kBase) + "(init (Nope c))").find("Nope") != std::string::npos);
  CHECK(error_of(std::string(kBase) + "(ssa F (pos A (x) () true)) (ssa F (neg A (x) () true))")
            .find("duplicate") != std::string::npos);
  // an undeclared name in argument position is a variable, read universally
  CHECK(bat_of("(init (F e))").init[0] == close_universally(Formula::fluent("F", {Term::var("e")}, Term::init())));
  CHECK_FALSE(error_of("(vocab (fluent F 1)").empty());
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_bat(std::string(kBase) + "\n(init (Nope c))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col > 0);
  }
}

TEST_CASE("ground action syntax") {
  auto bat = bat_of("");
  auto g = act(bat, "A(c)");
  CHECK(g.symbol == "A");
  CHECK(g.args == std::vector<std::string>{"c"});
  CHECK(g.to_string() == "A(c)");
  CHECK_THROWS_AS(act(bat, "A(c,d)"), Error);
  CHECK_THROWS_AS(act(bat, "Z(c)"), Error);
  CHECK_THROWS_AS(act(bat, "A(e)"), Error);
}

TEST_CASE("instantiating for another action gives False") {
  auto bat = bat_of("(ssa F (pos A (x) () (G x)))");
  CHECK(instantiate_gamma(bat.ssa("F"), true, act(bat, "B(c)"), Term::init()) == Formula::falsity());
  CHECK(instantiate_gamma(bat.ssa("F"), false, act(bat, "A(c)"), Term::init()) == Formula::falsity());
}

TEST_CASE("instantiating a one-entry condition") {
  auto bat = bat_of("(ssa F (x) (pos A (x) () (G x)))");
  Formula g = instantiate_gamma(bat.ssa("F"), true, act(bat, "A(c)"), Term::init());
  Term x = Term::var("x");
  CHECK(valid(same(g, Formula::conj({Formula::equal(x, Term::constant("c")), Formula::fluent("G", {x}, Term::init())})),
              3));
  // a pattern variable that is not a parameter is existential
  auto other = bat_of("(ssa F (x) (pos A (v) () (G v)))");
  Formula h = instantiate_gamma(other.ssa("F"), true, act(other, "A(c)"), Term::init());
  CHECK(valid(same(h, sentence(other, "(G c)")), 3));
  CHECK(is_uniform(g, Term::init()));
}

TEST_CASE("local-effect form agrees with the raw instantiation") {
  auto bat = bat_of(
      "(ssa F (pos A (x) () (and (P x) (not (G c)))) (neg A (x) () (and (not (P x)) (G x)))"
      " (pos B (y) () (F y)))");
  const SSA& s = bat.ssa("F");
  for (const char* a : {"A(c)", "A(d)", "B(d)"})
    for (bool pos : {true, false})
      for (bool una : {true, false}) {
        auto g = act(bat, a);
        Formula simple = instantiate_gamma(s, pos, g, Term::init(), una);
        Formula raw = instantiate_gamma_raw(s, pos, g, Term::init());
        OracleOptions oo;
        oo.una = una;
        CHECK_MESSAGE(entails(Theory{}, same(simple, raw), 3, oo).ok, a);
      }
}

TEST_CASE("repeated pattern variables add equalities") {
  auto bat = parse_bat(
      "(vocab (fluent H 2) (action M 2) (const c d))"
      "(ssa H (x y) (pos M (x x) () true))");
  Formula g = instantiate_gamma(bat.ssa("H"), true, GroundAction::parse("M(c,d)", bat.vocab), Term::init());
  // c = d is impossible under unique names
  CHECK(valid(close_universally(Formula::negation(g)), 3));
  OracleOptions off;
  off.una = false;
  Formula raw = instantiate_gamma_raw(bat.ssa("H"), true, GroundAction::parse("M(c,d)", bat.vocab), Term::init());
  CHECK(entails(Theory{}, same(instantiate_gamma(bat.ssa("H"), true, GroundAction::parse("M(c,d)", bat.vocab),
                                                 Term::init(), false),
                               raw),
                3, off)
            .ok);
}

TEST_CASE("instantiation is uniform in the requested situation") {
  auto bat = bat_of("(ssa F (pos A (x) (z) (and (G z) (F x))) (neg A (x) () (P x)))");
  auto g = act(bat, "A(c)");
  Term s1 = g.successor();
  for (bool pos : {true, false}) {
    CHECK(is_uniform(instantiate_gamma(bat.ssa("F"), pos, g, Term::init()), Term::init()));
    CHECK(is_uniform(instantiate_gamma(bat.ssa("F"), pos, g, s1), s1));
  }
}

TEST_CASE("unconditional effect entails the fluent afterwards") {
  auto bat = bat_of("(ssa F (pos A (x) () true))");
  auto g = act(bat, "A(c)");
  auto d = ssa_decompose(bat.ssa("F"), g);
  Formula after = Formula::fluent("F", {Term::constant("c")}, g.successor());
  CHECK(entails(Theory(d.begin(), d.end()), after, 3).ok);
}

TEST_CASE("frame-only decomposition") {
  auto bat = bat_of("");
  auto g = act(bat, "A(c)");
  auto d = ssa_decompose(bat.ssa("F"), g);
  Term x = Term::var("x");
  Formula frame = close_universally(
      Formula::iff(Formula::fluent("F", {x}, g.successor()), Formula::fluent("F", {x}, Term::init())));
  CHECK(equivalent(Theory(d.begin(), d.end()), Theory{frame}, 3).ok);
}

TEST_CASE("decomposition matches the axiom on random conditions") {
  gen::Rng rng(21);
  gen::Shape s;
  s.preds = {{"F", 1}, {"G", 1}, {"P", 1}};
  s.constants = {"c"};
  s.pool = {"z"};
  s.depth = 2;
  for (int i = 0; i < 60; ++i) {
    std::string text = "(vocab (fluent F 1) (fluent G 1) (rigid P 1) (action A 1) (const c))(ssa F (x)";
    for (const char* sign : {"pos", "neg"})
      if (rng.chance(0.8))
        text += std::string(" (") + sign + " A (" + (rng.chance(0.7) ? "x" : "c") + ") () " +
                gen::formula(rng, s, {"x"}) + ")";
    text += ")";
    auto bat = parse_bat(text);
    auto g = GroundAction::parse("A(c)", bat.vocab);
    for (bool una : {true, false}) {
      auto d = ssa_decompose(bat.ssa("F"), g, una);
      // the decomposition relies on the effects never clashing
      Formula ok = close_universally(Formula::negation(
          Formula::conj({instantiate_gamma(bat.ssa("F"), true, g, Term::init(), una),
                         instantiate_gamma(bat.ssa("F"), false, g, Term::init(), una)})));
      Theory lhs(d.begin(), d.end());
      lhs.push_back(ok);
      OracleOptions oo;
      oo.una = una;
      CHECK_MESSAGE(equivalent(lhs, Theory{instantiate_ssa(bat.ssa("F"), g, una), ok}, 2, oo).ok, text);
    }
  }
}

TEST_CASE("corpus round-trips through the printer") {
  for (const auto& c : testing::load_corpus()) {
    std::string once = print_bat(c.bat);
    auto again = parse_bat(once);
    CHECK_MESSAGE(print_bat(again) == once, c.name);
    CHECK(again.init == c.bat.init);
    REQUIRE(again.ssas.size() == c.bat.ssas.size());
  }
}

TEST_CASE("corpus init sentences are uniform in S0") {
  for (const auto& c : testing::load_corpus())
    for (const auto& s : c.bat.init) {
      CHECK_MESSAGE(is_uniform(s, Term::init()), c.name);
      CHECK(free_vars(s).empty());
    }
}

TEST_CASE("generated theories round-trip") {
  gen::Rng rng(22);
  for (auto cls : {BatClass::LE, BatClass::NR, BatClass::AC}) {
    gen::BatSpec spec;
    spec.cls = cls;
    for (int i = 0; i < 4; ++i) {
      auto g = gen::random_bat(rng, spec);
      std::string once = print_bat(g.bat);
      CHECK_MESSAGE(print_bat(parse_bat(once)) == once, g.text);
    }
  }
}

TEST_CASE("header and init label") {
  auto bat = bat_of("(init (F c))");
  PrintOptions po;
  po.header = {"made by hand"};
  po.init_label = "S_alpha";
  std::string out = print_bat(bat, po);
  CHECK(out.rfind("; made by hand", 0) == 0);
  CHECK(out.find("(init S_alpha") != std::string::npos);
  CHECK(parse_bat(out).init == bat.init);
}
