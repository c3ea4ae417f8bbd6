#include "doctest.h"
#include "progressor/oracle.hpp"
#include "support.hpp"

using namespace prog;
using testing::parse;

TEST_CASE("falsity has no models") {
  for (int n = 1; n <= 3; ++n) CHECK(models({Formula::falsity()}, n).models.empty());
}

TEST_CASE("truth over one unary predicate on a singleton domain") {
  Signature sig;
  sig.add({Op::Rigid, "P", 0, 1});
  CHECK(models({Formula::truth()}, sig, 1).models.size() == 2);
  CHECK(models({Formula::truth()}, sig, 2).models.size() == 4);
}

TEST_CASE("contradiction has no models") {
  Theory t{parse("(forall (x) (P x))"), parse("(exists (x) (not (P x)))")};
  for (int n = 1; n <= 3; ++n) CHECK(models(t, n).models.empty());
}

TEST_CASE("model counts under both constant readings") {
  Formula f = parse("(P a)");
  OracleOptions una, free;
  free.una = false;
  CHECK(models({f}, 2, una).models.size() == 4);
  CHECK(models({parse("(= a b)")}, 2, una).models.empty());
  CHECK(models({parse("(= a b)")}, 2, free).models.size() == 2);
}

TEST_CASE("nnf is equivalent") {
  Formula f = parse("(not (implies (forall (x) (or (P x) (R x a))) (exists (y) (iff (Q y) (P b)))))");
  CHECK(equivalent(f, nnf(f), 3).ok);
}

TEST_CASE("a counterexample is reported") {
  auto v = equivalent(parse("(P a)"), Formula::truth(), 3);
  REQUIRE_FALSE(v.ok);
  CHECK(v.n == 1);
  CHECK(v.witness.find("P {}") != std::string::npos);
}

TEST_CASE("bounded entailment") {
  CHECK(entails({parse("(P a)")}, parse("(exists (x) (P x))"), 3).ok);
  CHECK(entails({parse("(P a)")}, Formula::truth(), 3).ok);
  CHECK_FALSE(entails({parse("(exists (x) (P x))")}, parse("(P a)"), 3).ok);
}

TEST_CASE("miniscoping keeps meaning") {
  Formula f = parse("(forall (x y z) (or (and (P x) (Q y)) (R x z) (S z)))");
  CHECK(equivalent(f, miniscope(f), 3).ok);
  Formula g = parse("(exists (x y) (and (P x) (or (Q y) (R x y)) (B)))");
  CHECK(equivalent(g, miniscope(g), 3).ok);
}

TEST_CASE("adding a sentence never adds models") {
  Theory t{parse("(forall (x) (or (P x) (Q x)))")};
  Theory u = t;
  u.push_back(parse("(exists (x) (R x x))"));
  Signature sig = signature_of(u);
  for (int n = 1; n <= 2; ++n) CHECK(models(u, sig, n).models.size() <= models(t, sig, n).models.size());
}

TEST_CASE("equivalence is symmetric and ignores sentence order") {
  Theory a{parse("(P a)"), parse("(forall (x) (implies (P x) (Q x)))")};
  Theory b{a[1], a[0]};
  CHECK(equivalent(a, b, 3).ok);
  Theory c{parse("(Q a)")};
  CHECK(equivalent(a, c, 2).ok == equivalent(c, a, 2).ok);
  CHECK(equivalent(a, a, 2).ok);
}

TEST_CASE("budget refusal and sampling") {
  Theory t{parse("(forall (x y) (or (R x y) (E x y)))")};
  OracleOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(equivalent(t, t, 3, tight), BudgetError);
  tight.samples = 500;
  auto v = equivalent(t, t, 3, tight);
  CHECK(v.ok);
  CHECK(v.probabilistic);
}

TEST_CASE("semantic forgetting of a predicate") {
  Theory t{parse("(forall (x) (implies (P x) (Q x)))"), parse("(forall (x) (implies (S x) (P x)))")};
  Theory r{parse("(forall (x) (implies (S x) (Q x)))")};
  CHECK(check_forgetting(t, {{Op::Rigid, "P", 0, 1}}, r, 3).ok);
  CHECK_FALSE(check_forgetting(t, {{Op::Rigid, "P", 0, 1}}, {Formula::truth()}, 3).ok);
}

TEST_CASE("semantic forgetting of a ground atom") {
  Formula phi = parse("(and (P a) (or (not (P a)) (Q a)))");
  CHECK(check_atom_forgetting(phi, parse("(P a)"), parse("(Q a)"), 3).ok);
  CHECK_FALSE(check_atom_forgetting(phi, parse("(P a)"), Formula::truth(), 3).ok);
}

namespace {
const char* kToggle = R"(
(vocab (fluent F 1) (action T 1) (const c))
(init (F c))
(ssa F (x)
  (pos T (x) () (not (F x)))
  (neg T (x) () (F x)))
)";
}

TEST_CASE("toggle progression by hand") {
  auto bat = parse_bat(kToggle);
  auto alpha = GroundAction::parse("T(c)", bat.vocab);
  Formula not_f = Formula::negation(Formula::fluent("F", {Term::constant("c")}, alpha.successor()));
  CHECK(check_progression(bat, alpha, {not_f}, 3).ok);
  OracleOptions free;
  free.una = false;
  CHECK(check_progression(bat, alpha, {not_f}, 3, free).ok);
  Formula f = Formula::fluent("F", {Term::constant("c")}, alpha.successor());
  auto bad = check_progression(bat, alpha, {f}, 3);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  // dropping the only conjunct
  CHECK_FALSE(check_progression(bat, alpha, {}, 3).ok);
}

TEST_CASE("identity action keeps the initial theory") {
  auto bat = parse_bat(R"(
(vocab (fluent F 1) (fluent G 1) (action N 0) (const c))
(init (F c) (forall (x) (implies (F x) (G x)))))");
  auto alpha = GroundAction::parse("N", bat.vocab);
  Theory moved;
  for (const auto& s : bat.init) moved.push_back(substitute(s, Term::init(), alpha.successor()));
  CHECK(check_progression(bat, alpha, moved, 3).ok);
}

TEST_CASE("results mentioning S0 are rejected") {
  auto bat = parse_bat(kToggle);
  auto alpha = GroundAction::parse("T(c)", bat.vocab);
  auto v = check_progression(bat, alpha, bat.init, 2);
  CHECK_FALSE(v.ok);
  CHECK(v.detail.find("uniform") != std::string::npos);
}

TEST_CASE("consistency of effect conditions") {
  auto bat = parse_bat(kToggle);
  auto alpha = GroundAction::parse("T(c)", bat.vocab);
  CHECK(check_consistency(bat, alpha, 3).ok);
  auto clash = parse_bat(R"(
(vocab (fluent F 1) (action T 1) (const c))
(init)
(ssa F (x) (pos T (x) () true) (neg T (x) () true)))");
  CHECK_FALSE(check_consistency(clash, GroundAction::parse("T(c)", clash.vocab), 2).ok);
}
