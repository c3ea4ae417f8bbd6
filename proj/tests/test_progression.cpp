#include "doctest.h"
#include "progressor/oracle.hpp"
#include "progressor/progression.hpp"
#include "support.hpp"

using namespace prog;

TEST_CASE("corpus: class, bounds and progression semantics") {
  auto corpus = testing::load_corpus();
  REQUIRE(corpus.size() >= 30);
  for (const auto& c : corpus) {
    CAPTURE(c.name);
    auto alpha = GroundAction::parse(c.action, c.bat.vocab);
    for (bool una : {true, false}) {
      CAPTURE(una);
      OracleOptions oo;
      oo.una = una;
      CHECK(check_consistency(c.bat, alpha, 3, oo).ok);
      Verdict v = check_bat_class(c.bat, alpha, una);
      CHECK(std::string(to_string(v.bat_class)) == c.expected);
      ProgressOptions po;
      po.una = una;
      ProgressionResult r = progress(c.bat, alpha, po);
      CHECK(std::string(to_string(r.method)) == c.expected);
      for (const auto& b : r.stats.checks) {
        CAPTURE(b.name);
        CAPTURE(b.measured);
        CAPTURE(b.bound);
        CHECK(b.holds());
      }
      auto verdict = check_progression(c.bat, alpha, r.theory, 3, oo);
      CAPTURE(verdict.witness);
      CAPTURE(verdict.detail);
      CHECK(verdict.ok);
      CHECK(check_progression(c.bat, alpha, r.raw, 2, oo).ok);
    }
  }
}
