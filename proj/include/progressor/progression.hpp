// Progression of a basic action theory through one ground action, for
// local-effect, normal and acyclic theories.

#ifndef PROGRESSOR_PROGRESSION_HPP
#define PROGRESSOR_PROGRESSION_HPP

#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/classification.hpp"

namespace prog {

enum class Method { Auto, LE, NR, AC };
const char* to_string(Method m);
Method parse_method(const std::string& s);

/// Thrown when the requested algorithm does not apply; carries the verdict.
struct ClassMismatch : Error {
  ClassMismatch(const std::string& msg, Verdict v) : Error(msg), verdict(std::move(v)) {}
  Verdict verdict;
};

/// A fragment-preserving run produced output outside the fragment.
struct ClosureViolation : Error {
  using Error::Error;
};

struct BoundCheck {
  std::string name;
  double measured = 0;
  double bound = 0;
  bool holds() const { return measured <= bound; }
};

struct SizeStats {
  std::size_t c = 0;  // |Omega|
  std::size_t d = 0;  // dependency-graph depth
  std::size_t n = 0;  // size of D_S0
  std::size_t m = 0;  // size of the instantiated successor state axioms
  std::size_t k = 0;  // largest instantiated SSA of an NLE fluent
  std::size_t w = 0;  // largest original Delta_F condition size
  std::size_t a = 0;  // largest predicate arity
  std::size_t l = 0;  // number of NLE fluents
  std::size_t b = 0;  // arity of the action
  std::size_t intermediate = 0;  // after forgetting the NLE lifting predicates, before simplification
  std::size_t aggregate = 0;     // 4 * sum of updated Delta_F condition sizes (AC)
  std::size_t raw_size = 0;      // final output before simplification
  std::size_t output_size = 0;   // size of the returned theory
  std::size_t disjuncts = 0;
  std::vector<BoundCheck> checks;

  bool bounds_hold() const;
};

struct ProgressOptions {
  Method method = Method::Auto;
  Fragment fragment = Fragment::None;
  bool una = true;
  std::size_t cap = 16;
  /// Order in which NR forgets the NLE lifting predicates; empty means by name.
  std::vector<std::string> nr_order;
};

struct ProgressionResult {
  Theory theory;  // uniform in S_alpha, simplified
  Theory raw;     // the same before simplification
  Method method = Method::LE;
  Fragment mode = Fragment::None;
  SizeStats stats;
  Verdict verdict;
  bool fo2_in = false, utc_in = false;
  bool fo2_out = false, utc_out = false;
  std::string fragment_out() const;
};

ProgressionResult progress_le(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts = {});
ProgressionResult progress_nr(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts = {});
ProgressionResult progress_ac(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts = {});
/// Auto picks the first applicable of LE, NR, AC.
ProgressionResult progress(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressOptions& opts = {});

/// The progressed theory as a BAT whose initial theory is the result, with
/// fluents moved back to the initial situation so it re-parses.
BasicActionTheory progressed_bat(const BasicActionTheory& bat, const GroundAction& alpha, const ProgressionResult& r);

}  // namespace prog

#endif
