// Syntactic classification: good form, semi-definitional theories, fragment
// membership, local/non-local effect fluents, the characteristic set, the
// dependency graph and the resulting action class.

#ifndef PROGRESSOR_CLASSIFICATION_HPP
#define PROGRESSOR_CLASSIFICATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/formula.hpp"

namespace prog {

enum class Fragment { None, FO2, UTC };
const char* to_string(Fragment f);
Fragment parse_fragment(const std::string& s);

// ---- good form ----------------------------------------------------------

/// (pos | P(t)) & (neg | ~P(t)) & rest. A missing clause is True; a bare
/// P(t) conjunct gives pos = False. `args` is empty when P does not occur.
struct GoodForm {
  Formula pos = Formula::truth();
  Formula neg = Formula::truth();
  Formula rest = Formula::truth();
  std::optional<std::vector<Term>> args;
};

std::optional<GoodForm> is_good_form(const Formula& phi, const Predicate& p);
/// The three-conjunct formula described by `gf`, without simplification.
Formula assemble(const GoodForm& gf, const Predicate& p);
std::size_t condition_size(const GoodForm& gf);
/// Throws PreconditionError unless `phi` is in good form wrt `p`.
std::size_t condition_size(const Formula& phi, const Predicate& p);

// ---- semi-definitional theories -----------------------------------------

/// A condition over the canonical variables. In UTC mode other variables are
/// left free (`extra`) and read universally; otherwise they are bound inside.
struct Condition {
  Formula f;
  std::vector<std::string> extra;
};

/// Sentences are split into clauses  N | P(y)  and  S | ~P(y)  plus the
/// P-free remainder. `nws` holds the N parts (negated sufficient
/// conditions), `snc` the S parts (necessary conditions).
struct SemidefAnalysis {
  bool ok = true;
  std::string witness;
  std::vector<Condition> nws;
  std::vector<Condition> snc;
  Theory rest;

  /// The sufficient conditions ~N, as in  psi -> P(y).
  std::vector<Formula> wsc() const;
};

SemidefAnalysis analyze_semidef(const Theory& t, const Predicate& p, const std::vector<std::string>& y,
                                Fragment mode = Fragment::None);
bool is_semi_definitional(const Theory& t, const Predicate& p);

// ---- fragments ----------------------------------------------------------

struct FragmentCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// At most two variable names per sentence and object arity at most two.
FragmentCheck check_fo2(const Theory& t);
/// Universal prefix over a quantifier-free matrix, for every sentence.
FragmentCheck check_utc(const Theory& t);

// ---- action classes -----------------------------------------------------

struct FluentSplit {
  std::vector<std::string> le;
  std::vector<std::string> nle;
  bool is_le(const std::string& f) const;
};

FluentSplit classify_fluents(const BasicActionTheory& bat, const GroundAction& alpha, bool una = true);

struct OmegaEntry {
  std::string fluent;
  std::vector<std::string> args;
  Formula atom(const Term& sit) const;
  friend auto operator<=>(const OmegaEntry&, const OmegaEntry&) = default;
};

struct CharacteristicSet {
  std::vector<OmegaEntry> entries;  // sorted, unique
  std::size_t c() const { return entries.size(); }
};

/// Omega for the local-effect fluents of `split`.
CharacteristicSet characteristic_set(const BasicActionTheory& bat, const GroundAction& alpha, const FluentSplit& split,
                                     bool una = true);
/// D_ss[Omega]: F(t, S_alpha) <-> rhs(t) per entry.
Theory dss_omega(const BasicActionTheory& bat, const GroundAction& alpha, const CharacteristicSet& omega,
                 bool una = true);

struct DependencyGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  int depth = 0;
  bool acyclic = true;
  std::vector<std::string> cycle;  // a witness when not acyclic
  /// Per NLE fluent, the fluents mentioned by its positive / negative condition.
  std::map<std::string, std::vector<std::string>> plus_targets;
  std::map<std::string, std::vector<std::string>> minus_targets;

  /// Kahn order over `only`, sources first, ties broken by name.
  std::vector<std::string> topological_order(const std::vector<std::string>& only) const;
  std::string to_dot() const;
};

DependencyGraph dependency_graph(const BasicActionTheory& bat, const GroundAction& alpha, const FluentSplit& split,
                                 bool una = true);

enum class BatClass { LE, NR, AC, None };
const char* to_string(BatClass c);

struct Verdict {
  BatClass bat_class = BatClass::None;
  bool le = false, nr = false, ac = false;
  std::string le_witness, nr_witness, ac_witness;
  FluentSplit split;
  CharacteristicSet omega;
  DependencyGraph graph;
  bool fo2 = false, utc = false;
  std::vector<std::string> fragment_diagnostics;

  bool admits(BatClass c) const;
  std::string witness() const;
  std::string fragment() const;
};

Verdict check_bat_class(const BasicActionTheory& bat, const GroundAction& alpha, bool una = true);

/// Effect condition lifted over the NLE fluents, at S0.
Formula lifted_gamma(const BasicActionTheory& bat, const std::string& fluent, bool positive, const GroundAction& alpha,
                     const FluentSplit& split, bool una = true);

}  // namespace prog

#endif
