// Forgetting: ground atoms, literal-set substitution and local forgetting,
// predicates in semi-definitional theories, and the good-form rewrites.

#ifndef PROGRESSOR_FORGETTING_HPP
#define PROGRESSOR_FORGETTING_HPP

#include <string>
#include <utility>
#include <vector>

#include "progressor/classification.hpp"
#include "progressor/formula.hpp"

namespace prog {

/// Component-wise  a1 = b1 & ... & an = bn  (True for empty tuples).
Formula tuple_equal(const std::vector<Term>& a, const std::vector<Term>& b);

/// phi[P(t)]: every atom P(t') becomes  (t = t' & P(t)) | (~(t = t') & P(t')).
Formula expand_for_atom(const Formula& phi, const Formula& atom);
/// phi+ | phi-, built over phi[P(t)]. The atom must be ground.
Formula forget_ground_atom(const Formula& phi, const Formula& atom, bool una = true, bool simplified = true);

/// A consistent assignment of truth values to ground atoms.
using LiteralAssignment = std::vector<std::pair<Formula, bool>>;

/// Replaces each atom P(t) of a predicate mentioned in theta by
///   (t = t1 & v1) | ... | (t = tk & vk) | (~(t = t1) & ... & ~(t = tk) & P(t)).
Formula substitute_assignment(const Formula& phi, const LiteralAssignment& theta);

/// Local forgetting refused: the characteristic set is above the cap.
struct CapExceeded : Error {
  using Error::Error;
};

struct LocalForgetOptions {
  std::size_t cap = 16;
  Fragment mode = Fragment::None;
  bool una = true;
};

struct LocalForgetResult {
  Theory theory;         // simplified
  Theory raw;            // the construction before simplification
  std::size_t raw_size = 0;
  std::size_t disjuncts = 0;
};

/// Disjunction of theories with the universal prefixes of later theories
/// renamed apart and all of them pulled to the front.
Formula disjoin_theories(const std::vector<Theory>& branches);

/// The disjunction over all assignments theta to `omega` of t[theta]. In the
/// default and UTC modes the universal prefixes of all disjuncts are renamed
/// apart and pulled to the front; in FO2 mode they stay in place.
LocalForgetResult forget_local(const Theory& t, std::vector<Formula> omega, const LocalForgetOptions& opts = {});

/// Conjunction of conditions; in UTC mode their free extra variables are
/// renamed apart first.
Condition conjoin(const std::vector<Condition>& cs, const std::vector<std::string>& y, Fragment mode);
/// N | S with extra variables renamed apart.
Condition disjoin(const Condition& a, const Condition& b, const std::vector<std::string>& y, Fragment mode);

struct SemidefForgetResult {
  Theory theory;  // raw: the P-free rest plus one sentence per (N, S) pair
  std::size_t pairs = 0;
};

/// Forgets P from a theory that is semi-definitional wrt P, whose
/// occurrences are mapped to the canonical variables `y`.
SemidefForgetResult forget_predicate_semidef(const Theory& t, const Predicate& p, const std::vector<std::string>& y,
                                             Fragment mode = Fragment::None);

/// (NWS | P(y)) & (SNC | ~P(y)) summarizing every P-sentence of a theory.
struct DeltaAxiom {
  Predicate pred;
  std::vector<std::string> params;
  Condition nws{Formula::truth(), {}};
  Condition snc{Formula::truth(), {}};
  Theory rest;  // P-free sentences of the input

  Formula formula() const;
  std::size_t condition_size() const;
};

DeltaAxiom consolidate_delta(const Theory& t, const Predicate& p, const std::vector<std::string>& y,
                             Fragment mode = Fragment::None);

// ---- good-form rewrites --------------------------------------------------

/// ~phi in good form:  (~psi | ~psi'' | P) & (~psi' | ~psi'' | ~P) & True.
GoodForm negate_goodform(const GoodForm& gf);
/// The three-clause variant that also keeps  ~psi | ~psi' | ~psi''.
Formula negate_goodform_full(const GoodForm& gf, const Predicate& p);
/// phi | chi in good form, for P-free chi.
GoodForm or_goodform(const GoodForm& gf, const Formula& chi);

Formula negate_goodform(const Formula& phi, const Predicate& p);
Formula or_goodform(const Formula& phi, const Formula& chi, const Predicate& p);

/// Conditions of a good-form formula rewritten over the canonical variables
/// y of P, plus the P-free part. `sentences` is the same content as closed
/// sentences in semi-definitional shape.
struct SemidefParts {
  std::vector<Condition> nws;
  std::vector<Condition> snc;
  Theory rest;
  Theory sentences;
  Formula combined;  // the single-formula form, universally closed
};

/// Universally guarded rewrite:
///   ((forall x. ~(y = t) | psi) | P(y)) & ((forall x. ~(y = t) | psi') | ~P(y)) & forall x. psi''
SemidefParts goodform_to_semidef(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y);
Formula goodform_to_semidef(const Formula& phi, const Predicate& p, const std::vector<std::string>& y);

}  // namespace prog

#endif
