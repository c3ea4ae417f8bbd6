// Rewrites that keep the two-variable fragment and universal theories with
// constants closed under progression.

#ifndef PROGRESSOR_FRAGMENTS_HPP
#define PROGRESSOR_FRAGMENTS_HPP

#include "progressor/classification.hpp"
#include "progressor/forgetting.hpp"

namespace prog {

/// Two-variable rewrite of a good-form formula whose variables are among
/// the canonical names of P (a unary P gets a second name, `y` by default).
/// Every argument pattern over {x, y, constants} is handled: P(x), P(A),
/// P(x,y), P(x,B), P(A,y), P(A,B), P(x,x) and their variable swaps.
SemidefParts fo2_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y);

/// The same rewrite in implication shape, e.g.
///   forall x (psi(x) | P(A))  becomes  forall x. (x = A & exists x ~psi(x)) -> P(x).
/// Already semi-definitional clauses are returned unchanged.
Theory fo2_semidef_rewrite(const Formula& phi, const Predicate& p, const std::vector<std::string>& y);

/// Guarded rewrite keeping the matrix quantifier-free: the condition of
/// forall x (psi | P(t)) becomes  ~(y = t) | psi  with x left free.
SemidefParts utc_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y);

/// forall x forall y. y = t -> (psi | P(y)), and the corresponding negative
/// clause and remainder.
Theory utc_semidef_rewrite(const Formula& phi, const Predicate& p, const std::vector<std::string>& y);

/// Dispatches to the rewrite for the fragment.
SemidefParts goodform_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y,
                                 Fragment mode);

/// forall x phi(x) | forall x psi(x)  as  forall x forall y (phi(x) | psi(y)).
Formula utc_disjoin(const Theory& t1, const Theory& t2);

/// Name of the singleton predicate simulating constant `c`.
std::string constant_predicate(const std::string& c);
/// exists x C(x)  and  forall x forall y (C(x) & C(y) -> x = y)  per
/// constant; with `una` also pairwise disjointness.
Theory fo2_constant_axioms(const std::vector<std::string>& constants, bool una = false);
/// Replaces constants by their singleton predicates, staying within two
/// variable names.
Formula fo2_eliminate_constants(const Formula& f, const std::vector<std::string>& constants);

}  // namespace prog

#endif
