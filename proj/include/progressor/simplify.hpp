// Light unit simplification. Sound under the stated unique-names setting;
// no search, only local rewrites.

#ifndef PROGRESSOR_SIMPLIFY_HPP
#define PROGRESSOR_SIMPLIFY_HPP

#include "progressor/formula.hpp"

namespace prog {

/// Applies, bottom-up: unit laws for True/False, double negation, t=t to
/// True, c=d to False for distinct constants when `una` holds, removal of
/// vacuous quantifiers, duplicate and complementary literals in one
/// conjunction or disjunction.
Formula simplify(const Formula& f, bool una = true);

/// Simplifies every sentence, drops the ones that became True and collapses
/// to {False} if any sentence became False.
Theory simplify(const Theory& t, bool una = true);

}  // namespace prog

#endif
