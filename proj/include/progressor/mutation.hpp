// Fault injection for checking that the oracle notices broken outputs.

#ifndef PROGRESSOR_MUTATION_HPP
#define PROGRESSOR_MUTATION_HPP

#include <cstdint>
#include <string>

#include "progressor/formula.hpp"

namespace prog {

enum class Fault { DropConjunct, FlipLiteral };
const char* to_string(Fault f);
/// "drop-conjunct" or "flip-literal".
Fault parse_fault(const std::string& s);

/// Number of places the fault can be applied to.
std::size_t fault_sites(const Theory& t, Fault f);
/// Applies the fault at site `site` (taken modulo the number of sites).
/// Conjuncts are the top-level conjuncts of every sentence below its
/// universal prefix; literals are atom occurrences, equalities included.
Theory inject(const Theory& t, Fault f, std::size_t site);
/// The same with the site drawn from `seed`.
Theory inject_seeded(const Theory& t, Fault f, std::uint64_t seed);

}  // namespace prog

#endif
