// Seeded random inputs: formulas, semi-definitional theories, good-form
// formulas and whole BATs of a requested class. Everything is produced as
// text in the BAT syntax and parsed, so generated inputs take the same path
// as hand-written ones.

#ifndef PROGRESSOR_GENERATORS_HPP
#define PROGRESSOR_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/classification.hpp"

namespace prog::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : e_(seed) {}
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(e_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(e_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  std::mt19937_64& engine() { return e_; }

 private:
  std::mt19937_64 e_;
};

/// What random formulas may be built from.
struct Shape {
  std::vector<Symbol> preds;
  std::vector<std::string> constants;
  std::vector<std::string> pool;  // names quantifiers may bind; never one in scope
  int depth = 2;
  bool quantifiers = true;
  bool equality = true;
};

std::string atom(Rng& rng, const Shape& s, const std::vector<std::string>& scope);
std::string literal(Rng& rng, const Shape& s, const std::vector<std::string>& scope);
/// Disjunction of `width` literals.
std::string clause(Rng& rng, const Shape& s, const std::vector<std::string>& scope, int width);
std::string formula(Rng& rng, const Shape& s, const std::vector<std::string>& scope);
/// A formula whose free variables are some of the pool; read universally.
std::string sentence(Rng& rng, const Shape& s);

/// Random sentences semi-definitional wrt p, whose arguments are the
/// distinct variables `args`; `free_of_p` must not mention p.
std::vector<std::string> semidef_theory(Rng& rng, const Shape& free_of_p, const std::string& p,
                                        const std::vector<std::string>& args, int sufficient, int necessary,
                                        int rest);

/// (psi | P(t)) & (psi' | ~P(t)) & psi'' with some conjuncts left out.
/// `t` may mix variables of `scope` and constants.
std::string goodform(Rng& rng, const Shape& free_of_p, const std::string& p, const std::vector<std::string>& t,
                     const std::vector<std::string>& scope);

/// A random sentence over the vocabulary of a theory, with fluents at S0 and
/// size at most `max_size`.
Formula query(Rng& rng, const Vocabulary& vocab, std::size_t max_size = 8);

struct BatSpec {
  BatClass cls = BatClass::LE;
  Fragment fragment = Fragment::None;
  int fluents = 3;    // 2 or 3
  int constants = 2;  // 1 or 2
  int depth = 1;      // nesting of effect conditions
  int init = 3;       // sentences in D_S0 besides the semi-definitional ones
};

struct GeneratedBat {
  std::string name;
  std::string text;
  std::string action;
  BasicActionTheory bat;
  GroundAction alpha;
  BatClass expected = BatClass::LE;
  int attempts = 0;  // draws until the class (and fragment) matched
};

/// Draws until check_bat_class reports `spec.cls` under both unique-names
/// readings, the requested fragment holds, the effect conditions are
/// consistent and D_S0 has a model of size at most 2.
GeneratedBat random_bat(Rng& rng, const BatSpec& spec);

}  // namespace prog::gen

#endif
