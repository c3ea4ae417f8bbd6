// Basic action theories: vocabulary, initial KB, successor state axioms, and
// their instantiation for a ground action.

#ifndef PROGRESSOR_BAT_HPP
#define PROGRESSOR_BAT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "progressor/formula.hpp"

namespace prog {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  int line;
  int col;
};

struct Symbol {
  std::string name;
  int arity = 0;
};

struct Vocabulary {
  std::vector<Symbol> fluents;
  std::vector<Symbol> rigids;
  std::vector<Symbol> actions;
  std::vector<std::string> constants;

  std::optional<int> fluent_arity(const std::string& s) const;
  std::optional<int> rigid_arity(const std::string& s) const;
  std::optional<int> action_arity(const std::string& s) const;
  bool is_constant(const std::string& s) const;
  /// Largest object arity among fluents and rigids.
  int max_arity() const;
};

/// The situation variable used in SSA bodies.
Term situation_var();

/// One disjunct  exists z. a = A(v) & body  of an effect condition.
struct GammaEntry {
  std::string action;
  std::vector<Term> pattern;       // variables or constants
  std::vector<std::string> zvars;  // variables not among the fluent parameters
  Formula body;                    // uniform in situation_var()
};

struct SSA {
  std::string fluent;
  std::vector<std::string> params;
  std::vector<GammaEntry> pos;
  std::vector<GammaEntry> neg;

  std::vector<Term> param_terms() const;
};

struct GroundAction {
  std::string symbol;
  std::vector<std::string> args;

  /// Parses "A(c1,c2)" or "A" and checks it against the vocabulary.
  static GroundAction parse(const std::string& text, const Vocabulary& vocab);
  Term term() const;
  /// do(alpha, S0).
  Term successor() const;
  std::string to_string() const;
};

struct BasicActionTheory {
  Vocabulary vocab;
  Theory init;            // uniform in S0, universally closed
  std::vector<SSA> ssas;  // one per fluent, in vocabulary order

  const SSA& ssa(const std::string& fluent) const;
};

/// Default parameter names for a fluent of the given arity.
std::vector<std::string> default_params(int arity);

BasicActionTheory parse_bat(const std::string& text);
/// Parses a single sentence against a vocabulary; fluents are placed at S0.
Formula parse_sentence(const std::string& text, const Vocabulary& vocab);

struct PrintOptions {
  std::vector<std::string> header;  // emitted as ; comment lines
  std::optional<std::string> init_label;
};
std::string print_bat(const BasicActionTheory& bat, const PrintOptions& opts = {});

/// The effect condition of `ssa` for the given sign and ground action, with
/// the fluent parameters free and fluents evaluated at `sit`. Unique names
/// for actions are applied syntactically; `una` also applies them to object
/// constants during simplification.
Formula instantiate_gamma(const SSA& ssa, bool positive, const GroundAction& alpha, const Term& sit, bool una = true);

/// Same, with the action equality kept literally and no simplification:
/// the disjunction over entries for alpha's symbol of  exists z. (t = v & body).
Formula instantiate_gamma_raw(const SSA& ssa, bool positive, const GroundAction& alpha, const Term& sit);

/// Right-hand side  gamma+ | (~gamma- & F(x, S0))  of the instantiated SSA.
Formula ssa_rhs(const SSA& ssa, const GroundAction& alpha, bool una = true);
/// F(x, S_alpha) <-> rhs, universally closed.
Formula instantiate_ssa(const SSA& ssa, const GroundAction& alpha, bool una = true);
/// D_ss[alpha, S0] for every fluent.
Theory instantiate_ssas(const BasicActionTheory& bat, const GroundAction& alpha, bool una = true);

/// The four sentences
///   ~g+ & F(x,Sa) -> F(x,S0),  F(x,S0) -> g- | F(x,Sa),  g+ -> F(x,Sa),  g- -> ~F(x,Sa)
/// whose conjunction is equivalent to the instantiated SSA.
std::array<Formula, 4> ssa_decompose(const SSA& ssa, const GroundAction& alpha, bool una = true);

/// Every symbol in `f` must be declared with the right arity.
void check_vocabulary(const Formula& f, const Vocabulary& vocab);

}  // namespace prog

#endif
