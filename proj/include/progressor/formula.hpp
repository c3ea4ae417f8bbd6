// Sorted first-order formulas over a situation-calculus vocabulary.
//
// Formulas are immutable, reference-counted trees. Every transformation in
// the library returns a new value and never mutates its input, so formulas
// can be shared freely between theories and threads.

#ifndef PROGRESSOR_FORMULA_HPP
#define PROGRESSOR_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prog {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SortError : Error {
  using Error::Error;
};
struct UniformityError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

enum class Sort { Object, Action, Situation };

const char* to_string(Sort s);

class Term {
 public:
  enum class Kind { Variable, Constant, Action, Init, Do };

  /// The initial situation S0.
  Term() = default;

  static Term var(std::string name, Sort sort = Sort::Object);
  static Term constant(std::string name);
  static Term action(std::string symbol, std::vector<Term> args);
  static Term init() { return Term(); }
  static Term do_action(Term action, Term situation);

  Kind kind() const noexcept { return kind_; }
  Sort sort() const noexcept { return sort_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  bool is_ground() const;
  /// Number of `do` applications above S0; -1 for a situation variable.
  int depth() const;

  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::Init;
  Sort sort_ = Sort::Situation;
  std::string name_;
  std::vector<Term> args_;
};

enum class Op {
  True,
  False,
  Fluent,  // F(t..., situation)
  Rigid,   // R(t...)
  Lifted,  // P_F(t...), the situation-free stand-in for a fluent
  Equal,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

struct Node;

class Formula {
 public:
  /// Defaults to True.
  Formula();

  static Formula truth();
  static Formula falsity();
  static Formula constant(bool value) { return value ? truth() : falsity(); }
  static Formula fluent(std::string symbol, std::vector<Term> args, Term situation);
  static Formula rigid(std::string symbol, std::vector<Term> args);
  static Formula lifted(std::string symbol, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  /// n-ary conjunction; nested conjunctions are flattened, which keeps the
  /// symbol count unchanged. The empty conjunction is True.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body, bool implicit = false);

  Op op() const noexcept;
  /// Predicate symbol for atoms, bound variable for quantifiers.
  const std::string& symbol() const noexcept;
  const std::vector<Term>& args() const noexcept;
  const Term& situation() const noexcept;
  const std::vector<Formula>& children() const noexcept;
  const Formula& child(std::size_t i) const { return children().at(i); }
  const Formula& body() const { return children().at(0); }
  /// True for a universal quantifier introduced by implicit closure.
  bool implicit() const noexcept;

  bool is_atom() const noexcept;
  bool is_literal() const noexcept;
  bool is_quantifier() const noexcept { return op() == Op::Exists || op() == Op::Forall; }
  bool is_true() const noexcept { return op() == Op::True; }
  bool is_false() const noexcept { return op() == Op::False; }

  const Node* node() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  friend struct FormulaAccess;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::True;
  std::string symbol;
  std::vector<Term> args;
  Term situation;
  std::vector<Formula> kids;
  bool implicit = false;
};

using Theory = std::vector<Formula>;

/// Identifies a predicate for the purposes of occurrence checks: a rigid
/// symbol, a lifting predicate, or a fluent at one particular situation.
struct Predicate {
  Op kind = Op::Rigid;
  std::string symbol;
  std::optional<Term> situation;  // only for Op::Fluent; nullopt matches any

  static Predicate rigid(std::string s) { return {Op::Rigid, std::move(s), std::nullopt}; }
  static Predicate lifted(std::string s) { return {Op::Lifted, std::move(s), std::nullopt}; }
  static Predicate fluent(std::string s, Term sit) { return {Op::Fluent, std::move(s), std::move(sit)}; }

  bool matches(const Formula& atom) const;
  Formula atom(std::vector<Term> args) const;
  std::string to_string() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// ---- measurement --------------------------------------------------------

/// Number of atoms (equalities, True and False included), connectives from
/// {and, or, not} and quantifiers. Implications and biconditionals are
/// measured in their desugared form. Leading universal quantifiers of the
/// formula are not counted.
std::size_t size(const Formula& f);
/// Size of the conjunction of the sentences.
std::size_t size(const Theory& t);
/// Like size() but every quantifier counts, including leading ones.
std::size_t raw_size(const Formula& f);

// ---- structural queries -------------------------------------------------

/// Free object variables in order of first occurrence.
std::vector<std::string> free_vars(const Formula& f);
/// Every variable name occurring in `f`, bound or free.
std::set<std::string> var_names(const Formula& f);
std::set<std::string> var_names(const Theory& t);
std::size_t count_occurrences(const Formula& f, const Predicate& p);
bool mentions(const Formula& f, const Predicate& p);
/// Collects all atoms (including equalities) of `f`.
void collect_atoms(const Formula& f, std::vector<Formula>& out);
/// Every situation term occurring in a fluent atom.
std::set<Term> situations(const Formula& f);
bool is_quantifier_free(const Formula& f);

// ---- rewriting ----------------------------------------------------------

/// Replaces Implies and Iff by {not, or, and}: p => q becomes ~p | q and
/// p <=> q becomes (~p | q) & (~q | p).
Formula desugar(const Formula& f);
Theory desugar(const Theory& t);

/// Negation normal form; negations end up on atoms only.
Formula nnf(const Formula& f);

/// Simultaneous substitution of a term for a term. Both sides must agree in
/// sort. Substituting for a variable respects binding and renames bound
/// variables that would capture the replacement.
Formula substitute(const Formula& f, const Term& from, const Term& to);
/// Replaces every occurrence of the subformula `from` by `to`.
Formula substitute(const Formula& f, const Formula& from, const Formula& to);
/// Capture-avoiding simultaneous substitution of free variables.
Formula substitute_vars(const Formula& f, const std::map<std::string, Term>& sigma);
/// Renames every occurrence of the given names, bound or free. The map must
/// be injective on the names occurring in `f`; such renamings never capture.
Formula rename_all(const Formula& f, const std::map<std::string, std::string>& names);

/// Replaces every fluent atom at `sit` by its lifting predicate.
Formula lift(const Formula& f, const Term& sit);
/// Lifts only the fluents in `only`.
Formula lift(const Formula& f, const Term& sit, const std::set<std::string>& only);
/// Inverse of lift().
Formula unlift(const Formula& f, const Term& sit);

/// Throws UniformityError naming the offending atom unless every fluent atom
/// of `f` is evaluated at `sit`.
void require_uniform(const Formula& f, const Term& sit);
bool is_uniform(const Formula& f, const Term& sit);

/// Adds implicit universal quantifiers for the free variables.
Formula close_universally(const Formula& f);
/// Splits the leading universal quantifiers (explicit or implicit) off `f`.
std::pair<std::vector<std::string>, Formula> strip_foralls(const Formula& f);
/// Top-level conjuncts of `f`, or `f` itself.
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

/// Deterministic generator of variable names not in a forbidden set.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used, std::string prefix = "v")
      : used_(std::move(used)), prefix_(std::move(prefix)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  std::string next();

 private:
  std::set<std::string> used_;
  std::string prefix_ = "v";
  std::size_t counter_ = 0;
};

// ---- printing -----------------------------------------------------------

/// Parenthesized syntax accepted by the BAT parser. Fluent atoms omit their
/// situation unless `explicit_situations` is set; implicit quantifiers are
/// omitted.
std::string to_sexpr(const Formula& f, bool explicit_situations = false);
/// Conventional infix rendering, for diagnostics.
std::string to_infix(const Formula& f);

}  // namespace prog

#endif  // PROGRESSOR_FORMULA_HPP
