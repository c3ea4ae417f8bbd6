// Bounded-domain model checking. Structures over a finite object domain
// {0..N-1}; fluents are stored once per situation (S0 and S_alpha).

#ifndef PROGRESSOR_ORACLE_HPP
#define PROGRESSOR_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/formula.hpp"

namespace prog {

struct BudgetError : Error {
  BudgetError(const std::string& msg, double estimate) : Error(msg), estimate(estimate) {}
  double estimate;
};

/// A relation symbol as the oracle sees it. Fluents are split by the depth
/// of their situation: 0 for S0, 1 for S_alpha.
struct PredKey {
  Op kind = Op::Rigid;
  std::string symbol;
  int depth = 0;
  int arity = 0;
  std::string to_string() const;
  friend auto operator<=>(const PredKey&, const PredKey&) = default;
};

struct Signature {
  std::vector<PredKey> preds;  // sorted, unique
  std::vector<std::string> constants;

  int pred_index(const PredKey& k) const;  // -1 if absent
  int constant_index(const std::string& c) const;
  void add(const PredKey& k);
  void add_constant(const std::string& c);
  void merge(const Signature& other);
};

Signature signature_of(const Formula& f);
Signature signature_of(const Theory& t);

struct Structure {
  int n = 1;
  std::vector<int> consts;                 // per signature constant
  std::vector<std::vector<uint8_t>> tables;  // per signature predicate, n^arity cells

  bool holds(std::size_t pred, const std::vector<int>& args) const;
  std::string to_string(const Signature& sig) const;
};

/// Cell index of an argument tuple.
std::size_t cell(const std::vector<int>& args, int n);

/// A formula compiled against a signature; quantifiers are pushed inward
/// before evaluation.
class Compiled {
 public:
  /// Free variables other than `params` are read universally.
  Compiled(const Formula& f, const Signature& sig, const std::vector<std::string>& params = {});
  bool eval(const Structure& m) const;
  /// Evaluation with the parameters bound to `args`.
  bool eval(const Structure& m, const std::vector<int>& args) const;

  struct Node {
    enum Kind { True, False, Atom, Eq, Not, And, Or, Exists, Forall } kind = True;
    int pred = -1;
    std::vector<int> args;  // >= 0: variable slot, < 0: -(constant index) - 1
    std::vector<int> kids;
    int slot = -1;
  };

 private:
  bool eval(int i, const Structure& m, std::vector<int>& env) const;
  std::vector<Node> nodes_;
  int root_ = 0;
  int slots_ = 0;
  std::size_t params_ = 0;
};

/// Pushes quantifiers inward over conjunctions and disjunctions. The input
/// is brought to negation normal form first.
Formula miniscope(const Formula& f);

struct OracleOptions {
  bool una = true;
  /// Maximum number of candidate structures enumerated per check.
  double budget = 16777216.0;  // 2^24
  /// Samples drawn once the budget is exceeded; 0 refuses with BudgetError.
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

/// Number of candidate structures of size n.
double structure_count(const Signature& sig, int n, bool una);

/// Calls `fn` for every structure of size n in a fixed order; stops when it
/// returns false. Above the budget it samples `opts.samples` random
/// structures instead and returns true, or throws BudgetError when sampling
/// is off.
bool enumerate(const Signature& sig, int n, const OracleOptions& opts, const std::function<bool(const Structure&)>& fn);

struct ModelSet {
  int n = 1;
  bool una = true;
  Signature sig;
  std::vector<Structure> models;
};

ModelSet models(const Theory& t, int n, const OracleOptions& opts = {});
/// Models over a given signature, which must cover the theory.
ModelSet models(const Theory& t, const Signature& sig, int n, const OracleOptions& opts = {});

struct OracleVerdict {
  bool ok = true;
  bool probabilistic = false;  // some domain size was sampled
  std::size_t checked = 0;      // structures examined
  std::optional<int> n;         // domain size of the witness
  std::string witness;          // printed structure on failure
  std::string detail;
};

/// Equal model sets for every domain size 1..n_max; the witness is the
/// first distinguishing structure at the smallest size.
OracleVerdict equivalent(const Theory& a, const Theory& b, int n_max, const OracleOptions& opts = {});
OracleVerdict equivalent(const Formula& a, const Formula& b, int n_max, const OracleOptions& opts = {});
/// Bounded entailment: no model of t falsifies phi up to n_max.
OracleVerdict entails(const Theory& t, const Formula& phi, int n_max, const OracleOptions& opts = {});

/// `result` is equivalent to  exists R. t  where R ranges over the
/// predicates `hidden`, checked by extending each structure.
OracleVerdict check_forgetting(const Theory& t, const std::vector<PredKey>& hidden, const Theory& result, int n_max,
                               const OracleOptions& opts = {});
/// `result` holds exactly where phi holds after giving the ground atom
/// some truth value.
OracleVerdict check_atom_forgetting(const Formula& phi, const Formula& atom, const Formula& result, int n_max,
                                    const OracleOptions& opts = {});

/// Progression semantics: a structure over rigids and S_alpha fluents
/// satisfies `result` iff it extends to S0 tables satisfying D_S0 with the
/// S_alpha tables given by the successor state axioms.
OracleVerdict check_progression(const BasicActionTheory& bat, const GroundAction& alpha, const Theory& result,
                                int n_max, const OracleOptions& opts = {});

/// Bounded check of  D_S0 |= ~(gamma+ & gamma-)  for every fluent.
OracleVerdict check_consistency(const BasicActionTheory& bat, const GroundAction& alpha, int n_max,
                                const OracleOptions& opts = {});

}  // namespace prog

#endif
