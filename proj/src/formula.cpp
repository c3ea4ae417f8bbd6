#include "progressor/formula.hpp"

#include <algorithm>
#include <sstream>

namespace prog {

const char* to_string(Sort s) {
  switch (s) {
    case Sort::Object: return "object";
    case Sort::Action: return "action";
    case Sort::Situation: return "situation";
  }
  return "?";
}

// ---- Term ---------------------------------------------------------------

Term Term::var(std::string name, Sort sort) {
  Term t;
  t.kind_ = Kind::Variable;
  t.sort_ = sort;
  t.name_ = std::move(name);
  return t;
}

Term Term::constant(std::string name) {
  Term t;
  t.kind_ = Kind::Constant;
  t.sort_ = Sort::Object;
  t.name_ = std::move(name);
  return t;
}

Term Term::action(std::string symbol, std::vector<Term> args) {
  for (const auto& a : args)
    if (a.sort() != Sort::Object)
      throw SortError("action argument '" + a.to_string() + "' is not an object term");
  Term t;
  t.kind_ = Kind::Action;
  t.sort_ = Sort::Action;
  t.name_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

Term Term::do_action(Term action, Term situation) {
  if (action.sort() != Sort::Action) throw SortError("do() expects an action term");
  if (situation.sort() != Sort::Situation) throw SortError("do() expects a situation term");
  Term t;
  t.kind_ = Kind::Do;
  t.sort_ = Sort::Situation;
  t.name_ = "do";
  t.args_ = {std::move(action), std::move(situation)};
  return t;
}

bool Term::is_ground() const {
  if (kind_ == Kind::Variable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
}

int Term::depth() const {
  switch (kind_) {
    case Kind::Init: return 0;
    case Kind::Do: {
      int d = args_[1].depth();
      return d < 0 ? -1 : d + 1;
    }
    default: return -1;
  }
}

std::string Term::to_string() const {
  switch (kind_) {
    case Kind::Variable:
    case Kind::Constant: return name_;
    case Kind::Init: return "S0";
    case Kind::Action: {
      std::string s = name_ + "(";
      for (std::size_t i = 0; i < args_.size(); ++i) s += (i ? "," : "") + args_[i].to_string();
      return s + ")";
    }
    case Kind::Do: return "do(" + args_[0].to_string() + "," + args_[1].to_string() + ")";
  }
  return "?";
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.sort_ <=> b.sort_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---- Formula construction -----------------------------------------------

namespace {

Formula make(Node n);

const std::shared_ptr<const Node>& true_node() {
  static const auto n = std::make_shared<const Node>(Node{Op::True, {}, {}, {}, {}, false});
  return n;
}

void check_object_args(const std::vector<Term>& args, const std::string& sym) {
  for (const auto& a : args)
    if (a.sort() != Sort::Object)
      throw SortError("argument '" + a.to_string() + "' of " + sym + " has sort " + to_string(a.sort()));
}

}  // namespace

struct FormulaAccess {
  static Formula wrap(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }
};

namespace {
Formula make(Node n) { return FormulaAccess::wrap(std::move(n)); }
}  // namespace

Formula::Formula() : node_(true_node()) {}

Formula Formula::truth() { return Formula(); }
Formula Formula::falsity() { return make(Node{Op::False, {}, {}, {}, {}, false}); }

Formula Formula::fluent(std::string symbol, std::vector<Term> args, Term situation) {
  check_object_args(args, symbol);
  if (situation.sort() != Sort::Situation)
    throw SortError("fluent " + symbol + " needs a situation argument, got " + situation.to_string());
  return make(Node{Op::Fluent, std::move(symbol), std::move(args), std::move(situation), {}, false});
}

Formula Formula::rigid(std::string symbol, std::vector<Term> args) {
  check_object_args(args, symbol);
  return make(Node{Op::Rigid, std::move(symbol), std::move(args), {}, {}, false});
}

Formula Formula::lifted(std::string symbol, std::vector<Term> args) {
  check_object_args(args, symbol);
  return make(Node{Op::Lifted, std::move(symbol), std::move(args), {}, {}, false});
}

Formula Formula::equal(Term lhs, Term rhs) {
  if (lhs.sort() != rhs.sort())
    throw SortError("equality between " + lhs.to_string() + " (" + to_string(lhs.sort()) + ") and " +
                    rhs.to_string() + " (" + to_string(rhs.sort()) + ")");
  return make(Node{Op::Equal, "=", {std::move(lhs), std::move(rhs)}, {}, {}, false});
}

Formula Formula::negation(Formula f) { return make(Node{Op::Not, {}, {}, {}, {std::move(f)}, false}); }

namespace {
Formula nary(Op op, std::vector<Formula> parts) {
  std::vector<Formula> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.op() == op)
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return op == Op::And ? Formula::truth() : Formula::falsity();
  if (flat.size() == 1) return flat.front();
  return make(Node{op, {}, {}, {}, std::move(flat), false});
}
}  // namespace

Formula Formula::conj(std::vector<Formula> parts) { return nary(Op::And, std::move(parts)); }
Formula Formula::disj(std::vector<Formula> parts) { return nary(Op::Or, std::move(parts)); }

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make(Node{Op::Implies, {}, {}, {}, {std::move(lhs), std::move(rhs)}, false});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return make(Node{Op::Iff, {}, {}, {}, {std::move(lhs), std::move(rhs)}, false});
}

Formula Formula::exists(std::string var, Formula body) {
  return make(Node{Op::Exists, std::move(var), {}, {}, {std::move(body)}, false});
}

Formula Formula::forall(std::string var, Formula body, bool implicit) {
  return make(Node{Op::Forall, std::move(var), {}, {}, {std::move(body)}, implicit});
}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::symbol() const noexcept { return node_->symbol; }
const std::vector<Term>& Formula::args() const noexcept { return node_->args; }
const Term& Formula::situation() const noexcept { return node_->situation; }
const std::vector<Formula>& Formula::children() const noexcept { return node_->kids; }
bool Formula::implicit() const noexcept { return node_->implicit; }

bool Formula::is_atom() const noexcept {
  switch (op()) {
    case Op::True:
    case Op::False:
    case Op::Fluent:
    case Op::Rigid:
    case Op::Lifted:
    case Op::Equal: return true;
    default: return false;
  }
}

bool Formula::is_literal() const noexcept { return is_atom() || (op() == Op::Not && body().is_atom()); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  return x.op == y.op && x.implicit == y.implicit && x.symbol == y.symbol && x.args == y.args &&
         x.situation == y.situation && x.kids == y.kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (auto c = x.op <=> y.op; c != 0) return c;
  if (auto c = x.symbol.compare(y.symbol); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  if (auto c = x.situation <=> y.situation; c != 0) return c;
  if (auto c = x.kids.size() <=> y.kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (auto c = x.kids[i] <=> y.kids[i]; c != 0) return c;
  return x.implicit <=> y.implicit;
}

// ---- Predicate ----------------------------------------------------------

bool Predicate::matches(const Formula& atom) const {
  if (atom.op() != kind || atom.symbol() != symbol) return false;
  if (kind == Op::Fluent && situation && atom.situation() != *situation) return false;
  return true;
}

Formula Predicate::atom(std::vector<Term> args) const {
  switch (kind) {
    case Op::Rigid: return Formula::rigid(symbol, std::move(args));
    case Op::Lifted: return Formula::lifted(symbol, std::move(args));
    case Op::Fluent: return Formula::fluent(symbol, std::move(args), situation.value_or(Term::init()));
    default: throw PreconditionError("predicate of unexpected kind");
  }
}

std::string Predicate::to_string() const {
  switch (kind) {
    case Op::Lifted: return "P_" + symbol;
    case Op::Fluent: return symbol + "@" + (situation ? situation->to_string() : std::string("*"));
    default: return symbol;
  }
}

// ---- measurement --------------------------------------------------------

namespace {
std::size_t size_rec(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Fluent:
    case Op::Rigid:
    case Op::Lifted:
    case Op::Equal: return 1;
    case Op::Not: return 1 + size_rec(f.body());
    case Op::And:
    case Op::Or: {
      std::size_t s = f.children().size() - 1;
      for (const auto& k : f.children()) s += size_rec(k);
      return s;
    }
    case Op::Implies: return 2 + size_rec(f.child(0)) + size_rec(f.child(1));
    case Op::Iff: return 5 + 2 * (size_rec(f.child(0)) + size_rec(f.child(1)));
    case Op::Exists:
    case Op::Forall: return 1 + size_rec(f.body());
  }
  return 0;
}
}  // namespace

std::size_t size(const Formula& f) {
  const Formula* cur = &f;
  while (cur->op() == Op::Forall) cur = &cur->body();
  return size_rec(*cur);
}

std::size_t size(const Theory& t) {
  if (t.empty()) return 1;  // the empty conjunction, True
  std::size_t s = t.size() - 1;
  for (const auto& f : t) s += size(f);
  return s;
}

std::size_t raw_size(const Formula& f) { return size_rec(f); }

// ---- structural queries -------------------------------------------------

namespace {

void term_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (t.sort() == Sort::Object) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) term_vars(a, out);
}

void free_rec(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (f.is_quantifier()) {
    bound.push_back(f.symbol());
    free_rec(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  std::vector<std::string> vs;
  for (const auto& a : f.args()) term_vars(a, vs);
  for (auto& v : vs)
    if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
        std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  for (const auto& k : f.children()) free_rec(k, bound, out);
}

void names_rec(const Formula& f, std::set<std::string>& out) {
  if (f.is_quantifier()) out.insert(f.symbol());
  std::vector<std::string> vs;
  for (const auto& a : f.args()) term_vars(a, vs);
  out.insert(vs.begin(), vs.end());
  for (const auto& k : f.children()) names_rec(k, out);
}

}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound, out;
  free_rec(f, bound, out);
  return out;
}

std::set<std::string> var_names(const Formula& f) {
  std::set<std::string> out;
  names_rec(f, out);
  return out;
}

std::set<std::string> var_names(const Theory& t) {
  std::set<std::string> out;
  for (const auto& f : t) names_rec(f, out);
  return out;
}

std::size_t count_occurrences(const Formula& f, const Predicate& p) {
  if (f.is_atom()) return p.matches(f) ? 1 : 0;
  std::size_t n = 0;
  for (const auto& k : f.children()) n += count_occurrences(k, p);
  return n;
}

bool mentions(const Formula& f, const Predicate& p) {
  if (f.is_atom()) return p.matches(f);
  return std::any_of(f.children().begin(), f.children().end(),
                     [&](const Formula& k) { return mentions(k, p); });
}

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  if (f.is_atom()) {
    out.push_back(f);
    return;
  }
  for (const auto& k : f.children()) collect_atoms(k, out);
}

std::set<Term> situations(const Formula& f) {
  std::set<Term> out;
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms)
    if (a.op() == Op::Fluent) out.insert(a.situation());
  return out;
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  return std::all_of(f.children().begin(), f.children().end(), [](const Formula& k) { return is_quantifier_free(k); });
}

// ---- rewriting ----------------------------------------------------------

namespace {

Formula with_kids(const Formula& f, std::vector<Formula> kids) {
  switch (f.op()) {
    case Op::Not: return Formula::negation(std::move(kids[0]));
    case Op::And: return Formula::conj(std::move(kids));
    case Op::Or: return Formula::disj(std::move(kids));
    case Op::Implies: return Formula::implies(std::move(kids[0]), std::move(kids[1]));
    case Op::Iff: return Formula::iff(std::move(kids[0]), std::move(kids[1]));
    case Op::Exists: return Formula::exists(f.symbol(), std::move(kids[0]));
    case Op::Forall: return Formula::forall(f.symbol(), std::move(kids[0]), f.implicit());
    default: return f;
  }
}

Formula with_args(const Formula& f, std::vector<Term> args, Term sit) {
  switch (f.op()) {
    case Op::Fluent: return Formula::fluent(f.symbol(), std::move(args), std::move(sit));
    case Op::Rigid: return Formula::rigid(f.symbol(), std::move(args));
    case Op::Lifted: return Formula::lifted(f.symbol(), std::move(args));
    case Op::Equal: return Formula::equal(std::move(args[0]), std::move(args[1]));
    default: return f;
  }
}

template <typename Fn>
Formula map_kids(const Formula& f, Fn&& fn) {
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const auto& k : f.children()) {
    kids.push_back(fn(k));
    changed = changed || !(kids.back().node() == k.node());
  }
  return changed ? with_kids(f, std::move(kids)) : f;
}

Term replace_in_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(replace_in_term(a, from, to));
  if (t.kind() == Term::Kind::Action) return Term::action(t.name(), std::move(args));
  if (t.kind() == Term::Kind::Do) return Term::do_action(std::move(args[0]), std::move(args[1]));
  return t;
}

bool term_mentions_var(const Term& t, const std::string& v) {
  if (t.is_variable()) return t.name() == v && t.sort() == Sort::Object;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return term_mentions_var(a, v); });
}

Term subst_term(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_variable()) {
    if (t.sort() != Sort::Object) return t;
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(subst_term(a, sigma));
  if (t.kind() == Term::Kind::Action) return Term::action(t.name(), std::move(args));
  if (t.kind() == Term::Kind::Do) return Term::do_action(std::move(args[0]), std::move(args[1]));
  return t;
}

Formula subst_vars_rec(const Formula& f, const std::map<std::string, Term>& sigma) {
  if (sigma.empty()) return f;
  if (f.is_atom()) {
    if (f.args().empty() && f.op() != Op::Fluent) return f;
    std::vector<Term> args;
    for (const auto& a : f.args()) args.push_back(subst_term(a, sigma));
    Term sit = f.op() == Op::Fluent ? subst_term(f.situation(), sigma) : Term();
    return with_args(f, std::move(args), std::move(sit));
  }
  if (f.is_quantifier()) {
    const std::string& v = f.symbol();
    auto fv = free_vars(f.body());
    std::map<std::string, Term> inner;
    for (const auto& [k, t] : sigma)
      if (k != v && std::find(fv.begin(), fv.end(), k) != fv.end()) inner.emplace(k, t);
    if (inner.empty()) return f;
    bool captures = std::any_of(inner.begin(), inner.end(),
                                [&](const auto& kv) { return term_mentions_var(kv.second, v); });
    if (!captures) return with_kids(f, {subst_vars_rec(f.body(), inner)});
    std::set<std::string> used = var_names(f.body());
    for (const auto& [k, t] : inner) {
      used.insert(k);
      std::vector<std::string> tv;
      term_vars(t, tv);
      used.insert(tv.begin(), tv.end());
    }
    FreshNames fresh(used, v + "_");
    std::string nv = fresh.next();
    inner.emplace(v, Term::var(nv));
    Formula body = subst_vars_rec(f.body(), inner);
    return f.op() == Op::Exists ? Formula::exists(nv, body) : Formula::forall(nv, body, f.implicit());
  }
  return map_kids(f, [&](const Formula& k) { return subst_vars_rec(k, sigma); });
}

Formula replace_term_rec(const Formula& f, const Term& from, const Term& to) {
  if (f.is_atom()) {
    std::vector<Term> args;
    for (const auto& a : f.args()) args.push_back(replace_in_term(a, from, to));
    Term sit = f.op() == Op::Fluent ? replace_in_term(f.situation(), from, to) : Term();
    return with_args(f, std::move(args), std::move(sit));
  }
  if (f.is_quantifier() && term_mentions_var(to, f.symbol())) {
    // Rename the binder so the incoming term is not captured.
    std::set<std::string> used = var_names(f.body());
    std::vector<std::string> tv;
    term_vars(to, tv);
    used.insert(tv.begin(), tv.end());
    FreshNames fresh(used, f.symbol() + "_");
    std::string nv = fresh.next();
    Formula body = subst_vars_rec(f.body(), {{f.symbol(), Term::var(nv)}});
    body = replace_term_rec(body, from, to);
    return f.op() == Op::Exists ? Formula::exists(nv, body) : Formula::forall(nv, body, f.implicit());
  }
  return map_kids(f, [&](const Formula& k) { return replace_term_rec(k, from, to); });
}

}  // namespace

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::Implies: return Formula::disj({Formula::negation(desugar(f.child(0))), desugar(f.child(1))});
    case Op::Iff: {
      Formula p = desugar(f.child(0));
      Formula q = desugar(f.child(1));
      return Formula::conj({Formula::disj({Formula::negation(p), q}), Formula::disj({Formula::negation(q), p})});
    }
    default:
      if (f.is_atom()) return f;
      return map_kids(f, [](const Formula& k) { return desugar(k); });
  }
}

Theory desugar(const Theory& t) {
  Theory out;
  out.reserve(t.size());
  for (const auto& f : t) out.push_back(desugar(f));
  return out;
}

namespace {
Formula nnf_rec(const Formula& f, bool negate) {
  switch (f.op()) {
    case Op::True: return negate ? Formula::falsity() : f;
    case Op::False: return negate ? Formula::truth() : f;
    case Op::Not: return nnf_rec(f.body(), !negate);
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(nnf_rec(k, negate));
      bool as_and = (f.op() == Op::And) != negate;
      return as_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Op::Exists:
    case Op::Forall: {
      Formula body = nnf_rec(f.body(), negate);
      bool as_forall = (f.op() == Op::Forall) != negate;
      return as_forall ? Formula::forall(f.symbol(), body, f.implicit() && !negate) : Formula::exists(f.symbol(), body);
    }
    case Op::Implies:
    case Op::Iff: return nnf_rec(desugar(f), negate);
    default: return negate ? Formula::negation(f) : f;
  }
}
}  // namespace

Formula nnf(const Formula& f) { return nnf_rec(f, false); }

Formula substitute(const Formula& f, const Term& from, const Term& to) {
  if (from.sort() != to.sort())
    throw SortError("cannot substitute " + to.to_string() + " (" + to_string(to.sort()) + ") for " +
                    from.to_string() + " (" + to_string(from.sort()) + ")");
  if (from == to) return f;
  if (from.is_variable() && from.sort() == Sort::Object) return subst_vars_rec(f, {{from.name(), to}});
  return replace_term_rec(f, from, to);
}

Formula substitute(const Formula& f, const Formula& from, const Formula& to) {
  if (f == from) return to;
  if (f.is_atom()) return f;
  return map_kids(f, [&](const Formula& k) { return substitute(k, from, to); });
}

Formula substitute_vars(const Formula& f, const std::map<std::string, Term>& sigma) {
  for (const auto& [k, t] : sigma)
    if (t.sort() != Sort::Object) throw SortError("variable " + k + " cannot take " + t.to_string());
  return subst_vars_rec(f, sigma);
}

namespace {
Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.is_variable()) {
    if (t.sort() != Sort::Object) return t;
    auto it = names.find(t.name());
    return it == names.end() ? t : Term::var(it->second);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, names));
  if (t.kind() == Term::Kind::Action) return Term::action(t.name(), std::move(args));
  return Term::do_action(std::move(args[0]), std::move(args[1]));
}
}  // namespace

Formula rename_all(const Formula& f, const std::map<std::string, std::string>& names) {
  if (names.empty()) return f;
  if (f.is_atom()) {
    if (f.op() == Op::True || f.op() == Op::False) return f;
    std::vector<Term> args;
    for (const auto& a : f.args()) args.push_back(rename_term(a, names));
    Term sit = f.op() == Op::Fluent ? rename_term(f.situation(), names) : Term();
    return with_args(f, std::move(args), std::move(sit));
  }
  if (f.is_quantifier()) {
    auto it = names.find(f.symbol());
    std::string v = it == names.end() ? f.symbol() : it->second;
    Formula body = rename_all(f.body(), names);
    return f.op() == Op::Exists ? Formula::exists(v, body) : Formula::forall(v, body, f.implicit());
  }
  return map_kids(f, [&](const Formula& k) { return rename_all(k, names); });
}

void require_uniform(const Formula& f, const Term& sit) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms)
    if (a.op() == Op::Fluent && a.situation() != sit)
      throw UniformityError("formula is not uniform in " + sit.to_string() + ": atom " + to_infix(a));
}

bool is_uniform(const Formula& f, const Term& sit) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  return std::all_of(atoms.begin(), atoms.end(),
                     [&](const Formula& a) { return a.op() != Op::Fluent || a.situation() == sit; });
}

namespace {
Formula lift_rec(const Formula& f, const Term& sit, const std::set<std::string>* only) {
  if (f.op() == Op::Fluent) {
    if (f.situation() == sit && (!only || only->count(f.symbol()))) return Formula::lifted(f.symbol(), f.args());
    return f;
  }
  if (f.is_atom()) return f;
  return map_kids(f, [&](const Formula& k) { return lift_rec(k, sit, only); });
}

Formula unlift_rec(const Formula& f, const Term& sit) {
  if (f.op() == Op::Lifted) return Formula::fluent(f.symbol(), f.args(), sit);
  if (f.is_atom()) return f;
  return map_kids(f, [&](const Formula& k) { return unlift_rec(k, sit); });
}
}  // namespace

Formula lift(const Formula& f, const Term& sit) {
  require_uniform(f, sit);
  return lift_rec(f, sit, nullptr);
}

Formula lift(const Formula& f, const Term& sit, const std::set<std::string>& only) { return lift_rec(f, sit, &only); }

Formula unlift(const Formula& f, const Term& sit) { return unlift_rec(f, sit); }

Formula close_universally(const Formula& f) {
  auto fv = free_vars(f);
  Formula out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = Formula::forall(*it, out, true);
  return out;
}

std::pair<std::vector<std::string>, Formula> strip_foralls(const Formula& f) {
  std::vector<std::string> vars;
  Formula cur = f;
  while (cur.op() == Op::Forall) {
    vars.push_back(cur.symbol());
    cur = cur.body();
  }
  return {vars, cur};
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.op() == Op::And) return f.children();
  return {f};
}

std::vector<Formula> disjuncts(const Formula& f) {
  if (f.op() == Op::Or) return f.children();
  return {f};
}

std::string FreshNames::next() {
  for (;;) {
    std::string name = prefix_ + std::to_string(++counter_);
    if (used_.insert(name).second) return name;
  }
}

// ---- printing -----------------------------------------------------------

namespace {

std::string sit_sexpr(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Init: return "S0";
    case Term::Kind::Variable: return t.name();
    case Term::Kind::Do:
      if (t.depth() == 1) return "S_alpha";
      return "(do " + t.args()[0].to_string() + " " + sit_sexpr(t.args()[1]) + ")";
    default: return t.to_string();
  }
}

void sexpr_rec(const Formula& f, bool sits, std::ostringstream& os) {
  switch (f.op()) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Fluent:
    case Op::Rigid:
    case Op::Lifted:
      os << '(' << (f.op() == Op::Lifted ? "P_" : "") << f.symbol();
      for (const auto& a : f.args()) os << ' ' << a.to_string();
      if (f.op() == Op::Fluent && sits) os << ' ' << sit_sexpr(f.situation());
      os << ')';
      return;
    case Op::Equal: os << "(= " << f.args()[0].to_string() << ' ' << f.args()[1].to_string() << ')'; return;
    case Op::Not: os << "(not "; sexpr_rec(f.body(), sits, os); os << ')'; return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: {
      static const char* names[] = {"and", "or", "implies", "iff"};
      int idx = f.op() == Op::And ? 0 : f.op() == Op::Or ? 1 : f.op() == Op::Implies ? 2 : 3;
      os << '(' << names[idx];
      for (const auto& k : f.children()) {
        os << ' ';
        sexpr_rec(k, sits, os);
      }
      os << ')';
      return;
    }
    case Op::Exists:
    case Op::Forall: {
      os << '(' << (f.op() == Op::Exists ? "exists" : "forall") << " (" << f.symbol();
      const Formula* cur = &f.body();
      while (cur->op() == f.op()) {
        os << ' ' << cur->symbol();
        cur = &cur->body();
      }
      os << ") ";
      sexpr_rec(*cur, sits, os);
      os << ')';
      return;
    }
  }
}

int prec(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    case Op::Exists:
    case Op::Forall: return 0;
    default: return 6;
  }
}

void infix_rec(const Formula& f, int parent, std::ostringstream& os) {
  int p = prec(f.op());
  bool paren = p < parent || (f.is_quantifier() && parent > 0);
  if (paren) os << '(';
  switch (f.op()) {
    case Op::True: os << "true"; break;
    case Op::False: os << "false"; break;
    case Op::Fluent:
    case Op::Rigid:
    case Op::Lifted: {
      os << (f.op() == Op::Lifted ? "P_" : "") << f.symbol();
      std::size_t n = f.args().size() + (f.op() == Op::Fluent ? 1 : 0);
      if (n) {
        os << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) os << (i ? "," : "") << f.args()[i].to_string();
        if (f.op() == Op::Fluent) os << (f.args().empty() ? "" : ",") << sit_sexpr(f.situation());
        os << ')';
      }
      break;
    }
    case Op::Equal: os << f.args()[0].to_string() << " = " << f.args()[1].to_string(); break;
    case Op::Not:
      os << '~';
      infix_rec(f.body(), p + 1, os);
      break;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: {
      const char* sym = f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : f.op() == Op::Implies ? " -> " : " <-> ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) os << sym;
        infix_rec(f.children()[i], p + 1, os);
      }
      break;
    }
    case Op::Exists:
    case Op::Forall:
      os << (f.op() == Op::Exists ? "exists " : "forall ") << f.symbol() << ". ";
      infix_rec(f.body(), 0, os);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_sexpr(const Formula& f, bool explicit_situations) {
  std::ostringstream os;
  const Formula* cur = &f;
  while (cur->op() == Op::Forall && cur->implicit()) cur = &cur->body();
  sexpr_rec(*cur, explicit_situations, os);
  return os.str();
}

std::string to_infix(const Formula& f) {
  std::ostringstream os;
  infix_rec(f, 0, os);
  return os.str();
}

}  // namespace prog
