#include "progressor/fragments.hpp"

#include <algorithm>

#include "progressor/simplify.hpp"

namespace prog {

namespace {

GoodForm rename_gf(GoodForm gf, const std::map<std::string, std::string>& ren) {
  if (ren.empty()) return gf;
  gf.pos = rename_all(gf.pos, ren);
  gf.neg = rename_all(gf.neg, ren);
  gf.rest = rename_all(gf.rest, ren);
  if (gf.args)
    for (auto& t : *gf.args)
      if (t.is_variable() && ren.count(t.name())) t = Term::var(ren.at(t.name()));
  return gf;
}

GoodForm need_gf(const Formula& phi, const Predicate& p) {
  auto gf = is_good_form(phi, p);
  if (!gf) throw PreconditionError("not in good form wrt " + p.to_string() + ": " + to_infix(phi));
  return *gf;
}

std::vector<Term> var_terms(const std::vector<std::string>& y) {
  std::vector<Term> out;
  for (const auto& v : y) out.push_back(Term::var(v));
  return out;
}

Formula forall_over(const std::vector<std::string>& vars, Formula f) {
  auto fv = free_vars(f);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (std::find(fv.begin(), fv.end(), *it) != fv.end()) f = Formula::forall(*it, f);
  return f;
}

Formula exists_over(const std::vector<std::string>& vars, Formula f) {
  auto fv = free_vars(f);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (std::find(fv.begin(), fv.end(), *it) != fv.end()) f = Formula::exists(*it, f);
  return f;
}

// Case analysis on the argument pattern, after the formula has been brought
// to the names {u1, u2}.
struct Fo2Case {
  GoodForm gf;
  std::optional<Formula> guard;  // the equality the argument pattern imposes
  std::vector<std::string> qvars;
  std::vector<std::string> names;  // u1, u2
};

Fo2Case fo2_case(const GoodForm& gf0, const Predicate& p, const std::vector<std::string>& y) {
  if (y.empty() || y.size() > 2) throw PreconditionError("FO2 rewrite needs a unary or binary predicate");
  if (gf0.args && gf0.args->size() != y.size()) throw PreconditionError("canonical variables do not match the arity");
  Formula whole = assemble(gf0, p);
  std::set<std::string> names = var_names(whole);
  if (names.size() > 2) throw PreconditionError("more than two variable names: " + to_infix(whole));
  std::string u1 = y[0], u2;
  if (y.size() == 2) {
    u2 = y[1];
  } else {
    for (const auto& n : names)
      if (n != u1) u2 = n;
    if (u2.empty()) u2 = u1 == "y" ? "x" : "y";
  }
  if (u1 == u2) throw PreconditionError("canonical variables must be distinct");

  // Map the formula's names into {u1, u2}.
  std::map<std::string, std::string> ren;
  std::vector<std::string> spare;
  for (const auto& u : {u1, u2})
    if (!names.count(u)) spare.push_back(u);
  for (const auto& n : names)
    if (n != u1 && n != u2) {
      ren[n] = spare.front();
      spare.erase(spare.begin());
    }
  Fo2Case c{rename_gf(gf0, ren), std::nullopt, {}, {u1, u2}};
  if (!c.gf.args) return c;

  auto is_var = [](const Term& t, const std::string& n) { return t.is_variable() && t.name() == n; };
  const auto& a = *c.gf.args;
  bool swap = false;
  if (a.size() == 1) {
    swap = is_var(a[0], u2);
  } else {
    swap = (is_var(a[0], u2) && !is_var(a[1], u2)) || (a[0].is_constant() && is_var(a[1], u1)) ||
           (is_var(a[0], u2) && is_var(a[1], u2));
  }
  if (swap) c.gf = rename_gf(c.gf, {{u1, u2}, {u2, u1}});
  const auto& t = *c.gf.args;
  Term v1 = Term::var(u1), v2 = Term::var(u2);
  if (t.size() == 1) {
    if (is_var(t[0], u1)) {
      c.qvars = {u2};
    } else {
      c.guard = Formula::equal(v1, t[0]);
      c.qvars = {u1, u2};
    }
  } else if (is_var(t[0], u1) && is_var(t[1], u2)) {
  } else if (is_var(t[0], u1) && is_var(t[1], u1)) {
    c.guard = Formula::equal(v1, v2);
    c.qvars = {u2};
  } else if (is_var(t[0], u1)) {
    c.guard = Formula::equal(v2, t[1]);
    c.qvars = {u2};
  } else if (is_var(t[1], u2)) {
    c.guard = Formula::equal(v1, t[0]);
    c.qvars = {u1};
  } else {
    c.guard = Formula::conj({Formula::equal(v1, t[0]), Formula::equal(v2, t[1])});
    c.qvars = {u1, u2};
  }
  return c;
}

std::vector<Term> fo2_atom_args(const Fo2Case& c, std::size_t arity) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < arity; ++i) out.push_back(Term::var(c.names[i]));
  return out;
}

Formula fo2_condition(const Fo2Case& c, const Formula& psi) {
  Formula body = forall_over(c.qvars, psi);
  if (!c.guard) return body;
  return Formula::disj({Formula::negation(*c.guard), body});
}

}  // namespace

SemidefParts fo2_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y) {
  Fo2Case c = fo2_case(gf, p, y);
  SemidefParts out;
  Formula rest = forall_over(c.names, c.gf.rest);
  out.rest.push_back(close_universally(rest));
  if (c.gf.args) {
    Formula atom = p.atom(fo2_atom_args(c, y.size()));
    Formula n = fo2_condition(c, c.gf.pos), s = fo2_condition(c, c.gf.neg);
    out.nws.push_back({n, {}});
    out.snc.push_back({s, {}});
    out.sentences.push_back(close_universally(Formula::disj({n, atom})));
    out.sentences.push_back(close_universally(Formula::disj({s, Formula::negation(atom)})));
    out.combined = close_universally(
        Formula::conj({Formula::disj({n, atom}), Formula::disj({s, Formula::negation(atom)}), rest}));
  } else {
    out.combined = close_universally(rest);
  }
  out.sentences.push_back(close_universally(rest));
  return out;
}

Theory fo2_semidef_rewrite(const Formula& phi, const Predicate& p, const std::vector<std::string>& y) {
  GoodForm gf = need_gf(phi, p);
  Fo2Case c = fo2_case(gf, p, y);
  if (!c.gf.args) return {phi};
  if (!c.guard && c.qvars.empty()) return {phi};
  if (!c.guard) {
    // P(u1) with u2 free in the conditions only
    auto fv_pos = free_vars(c.gf.pos), fv_neg = free_vars(c.gf.neg);
    auto has = [&](const std::vector<std::string>& fv) {
      return std::find(fv.begin(), fv.end(), c.names[1]) != fv.end();
    };
    if (!has(fv_pos) && !has(fv_neg)) return {phi};
  }
  Formula atom = p.atom(fo2_atom_args(c, y.size()));
  auto side = [&](const Formula& psi, const Formula& lit) {
    std::vector<Formula> lhs;
    if (c.guard) lhs.push_back(*c.guard);
    lhs.push_back(exists_over(c.qvars, Formula::negation(psi)));
    return close_universally(Formula::implies(Formula::conj(lhs), lit));
  };
  Theory out;
  if (!c.gf.pos.is_true()) out.push_back(side(c.gf.pos, atom));
  if (!c.gf.neg.is_true()) out.push_back(side(c.gf.neg, Formula::negation(atom)));
  if (!c.gf.rest.is_true()) out.push_back(close_universally(forall_over(c.names, c.gf.rest)));
  if (out.empty()) out.push_back(Formula::truth());
  return out;
}

namespace {

struct UtcCase {
  GoodForm gf;
  std::vector<Term> ys;
  std::vector<std::string> extra;
};

UtcCase utc_case(const GoodForm& gf0, const Predicate& p, const std::vector<std::string>& y) {
  if (gf0.args && gf0.args->size() != y.size()) throw PreconditionError("canonical variables do not match the arity");
  Formula whole = assemble(gf0, p);
  std::set<std::string> used = var_names(whole);
  used.insert(y.begin(), y.end());
  FreshNames fresh(used, "w");
  std::map<std::string, std::string> ren;
  for (const auto& n : var_names(whole))
    if (std::find(y.begin(), y.end(), n) != y.end()) ren[n] = fresh.next();
  UtcCase c{rename_gf(gf0, ren), var_terms(y), {}};
  c.extra = free_vars(assemble(c.gf, p));
  return c;
}

}  // namespace

SemidefParts utc_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y) {
  UtcCase c = utc_case(gf, p, y);
  SemidefParts out;
  Formula rest = close_universally(c.gf.rest);
  out.rest.push_back(rest);
  if (c.gf.args) {
    Formula atom = p.atom(c.ys);
    Formula n = c.gf.pos, s = c.gf.neg;
    if (!c.ys.empty()) {
      Formula guard = Formula::negation(tuple_equal(c.ys, *c.gf.args));
      n = Formula::disj({guard, n});
      s = Formula::disj({guard, s});
    }
    auto extra_of = [&](const Formula& f) {
      std::vector<std::string> ex;
      for (const auto& v : free_vars(f))
        if (std::find(y.begin(), y.end(), v) == y.end()) ex.push_back(v);
      return ex;
    };
    out.nws.push_back({n, extra_of(n)});
    out.snc.push_back({s, extra_of(s)});
    out.sentences.push_back(close_universally(Formula::disj({n, atom})));
    out.sentences.push_back(close_universally(Formula::disj({s, Formula::negation(atom)})));
    out.combined = close_universally(
        Formula::conj({Formula::disj({n, atom}), Formula::disj({s, Formula::negation(atom)}), c.gf.rest}));
  } else {
    out.combined = rest;
  }
  out.sentences.push_back(rest);
  return out;
}

Theory utc_semidef_rewrite(const Formula& phi, const Predicate& p, const std::vector<std::string>& y) {
  GoodForm gf = need_gf(phi, p);
  UtcCase c = utc_case(gf, p, y);
  if (!c.gf.args) return {close_universally(c.gf.rest)};
  Formula atom = p.atom(c.ys);
  Formula eq = tuple_equal(c.ys, *c.gf.args);
  Theory out;
  if (!c.gf.pos.is_true()) out.push_back(close_universally(Formula::implies(eq, Formula::disj({c.gf.pos, atom}))));
  if (!c.gf.neg.is_true())
    out.push_back(close_universally(Formula::implies(eq, Formula::disj({c.gf.neg, Formula::negation(atom)}))));
  if (!c.gf.rest.is_true()) out.push_back(close_universally(c.gf.rest));
  if (out.empty()) out.push_back(Formula::truth());
  return out;
}

SemidefParts goodform_conditions(const GoodForm& gf, const Predicate& p, const std::vector<std::string>& y,
                                 Fragment mode) {
  switch (mode) {
    case Fragment::FO2:
      return fo2_conditions(gf, p, y);
    case Fragment::UTC:
      return utc_conditions(gf, p, y);
    case Fragment::None:
      break;
  }
  return goodform_to_semidef(gf, p, y);
}

Formula utc_disjoin(const Theory& t1, const Theory& t2) { return disjoin_theories({t1, t2}); }

std::string constant_predicate(const std::string& c) { return "C_" + c; }

Theory fo2_constant_axioms(const std::vector<std::string>& constants, bool una) {
  Theory out;
  Term x = Term::var("x"), y = Term::var("y");
  for (const auto& c : constants) {
    std::string cp = constant_predicate(c);
    out.push_back(Formula::exists("x", Formula::rigid(cp, {x})));
    out.push_back(close_universally(
        Formula::implies(Formula::conj({Formula::rigid(cp, {x}), Formula::rigid(cp, {y})}), Formula::equal(x, y))));
  }
  if (una)
    for (std::size_t i = 0; i < constants.size(); ++i)
      for (std::size_t j = i + 1; j < constants.size(); ++j)
        out.push_back(close_universally(Formula::negation(Formula::conj(
            {Formula::rigid(constant_predicate(constants[i]), {x}), Formula::rigid(constant_predicate(constants[j]), {x})}))));
  return out;
}

namespace {

Formula elim_rec(const Formula& f, const std::set<std::string>& consts, const std::vector<std::string>& pool) {
  if (f.is_atom()) {
    if (f.is_true() || f.is_false()) return f;
    std::vector<Term> args = f.args();
    if (f.op() == Op::Equal) args = {f.args()[0], f.args()[1]};
    std::set<std::string> taken;
    for (const auto& t : args)
      if (t.is_variable()) taken.insert(t.name());
    std::vector<std::pair<std::string, std::string>> binds;  // constant -> variable
    for (auto& t : args) {
      if (!t.is_constant() || !consts.count(t.name())) continue;
      std::string v;
      for (const auto& [cn, vn] : binds)
        if (cn == t.name()) v = vn;
      if (v.empty()) {
        for (const auto& n : pool)
          if (!taken.count(n)) {
            v = n;
            break;
          }
        if (v.empty()) throw PreconditionError("no variable name left for constant " + t.name());
        taken.insert(v);
        binds.push_back({t.name(), v});
      }
      t = Term::var(v);
    }
    if (binds.empty()) return f;
    Formula core;
    switch (f.op()) {
      case Op::Equal:
        core = Formula::equal(args[0], args[1]);
        break;
      case Op::Rigid:
        core = Formula::rigid(f.symbol(), args);
        break;
      case Op::Lifted:
        core = Formula::lifted(f.symbol(), args);
        break;
      default:
        core = Formula::fluent(f.symbol(), args, f.situation());
        break;
    }
    for (auto it = binds.rbegin(); it != binds.rend(); ++it)
      core = Formula::exists(
          it->second, Formula::conj({Formula::rigid(constant_predicate(it->first), {Term::var(it->second)}), core}));
    return core;
  }
  std::vector<Formula> kids;
  for (const auto& k : f.children()) kids.push_back(elim_rec(k, consts, pool));
  switch (f.op()) {
    case Op::Not:
      return Formula::negation(kids[0]);
    case Op::And:
      return Formula::conj(kids);
    case Op::Or:
      return Formula::disj(kids);
    case Op::Implies:
      return Formula::implies(kids[0], kids[1]);
    case Op::Iff:
      return Formula::iff(kids[0], kids[1]);
    case Op::Exists:
      return Formula::exists(f.symbol(), kids[0]);
    case Op::Forall:
      return Formula::forall(f.symbol(), kids[0], f.implicit());
    default:
      return f;
  }
}

}  // namespace

Formula fo2_eliminate_constants(const Formula& f, const std::vector<std::string>& constants) {
  std::set<std::string> names = var_names(f);
  std::vector<std::string> pool(names.begin(), names.end());
  for (const char* n : {"x", "y"})
    if (pool.size() < 2 && !names.count(n)) pool.push_back(n);
  std::set<std::string> consts(constants.begin(), constants.end());
  return elim_rec(f, consts, pool);
}

}  // namespace prog
