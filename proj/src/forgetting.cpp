#include "progressor/forgetting.hpp"

#include <algorithm>
#include <set>

#include "progressor/simplify.hpp"

namespace prog {

Formula tuple_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) throw PreconditionError("tuples of different length");
  std::vector<Formula> eqs;
  for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(Formula::equal(a[i], b[i]));
  return Formula::conj(eqs);
}

namespace {

Predicate predicate_of(const Formula& atom) {
  Predicate p{atom.op(), atom.symbol(), std::nullopt};
  if (atom.op() == Op::Fluent) p.situation = atom.situation();
  return p;
}

bool ground(const Formula& atom) {
  return std::all_of(atom.args().begin(), atom.args().end(), [](const Term& t) { return t.is_ground(); });
}

template <typename Fn>
Formula map_atoms(const Formula& f, Fn&& fn) {
  if (f.is_atom()) return fn(f);
  std::vector<Formula> kids;
  for (const auto& k : f.children()) kids.push_back(map_atoms(k, fn));
  switch (f.op()) {
    case Op::Not: return Formula::negation(kids[0]);
    case Op::And: return Formula::conj(kids);
    case Op::Or: return Formula::disj(kids);
    case Op::Implies: return Formula::implies(kids[0], kids[1]);
    case Op::Iff: return Formula::iff(kids[0], kids[1]);
    case Op::Exists: return Formula::exists(f.symbol(), kids[0]);
    case Op::Forall: return Formula::forall(f.symbol(), kids[0], f.implicit());
    default: return f;
  }
}

// phi[P(t)] with P(t) itself replaced by `value`.
Formula expand_with(const Formula& phi, const Formula& atom, const Formula& value) {
  Predicate p = predicate_of(atom);
  return map_atoms(phi, [&](const Formula& a) -> Formula {
    if (!p.matches(a)) return a;
    if (a == atom) return value;
    Formula eq = tuple_equal(atom.args(), a.args());
    return Formula::disj({Formula::conj({eq, value}), Formula::conj({Formula::negation(eq), a})});
  });
}

}  // namespace

Formula expand_for_atom(const Formula& phi, const Formula& atom) { return expand_with(desugar(phi), atom, atom); }

Formula forget_ground_atom(const Formula& phi, const Formula& atom, bool una, bool simplified) {
  if (!atom.is_atom() || atom.op() == Op::Equal || atom.op() == Op::True || atom.op() == Op::False)
    throw PreconditionError("forget_ground_atom expects a predicate atom");
  if (!ground(atom)) throw PreconditionError("atom " + to_infix(atom) + " is not ground");
  Formula d = desugar(phi);
  Formula out = Formula::disj({expand_with(d, atom, Formula::truth()), expand_with(d, atom, Formula::falsity())});
  return simplified ? simplify(out, una) : out;
}

Formula substitute_assignment(const Formula& phi, const LiteralAssignment& theta) {
  if (theta.empty()) return phi;
  for (const auto& [a, v] : theta)
    if (!ground(a)) throw PreconditionError("assignment atom " + to_infix(a) + " is not ground");
  return map_atoms(phi, [&](const Formula& a) -> Formula {
    std::vector<std::pair<Formula, bool>> mine;
    for (const auto& e : theta)
      if (predicate_of(e.first).matches(a)) mine.push_back(e);
    if (mine.empty()) return a;
    if (a.args().empty()) return Formula::constant(mine.front().second);
    std::vector<Formula> hits, misses;
    for (const auto& [b, v] : mine) {
      Formula eq = tuple_equal(a.args(), b.args());
      hits.push_back(Formula::conj({eq, Formula::constant(v)}));
      misses.push_back(Formula::negation(eq));
    }
    misses.push_back(a);
    hits.push_back(Formula::conj(misses));
    return Formula::disj(hits);
  });
}

Formula disjoin_theories(const std::vector<Theory>& branches) {
  std::set<std::string> used;
  for (const auto& b : branches)
    for (const auto& s : b) {
      auto n = var_names(s);
      used.insert(n.begin(), n.end());
    }
  std::map<std::string, FreshNames> gens;
  std::vector<std::string> prefix;
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    // Within one branch the sentences may share their universal variables.
    std::map<std::string, std::string> ren;
    std::vector<std::pair<std::vector<std::string>, Formula>> split;
    for (const auto& s : branches[i]) split.push_back(strip_foralls(s));
    for (const auto& [vars, body] : split)
      for (const auto& v : vars) {
        if (ren.count(v)) continue;
        std::string nv = v;
        if (i > 0) {
          auto it = gens.find(v);
          if (it == gens.end()) it = gens.emplace(v, FreshNames(used, v + "_")).first;
          nv = it->second.next();
        }
        ren[v] = nv;
        prefix.push_back(nv);
      }
    std::vector<Formula> conj;
    for (const auto& [vars, body] : split) {
      std::map<std::string, std::string> mine;
      for (const auto& v : vars)
        if (ren[v] != v) mine[v] = ren[v];
      conj.push_back(rename_all(body, mine));
    }
    parts.push_back(Formula::conj(conj));
  }
  Formula out = Formula::disj(parts);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) out = Formula::forall(*it, out, true);
  return out;
}

LocalForgetResult forget_local(const Theory& t, std::vector<Formula> omega, const LocalForgetOptions& opts) {
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  const std::size_t c = omega.size();
  if (c > opts.cap)
    throw CapExceeded("characteristic set has " + std::to_string(c) + " atoms, above the cap of " + std::to_string(opts.cap) +
                "; local forgetting builds 2^c disjuncts");
  Theory td = desugar(t);
  LocalForgetResult out;
  if (c == 0) {
    out.raw = td;
    out.disjuncts = 1;
  } else {
    std::vector<Theory> branches;
    for (std::size_t bits = 0; bits < (std::size_t{1} << c); ++bits) {
      LiteralAssignment theta;
      for (std::size_t j = 0; j < c; ++j) theta.emplace_back(omega[j], (bits >> (c - 1 - j)) & 1);
      Theory b;
      for (const auto& s : td) b.push_back(substitute_assignment(s, theta));
      branches.push_back(std::move(b));
    }
    out.disjuncts = branches.size();
    if (opts.mode == Fragment::FO2) {
      std::vector<Formula> parts;
      for (const auto& b : branches) {
        std::vector<Formula> conj;
        // Leading quantifiers become inner ones; make them explicit.
        for (const auto& s : b) {
          auto [vars, body] = strip_foralls(s);
          for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::forall(*it, body);
          conj.push_back(body);
        }
        parts.push_back(Formula::conj(conj));
      }
      out.raw = {Formula::disj(parts)};
    } else {
      out.raw = {disjoin_theories(branches)};
    }
  }
  out.raw_size = size(out.raw);
  out.theory = simplify(out.raw, opts.una);
  return out;
}

// ---- conditions ---------------------------------------------------------

namespace {
std::set<std::string> names_of(const std::vector<Condition>& cs, const std::vector<std::string>& y) {
  std::set<std::string> used(y.begin(), y.end());
  for (const auto& c : cs) {
    auto n = var_names(c.f);
    used.insert(n.begin(), n.end());
  }
  return used;
}
}  // namespace

Condition conjoin(const std::vector<Condition>& cs, const std::vector<std::string>& y, Fragment mode) {
  Condition out{Formula::truth(), {}};
  std::vector<Formula> fs;
  if (mode != Fragment::UTC) {
    for (const auto& c : cs) fs.push_back(c.f);
    out.f = Formula::conj(fs);
    return out;
  }
  FreshNames fresh(names_of(cs, y), "e");
  std::set<std::string> seen;
  for (const auto& c : cs) {
    std::map<std::string, std::string> ren;
    for (const auto& e : c.extra) {
      std::string n = seen.count(e) ? fresh.next() : e;
      ren[e] = n;
      seen.insert(n);
      out.extra.push_back(n);
    }
    fs.push_back(rename_all(c.f, ren));
  }
  out.f = Formula::conj(fs);
  return out;
}

Condition disjoin(const Condition& a, const Condition& b, const std::vector<std::string>& y, Fragment mode) {
  if (mode != Fragment::UTC) return {Formula::disj({a.f, b.f}), {}};
  FreshNames fresh(names_of({a, b}, y), "e");
  std::map<std::string, std::string> ren;
  Condition out{Formula::truth(), a.extra};
  for (const auto& e : b.extra) {
    std::string n = std::find(a.extra.begin(), a.extra.end(), e) != a.extra.end() ? fresh.next() : e;
    ren[e] = n;
    out.extra.push_back(n);
  }
  out.f = Formula::disj({a.f, rename_all(b.f, ren)});
  return out;
}

SemidefForgetResult forget_predicate_semidef(const Theory& t, const Predicate& p, const std::vector<std::string>& y,
                                             Fragment mode) {
  auto a = analyze_semidef(t, p, y, mode);
  if (!a.ok) throw PreconditionError("theory is not semi-definitional: " + a.witness);
  SemidefForgetResult out;
  out.theory = a.rest;
  for (const auto& n : a.nws)
    for (const auto& s : a.snc) {
      out.theory.push_back(close_universally(disjoin(n, s, y, mode).f));
      ++out.pairs;
    }
  return out;
}

Formula DeltaAxiom::formula() const {
  std::vector<Term> ys;
  for (const auto& v : params) ys.push_back(Term::var(v));
  Formula atom = pred.atom(ys);
  // a True condition is a missing clause
  std::vector<Formula> parts;
  if (!nws.f.is_true()) parts.push_back(Formula::disj({nws.f, atom}));
  if (!snc.f.is_true()) parts.push_back(Formula::disj({snc.f, Formula::negation(atom)}));
  if (parts.empty()) return Formula::truth();
  return close_universally(parts.size() == 1 ? parts[0] : Formula::conj(parts));
}

std::size_t DeltaAxiom::condition_size() const { return std::max(raw_size(nws.f), raw_size(snc.f)); }

DeltaAxiom consolidate_delta(const Theory& t, const Predicate& p, const std::vector<std::string>& y, Fragment mode) {
  auto a = analyze_semidef(t, p, y, mode);
  if (!a.ok) throw PreconditionError("theory is not semi-definitional: " + a.witness);
  DeltaAxiom d;
  d.pred = p;
  d.params = y;
  d.nws = conjoin(a.nws, y, mode);
  d.snc = conjoin(a.snc, y, mode);
  d.rest = a.rest;
  return d;
}

// ---- good-form rewrites --------------------------------------------------

GoodForm negate_goodform(const GoodForm& gf) {
  GoodForm out;
  if (!gf.args) {
    out.rest = Formula::negation(gf.rest);
    return out;
  }
  Formula nrest = Formula::negation(gf.rest);
  out.args = gf.args;
  out.pos = Formula::disj({Formula::negation(gf.pos), nrest});
  out.neg = Formula::disj({Formula::negation(gf.neg), nrest});
  out.rest = Formula::truth();
  return out;
}

Formula negate_goodform_full(const GoodForm& gf, const Predicate& p) {
  if (!gf.args) return Formula::conj({Formula::truth(), Formula::truth(), Formula::negation(gf.rest)});
  Formula np = Formula::negation(gf.pos), nn = Formula::negation(gf.neg), nr = Formula::negation(gf.rest);
  Formula atom = p.atom(*gf.args);
  return Formula::conj({Formula::disj({np, nr, atom}), Formula::disj({nn, nr, Formula::negation(atom)}),
                        Formula::disj({np, nn, nr})});
}

GoodForm or_goodform(const GoodForm& gf, const Formula& chi) {
  GoodForm out = gf;
  if (gf.args) {
    out.pos = Formula::disj({chi, gf.pos});
    out.neg = Formula::disj({chi, gf.neg});
  }
  out.rest = Formula::disj({chi, gf.rest});
  return out;
}

namespace {
GoodForm require_gf(const Formula& phi, const Predicate& p) {
  auto gf = is_good_form(phi, p);
  if (!gf) throw PreconditionError("formula is not in good form wrt " + p.to_string() + ": " + to_infix(phi));
  return *gf;
}
}  // namespace

Formula negate_goodform(const Formula& phi, const Predicate& p) { return assemble(negate_goodform(require_gf(phi, p)), p); }

Formula or_goodform(const Formula& phi, const Formula& chi, const Predicate& p) {
  if (mentions(chi, p)) throw PreconditionError("disjunct mentions " + p.to_string());
  return assemble(or_goodform(require_gf(phi, p), chi), p);
}

SemidefParts goodform_to_semidef(const GoodForm& gf0, const Predicate& p, const std::vector<std::string>& y) {
  GoodForm gf = gf0;
  if (gf.args && gf.args->size() != y.size()) throw PreconditionError("canonical variables do not match the arity");
  // Move variables out of the way of the canonical ones.
  Formula whole = assemble(gf, p);
  std::set<std::string> used = var_names(whole);
  used.insert(y.begin(), y.end());
  FreshNames fresh(used, "w");
  std::map<std::string, std::string> ren;
  for (const auto& n : var_names(whole))
    if (std::find(y.begin(), y.end(), n) != y.end()) ren[n] = fresh.next();
  if (!ren.empty()) {
    gf.pos = rename_all(gf.pos, ren);
    gf.neg = rename_all(gf.neg, ren);
    gf.rest = rename_all(gf.rest, ren);
    if (gf.args)
      for (auto& t : *gf.args)
        if (t.is_variable() && ren.count(t.name())) t = Term::var(ren.at(t.name()));
    whole = assemble(gf, p);
  }
  std::vector<std::string> xs = free_vars(whole);
  auto wrap = [&](Formula f) {
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) f = Formula::forall(*it, f);
    return f;
  };
  SemidefParts out;
  Formula rest = wrap(gf.rest);
  if (gf.args) {
    std::vector<Term> ys;
    for (const auto& v : y) ys.push_back(Term::var(v));
    Formula atom = p.atom(ys);
    Formula n = gf.pos, s = gf.neg;
    if (!ys.empty()) {
      Formula guard = Formula::negation(tuple_equal(ys, *gf.args));
      n = Formula::disj({guard, n});
      s = Formula::disj({guard, s});
    }
    n = wrap(n);
    s = wrap(s);
    out.nws.push_back({n, {}});
    out.snc.push_back({s, {}});
    out.sentences.push_back(close_universally(Formula::disj({n, atom})));
    out.sentences.push_back(close_universally(Formula::disj({s, Formula::negation(atom)})));
    out.combined = close_universally(
        Formula::conj({Formula::disj({n, atom}), Formula::disj({s, Formula::negation(atom)}), rest}));
  } else {
    out.combined = close_universally(rest);
  }
  out.rest.push_back(close_universally(rest));
  out.sentences.push_back(close_universally(rest));
  return out;
}

Formula goodform_to_semidef(const Formula& phi, const Predicate& p, const std::vector<std::string>& y) {
  return goodform_to_semidef(require_gf(phi, p), p, y).combined;
}

}  // namespace prog
