#include "progressor/classification.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "progressor/simplify.hpp"

namespace prog {

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::None: return "none";
    case Fragment::FO2: return "fo2";
    case Fragment::UTC: return "utc";
  }
  return "?";
}

Fragment parse_fragment(const std::string& s) {
  if (s == "none") return Fragment::None;
  if (s == "fo2") return Fragment::FO2;
  if (s == "utc") return Fragment::UTC;
  throw Error("unknown fragment '" + s + "' (expected none, fo2 or utc)");
}

const char* to_string(BatClass c) {
  switch (c) {
    case BatClass::LE: return "LE";
    case BatClass::NR: return "NR";
    case BatClass::AC: return "AC";
    case BatClass::None: return "None";
  }
  return "?";
}

// ---- good form ----------------------------------------------------------

namespace {
// The single top-level literal on p in a clause, if there is one.
struct ClauseSplit {
  bool positive = true;
  std::vector<Term> args;
  std::vector<Formula> others;
};

std::optional<ClauseSplit> split_clause(const Formula& clause, const Predicate& p) {
  ClauseSplit out;
  bool found = false;
  for (const auto& d : disjuncts(clause)) {
    const Formula* atom = nullptr;
    bool positive = true;
    if (d.is_atom() && p.matches(d)) {
      atom = &d;
    } else if (d.op() == Op::Not && d.body().is_atom() && p.matches(d.body())) {
      atom = &d.body();
      positive = false;
    }
    if (atom && !found) {
      found = true;
      out.positive = positive;
      out.args = atom->args();
    } else {
      out.others.push_back(d);
    }
  }
  if (!found) return std::nullopt;
  return out;
}
}  // namespace

std::optional<GoodForm> is_good_form(const Formula& phi, const Predicate& p) {
  Formula f = strip_foralls(desugar(phi)).second;
  GoodForm gf;
  bool have_pos = false, have_neg = false;
  std::vector<Formula> rest;
  for (const auto& c : conjuncts(f)) {
    std::size_t n = count_occurrences(c, p);
    if (n == 0) {
      rest.push_back(c);
      continue;
    }
    if (n > 1) return std::nullopt;
    auto cs = split_clause(c, p);
    if (!cs) return std::nullopt;
    if (gf.args && *gf.args != cs->args) return std::nullopt;
    gf.args = cs->args;
    Formula cond = Formula::disj(cs->others);
    if (cs->positive) {
      if (have_pos) return std::nullopt;
      have_pos = true;
      gf.pos = cond;
    } else {
      if (have_neg) return std::nullopt;
      have_neg = true;
      gf.neg = cond;
    }
  }
  gf.rest = Formula::conj(rest);
  return gf;
}

Formula assemble(const GoodForm& gf, const Predicate& p) {
  if (!gf.args) return gf.rest;
  Formula atom = p.atom(*gf.args);
  return Formula::conj({Formula::disj({gf.pos, atom}), Formula::disj({gf.neg, Formula::negation(atom)}), gf.rest});
}

std::size_t condition_size(const GoodForm& gf) {
  return std::max({raw_size(gf.pos), raw_size(gf.neg), raw_size(gf.rest)});
}

std::size_t condition_size(const Formula& phi, const Predicate& p) {
  auto gf = is_good_form(phi, p);
  if (!gf) throw PreconditionError("formula is not in good form wrt " + p.to_string() + ": " + to_infix(phi));
  return condition_size(*gf);
}

// ---- semi-definitional theories -----------------------------------------

namespace {

// Injective renaming sending from[i] to to[i]; other names that would
// collide are moved to the names freed up, or to fresh ones.
std::map<std::string, std::string> canonical_renaming(const Formula& f, const std::vector<std::string>& from,
                                                      const std::vector<std::string>& to) {
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
  std::set<std::string> names = var_names(f);
  std::vector<std::string> freed;
  for (const auto& n : from)
    if (std::find(to.begin(), to.end(), n) == to.end()) freed.push_back(n);
  std::set<std::string> used = names;
  used.insert(to.begin(), to.end());
  FreshNames fresh(used, "u");
  std::size_t k = 0;
  for (const auto& n : names) {
    if (m.count(n)) continue;
    if (std::find(to.begin(), to.end(), n) == to.end()) continue;
    m[n] = k < freed.size() ? freed[k++] : fresh.next();
  }
  return m;
}

}  // namespace

std::vector<Formula> SemidefAnalysis::wsc() const {
  std::vector<Formula> out;
  for (const auto& n : nws) out.push_back(simplify(Formula::negation(n.f)));
  return out;
}

SemidefAnalysis analyze_semidef(const Theory& t, const Predicate& p, const std::vector<std::string>& y, Fragment mode) {
  SemidefAnalysis out;
  for (const auto& sentence : t) {
    auto [outer, matrix] = strip_foralls(desugar(sentence));
    for (const auto& c : conjuncts(matrix)) {
      Formula clause = strip_foralls(c).second;
      std::size_t n = count_occurrences(clause, p);
      if (n == 0) {
        out.rest.push_back(close_universally(c));
        continue;
      }
      if (n > 1) {
        out.ok = false;
        out.witness = p.to_string() + " occurs " + std::to_string(n) + " times in " + to_infix(sentence);
        return out;
      }
      auto cs = split_clause(clause, p);
      if (!cs) {
        out.ok = false;
        out.witness = p.to_string() + " is not an outermost literal in " + to_infix(sentence);
        return out;
      }
      std::vector<std::string> from;
      auto fv = free_vars(clause);
      for (const auto& a : cs->args) {
        if (!a.is_variable() || std::find(from.begin(), from.end(), a.name()) != from.end() ||
            std::find(fv.begin(), fv.end(), a.name()) == fv.end()) {
          out.ok = false;
          out.witness = "arguments of " + p.to_string() + " are not distinct universal variables in " + to_infix(sentence);
          return out;
        }
        from.push_back(a.name());
      }
      if (from.size() != y.size()) throw PreconditionError("canonical variable list has the wrong length");
      Formula cond = Formula::disj(cs->others);
      cond = rename_all(cond, canonical_renaming(clause, from, y));
      Condition k;
      for (const auto& v : free_vars(cond))
        if (std::find(y.begin(), y.end(), v) == y.end()) k.extra.push_back(v);
      if (mode != Fragment::UTC) {
        for (auto it = k.extra.rbegin(); it != k.extra.rend(); ++it) cond = Formula::forall(*it, cond);
        k.extra.clear();
      }
      k.f = cond;
      (cs->positive ? out.nws : out.snc).push_back(k);
    }
  }
  return out;
}

bool is_semi_definitional(const Theory& t, const Predicate& p) {
  int arity = -1;
  for (const auto& s : t) {
    std::vector<Formula> atoms;
    collect_atoms(s, atoms);
    for (const auto& a : atoms)
      if (p.matches(a)) arity = static_cast<int>(a.args().size());
  }
  if (arity < 0) return true;
  auto y = default_params(arity);
  return analyze_semidef(t, p, y).ok;
}

// ---- fragments ----------------------------------------------------------

FragmentCheck check_fo2(const Theory& t) {
  FragmentCheck out;
  for (const auto& s : t) {
    auto names = var_names(s);
    if (names.size() > 2) {
      out.ok = false;
      out.diagnostics.push_back(std::to_string(names.size()) + " variable names in " + to_infix(s));
    }
    std::vector<Formula> atoms;
    collect_atoms(s, atoms);
    for (const auto& a : atoms)
      if ((a.op() == Op::Fluent || a.op() == Op::Rigid || a.op() == Op::Lifted) && a.args().size() > 2) {
        out.ok = false;
        out.diagnostics.push_back("predicate " + a.symbol() + " has object arity " + std::to_string(a.args().size()) +
                                  " (arity reduction is not performed)");
      }
  }
  return out;
}

FragmentCheck check_utc(const Theory& t) {
  FragmentCheck out;
  for (const auto& s : t) {
    if (!is_quantifier_free(strip_foralls(s).second)) {
      out.ok = false;
      out.diagnostics.push_back("not a universal sentence: " + to_infix(s));
    }
  }
  return out;
}

// ---- fluent split and characteristic set --------------------------------

bool FluentSplit::is_le(const std::string& f) const { return std::find(le.begin(), le.end(), f) != le.end(); }

namespace {

bool entry_live(const GammaEntry& e, const GroundAction& alpha, bool una) {
  if (!una) return true;
  std::map<std::string, std::string> z;
  for (std::size_t j = 0; j < e.pattern.size(); ++j) {
    const Term& v = e.pattern[j];
    if (v.is_constant() && v.name() != alpha.args[j]) return false;
    if (v.is_variable() && std::find(e.zvars.begin(), e.zvars.end(), v.name()) != e.zvars.end()) {
      auto [it, fresh] = z.emplace(v.name(), alpha.args[j]);
      if (!fresh && it->second != alpha.args[j]) return false;
    }
  }
  return true;
}

template <typename Fn>
void for_live_entries(const SSA& ssa, const GroundAction& alpha, bool una, Fn&& fn) {
  for (const auto* list : {&ssa.pos, &ssa.neg})
    for (const auto& e : *list)
      if (e.action == alpha.symbol && entry_live(e, alpha, una)) fn(e);
}

}  // namespace

FluentSplit classify_fluents(const BasicActionTheory& bat, const GroundAction& alpha, bool una) {
  FluentSplit out;
  for (const auto& ssa : bat.ssas) {
    bool local = true;
    for_live_entries(ssa, alpha, una, [&](const GammaEntry& e) {
      for (const auto& p : ssa.params)
        if (std::none_of(e.pattern.begin(), e.pattern.end(),
                         [&](const Term& t) { return t.is_variable() && t.name() == p; }))
          local = false;
    });
    (local ? out.le : out.nle).push_back(ssa.fluent);
  }
  return out;
}

Formula OmegaEntry::atom(const Term& sit) const {
  std::vector<Term> ts;
  for (const auto& a : args) ts.push_back(Term::constant(a));
  return Formula::fluent(fluent, ts, sit);
}

CharacteristicSet characteristic_set(const BasicActionTheory& bat, const GroundAction& alpha, const FluentSplit& split,
                                     bool una) {
  std::set<OmegaEntry> found;
  for (const auto& ssa : bat.ssas) {
    if (!split.is_le(ssa.fluent)) continue;
    for_live_entries(ssa, alpha, una, [&](const GammaEntry& e) {
      OmegaEntry o{ssa.fluent, {}};
      for (const auto& p : ssa.params)
        for (std::size_t j = 0; j < e.pattern.size(); ++j)
          if (e.pattern[j].is_variable() && e.pattern[j].name() == p) {
            o.args.push_back(alpha.args[j]);
            break;
          }
      found.insert(o);
    });
  }
  return {std::vector<OmegaEntry>(found.begin(), found.end())};
}

Theory dss_omega(const BasicActionTheory& bat, const GroundAction& alpha, const CharacteristicSet& omega, bool una) {
  Theory out;
  for (const auto& o : omega.entries) {
    const SSA& ssa = bat.ssa(o.fluent);
    std::map<std::string, Term> sigma;
    for (std::size_t i = 0; i < ssa.params.size(); ++i) sigma.emplace(ssa.params[i], Term::constant(o.args[i]));
    Formula rhs = simplify(substitute_vars(ssa_rhs(ssa, alpha, una), sigma), una);
    out.push_back(close_universally(Formula::iff(o.atom(alpha.successor()), rhs)));
  }
  return out;
}

// ---- dependency graph ---------------------------------------------------

namespace {
std::vector<std::string> fluents_in(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  std::set<std::string> s;
  for (const auto& a : atoms)
    if (a.op() == Op::Fluent || a.op() == Op::Lifted) s.insert(a.symbol());
  return {s.begin(), s.end()};
}
}  // namespace

DependencyGraph dependency_graph(const BasicActionTheory& bat, const GroundAction& alpha, const FluentSplit& split,
                                 bool una) {
  DependencyGraph g;
  for (const auto& f : bat.vocab.fluents) g.nodes.push_back(f.name);
  for (const auto& f : split.nle) {
    const SSA& ssa = bat.ssa(f);
    g.plus_targets[f] = fluents_in(instantiate_gamma(ssa, true, alpha, Term::init(), una));
    g.minus_targets[f] = fluents_in(instantiate_gamma(ssa, false, alpha, Term::init(), una));
    std::set<std::string> all(g.plus_targets[f].begin(), g.plus_targets[f].end());
    all.insert(g.minus_targets[f].begin(), g.minus_targets[f].end());
    for (const auto& t : all) g.edges.emplace_back(f, t);
  }
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : g.edges) succ[a].push_back(b);

  std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
  std::map<std::string, int> longest;
  std::vector<std::string> stack;
  std::function<int(const std::string&)> dfs = [&](const std::string& v) -> int {
    if (color[v] == 2) return longest[v];
    if (color[v] == 1) {
      if (g.acyclic) {
        g.acyclic = false;
        auto it = std::find(stack.begin(), stack.end(), v);
        g.cycle.assign(it, stack.end());
        g.cycle.push_back(v);
      }
      return 0;
    }
    color[v] = 1;
    stack.push_back(v);
    int best = 0;
    for (const auto& w : succ[v]) best = std::max(best, 1 + dfs(w));
    stack.pop_back();
    color[v] = 2;
    return longest[v] = best;
  };
  for (const auto& v : g.nodes) g.depth = std::max(g.depth, dfs(v));
  return g;
}

std::vector<std::string> DependencyGraph::topological_order(const std::vector<std::string>& only) const {
  std::set<std::string> keep(only.begin(), only.end());
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& v : keep) indeg[v] = 0;
  for (const auto& [a, b] : edges)
    if (keep.count(a) && keep.count(b) && a != b) {
      succ[a].push_back(b);
      ++indeg[b];
    }
  std::set<std::string> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.insert(v);
  std::vector<std::string> out;
  while (!ready.empty()) {
    std::string v = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(v);
    for (const auto& w : succ[v])
      if (--indeg[w] == 0) ready.insert(w);
  }
  if (out.size() != keep.size()) throw PreconditionError("dependency graph has a cycle");
  return out;
}

std::string DependencyGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph dependencies {\n";
  for (const auto& n : nodes) os << "  \"" << n << "\";\n";
  for (const auto& [a, b] : edges) os << "  \"" << a << "\" -> \"" << b << "\";\n";
  os << "}\n";
  return os.str();
}

// ---- verdict ------------------------------------------------------------

bool Verdict::admits(BatClass c) const {
  switch (c) {
    case BatClass::LE: return le;
    case BatClass::NR: return nr;
    case BatClass::AC: return ac;
    case BatClass::None: return true;
  }
  return false;
}

std::string Verdict::witness() const {
  if (bat_class != BatClass::None) return "";
  std::string w = "not LE: " + le_witness + "; not NR: " + nr_witness + "; not AC: " + ac_witness;
  return w;
}

std::string Verdict::fragment() const {
  if (fo2 && utc) return "both";
  if (fo2) return "FO2";
  if (utc) return "UTC";
  return "neither";
}

Formula lifted_gamma(const BasicActionTheory& bat, const std::string& fluent, bool positive, const GroundAction& alpha,
                     const FluentSplit& split, bool una) {
  std::set<std::string> nle(split.nle.begin(), split.nle.end());
  return lift(instantiate_gamma(bat.ssa(fluent), positive, alpha, Term::init(), una), Term::init(), nle);
}

Verdict check_bat_class(const BasicActionTheory& bat, const GroundAction& alpha, bool una) {
  Verdict v;
  v.split = classify_fluents(bat, alpha, una);
  v.omega = characteristic_set(bat, alpha, v.split, una);
  v.graph = dependency_graph(bat, alpha, v.split, una);
  std::set<std::string> nle(v.split.nle.begin(), v.split.nle.end());

  v.le = v.split.nle.empty();
  if (!v.le) v.le_witness = "fluent " + v.split.nle.front() + " has non-local effects";

  Theory lifted_init;
  for (const auto& s : bat.init) lifted_init.push_back(lift(s, Term::init(), nle));

  // The local step runs after the NLE predicates are gone, so the Omega
  // instances of LE fluents must not read NLE fluents.
  std::string mixed;
  for (const auto& f : v.split.le)
    for (bool positive : {true, false})
      for (const auto& t : fluents_in(instantiate_gamma(bat.ssa(f), positive, alpha, Term::init(), una)))
        if (nle.count(t) && mixed.empty())
          mixed = "effect condition of local-effect fluent " + f + " mentions non-local-effect fluent " + t;

  // Normal: NLE effect conditions mention only LE fluents, D_S0 semi-definitional.
  v.nr = mixed.empty();
  if (!v.nr) v.nr_witness = mixed;
  for (const auto& f : v.split.nle) {
    for (const auto* targets : {&v.graph.plus_targets[f], &v.graph.minus_targets[f]})
      for (const auto& t : *targets)
        if (nle.count(t) && v.nr) {
          v.nr = false;
          v.nr_witness = "effect condition of " + f + " mentions non-local-effect fluent " + t;
        }
  }
  if (v.nr)
    for (const auto& f : v.split.nle) {
      auto a = analyze_semidef(lifted_init, Predicate::lifted(f), bat.ssa(f).params);
      if (!a.ok) {
        v.nr = false;
        v.nr_witness = "initial theory is not semi-definitional wrt " + f + ": " + a.witness;
        break;
      }
    }

  // Acyclic.
  v.ac = mixed.empty();
  if (!v.ac) v.ac_witness = mixed;
  if (v.ac && !v.graph.acyclic) {
    v.ac = false;
    std::string c;
    for (std::size_t i = 0; i < v.graph.cycle.size(); ++i) c += (i ? " -> " : "") + v.graph.cycle[i];
    v.ac_witness = "dependency cycle " + c;
  }
  if (v.ac)
    for (const auto& f : v.split.nle) {
      for (bool positive : {true, false}) {
        const auto& targets = positive ? v.graph.plus_targets[f] : v.graph.minus_targets[f];
        std::vector<std::string> nt;
        for (const auto& t : targets)
          if (nle.count(t)) nt.push_back(t);
        const char* sign = positive ? "positive" : "negative";
        if (nt.size() > 1) {
          v.ac = false;
          v.ac_witness = std::string(sign) + " effect condition of " + f + " mentions several non-local-effect fluents";
        } else if (nt.size() == 1) {
          Formula g = lifted_gamma(bat, f, positive, alpha, v.split, una);
          if (!is_good_form(g, Predicate::lifted(nt[0]))) {
            v.ac = false;
            v.ac_witness = std::string(sign) + " effect condition of " + f + " is not in good form wrt " + nt[0];
          }
        }
        if (!v.ac) break;
      }
      if (!v.ac) break;
    }
  if (v.ac)
    for (const auto& s : lifted_init) {
      std::vector<std::string> mentioned;
      for (const auto& fl : fluents_in(s))
        if (nle.count(fl)) {
          std::vector<Formula> atoms;
          collect_atoms(s, atoms);
          bool lifted = std::any_of(atoms.begin(), atoms.end(),
                                    [&](const Formula& a) { return a.op() == Op::Lifted && a.symbol() == fl; });
          if (lifted) mentioned.push_back(fl);
        }
      if (mentioned.size() > 1) {
        v.ac = false;
        v.ac_witness = "initial sentence mentions several non-local-effect fluents: " + to_infix(s);
        break;
      }
      if (mentioned.size() == 1) {
        auto a = analyze_semidef({s}, Predicate::lifted(mentioned[0]), bat.ssa(mentioned[0]).params);
        if (!a.ok) {
          v.ac = false;
          v.ac_witness = "initial theory is not semi-definitional wrt " + mentioned[0] + ": " + a.witness;
          break;
        }
      }
    }

  if (v.le)
    v.bat_class = BatClass::LE;
  else if (v.nr)
    v.bat_class = BatClass::NR;
  else if (v.ac)
    v.bat_class = BatClass::AC;

  Theory base = bat.init;
  for (const auto& s : instantiate_ssas(bat, alpha, una)) base.push_back(s);
  auto f2 = check_fo2(base);
  auto uc = check_utc(base);
  v.fo2 = f2.ok;
  v.utc = uc.ok;
  for (const auto& d : f2.diagnostics) v.fragment_diagnostics.push_back("FO2: " + d);
  for (const auto& d : uc.diagnostics) v.fragment_diagnostics.push_back("UTC: " + d);
  return v;
}

}  // namespace prog
