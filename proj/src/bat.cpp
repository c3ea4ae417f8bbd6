#include "progressor/bat.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "progressor/simplify.hpp"

namespace prog {

// ---- vocabulary ---------------------------------------------------------

namespace {
std::optional<int> lookup(const std::vector<Symbol>& syms, const std::string& s) {
  for (const auto& x : syms)
    if (x.name == s) return x.arity;
  return std::nullopt;
}
}  // namespace

std::optional<int> Vocabulary::fluent_arity(const std::string& s) const { return lookup(fluents, s); }
std::optional<int> Vocabulary::rigid_arity(const std::string& s) const { return lookup(rigids, s); }
std::optional<int> Vocabulary::action_arity(const std::string& s) const { return lookup(actions, s); }

bool Vocabulary::is_constant(const std::string& s) const {
  return std::find(constants.begin(), constants.end(), s) != constants.end();
}

int Vocabulary::max_arity() const {
  int a = 0;
  for (const auto& f : fluents) a = std::max(a, f.arity);
  for (const auto& r : rigids) a = std::max(a, r.arity);
  return a;
}

Term situation_var() { return Term::var("s", Sort::Situation); }

std::vector<Term> SSA::param_terms() const {
  std::vector<Term> out;
  for (const auto& p : params) out.push_back(Term::var(p));
  return out;
}

std::vector<std::string> default_params(int arity) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 0; i < arity; ++i) out.push_back(arity <= 3 ? small[i] : "x" + std::to_string(i + 1));
  return out;
}

const SSA& BasicActionTheory::ssa(const std::string& fluent) const {
  for (const auto& s : ssas)
    if (s.fluent == fluent) return s;
  throw PreconditionError("no successor state axiom for fluent " + fluent);
}

// ---- ground actions -----------------------------------------------------

namespace {
std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

GroundAction GroundAction::parse(const std::string& text, const Vocabulary& vocab) {
  std::string t = trim(text);
  GroundAction g;
  auto lp = t.find('(');
  if (lp == std::string::npos) {
    g.symbol = t;
  } else {
    if (t.back() != ')') throw Error("malformed action '" + text + "', expected A(c1,...)");
    g.symbol = trim(t.substr(0, lp));
    std::string inner = t.substr(lp + 1, t.size() - lp - 2);
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (part.empty()) throw Error("empty argument in action '" + text + "'");
      g.args.push_back(part);
    }
  }
  auto ar = vocab.action_arity(g.symbol);
  if (!ar) throw Error("unknown action symbol '" + g.symbol + "'");
  if (*ar != static_cast<int>(g.args.size()))
    throw Error("action " + g.symbol + " expects " + std::to_string(*ar) + " arguments, got " +
                std::to_string(g.args.size()));
  for (const auto& a : g.args)
    if (!vocab.is_constant(a)) throw Error("action argument '" + a + "' is not a declared constant");
  return g;
}

Term GroundAction::term() const {
  std::vector<Term> as;
  for (const auto& a : args) as.push_back(Term::constant(a));
  return Term::action(symbol, as);
}

Term GroundAction::successor() const { return Term::do_action(term(), Term::init()); }

std::string GroundAction::to_string() const {
  if (args.empty()) return symbol;
  std::string s = symbol + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
  return s + ")";
}

// ---- s-expressions ------------------------------------------------------

namespace {

struct Sx {
  bool is_list = false;
  std::string atom;
  std::vector<Sx> items;
  int line = 1, col = 1;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  std::vector<Sx> read_all() {
    std::vector<Sx> out;
    skip();
    while (i_ < s_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }
  Sx read() {
    Sx x;
    x.line = line_;
    x.col = col_;
    if (s_[i_] == ')') throw ParseError("unexpected ')'", line_, col_);
    if (s_[i_] == '(') {
      x.is_list = true;
      advance();
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError("unterminated list", x.line, x.col);
        if (s_[i_] == ')') {
          advance();
          return x;
        }
        x.items.push_back(read());
      }
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != ';') {
      x.atom += s_[i_];
      advance();
    }
    return x;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

[[noreturn]] void fail(const Sx& at, const std::string& msg) { throw ParseError(msg, at.line, at.col); }

const std::string& head(const Sx& x) {
  static const std::string none;
  if (!x.is_list || x.items.empty() || x.items[0].is_list) return none;
  return x.items[0].atom;
}

int parse_int(const Sx& x) {
  if (x.is_list) fail(x, "expected an arity");
  try {
    std::size_t pos = 0;
    int v = std::stoi(x.atom, &pos);
    if (pos != x.atom.size() || v < 0) fail(x, "bad arity '" + x.atom + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(x, "bad arity '" + x.atom + "'");
  }
}

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"and", "or", "not", "implies", "iff", "exists", "forall", "=", "true", "false"};
  return kw.count(s) > 0;
}

struct SentenceParser {
  const Vocabulary& vocab;
  Term sit;

  Term term(const Sx& x) const {
    if (x.is_list) fail(x, "function terms other than constants are not supported");
    if (vocab.is_constant(x.atom)) return Term::constant(x.atom);
    if (vocab.fluent_arity(x.atom) || vocab.rigid_arity(x.atom) || vocab.action_arity(x.atom))
      fail(x, "symbol '" + x.atom + "' used as a term");
    return Term::var(x.atom);
  }

  Formula atom(const Sx& at, const std::string& sym, const std::vector<Sx>& argx) const {
    std::vector<Term> args;
    for (const auto& a : argx) args.push_back(term(a));
    if (auto ar = vocab.fluent_arity(sym)) {
      if (*ar != static_cast<int>(args.size()))
        fail(at, "fluent " + sym + " expects " + std::to_string(*ar) + " arguments, got " + std::to_string(args.size()));
      return Formula::fluent(sym, std::move(args), sit);
    }
    if (auto ar = vocab.rigid_arity(sym)) {
      if (*ar != static_cast<int>(args.size()))
        fail(at, "predicate " + sym + " expects " + std::to_string(*ar) + " arguments, got " + std::to_string(args.size()));
      return Formula::rigid(sym, std::move(args));
    }
    fail(at, "unknown symbol '" + sym + "'");
  }

  Formula operator()(const Sx& x) const {
    if (!x.is_list) {
      if (x.atom == "true") return Formula::truth();
      if (x.atom == "false") return Formula::falsity();
      return atom(x, x.atom, {});
    }
    if (x.items.empty()) fail(x, "empty formula");
    const std::string& h = head(x);
    if (h.empty()) fail(x, "formula must start with a symbol");
    std::vector<Sx> rest(x.items.begin() + 1, x.items.end());
    auto arity = [&](std::size_t n) {
      if (rest.size() != n) fail(x, "'" + h + "' expects " + std::to_string(n) + " arguments");
    };
    if (h == "and" || h == "or") {
      std::vector<Formula> kids;
      for (const auto& r : rest) kids.push_back((*this)(r));
      return h == "and" ? Formula::conj(kids) : Formula::disj(kids);
    }
    if (h == "not") {
      arity(1);
      return Formula::negation((*this)(rest[0]));
    }
    if (h == "implies" || h == "iff") {
      arity(2);
      Formula p = (*this)(rest[0]), q = (*this)(rest[1]);
      return h == "implies" ? Formula::implies(p, q) : Formula::iff(p, q);
    }
    if (h == "exists" || h == "forall") {
      arity(2);
      std::vector<std::string> vars;
      if (rest[0].is_list) {
        for (const auto& v : rest[0].items) {
          if (v.is_list) fail(v, "expected a variable");
          vars.push_back(v.atom);
        }
      } else {
        vars.push_back(rest[0].atom);
      }
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vocab.is_constant(vars[i]) || is_keyword(vars[i])) fail(rest[0], "cannot bind '" + vars[i] + "'");
      Formula body = (*this)(rest[1]);
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = h == "exists" ? Formula::exists(*it, body) : Formula::forall(*it, body);
      return body;
    }
    if (h == "=") {
      arity(2);
      return Formula::equal(term(rest[0]), term(rest[1]));
    }
    if (h == "true" || h == "false") fail(x, "'" + h + "' takes no arguments");
    return atom(x, h, rest);
  }
};

void declare(Vocabulary& v, std::set<std::string>& seen, const Sx& at, const std::string& name) {
  if (name.empty() || is_keyword(name) || name == "s" || name == "S0" || name == "S_alpha")
    fail(at, "reserved name '" + name + "'");
  if (!seen.insert(name).second) fail(at, "symbol '" + name + "' declared twice");
  (void)v;
}

void parse_vocab(const Sx& x, Vocabulary& v, std::set<std::string>& seen) {
  for (std::size_t i = 1; i < x.items.size(); ++i) {
    const Sx& d = x.items[i];
    const std::string& h = head(d);
    if (h == "const") {
      for (std::size_t j = 1; j < d.items.size(); ++j) {
        if (d.items[j].is_list) fail(d.items[j], "expected a constant name");
        declare(v, seen, d.items[j], d.items[j].atom);
        v.constants.push_back(d.items[j].atom);
      }
      continue;
    }
    if (h != "fluent" && h != "rigid" && h != "action") fail(d, "expected (fluent|rigid|action NAME ARITY) or (const ...)");
    if (d.items.size() != 3 || d.items[1].is_list) fail(d, "expected (" + h + " NAME ARITY)");
    declare(v, seen, d.items[1], d.items[1].atom);
    Symbol s{d.items[1].atom, parse_int(d.items[2])};
    (h == "fluent" ? v.fluents : h == "rigid" ? v.rigids : v.actions).push_back(s);
  }
}

GammaEntry parse_entry(const Sx& x, const Vocabulary& v, const SSA& ssa) {
  if (x.items.size() != 5) fail(x, "expected (pos|neg ACTION (pattern...) (zvars...) body)");
  GammaEntry e;
  if (x.items[1].is_list) fail(x.items[1], "expected an action symbol");
  e.action = x.items[1].atom;
  auto ar = v.action_arity(e.action);
  if (!ar) fail(x.items[1], "unknown action symbol '" + e.action + "'");
  const Sx& pat = x.items[2];
  const Sx& zs = x.items[3];
  if (!pat.is_list) fail(pat, "expected an argument pattern list");
  if (!zs.is_list) fail(zs, "expected a variable list");
  if (static_cast<int>(pat.items.size()) != *ar)
    fail(pat, "action " + e.action + " expects " + std::to_string(*ar) + " arguments in its pattern");
  for (const auto& z : zs.items) {
    if (z.is_list || v.is_constant(z.atom)) fail(z, "expected a variable");
    if (std::find(ssa.params.begin(), ssa.params.end(), z.atom) != ssa.params.end())
      fail(z, "variable '" + z.atom + "' is already a fluent parameter");
    e.zvars.push_back(z.atom);
  }
  SentenceParser sp{v, situation_var()};
  for (const auto& p : pat.items) {
    Term t = sp.term(p);
    if (t.is_variable() && std::find(ssa.params.begin(), ssa.params.end(), t.name()) == ssa.params.end() &&
        std::find(e.zvars.begin(), e.zvars.end(), t.name()) == e.zvars.end())
      e.zvars.push_back(t.name());
    e.pattern.push_back(t);
  }
  e.body = sp(x.items[4]);
  for (const auto& fv : free_vars(e.body))
    if (std::find(ssa.params.begin(), ssa.params.end(), fv) == ssa.params.end() &&
        std::find(e.zvars.begin(), e.zvars.end(), fv) == e.zvars.end())
      fail(x.items[4], "free variable '" + fv + "' is neither a fluent parameter nor an existential variable");
  return e;
}

}  // namespace

void check_vocabulary(const Formula& f, const Vocabulary& vocab) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms) {
    std::optional<int> ar;
    if (a.op() == Op::Fluent || a.op() == Op::Lifted) ar = vocab.fluent_arity(a.symbol());
    if (a.op() == Op::Rigid) ar = vocab.rigid_arity(a.symbol());
    if (a.op() == Op::Fluent || a.op() == Op::Lifted || a.op() == Op::Rigid) {
      if (!ar) throw Error("undeclared symbol '" + a.symbol() + "'");
      if (*ar != static_cast<int>(a.args().size())) throw Error("arity mismatch for '" + a.symbol() + "'");
    }
    for (const auto& t : a.args())
      if (t.is_constant() && !vocab.is_constant(t.name())) throw Error("undeclared constant '" + t.name() + "'");
  }
}

Formula parse_sentence(const std::string& text, const Vocabulary& vocab) {
  auto xs = Reader(text).read_all();
  if (xs.size() != 1) throw ParseError("expected exactly one sentence", 1, 1);
  return close_universally(SentenceParser{vocab, Term::init()}(xs[0]));
}

BasicActionTheory parse_bat(const std::string& text) {
  auto forms = Reader(text).read_all();
  BasicActionTheory bat;
  std::set<std::string> seen;
  std::vector<const Sx*> inits, ssas;
  for (const auto& f : forms) {
    const std::string& h = head(f);
    if (h == "vocab")
      parse_vocab(f, bat.vocab, seen);
    else if (h == "init")
      inits.push_back(&f);
    else if (h == "ssa")
      ssas.push_back(&f);
    else
      fail(f, "expected (vocab ...), (init ...) or (ssa ...)");
  }
  SentenceParser init_parser{bat.vocab, Term::init()};
  for (const Sx* in : inits) {
    std::size_t start = 1;
    // Progressed files label their initial situation; it is informational.
    if (in->items.size() > 1 && !in->items[1].is_list && in->items[1].atom == "S_alpha") start = 2;
    for (std::size_t i = start; i < in->items.size(); ++i)
      bat.init.push_back(close_universally(init_parser(in->items[i])));
  }
  std::set<std::string> defined;
  std::vector<SSA> parsed;
  for (const Sx* sx : ssas) {
    if (sx->items.size() < 2 || sx->items[1].is_list) fail(*sx, "expected (ssa FLUENT ...)");
    SSA ssa;
    ssa.fluent = sx->items[1].atom;
    auto ar = bat.vocab.fluent_arity(ssa.fluent);
    if (!ar) fail(sx->items[1], "successor state axiom for undeclared fluent '" + ssa.fluent + "'");
    if (!defined.insert(ssa.fluent).second) fail(*sx, "duplicate successor state axiom for '" + ssa.fluent + "'");
    std::size_t i = 2;
    if (i < sx->items.size() && sx->items[i].is_list && head(sx->items[i]) != "pos" && head(sx->items[i]) != "neg") {
      for (const auto& p : sx->items[i].items) {
        if (p.is_list || bat.vocab.is_constant(p.atom)) fail(p, "expected a parameter variable");
        ssa.params.push_back(p.atom);
      }
      if (static_cast<int>(ssa.params.size()) != *ar) fail(sx->items[i], "parameter list does not match the arity of " + ssa.fluent);
      if (std::set<std::string>(ssa.params.begin(), ssa.params.end()).size() != ssa.params.size())
        fail(sx->items[i], "repeated parameter");
      ++i;
    } else {
      ssa.params = default_params(*ar);
    }
    for (; i < sx->items.size(); ++i) {
      const std::string& h = head(sx->items[i]);
      if (h != "pos" && h != "neg") fail(sx->items[i], "expected (pos ...) or (neg ...)");
      (h == "pos" ? ssa.pos : ssa.neg).push_back(parse_entry(sx->items[i], bat.vocab, ssa));
    }
    parsed.push_back(std::move(ssa));
  }
  for (const auto& f : bat.vocab.fluents) {
    auto it = std::find_if(parsed.begin(), parsed.end(), [&](const SSA& s) { return s.fluent == f.name; });
    if (it != parsed.end()) {
      bat.ssas.push_back(*it);
    } else {
      SSA frame;
      frame.fluent = f.name;
      frame.params = default_params(f.arity);
      bat.ssas.push_back(frame);
    }
  }
  return bat;
}

// ---- printing -----------------------------------------------------------

namespace {
std::string term_list(const std::vector<Term>& ts) {
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? " " : "") + ts[i].to_string();
  return s + ")";
}
std::string name_list(const std::vector<std::string>& ns) {
  std::string s = "(";
  for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? " " : "") + ns[i];
  return s + ")";
}
}  // namespace

std::string print_bat(const BasicActionTheory& bat, const PrintOptions& opts) {
  std::ostringstream os;
  for (const auto& h : opts.header) os << "; " << h << '\n';
  os << "(vocab";
  for (const auto& f : bat.vocab.fluents) os << "\n  (fluent " << f.name << ' ' << f.arity << ')';
  for (const auto& r : bat.vocab.rigids) os << "\n  (rigid " << r.name << ' ' << r.arity << ')';
  for (const auto& a : bat.vocab.actions) os << "\n  (action " << a.name << ' ' << a.arity << ')';
  if (!bat.vocab.constants.empty()) os << "\n  (const " << name_list(bat.vocab.constants).substr(1);
  os << ")\n\n(init";
  if (opts.init_label) os << ' ' << *opts.init_label;
  for (const auto& f : bat.init) os << "\n  " << to_sexpr(f);
  os << ")\n";
  for (const auto& s : bat.ssas) {
    os << "\n(ssa " << s.fluent << ' ' << name_list(s.params);
    auto entries = [&](const char* tag, const std::vector<GammaEntry>& es) {
      for (const auto& e : es) {
        std::vector<std::string> z;
        for (const auto& zv : e.zvars) {
          bool in_pattern = std::any_of(e.pattern.begin(), e.pattern.end(),
                                        [&](const Term& t) { return t.is_variable() && t.name() == zv; });
          if (!in_pattern) z.push_back(zv);
        }
        os << "\n  (" << tag << ' ' << e.action << ' ' << term_list(e.pattern) << ' ' << name_list(z) << ' '
           << to_sexpr(e.body) << ')';
      }
    };
    entries("pos", s.pos);
    entries("neg", s.neg);
    os << ")\n";
  }
  return os.str();
}

// ---- instantiation ------------------------------------------------------

namespace {
const std::vector<GammaEntry>& entries_of(const SSA& ssa, bool positive) { return positive ? ssa.pos : ssa.neg; }

Formula fluent_at(const SSA& ssa, const Term& sit) { return Formula::fluent(ssa.fluent, ssa.param_terms(), sit); }
}  // namespace

Formula instantiate_gamma(const SSA& ssa, bool positive, const GroundAction& alpha, const Term& sit, bool una) {
  std::vector<Formula> disjuncts;
  for (const auto& e : entries_of(ssa, positive)) {
    if (e.action != alpha.symbol) continue;
    std::map<std::string, Term> sigma;
    std::vector<Formula> parts;
    for (std::size_t j = 0; j < e.pattern.size(); ++j) {
      const Term& v = e.pattern[j];
      Term t = Term::constant(alpha.args[j]);
      if (v.is_constant()) {
        parts.push_back(Formula::equal(t, v));
      } else if (std::find(e.zvars.begin(), e.zvars.end(), v.name()) != e.zvars.end()) {
        auto it = sigma.find(v.name());
        if (it == sigma.end())
          sigma.emplace(v.name(), t);
        else
          parts.push_back(Formula::equal(it->second, t));
      } else {
        parts.push_back(Formula::equal(v, t));
      }
    }
    Formula body = substitute(substitute_vars(e.body, sigma), situation_var(), sit);
    parts.push_back(body);
    Formula d = Formula::conj(parts);
    for (auto it = e.zvars.rbegin(); it != e.zvars.rend(); ++it)
      if (!sigma.count(*it)) d = Formula::exists(*it, d);
    disjuncts.push_back(d);
  }
  return simplify(Formula::disj(disjuncts), una);
}

Formula instantiate_gamma_raw(const SSA& ssa, bool positive, const GroundAction& alpha, const Term& sit) {
  std::vector<Formula> disjuncts;
  for (const auto& e : entries_of(ssa, positive)) {
    if (e.action != alpha.symbol) continue;
    std::vector<Formula> parts;
    for (std::size_t j = 0; j < e.pattern.size(); ++j)
      parts.push_back(Formula::equal(Term::constant(alpha.args[j]), e.pattern[j]));
    parts.push_back(substitute(e.body, situation_var(), sit));
    Formula d = Formula::conj(parts);
    for (auto it = e.zvars.rbegin(); it != e.zvars.rend(); ++it) d = Formula::exists(*it, d);
    disjuncts.push_back(d);
  }
  return Formula::disj(disjuncts);
}

Formula ssa_rhs(const SSA& ssa, const GroundAction& alpha, bool una) {
  Formula gp = instantiate_gamma(ssa, true, alpha, Term::init(), una);
  Formula gm = instantiate_gamma(ssa, false, alpha, Term::init(), una);
  return simplify(Formula::disj({gp, Formula::conj({Formula::negation(gm), fluent_at(ssa, Term::init())})}), una);
}

Formula instantiate_ssa(const SSA& ssa, const GroundAction& alpha, bool una) {
  return close_universally(Formula::iff(fluent_at(ssa, alpha.successor()), ssa_rhs(ssa, alpha, una)));
}

Theory instantiate_ssas(const BasicActionTheory& bat, const GroundAction& alpha, bool una) {
  Theory out;
  for (const auto& s : bat.ssas) out.push_back(instantiate_ssa(s, alpha, una));
  return out;
}

std::array<Formula, 4> ssa_decompose(const SSA& ssa, const GroundAction& alpha, bool una) {
  Formula gp = instantiate_gamma(ssa, true, alpha, Term::init(), una);
  Formula gm = instantiate_gamma(ssa, false, alpha, Term::init(), una);
  Formula f0 = fluent_at(ssa, Term::init());
  Formula fa = fluent_at(ssa, alpha.successor());
  return {close_universally(Formula::implies(Formula::conj({Formula::negation(gp), fa}), f0)),
          close_universally(Formula::implies(f0, Formula::disj({gm, fa}))),
          close_universally(Formula::implies(gp, fa)),
          close_universally(Formula::implies(gm, Formula::negation(fa)))};
}

}  // namespace prog
