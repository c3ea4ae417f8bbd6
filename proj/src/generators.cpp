#include "progressor/generators.hpp"

#include <algorithm>
#include <sstream>

#include "progressor/oracle.hpp"

namespace prog::gen {

namespace {

std::vector<std::string> terms_for(const Shape& s, const std::vector<std::string>& scope) {
  std::vector<std::string> out = scope;
  out.insert(out.end(), s.constants.begin(), s.constants.end());
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

std::string nary(const char* op, std::vector<std::string> kids) {
  if (kids.size() == 1) return kids[0];
  return std::string("(") + op + " " + join(kids) + ")";
}

std::vector<std::string> free_names(const Shape& s, const std::vector<std::string>& scope) {
  std::vector<std::string> out;
  for (const auto& n : s.pool)
    if (std::find(scope.begin(), scope.end(), n) == scope.end()) out.push_back(n);
  return out;
}

std::string formula_at(Rng& rng, const Shape& s, const std::vector<std::string>& scope, int depth) {
  if (depth <= 0 || rng.chance(0.25)) return literal(rng, s, scope);
  int r = rng.uniform(0, 9);
  auto sub = [&](const std::vector<std::string>& sc) { return formula_at(rng, s, sc, depth - 1); };
  if (r >= 8 && s.quantifiers) {
    auto names = free_names(s, scope);
    if (!names.empty()) {
      std::string v = rng.pick(names);
      auto inner = scope;
      inner.push_back(v);
      return std::string("(") + (rng.chance(0.5) ? "exists" : "forall") + " (" + v + ") " + sub(inner) + ")";
    }
  }
  switch (r) {
    case 0: case 1: case 2: case 8: {
      std::vector<std::string> kids;
      for (int i = rng.uniform(2, 3); i > 0; --i) kids.push_back(sub(scope));
      return nary("and", kids);
    }
    case 3: case 4: case 5: case 9: {
      std::vector<std::string> kids;
      for (int i = rng.uniform(2, 3); i > 0; --i) kids.push_back(sub(scope));
      return nary("or", kids);
    }
    case 6:
      return "(not " + sub(scope) + ")";
    default:
      return std::string("(") + (rng.chance(0.25) ? "iff" : "implies") + " " + sub(scope) + " " + sub(scope) + ")";
  }
}

}  // namespace

std::string atom(Rng& rng, const Shape& s, const std::vector<std::string>& scope) {
  auto ts = terms_for(s, scope);
  if (s.equality && !ts.empty() && rng.chance(0.15)) return "(= " + rng.pick(ts) + " " + rng.pick(ts) + ")";
  std::vector<Symbol> usable;
  for (const auto& p : s.preds)
    if (p.arity == 0 || !ts.empty()) usable.push_back(p);
  if (usable.empty()) return rng.chance(0.5) ? "true" : "false";
  const Symbol& p = rng.pick(usable);
  std::string out = "(" + p.name;
  for (int i = 0; i < p.arity; ++i) out += " " + rng.pick(ts);
  return out + ")";
}

std::string literal(Rng& rng, const Shape& s, const std::vector<std::string>& scope) {
  std::string a = atom(rng, s, scope);
  return rng.chance(0.5) ? "(not " + a + ")" : a;
}

std::string clause(Rng& rng, const Shape& s, const std::vector<std::string>& scope, int width) {
  std::vector<std::string> lits;
  for (int i = 0; i < std::max(1, width); ++i) lits.push_back(literal(rng, s, scope));
  return nary("or", lits);
}

std::string formula(Rng& rng, const Shape& s, const std::vector<std::string>& scope) {
  return formula_at(rng, s, scope, s.depth);
}

std::string sentence(Rng& rng, const Shape& s) {
  std::vector<std::string> scope;
  int k = rng.uniform(0, std::min<int>(2, static_cast<int>(s.pool.size())));
  for (int i = 0; i < k; ++i) scope.push_back(s.pool[static_cast<std::size_t>(i)]);
  return formula(rng, s, scope);
}

std::vector<std::string> semidef_theory(Rng& rng, const Shape& free_of_p, const std::string& p,
                                        const std::vector<std::string>& args, int sufficient, int necessary,
                                        int rest) {
  std::string head = "(" + p;
  for (const auto& a : args) head += " " + a;
  head += ")";
  std::vector<std::string> out;
  for (int i = 0; i < sufficient; ++i) out.push_back("(implies " + formula(rng, free_of_p, args) + " " + head + ")");
  for (int i = 0; i < necessary; ++i) {
    std::string phi = formula(rng, free_of_p, args);
    out.push_back(rng.chance(0.5) ? "(implies " + head + " " + phi + ")" : "(or (not " + head + ") " + phi + ")");
  }
  for (int i = 0; i < rest; ++i) out.push_back(sentence(rng, free_of_p));
  std::shuffle(out.begin(), out.end(), rng.engine());
  return out;
}

std::string goodform(Rng& rng, const Shape& free_of_p, const std::string& p, const std::vector<std::string>& t,
                     const std::vector<std::string>& scope) {
  std::string lit = "(" + p;
  for (const auto& a : t) lit += " " + a;
  lit += ")";
  // at least one of the two P clauses
  int which = rng.uniform(0, 3);  // 0: both, 1: positive, 2: negative, 3: both
  std::vector<std::string> parts;
  auto cond = [&] { return rng.chance(0.15) ? std::string() : formula(rng, free_of_p, scope); };
  if (which != 2) {
    std::string c = cond();
    parts.push_back(c.empty() ? lit : "(or " + c + " " + lit + ")");
  }
  if (which != 1) {
    std::string c = cond();
    parts.push_back(c.empty() ? "(not " + lit + ")" : "(or " + c + " (not " + lit + "))");
  }
  if (rng.chance(0.6)) parts.push_back(formula(rng, free_of_p, scope));
  std::shuffle(parts.begin(), parts.end(), rng.engine());
  return nary("and", parts);
}

Formula query(Rng& rng, const Vocabulary& vocab, std::size_t max_size) {
  Shape s;
  s.preds = vocab.fluents;
  s.preds.insert(s.preds.end(), vocab.rigids.begin(), vocab.rigids.end());
  s.constants = vocab.constants;
  s.pool = {"x", "y"};
  s.depth = 2;
  for (;;) {
    Formula f = parse_sentence(sentence(rng, s), vocab);
    if (size(f) <= max_size) return f;
  }
}

// ---- BATs ---------------------------------------------------------------

namespace {

struct Draft {
  std::vector<std::string> le, nle;  // fluent names
  std::vector<std::string> constants;
  std::vector<std::string> init;
  std::vector<std::string> ssas;
};

Shape body_shape(const BatSpec& spec, const std::vector<Symbol>& preds, const std::vector<std::string>& constants,
                 bool with_z) {
  Shape s;
  s.preds = preds;
  s.constants = constants;
  s.depth = spec.depth;
  if (spec.fragment == Fragment::UTC) s.quantifiers = false;
  if (spec.fragment == Fragment::FO2) s.pool = with_z ? std::vector<std::string>{} : std::vector<std::string>{"y"};
  else s.pool = {"y", "w"};
  return s;
}

Shape init_shape(const BatSpec& spec, const std::vector<Symbol>& preds, const std::vector<std::string>& constants) {
  Shape s;
  s.preds = preds;
  s.constants = constants;
  s.depth = 2;
  s.pool = spec.fragment == Fragment::FO2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x", "y", "w"};
  s.quantifiers = spec.fragment != Fragment::UTC;
  return s;
}

std::vector<Symbol> unary(const std::vector<std::string>& names) {
  std::vector<Symbol> out;
  for (const auto& n : names) out.push_back({n, 1});
  return out;
}

// Positive and negative bodies that can never hold together.
std::pair<std::string, std::string> split_bodies(Rng& rng, const std::string& plus, const std::string& minus,
                                                 const Shape& guard_shape, const std::vector<std::string>& scope) {
  std::string phi = formula(rng, guard_shape, scope);
  return {"(and " + phi + " " + plus + ")", "(and (not " + phi + ") " + minus + ")"};
}

std::string entry(const char* sign, const std::string& pattern, const std::string& body) {
  return std::string("(") + sign + " act (" + pattern + ") () " + body + ")";
}

std::string draft_text(const Draft& d) {
  std::ostringstream os;
  os << "(vocab";
  for (const auto& f : d.le) os << " (fluent " << f << " 1)";
  for (const auto& f : d.nle) os << " (fluent " << f << " 1)";
  os << " (rigid R 1) (rigid Q 1) (action act 1) (action noop 0) (const " << join(d.constants) << "))\n(init";
  for (const auto& s : d.init) os << "\n  " << s;
  os << ")\n";
  for (const auto& s : d.ssas) os << s << "\n";
  return os.str();
}

Draft draft(Rng& rng, const BatSpec& spec) {
  Draft d;
  d.constants = spec.constants >= 2 ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"a"};
  int nf = std::max(2, spec.fluents);
  int nle = 0;
  if (spec.cls == BatClass::NR) nle = rng.uniform(1, nf);
  if (spec.cls == BatClass::AC) nle = rng.uniform(2, nf);
  for (int i = 0; i < nf - nle; ++i) d.le.push_back("L" + std::to_string(i + 1));
  for (int i = 0; i < nle; ++i) d.nle.push_back("N" + std::to_string(i + 1));

  std::vector<Symbol> rigids = {{"R", 1}, {"Q", 1}};
  std::vector<Symbol> le_preds = unary(d.le);
  le_preds.insert(le_preds.end(), rigids.begin(), rigids.end());
  std::vector<Symbol> all = le_preds;
  for (const auto& s : unary(d.nle)) all.push_back(s);
  // effect conditions of LE fluents may read NLE fluents only in the LE class
  // where there are none
  Shape le_body = body_shape(spec, le_preds, d.constants, false);
  Shape nle_body = body_shape(spec, le_preds, d.constants, true);
  Shape guard = nle_body;
  guard.depth = 0;

  for (const auto& f : d.le) {
    std::ostringstream os;
    os << "(ssa " << f << " (x)";
    int signs = rng.uniform(0, 3);  // 0: none live, 1: pos, 2: neg, 3: both
    if (signs == 3) {
      auto [p, m] = split_bodies(rng, formula(rng, le_body, {"x"}), formula(rng, le_body, {"x"}), le_body, {"x"});
      os << "\n  " << entry("pos", "x", p) << "\n  " << entry("neg", "x", m);
    } else if (signs != 0) {
      os << "\n  " << entry(signs == 1 ? "pos" : "neg", "x", formula(rng, le_body, {"x"}));
    }
    if (rng.chance(0.4)) {
      Shape any = body_shape(spec, all, d.constants, false);
      os << "\n  (" << (rng.chance(0.5) ? "pos" : "neg") << " noop () () " << formula(rng, any, {"x"}) << ")";
    }
    os << ")";
    d.ssas.push_back(os.str());
  }

  for (std::size_t i = 0; i < d.nle.size(); ++i) {
    const std::string& f = d.nle[i];
    std::vector<std::string> later(d.nle.begin() + static_cast<long>(i) + 1, d.nle.end());
    auto body = [&](bool force_target) {
      if (spec.cls != BatClass::AC || later.empty() || (!force_target && rng.chance(0.4)))
        return formula(rng, nle_body, {"x", "z"});
      std::string target = force_target ? later.front() : rng.pick(later);
      std::vector<std::string> ts = {"x", "z", d.constants.front()};
      return goodform(rng, nle_body, target, {rng.pick(ts)}, {"x", "z"});
    };
    std::ostringstream os;
    os << "(ssa " << f << " (x)";
    bool force = spec.cls == BatClass::AC && i == 0;
    int signs = rng.uniform(1, 3);
    if (signs == 3) {
      bool pos_forced = force && rng.chance(0.5);
      auto [p, m] = split_bodies(rng, body(pos_forced), body(force && !pos_forced), guard, {"x", "z"});
      os << "\n  " << entry("pos", "z", p) << "\n  " << entry("neg", "z", m);
    } else {
      os << "\n  " << entry(signs == 1 ? "pos" : "neg", "z", body(force));
    }
    os << ")";
    d.ssas.push_back(os.str());
  }

  Shape free_init = init_shape(spec, d.nle.empty() ? all : le_preds, d.constants);
  for (int i = 0; i < spec.init; ++i) {
    if (spec.fragment == Fragment::UTC) d.init.push_back(clause(rng, free_init, {"x", "y"}, rng.uniform(1, 3)));
    else d.init.push_back(sentence(rng, free_init));
  }
  Shape cond = free_init;
  cond.pool = spec.fragment == Fragment::FO2 ? std::vector<std::string>{"y"} : std::vector<std::string>{"y", "w"};
  cond.depth = 1;
  for (const auto& f : d.nle)
    for (const auto& s : semidef_theory(rng, cond, f, {"x"}, rng.uniform(0, 2), rng.uniform(0, 2), 0))
      d.init.push_back(s);
  std::shuffle(d.init.begin(), d.init.end(), rng.engine());
  return d;
}

bool acceptable(const GeneratedBat& g, const BatSpec& spec) {
  for (bool una : {true, false}) {
    Verdict v = check_bat_class(g.bat, g.alpha, una);
    if (v.bat_class != spec.cls) return false;
    if (spec.fragment == Fragment::FO2 && !v.fo2) return false;
    if (spec.fragment == Fragment::UTC && !v.utc) return false;
    OracleOptions oo;
    oo.una = una;
    if (!check_consistency(g.bat, g.alpha, 2, oo).ok) return false;
    if (entails(g.bat.init, Formula::falsity(), 2, oo).ok) return false;
  }
  return true;
}

}  // namespace

GeneratedBat random_bat(Rng& rng, const BatSpec& spec) {
  GeneratedBat g;
  g.expected = spec.cls;
  for (int attempt = 1;; ++attempt) {
    Draft d = draft(rng, spec);
    g.text = draft_text(d);
    g.action = "act(" + d.constants.front() + ")";
    g.bat = parse_bat(g.text);
    g.alpha = GroundAction::parse(g.action, g.bat.vocab);
    g.attempts = attempt;
    if (acceptable(g, spec)) return g;
    if (attempt >= 2000) throw Error(std::string("could not draw a ") + to_string(spec.cls) + " theory");
  }
}

}  // namespace prog::gen
