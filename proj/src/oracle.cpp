#include "progressor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

namespace prog {

// ---- signatures -----------------------------------------------------------

std::string PredKey::to_string() const {
  if (kind == Op::Fluent) return symbol + (depth == 0 ? "@S0" : depth == 1 ? "@S_alpha" : "@" + std::to_string(depth));
  return symbol;
}

int Signature::pred_index(const PredKey& k) const {
  auto it = std::lower_bound(preds.begin(), preds.end(), k);
  if (it == preds.end() || !(*it == k)) return -1;
  return static_cast<int>(it - preds.begin());
}

int Signature::constant_index(const std::string& c) const {
  auto it = std::lower_bound(constants.begin(), constants.end(), c);
  if (it == constants.end() || *it != c) return -1;
  return static_cast<int>(it - constants.begin());
}

void Signature::add(const PredKey& k) {
  auto it = std::lower_bound(preds.begin(), preds.end(), k);
  if (it != preds.end() && *it == k) return;
  for (const auto& p : preds)
    if (p.kind == k.kind && p.symbol == k.symbol && p.depth == k.depth)
      throw SortError("predicate " + k.to_string() + " used with two arities");
  preds.insert(it, k);
}

void Signature::add_constant(const std::string& c) {
  auto it = std::lower_bound(constants.begin(), constants.end(), c);
  if (it != constants.end() && *it == c) return;
  constants.insert(it, c);
}

void Signature::merge(const Signature& other) {
  for (const auto& p : other.preds) add(p);
  for (const auto& c : other.constants) add_constant(c);
}

namespace {

void add_terms(Signature& sig, const std::vector<Term>& args) {
  for (const auto& t : args) {
    if (t.sort() != Sort::Object) throw SortError("oracle: non-object argument " + t.to_string());
    if (t.is_constant()) sig.add_constant(t.name());
    else if (!t.is_variable()) throw SortError("oracle: unsupported term " + t.to_string());
  }
}

std::optional<PredKey> key_of(const Formula& atom) {
  int arity = static_cast<int>(atom.args().size());
  switch (atom.op()) {
    case Op::Rigid:
      return PredKey{Op::Rigid, atom.symbol(), 0, arity};
    case Op::Lifted:
      return PredKey{Op::Lifted, atom.symbol(), 0, arity};
    case Op::Fluent: {
      int d = atom.situation().depth();
      if (d < 0) throw Error("oracle: fluent " + atom.symbol() + " at a situation variable");
      if (d > 1) throw Error("oracle: fluent " + atom.symbol() + " at a situation deeper than S_alpha");
      return PredKey{Op::Fluent, atom.symbol(), d, arity};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

Signature signature_of(const Formula& f) {
  Signature sig;
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (const auto& a : atoms) {
    if (a.is_true() || a.is_false()) continue;
    add_terms(sig, a.args());
    if (auto k = key_of(a)) sig.add(*k);
  }
  return sig;
}

Signature signature_of(const Theory& t) {
  Signature sig;
  for (const auto& f : t) sig.merge(signature_of(f));
  return sig;
}

// ---- structures -----------------------------------------------------------

std::size_t cell(const std::vector<int>& args, int n) {
  std::size_t c = 0, mul = 1;
  for (int a : args) {
    c += static_cast<std::size_t>(a) * mul;
    mul *= static_cast<std::size_t>(n);
  }
  return c;
}

bool Structure::holds(std::size_t pred, const std::vector<int>& args) const { return tables.at(pred).at(cell(args, n)); }

namespace {

std::size_t cells_of(int arity, int n) {
  std::size_t c = 1;
  for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(n);
  return c;
}

std::vector<int> decode(std::size_t c, int arity, int n) {
  std::vector<int> out;
  for (int i = 0; i < arity; ++i) {
    out.push_back(static_cast<int>(c % static_cast<std::size_t>(n)));
    c /= static_cast<std::size_t>(n);
  }
  return out;
}

std::string print_structure(const Structure& m, const Signature& sig, const std::vector<int>& preds) {
  std::ostringstream os;
  os << "domain {";
  for (int i = 0; i < m.n; ++i) os << (i ? "," : "") << i;
  os << "}";
  for (std::size_t i = 0; i < sig.constants.size(); ++i) os << "; " << sig.constants[i] << "=" << m.consts[i];
  for (int p : preds) {
    const auto& k = sig.preds[p];
    os << "; " << k.to_string();
    if (k.arity == 0) {
      os << (m.tables[p][0] ? " true" : " false");
      continue;
    }
    os << " {";
    bool first = true;
    for (std::size_t c = 0; c < m.tables[p].size(); ++c) {
      if (!m.tables[p][c]) continue;
      auto t = decode(c, k.arity, m.n);
      os << (first ? "" : " ");
      first = false;
      if (k.arity == 1) {
        os << t[0];
      } else {
        os << "(";
        for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
        os << ")";
      }
    }
    os << "}";
  }
  return os.str();
}

std::vector<int> all_preds(const Signature& sig) {
  std::vector<int> out;
  for (std::size_t i = 0; i < sig.preds.size(); ++i) out.push_back(static_cast<int>(i));
  return out;
}

Structure blank(const Signature& sig, int n) {
  Structure m;
  m.n = n;
  m.consts.assign(sig.constants.size(), 0);
  for (const auto& k : sig.preds) m.tables.emplace_back(cells_of(k.arity, n), 0);
  return m;
}

// Every assignment to the cells of `preds`, starting from all false. The
// cells are all false again after a complete pass.
bool for_tables(Structure& m, const std::vector<int>& preds, const std::function<bool()>& fn) {
  std::vector<uint8_t*> cells;
  for (int p : preds)
    for (auto& b : m.tables[p]) {
      b = 0;
      cells.push_back(&b);
    }
  while (true) {
    if (!fn()) return false;
    std::size_t i = 0;
    for (; i < cells.size(); ++i) {
      if (*cells[i]) {
        *cells[i] = 0;
      } else {
        *cells[i] = 1;
        break;
      }
    }
    if (i == cells.size()) return true;
  }
}

bool for_consts(std::size_t k, int n, bool una, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> cm(k, 0);
  while (true) {
    bool ok = true;
    if (una) {
      std::vector<int> seen = cm;
      std::sort(seen.begin(), seen.end());
      ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    }
    if (ok && !fn(cm)) return false;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++cm[i] < n) break;
      cm[i] = 0;
    }
    if (i == k) return true;
  }
}

double const_count(std::size_t k, int n, bool una) {
  double c = 1;
  for (std::size_t i = 0; i < k; ++i) c *= una ? std::max(0.0, static_cast<double>(n) - static_cast<double>(i)) : n;
  return c;
}

double table_count(const Signature& sig, const std::vector<int>& preds, int n) {
  double bits = 0;
  for (int p : preds) bits += static_cast<double>(cells_of(sig.preds[p].arity, n));
  return std::pow(2.0, bits);
}

void randomize(Structure& m, const std::vector<int>& preds, bool una, std::mt19937_64& rng) {
  if (una) {
    std::vector<int> elems(m.n);
    for (int i = 0; i < m.n; ++i) elems[i] = i;
    std::shuffle(elems.begin(), elems.end(), rng);
    for (std::size_t i = 0; i < m.consts.size(); ++i) m.consts[i] = elems[i];
  } else {
    for (auto& c : m.consts) c = static_cast<int>(rng() % static_cast<std::uint64_t>(m.n));
  }
  for (int p : preds)
    for (auto& b : m.tables[p]) b = static_cast<uint8_t>(rng() & 1);
}

// Structures over `outer` (the other tables are left to the callback), each
// of which costs `inner` further evaluations. Returns true if sampled.
bool outer_loop(const Signature& sig, int n, const std::vector<int>& outer, double inner, const OracleOptions& opts,
                const std::function<bool(Structure&)>& fn) {
  if (opts.una && sig.constants.size() > static_cast<std::size_t>(n)) return false;  // no structures
  double count = const_count(sig.constants.size(), n, opts.una) * table_count(sig, outer, n) * inner;
  Structure m = blank(sig, n);
  if (count <= opts.budget) {
    for_consts(sig.constants.size(), n, opts.una, [&](const std::vector<int>& cm) {
      m.consts = cm;
      return for_tables(m, outer, [&] { return fn(m); });
    });
    return false;
  }
  if (opts.samples == 0) {
    std::ostringstream os;
    os << "enumeration budget exceeded at domain size " << n << ": about " << count << " candidate structures";
    throw BudgetError(os.str(), count);
  }
  std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(n));
  for (std::size_t i = 0; i < opts.samples; ++i) {
    randomize(m, outer, opts.una, rng);
    if (!fn(m)) break;
  }
  return true;
}

Formula push_quantifier(bool forall, const std::string& x, const Formula& b);

bool free_in(const std::string& x, const Formula& f) {
  auto fv = free_vars(f);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}

Formula push_quantifier(bool forall, const std::string& x, const Formula& b) {
  if (!free_in(x, b)) return b;
  auto make = [&](const Formula& body) { return forall ? Formula::forall(x, body) : Formula::exists(x, body); };
  bool distributes = forall ? b.op() == Op::And : b.op() == Op::Or;
  if (distributes) {
    std::vector<Formula> kids;
    for (const auto& k : b.children()) kids.push_back(push_quantifier(forall, x, k));
    return forall ? Formula::conj(kids) : Formula::disj(kids);
  }
  bool splits = forall ? b.op() == Op::Or : b.op() == Op::And;
  if (splits) {
    std::vector<Formula> with, without;
    for (const auto& k : b.children()) (free_in(x, k) ? with : without).push_back(k);
    Formula inner = with.size() == 1 ? push_quantifier(forall, x, with[0])
                                     : make(forall ? Formula::disj(with) : Formula::conj(with));
    if (without.empty()) return inner;
    without.push_back(inner);
    return forall ? Formula::disj(without) : Formula::conj(without);
  }
  return make(b);
}

Formula miniscope_rec(const Formula& f) {
  switch (f.op()) {
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(miniscope_rec(k));
      return f.op() == Op::And ? Formula::conj(kids) : Formula::disj(kids);
    }
    case Op::Exists:
    case Op::Forall:
      return push_quantifier(f.op() == Op::Forall, f.symbol(), miniscope_rec(f.body()));
    default:
      return f;
  }
}

}  // namespace

std::string Structure::to_string(const Signature& sig) const { return print_structure(*this, sig, all_preds(sig)); }

Formula miniscope(const Formula& f) { return miniscope_rec(nnf(desugar(f))); }

// ---- compiled evaluation ---------------------------------------------------

namespace {

struct Builder {
  const Signature& sig;
  std::vector<Compiled::Node>& nodes;
  int& slots;

  int term(const Term& t, const std::map<std::string, int>& scope) {
    if (t.is_variable()) {
      auto it = scope.find(t.name());
      if (it == scope.end()) throw Error("oracle: unbound variable " + t.name());
      return it->second;
    }
    if (t.is_constant()) return -sig.constant_index(t.name()) - 1;
    throw SortError("oracle: unsupported term " + t.to_string());
  }

  int build(const Formula& f, std::map<std::string, int>& scope) {
    Compiled::Node node;
    switch (f.op()) {
      case Op::True:
        node.kind = Compiled::Node::True;
        break;
      case Op::False:
        node.kind = Compiled::Node::False;
        break;
      case Op::Equal:
        node.kind = Compiled::Node::Eq;
        for (const auto& t : f.args()) node.args.push_back(term(t, scope));
        break;
      case Op::Rigid:
      case Op::Lifted:
      case Op::Fluent: {
        node.kind = Compiled::Node::Atom;
        node.pred = sig.pred_index(*key_of(f));
        if (node.pred < 0) throw Error("oracle: predicate " + key_of(f)->to_string() + " missing from the signature");
        for (const auto& t : f.args()) node.args.push_back(term(t, scope));
        break;
      }
      case Op::Not:
        node.kind = Compiled::Node::Not;
        node.kids.push_back(build(f.body(), scope));
        break;
      case Op::And:
      case Op::Or:
        node.kind = f.op() == Op::And ? Compiled::Node::And : Compiled::Node::Or;
        for (const auto& k : f.children()) node.kids.push_back(build(k, scope));
        break;
      case Op::Exists:
      case Op::Forall: {
        node.kind = f.op() == Op::Exists ? Compiled::Node::Exists : Compiled::Node::Forall;
        node.slot = slots++;
        std::optional<int> saved;
        if (auto it = scope.find(f.symbol()); it != scope.end()) saved = it->second;
        scope[f.symbol()] = node.slot;
        node.kids.push_back(build(f.body(), scope));
        if (saved) scope[f.symbol()] = *saved;
        else scope.erase(f.symbol());
        break;
      }
      default:
        throw Error("oracle: unexpected connective");
    }
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }
};

}  // namespace

Compiled::Compiled(const Formula& f, const Signature& sig, const std::vector<std::string>& params) {
  std::map<std::string, int> scope;
  for (const auto& p : params) scope[p] = slots_++;
  params_ = params.size();
  Formula g = f;
  auto fv = free_vars(g);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    if (!scope.count(*it)) g = Formula::forall(*it, g);
  Builder b{sig, nodes_, slots_};
  root_ = b.build(miniscope(g), scope);
}

bool Compiled::eval(const Structure& m) const {
  std::vector<int> env(slots_, 0);
  return eval(root_, m, env);
}

bool Compiled::eval(const Structure& m, const std::vector<int>& args) const {
  std::vector<int> env(slots_, 0);
  for (std::size_t i = 0; i < params_ && i < args.size(); ++i) env[i] = args[i];
  return eval(root_, m, env);
}

bool Compiled::eval(int i, const Structure& m, std::vector<int>& env) const {
  const Node& nd = nodes_[i];
  auto val = [&](int a) { return a >= 0 ? env[a] : m.consts[-a - 1]; };
  switch (nd.kind) {
    case Node::True:
      return true;
    case Node::False:
      return false;
    case Node::Eq:
      return val(nd.args[0]) == val(nd.args[1]);
    case Node::Atom: {
      std::size_t c = 0, mul = 1;
      for (int a : nd.args) {
        c += static_cast<std::size_t>(val(a)) * mul;
        mul *= static_cast<std::size_t>(m.n);
      }
      return m.tables[nd.pred][c];
    }
    case Node::Not:
      return !eval(nd.kids[0], m, env);
    case Node::And:
      for (int k : nd.kids)
        if (!eval(k, m, env)) return false;
      return true;
    case Node::Or:
      for (int k : nd.kids)
        if (eval(k, m, env)) return true;
      return false;
    case Node::Exists:
      for (int d = 0; d < m.n; ++d) {
        env[nd.slot] = d;
        if (eval(nd.kids[0], m, env)) return true;
      }
      return false;
    case Node::Forall:
      for (int d = 0; d < m.n; ++d) {
        env[nd.slot] = d;
        if (!eval(nd.kids[0], m, env)) return false;
      }
      return true;
  }
  return false;
}

// ---- enumeration -----------------------------------------------------------

double structure_count(const Signature& sig, int n, bool una) {
  return const_count(sig.constants.size(), n, una) * table_count(sig, all_preds(sig), n);
}

bool enumerate(const Signature& sig, int n, const OracleOptions& opts,
               const std::function<bool(const Structure&)>& fn) {
  return outer_loop(sig, n, all_preds(sig), 1.0, opts, [&](Structure& m) { return fn(m); });
}

ModelSet models(const Theory& t, const Signature& sig, int n, const OracleOptions& opts) {
  if (n < 1) throw PreconditionError("domain size must be at least 1");
  ModelSet out{n, opts.una, sig, {}};
  Compiled c(Formula::conj(t), sig);
  enumerate(sig, n, opts, [&](const Structure& m) {
    if (c.eval(m)) out.models.push_back(m);
    return true;
  });
  return out;
}

ModelSet models(const Theory& t, int n, const OracleOptions& opts) { return models(t, signature_of(t), n, opts); }

// ---- checks ----------------------------------------------------------------

OracleVerdict equivalent(const Theory& a, const Theory& b, int n_max, const OracleOptions& opts) {
  Signature sig = signature_of(a);
  sig.merge(signature_of(b));
  Compiled ca(Formula::conj(a), sig), cb(Formula::conj(b), sig);
  OracleVerdict v;
  for (int n = 1; n <= n_max && v.ok; ++n) {
    v.probabilistic |= enumerate(sig, n, opts, [&](const Structure& m) {
      ++v.checked;
      bool x = ca.eval(m), y = cb.eval(m);
      if (x == y) return true;
      v.ok = false;
      v.n = n;
      v.witness = m.to_string(sig);
      v.detail = x ? "model of the first theory only" : "model of the second theory only";
      return false;
    });
  }
  return v;
}

OracleVerdict equivalent(const Formula& a, const Formula& b, int n_max, const OracleOptions& opts) {
  return equivalent(Theory{a}, Theory{b}, n_max, opts);
}

OracleVerdict entails(const Theory& t, const Formula& phi, int n_max, const OracleOptions& opts) {
  Signature sig = signature_of(t);
  sig.merge(signature_of(phi));
  Compiled ct(Formula::conj(t), sig), cp(phi, sig);
  OracleVerdict v;
  for (int n = 1; n <= n_max && v.ok; ++n) {
    v.probabilistic |= enumerate(sig, n, opts, [&](const Structure& m) {
      ++v.checked;
      if (!ct.eval(m) || cp.eval(m)) return true;
      v.ok = false;
      v.n = n;
      v.witness = m.to_string(sig);
      v.detail = "model of the theory falsifying the query";
      return false;
    });
  }
  return v;
}

OracleVerdict check_forgetting(const Theory& t, const std::vector<PredKey>& hidden, const Theory& result, int n_max,
                               const OracleOptions& opts) {
  Signature sig = signature_of(t);
  Signature rs = signature_of(result);
  for (const auto& h : hidden) {
    if (rs.pred_index(h) >= 0) {
      OracleVerdict v;
      v.ok = false;
      v.detail = "result still mentions " + h.to_string();
      return v;
    }
    sig.add(h);
  }
  sig.merge(rs);
  std::vector<int> outer, inner;
  for (std::size_t i = 0; i < sig.preds.size(); ++i) {
    bool is_hidden = std::find(hidden.begin(), hidden.end(), sig.preds[i]) != hidden.end();
    (is_hidden ? inner : outer).push_back(static_cast<int>(i));
  }
  Compiled ct(Formula::conj(t), sig), cr(Formula::conj(result), sig);
  OracleVerdict v;
  for (int n = 1; n <= n_max && v.ok; ++n) {
    v.probabilistic |= outer_loop(sig, n, outer, table_count(sig, inner, n), opts, [&](Structure& m) {
      ++v.checked;
      bool r = cr.eval(m);
      bool e = false;
      for_tables(m, inner, [&] {
        if (ct.eval(m)) e = true;
        return !e;
      });
      if (r == e) return true;
      v.ok = false;
      v.n = n;
      v.witness = print_structure(m, sig, outer);
      v.detail = r ? "result holds but no extension satisfies the theory" : "an extension satisfies the theory but the result fails";
      return false;
    });
  }
  return v;
}

OracleVerdict check_atom_forgetting(const Formula& phi, const Formula& atom, const Formula& result, int n_max,
                                    const OracleOptions& opts) {
  if (!key_of(atom)) throw PreconditionError("not a predicate atom: " + to_infix(atom));
  for (const auto& t : atom.args())
    if (!t.is_constant()) throw PreconditionError("atom must be ground: " + to_infix(atom));
  Signature sig = signature_of(phi);
  sig.merge(signature_of(atom));
  sig.merge(signature_of(result));
  int p = sig.pred_index(*key_of(atom));
  Compiled cphi(phi, sig), cres(result, sig);
  OracleVerdict v;
  for (int n = 1; n <= n_max && v.ok; ++n) {
    v.probabilistic |= outer_loop(sig, n, all_preds(sig), 2.0, opts, [&](Structure& m) {
      ++v.checked;
      std::vector<int> args;
      for (const auto& t : atom.args()) args.push_back(m.consts[sig.constant_index(t.name())]);
      std::size_t c = cell(args, n);
      bool e = cphi.eval(m);
      if (!e) {
        m.tables[p][c] ^= 1;
        e = cphi.eval(m);
        m.tables[p][c] ^= 1;
      }
      bool r = cres.eval(m);
      if (r == e) return true;
      v.ok = false;
      v.n = n;
      v.witness = m.to_string(sig);
      v.detail = r ? "result holds but neither value of the atom satisfies phi" : "phi is satisfiable by changing the atom but the result fails";
      return false;
    });
  }
  return v;
}

namespace {

struct SsaEval {
  int target;  // S_alpha table
  int arity;
  Compiled rhs;
};

std::vector<SsaEval> successor_tables(const BasicActionTheory& bat, const GroundAction& alpha, const Signature& sig) {
  std::vector<SsaEval> out;
  for (const auto& f : bat.vocab.fluents) {
    const SSA& ssa = bat.ssa(f.name);
    Formula gp = instantiate_gamma_raw(ssa, true, alpha, Term::init());
    Formula gm = instantiate_gamma_raw(ssa, false, alpha, Term::init());
    Formula rhs = Formula::disj(
        {gp, Formula::conj({Formula::fluent(f.name, ssa.param_terms(), Term::init()), Formula::negation(gm)})});
    out.push_back({sig.pred_index({Op::Fluent, f.name, 1, f.arity}), f.arity, Compiled(rhs, sig, ssa.params)});
  }
  return out;
}

Signature progression_signature(const BasicActionTheory& bat, const GroundAction& alpha) {
  Signature sig;
  for (const auto& f : bat.vocab.fluents) {
    sig.add({Op::Fluent, f.name, 0, f.arity});
    sig.add({Op::Fluent, f.name, 1, f.arity});
  }
  for (const auto& r : bat.vocab.rigids) sig.add({Op::Rigid, r.name, 0, r.arity});
  for (const auto& c : bat.vocab.constants) sig.add_constant(c);
  sig.merge(signature_of(bat.init));
  for (const auto& f : bat.vocab.fluents) {
    const SSA& ssa = bat.ssa(f.name);
    sig.merge(signature_of(instantiate_gamma_raw(ssa, true, alpha, Term::init())));
    sig.merge(signature_of(instantiate_gamma_raw(ssa, false, alpha, Term::init())));
  }
  return sig;
}

}  // namespace

OracleVerdict check_progression(const BasicActionTheory& bat, const GroundAction& alpha, const Theory& result,
                                int n_max, const OracleOptions& opts) {
  OracleVerdict v;
  Signature sig = progression_signature(bat, alpha);
  Signature rs = signature_of(result);
  for (const auto& k : rs.preds) {
    if ((k.kind == Op::Fluent && k.depth == 0) || k.kind == Op::Lifted) {
      v.ok = false;
      v.detail = "result is not uniform in S_alpha: mentions " + k.to_string();
      return v;
    }
  }
  sig.merge(rs);
  std::vector<int> rigid, s0, sa;
  for (std::size_t i = 0; i < sig.preds.size(); ++i) {
    const auto& k = sig.preds[i];
    if (k.kind != Op::Fluent) rigid.push_back(static_cast<int>(i));
    else (k.depth == 0 ? s0 : sa).push_back(static_cast<int>(i));
  }
  std::vector<int> inner = rigid, outer = rigid;
  inner.insert(inner.end(), s0.begin(), s0.end());
  outer.insert(outer.end(), sa.begin(), sa.end());

  Compiled init(Formula::conj(bat.init), sig), res(Formula::conj(result), sig);
  auto ssas = successor_tables(bat, alpha, sig);
  auto fill = [&](Structure& m) {
    for (auto& s : ssas)
      for (std::size_t c = 0; c < m.tables[s.target].size(); ++c)
        m.tables[s.target][c] = s.rhs.eval(m, decode(c, s.arity, m.n));
  };
  auto key = [&](const Structure& m) {
    std::string k;
    for (int p : outer) k.append(m.tables[p].begin(), m.tables[p].end());
    return k;
  };

  for (int n = 1; n <= n_max && v.ok; ++n) {
    if (opts.una && sig.constants.size() > static_cast<std::size_t>(n)) continue;
    double consts = const_count(sig.constants.size(), n, opts.una);
    double exact = consts * (table_count(sig, inner, n) + table_count(sig, outer, n));
    Structure m = blank(sig, n);
    auto fail = [&](bool r) {
      v.ok = false;
      v.n = n;
      v.witness = print_structure(m, sig, outer);
      v.detail = r ? "satisfies the result but no model of the initial theory leads to it"
                   : "reached from a model of the initial theory but falsifies the result";
    };
    if (exact <= opts.budget) {
      for_consts(sig.constants.size(), n, opts.una, [&](const std::vector<int>& cm) {
        m.consts = cm;
        std::unordered_set<std::string> reach;
        for_tables(m, inner, [&] {
          ++v.checked;
          if (init.eval(m)) {
            fill(m);
            reach.insert(key(m));
          }
          return true;
        });
        return for_tables(m, outer, [&] {
          ++v.checked;
          bool r = res.eval(m);
          if (r == static_cast<bool>(reach.count(key(m)))) return true;
          fail(r);
          return false;
        });
      });
      continue;
    }
    double per_sample = table_count(sig, s0, n);
    if (opts.samples == 0 || per_sample > opts.budget) {
      std::ostringstream os;
      os << "enumeration budget exceeded at domain size " << n << ": about " << exact << " candidate structures";
      throw BudgetError(os.str(), exact);
    }
    v.probabilistic = true;
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(n));
    for (std::size_t i = 0; i < opts.samples && v.ok; ++i) {
      ++v.checked;
      if (i % 2 == 0) {
        // forward: a random initial structure must lead into the result
        randomize(m, inner, opts.una, rng);
        if (!init.eval(m)) continue;
        fill(m);
        if (!res.eval(m)) fail(false);
      } else {
        // backward: a random model of the result must be reachable
        randomize(m, outer, opts.una, rng);
        if (!res.eval(m)) continue;
        std::string want = key(m);
        Structure probe = m;
        bool found = false;
        for_tables(probe, s0, [&] {
          if (init.eval(probe)) {
            fill(probe);
            found = key(probe) == want;
          }
          return !found;
        });
        if (!found) fail(true);
      }
    }
  }
  return v;
}

OracleVerdict check_consistency(const BasicActionTheory& bat, const GroundAction& alpha, int n_max,
                                const OracleOptions& opts) {
  for (const auto& f : bat.vocab.fluents) {
    const SSA& ssa = bat.ssa(f.name);
    Formula both = Formula::conj({instantiate_gamma_raw(ssa, true, alpha, Term::init()),
                                  instantiate_gamma_raw(ssa, false, alpha, Term::init())});
    for (auto it = ssa.params.rbegin(); it != ssa.params.rend(); ++it) both = Formula::exists(*it, both);
    OracleVerdict v = entails(bat.init, Formula::negation(both), n_max, opts);
    if (!v.ok) {
      v.detail = "positive and negative effect conditions of " + f.name + " overlap";
      return v;
    }
  }
  return {};
}

}  // namespace prog
