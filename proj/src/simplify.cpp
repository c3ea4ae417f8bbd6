#include "progressor/simplify.hpp"

#include <algorithm>

namespace prog {

namespace {

bool complementary(const Formula& a, const Formula& b) {
  return (a.op() == Op::Not && a.body() == b) || (b.op() == Op::Not && b.body() == a);
}

Formula simp_nary(Op op, const std::vector<Formula>& kids, bool una) {
  const Op unit = op == Op::And ? Op::True : Op::False;
  const Op zero = op == Op::And ? Op::False : Op::True;
  std::vector<Formula> out;
  for (const auto& k : kids) {
    Formula s = simplify(k, una);
    if (s.op() == unit) continue;
    if (s.op() == zero) return s;
    std::vector<Formula> parts = s.op() == op ? s.children() : std::vector<Formula>{s};
    for (auto& p : parts) {
      if (std::find(out.begin(), out.end(), p) != out.end()) continue;
      for (const auto& q : out)
        if (complementary(p, q)) return Formula::constant(zero == Op::True);
      out.push_back(std::move(p));
    }
  }
  return op == Op::And ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
}

}  // namespace

Formula simplify(const Formula& f, bool una) {
  switch (f.op()) {
    case Op::Equal: {
      const Term& l = f.args()[0];
      const Term& r = f.args()[1];
      if (l == r) return Formula::truth();
      if (una && l.is_constant() && r.is_constant()) return Formula::falsity();
      return f;
    }
    case Op::Not: {
      Formula b = simplify(f.body(), una);
      if (b.is_true()) return Formula::falsity();
      if (b.is_false()) return Formula::truth();
      if (b.op() == Op::Not) return b.body();
      if (b == f.body()) return f;
      return Formula::negation(b);
    }
    case Op::And:
    case Op::Or: return simp_nary(f.op(), f.children(), una);
    case Op::Implies: {
      Formula p = simplify(f.child(0), una);
      Formula q = simplify(f.child(1), una);
      if (p.is_false() || q.is_true()) return Formula::truth();
      if (p.is_true()) return q;
      if (q.is_false()) return simplify(Formula::negation(p), una);
      return Formula::implies(p, q);
    }
    case Op::Iff: {
      Formula p = simplify(f.child(0), una);
      Formula q = simplify(f.child(1), una);
      if (p == q) return Formula::truth();
      if (p.is_true()) return q;
      if (q.is_true()) return p;
      if (p.is_false()) return simplify(Formula::negation(q), una);
      if (q.is_false()) return simplify(Formula::negation(p), una);
      return Formula::iff(p, q);
    }
    case Op::Exists:
    case Op::Forall: {
      Formula b = simplify(f.body(), una);
      auto fv = free_vars(b);
      if (std::find(fv.begin(), fv.end(), f.symbol()) == fv.end()) return b;
      if (b == f.body()) return f;
      return f.op() == Op::Exists ? Formula::exists(f.symbol(), b) : Formula::forall(f.symbol(), b, f.implicit());
    }
    default: return f;
  }
}

Theory simplify(const Theory& t, bool una) {
  Theory out;
  for (const auto& f : t) {
    Formula s = simplify(f, una);
    if (s.is_true()) continue;
    if (s.is_false()) return {s};
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace prog
