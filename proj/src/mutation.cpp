#include "progressor/mutation.hpp"

#include <random>

namespace prog {

const char* to_string(Fault f) { return f == Fault::DropConjunct ? "drop-conjunct" : "flip-literal"; }

Fault parse_fault(const std::string& s) {
  if (s == "drop-conjunct") return Fault::DropConjunct;
  if (s == "flip-literal") return Fault::FlipLiteral;
  throw Error("unknown fault '" + s + "' (expected drop-conjunct or flip-literal)");
}

namespace {

std::size_t atom_count(const Formula& f) {
  if (f.is_atom()) return 1;
  std::size_t n = 0;
  for (const auto& k : f.children()) n += atom_count(k);
  return n;
}

// Negates the atom occurrence numbered `k` in left-to-right order.
Formula flip(const Formula& f, std::size_t& k) {
  if (f.is_atom()) return k-- == 0 ? Formula::negation(f) : f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(k == static_cast<std::size_t>(-1) ? c : flip(c, k));
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

}  // namespace

std::size_t fault_sites(const Theory& t, Fault f) {
  std::size_t n = 0;
  for (const auto& s : t) n += f == Fault::DropConjunct ? conjuncts(strip_foralls(s).second).size() : atom_count(s);
  return n;
}

Theory inject(const Theory& t, Fault f, std::size_t site) {
  std::size_t total = fault_sites(t, f);
  if (total == 0) throw Error(std::string("nothing to ") + (f == Fault::DropConjunct ? "drop" : "flip"));
  site %= total;
  Theory out;
  for (const auto& s : t) {
    if (f == Fault::DropConjunct) {
      auto parts = conjuncts(strip_foralls(s).second);
      if (site < parts.size()) {
        parts.erase(parts.begin() + static_cast<long>(site));
        if (!parts.empty()) out.push_back(close_universally(Formula::conj(parts)));
        site = static_cast<std::size_t>(-1);
        continue;
      }
      if (site != static_cast<std::size_t>(-1)) site -= parts.size();
      out.push_back(s);
    } else {
      std::size_t n = atom_count(s);
      if (site < n) {
        out.push_back(flip(s, site));
        site = static_cast<std::size_t>(-1);
        continue;
      }
      if (site != static_cast<std::size_t>(-1)) site -= n;
      out.push_back(s);
    }
  }
  return out;
}

Theory inject_seeded(const Theory& t, Fault f, std::uint64_t seed) {
  std::mt19937_64 e(seed);
  return inject(t, f, static_cast<std::size_t>(e()));
}

}  // namespace prog
