#include "progressor/bench.hpp"

#include <cmath>
#include <sstream>

#include "progressor/generators.hpp"

namespace prog::bench {

namespace {

Instance finish(std::string family, int param, std::uint64_t seed, std::string text, const std::string& action) {
  Instance in;
  in.family = std::move(family);
  in.param = param;
  in.seed = seed;
  in.text = std::move(text);
  in.bat = parse_bat(in.text);
  in.alpha = GroundAction::parse(action, in.bat.vocab);
  return in;
}

const BoundCheck& check_named(const SizeStats& st, const std::string& name) {
  for (const auto& c : st.checks)
    if (c.name == name) return c;
  throw Error("no bound check named '" + name + "'");
}

}  // namespace

Instance le_instance(int c, int clauses, std::uint64_t seed, int idle) {
  gen::Rng rng(seed);
  std::ostringstream os;
  os << "(vocab";
  for (int i = 1; i <= c; ++i) os << " (fluent F" << i << " 1)";
  for (int i = 1; i <= idle; ++i) os << " (fluent G" << i << " 1)";
  os << " (rigid R 1) (rigid Q 1) (action act 1) (action noop 0) (const a b))\n(init";
  gen::Shape s;
  for (int i = 1; i <= c; ++i) s.preds.push_back({"F" + std::to_string(i), 1});
  s.preds.push_back({"R", 1});
  s.preds.push_back({"Q", 1});
  s.constants = {"a", "b"};
  s.equality = false;
  for (int i = 0; i < clauses; ++i) os << "\n  " << gen::clause(rng, s, {"x"}, 3);
  os << ")\n";
  for (int i = 1; i <= c; ++i)
    os << "(ssa F" << i << " (x) (pos act (x) () (and (R x) (F" << (i % c) + 1
       << " x))) (neg act (x) () (and (not (R x)) (Q x))))\n";
  // untouched by act, so they add to m but not to Omega
  for (int i = 1; i <= idle; ++i) os << "(ssa G" << i << " (x) (pos noop () () (R x)))\n";
  return finish("le", c, seed, os.str(), "act(a)");
}

Instance nr_instance(int k, std::uint64_t seed) {
  gen::Rng rng(seed);
  gen::Shape s;
  s.preds = {{"L", 1}, {"R", 1}, {"Q", 1}};
  s.constants = {"a", "b"};
  s.equality = false;
  std::ostringstream os;
  os << "(vocab (fluent N 1) (fluent L 1) (rigid R 1) (rigid Q 1) (action act 1) (const a b))\n(init";
  for (int i = 0; i < k; ++i) os << "\n  (implies " << gen::clause(rng, s, {"x"}, 2) << " (N x))";
  for (int i = 0; i < k; ++i) os << "\n  (implies (N x) " << gen::clause(rng, s, {"x"}, 2) << ")";
  os << ")\n(ssa N (x) (pos act (z) () (and (R x) (L z))))\n(ssa L (x) (pos act (x) () (Q x)))\n";
  return finish("nr", k, seed, os.str(), "act(a)");
}

Instance ac_instance(int d, std::uint64_t seed) {
  const int width = 7;
  std::ostringstream os;
  os << "(vocab";
  for (int i = 0; i < width; ++i) os << " (fluent N" << i << " 1)";
  os << " (rigid R 1) (rigid Q 1) (rigid K 1) (action act 1) (const a))\n(init";
  for (int i = 0; i < width; ++i)
    os << "\n  (implies (Q x) (N" << i << " x))\n  (implies (N" << i << " x) (or (R x) (K x)))";
  os << ")\n";
  for (int i = 0; i < width; ++i) {
    std::string next = i < d ? "N" + std::to_string(i + 1) : "K";
    os << "(ssa N" << i << " (x) (pos act (z) () (and (" << next << " x) (R x))) (neg act (z) () (and (not (" << next
       << " x)) (not (R x)))))\n";
  }
  return finish("ac", d, seed, os.str(), "act(a)");
}

Row measure(const Instance& inst) {
  Row r;
  r.family = inst.family;
  r.seed = inst.seed;
  r.param = inst.param;
  ProgressOptions po;
  po.method = inst.family == "le" ? Method::LE : inst.family == "nr" ? Method::NR : Method::AC;
  ProgressionResult res = progress(inst.bat, inst.alpha, po);
  r.stats = res.stats;
  const char* name = inst.family == "le" ? "local forgetting" : inst.family == "nr" ? "NLE forgetting"
                                                                                    : "aggregate condition size";
  const BoundCheck& c = check_named(res.stats, name);
  r.measured = c.measured;
  r.bound = c.bound;
  r.size = static_cast<double>(inst.family == "nr" ? res.stats.intermediate : res.stats.raw_size);
  return r;
}

std::vector<Row> run(const std::string& family, const std::vector<int>& sizes, std::uint64_t seed, bool grow) {
  std::vector<Row> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::uint64_t s = seed + i;
    if (family == "le")
      out.push_back(measure(grow ? le_instance(sizes.front(), sizes[i], s, sizes[i] / 2) : le_instance(sizes[i], 4, s)));
    else if (family == "nr")
      out.push_back(measure(nr_instance(sizes[i], s)));
    else if (family == "ac")
      out.push_back(measure(ac_instance(sizes[i], s)));
    else
      throw Error("unknown bench family '" + family + "' (expected le, nr or ac)");
  }
  return out;
}

std::string csv_header() { return "family,seed,c,d,n,m,k,w,measured,bound"; }

std::string csv_line(const Row& r) {
  std::ostringstream os;
  const auto& st = r.stats;
  os << r.family << ',' << r.seed << ',' << st.c << ',' << st.d << ',' << st.n << ',' << st.m << ',' << st.k << ','
     << st.w << ',' << r.measured << ',' << r.bound;
  return os.str();
}

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("a fit needs at least two points");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw Error("degenerate fit: all x equal");
  Fit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double mean = sy / n, ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

Fit power_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (double v : x) lx.push_back(std::log(v));
  for (double v : y) ly.push_back(std::log(v));
  return linear_fit(lx, ly);
}

Fit log2_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> ly;
  for (double v : y) ly.push_back(std::log2(v));
  return linear_fit(x, ly);
}

Fit shape_fit(const std::string& family, const std::vector<Row>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(family == "ac" ? static_cast<double>(r.stats.d) : static_cast<double>(r.stats.n + r.stats.m));
    y.push_back(r.size);
  }
  return family == "ac" ? log2_fit(x, y) : power_fit(x, y);
}

}  // namespace prog::bench
