// progressor: classify, progress, verify and benchmark basic action theories.
//
// Exit codes: 0 ok, 1 IO/parse/usage, 2 class mismatch, 3 bound or oracle failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "progressor/bench.hpp"
#include "progressor/forgetting.hpp"
#include "progressor/generators.hpp"
#include "progressor/mutation.hpp"
#include "progressor/report.hpp"

using namespace prog;
using report::Json;

namespace {

constexpr int kOk = 0, kUsage = 1, kMismatch = 2, kFailure = 3;

struct Options {
  std::string file;
  std::string action;
  std::string method = "auto";
  std::string fragment = "none";
  std::string una = "on";
  std::string out;
  std::string fault;
  std::string family;
  std::string sizes;
  bool json = false;
  bool dot = false;
  bool grow = false;
  int n_max = 2;
  std::size_t cap = 16;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

struct UsageError : Error {
  using Error::Error;
};

bool una_flag(const Options& o) {
  if (o.una == "on") return true;
  if (o.una == "off") return false;
  throw UsageError("--una expects on or off, got '" + o.una + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Json args_echo(const Options& o, const std::string& cmd) {
  Json a;
  if (cmd != "bench") {
    a["file"] = o.file;
    a["action"] = o.action;
  }
  if (cmd == "progress" || cmd == "verify") {
    a["method"] = o.method;
    a["fragment"] = o.fragment;
    a["cap"] = o.cap;
  }
  if (cmd != "bench") a["una"] = o.una;
  if (cmd == "verify") {
    a["n_max"] = o.n_max;
    a["seed"] = o.seed;
    if (!o.fault.empty()) a["inject_fault"] = o.fault;
  }
  if (cmd == "bench") {
    a["family"] = o.family;
    a["sizes"] = o.sizes;
    a["seed"] = o.seed;
    a["grow"] = o.grow;
  }
  return a;
}

struct Loaded {
  BasicActionTheory bat;
  GroundAction alpha;
};

Loaded load(const Options& o) {
  Loaded l;
  l.bat = parse_bat(read_file(o.file));
  if (o.action.empty()) throw UsageError("--action is required");
  l.alpha = GroundAction::parse(o.action, l.bat.vocab);
  return l;
}

ProgressOptions progress_options(const Options& o) {
  ProgressOptions po;
  po.method = parse_method(o.method);
  po.fragment = parse_fragment(o.fragment);
  po.una = una_flag(o);
  po.cap = o.cap;
  return po;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out.empty() ? "-" : out;
}

void print_verdict(const Verdict& v) {
  std::cout << "class: " << to_string(v.bat_class) << '\n';
  std::cout << "LE fluents: " << join(v.split.le) << '\n';
  std::cout << "NLE fluents: " << join(v.split.nle) << '\n';
  std::string om;
  for (const auto& e : v.omega.entries) {
    std::string args;
    for (const auto& a : e.args) args += (args.empty() ? "" : ",") + a;
    om += (om.empty() ? "" : " ") + e.fluent + "(" + args + ")";
  }
  std::cout << "omega (c=" << v.omega.c() << "): " << (om.empty() ? "-" : om) << '\n';
  std::cout << "dependency depth: " << v.graph.depth << (v.graph.acyclic ? "" : " (cyclic)") << '\n';
  std::cout << "fragment: " << v.fragment() << '\n';
  if (!v.le) std::cout << "not LE: " << v.le_witness << '\n';
  if (!v.nr) std::cout << "not NR: " << v.nr_witness << '\n';
  if (!v.ac) std::cout << "not AC: " << v.ac_witness << '\n';
}

void print_bounds(const ProgressionResult& r) {
  const auto& st = r.stats;
  std::cout << "method: " << to_string(r.method) << "  fragment out: " << r.fragment_out() << '\n';
  std::cout << "c=" << st.c << " d=" << st.d << " n=" << st.n << " m=" << st.m << " k=" << st.k << " w=" << st.w
            << " a=" << st.a << " l=" << st.l << " b=" << st.b << '\n';
  std::cout << "raw size " << st.raw_size << ", output size " << st.output_size << '\n';
  for (const auto& b : st.checks)
    std::cout << "bound " << b.name << ": " << b.measured << " <= " << b.bound << (b.holds() ? "  ok" : "  VIOLATED")
              << '\n';
}

std::string output_text(const Loaded& l, const ProgressionResult& r) {
  PrintOptions po;
  po.header = {"progressed through " + l.alpha.to_string() + " by " + to_string(r.method) + ", progressor " +
                   report::kToolVersion,
               "output size " + std::to_string(r.stats.output_size) + ", raw size " +
                   std::to_string(r.stats.raw_size) + ", bounds " + (r.stats.bounds_hold() ? "hold" : "VIOLATED")};
  po.init_label = "S_alpha";
  return print_bat(progressed_bat(l.bat, l.alpha, r), po);
}

// ---- commands -----------------------------------------------------------

int cmd_classify(const Options& o) {
  auto l = load(o);
  bool una = una_flag(o);
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = check_bat_class(l.bat, l.alpha, una);
  double t = ms_since(t0);
  if (o.json) {
    Json j = report::envelope("classify", args_echo(o, "classify"));
    j["classification"] = report::classification(v);
    if (o.dot) j["dot"] = v.graph.to_dot();
    j["timings_ms"] = {{"classify", t}};
    j["exit_code"] = kOk;
    print_json(j);
  } else {
    print_verdict(v);
    if (o.dot) std::cout << v.graph.to_dot();
  }
  return kOk;
}

int mismatch(const Options& o, const std::string& cmd, const ClassMismatch& e) {
  if (o.json) {
    Json j = report::envelope(cmd, args_echo(o, cmd));
    j["classification"] = report::classification(e.verdict);
    j["error"] = e.what();
    j["exit_code"] = kMismatch;
    print_json(j);
  } else {
    std::cerr << "progressor: " << e.what() << '\n';
  }
  return kMismatch;
}

int cmd_progress(const Options& o) {
  auto l = load(o);
  auto po = progress_options(o);
  auto t0 = std::chrono::steady_clock::now();
  ProgressionResult r;
  try {
    r = progress(l.bat, l.alpha, po);
  } catch (const ClassMismatch& e) {
    return mismatch(o, "progress", e);
  }
  double t = ms_since(t0);
  std::string text = output_text(l, r);
  if (!o.out.empty()) write_file(o.out, text);
  int code = r.stats.bounds_hold() ? kOk : kFailure;
  if (o.json) {
    Json j = report::envelope("progress", args_echo(o, "progress"));
    j["classification"] = report::classification(r.verdict);
    j["progression"] = report::progression(r);
    if (!o.out.empty()) j["progression"]["output_file"] = o.out;
    j["timings_ms"] = {{"progress", t}};
    j["exit_code"] = code;
    print_json(j);
  } else {
    if (o.out.empty()) std::cout << text << '\n';
    print_bounds(r);
  }
  return code;
}

int cmd_verify(const Options& o) {
  if (o.n_max < 1) throw UsageError("--n-max must be at least 1");
  auto l = load(o);
  auto po = progress_options(o);
  auto t0 = std::chrono::steady_clock::now();
  ProgressionResult r;
  try {
    r = progress(l.bat, l.alpha, po);
  } catch (const ClassMismatch& e) {
    return mismatch(o, "verify", e);
  }
  double t_progress = ms_since(t0);
  Theory checked = r.theory;
  if (!o.fault.empty()) checked = inject_seeded(checked, parse_fault(o.fault), o.seed);

  OracleOptions oo;
  oo.una = po.una;
  oo.samples = o.samples;
  oo.seed = o.seed;
  auto t1 = std::chrono::steady_clock::now();
  OracleVerdict v = check_progression(l.bat, l.alpha, checked, o.n_max, oo);

  // bounded entailment of random queries about S_alpha, both ways
  Theory original = l.bat.init;
  for (const auto& s : instantiate_ssas(l.bat, l.alpha, po.una)) original.push_back(s);
  gen::Rng rng(o.seed);
  Json queries = Json::array();
  bool agree = true;
  int qn = std::min(o.n_max, 2);
  for (int i = 0; i < 5; ++i) {
    Formula q = gen::query(rng, l.bat.vocab);
    q = unlift(lift(q, Term::init()), l.alpha.successor());
    Json row;
    row["query"] = to_infix(q);
    try {
      bool a = entails(original, q, qn, oo).ok;
      bool b = entails(checked, q, qn, oo).ok;
      row["original"] = a;
      row["progressed"] = b;
      row["agree"] = a == b;
      agree = agree && a == b;
    } catch (const BudgetError& e) {
      row["skipped"] = e.what();
    }
    queries.push_back(row);
  }
  double t_verify = ms_since(t1);

  int code = v.ok && agree && r.stats.bounds_hold() ? kOk : kFailure;
  if (o.json) {
    Json j = report::envelope("verify", args_echo(o, "verify"));
    j["classification"] = report::classification(r.verdict);
    j["progression"] = report::progression(r);
    j["oracle"] = report::oracle(v, o.n_max, po.una);
    j["entailment"] = queries;
    j["timings_ms"] = {{"progress", t_progress}, {"verify", t_verify}};
    j["exit_code"] = code;
    print_json(j);
  } else {
    print_bounds(r);
    if (!o.fault.empty()) std::cout << "injected fault: " << o.fault << '\n';
    std::cout << "oracle (N <= " << o.n_max << ", una " << o.una << "): " << (v.ok ? "pass" : "FAIL")
              << (v.probabilistic ? " (probabilistic)" : "") << ", " << v.checked << " structures\n";
    if (!v.ok) {
      std::cout << v.detail << '\n';
      if (v.n) std::cout << "counterexample (N=" << *v.n << "):\n" << v.witness << '\n';
    }
    for (const auto& q : queries) {
      if (q.contains("skipped")) continue;
      std::cout << "query " << q["query"].get<std::string>() << ": " << (q["agree"].get<bool>() ? "agrees" : "DIFFERS")
                << '\n';
    }
  }
  return code;
}

std::vector<int> parse_sizes(const std::string& s, const std::string& family) {
  std::vector<int> out;
  if (s.empty()) {
    if (family == "le") return {1, 2, 3, 4, 5, 6, 7, 8};
    if (family == "nr") return {2, 4, 8, 16, 32};
    return {0, 1, 2, 3, 4, 5, 6};
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("--sizes expects comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

int cmd_bench(const Options& o) {
  if (o.family != "le" && o.family != "nr" && o.family != "ac")
    throw UsageError("--family expects le, nr or ac");
  auto sizes = parse_sizes(o.sizes, o.family);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = bench::run(o.family, sizes, o.seed, o.grow);
  double t = ms_since(t0);
  std::ostringstream csv;
  csv << bench::csv_header() << '\n';
  bool holds = true;
  for (const auto& r : rows) {
    csv << bench::csv_line(r) << '\n';
    holds = holds && r.holds();
  }
  std::optional<bench::Fit> fit;
  if (rows.size() >= 2) fit = bench::shape_fit(o.family, rows);
  if (!o.out.empty()) write_file(o.out, csv.str());
  int code = holds ? kOk : kFailure;
  if (o.json) {
    Json j = report::envelope("bench", args_echo(o, "bench"));
    Json rs = Json::array();
    for (const auto& r : rows)
      rs.push_back({{"param", r.param},
                    {"seed", r.seed},
                    {"stats", report::stats(r.stats)},
                    {"measured", r.measured},
                    {"bound", r.bound},
                    {"holds", r.holds()},
                    {"size", r.size}});
    j["rows"] = rs;
    if (fit) j["fit"] = {{"kind", o.family == "ac" ? "log2 slope in d" : "exponent in n+m"},
                         {"slope", fit->slope},
                         {"r2", fit->r2}};
    j["bound_holds"] = holds;
    j["timings_ms"] = {{"bench", t}};
    j["exit_code"] = code;
    print_json(j);
  } else {
    if (o.out.empty()) std::cout << csv.str();
    if (fit)
      std::cerr << "fit: " << (o.family == "ac" ? "log2 slope in d " : "exponent in n+m ") << fit->slope
                << " (r2 " << fit->r2 << ")\n";
    if (!holds) std::cerr << "progressor: bound violated\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order progression of basic action theories"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool progression) {
    c->add_option("file", o.file, "BAT file")->required();
    c->add_option("--action", o.action, "ground action, e.g. \"A(c1,c2)\"")->required();
    c->add_option("--una", o.una, "unique names for object constants: on|off")->capture_default_str();
    c->add_flag("--json", o.json, "print a JSON report");
    if (progression) {
      c->add_option("--method", o.method, "auto|le|nr|ac")->capture_default_str();
      c->add_option("--fragment", o.fragment, "none|fo2|utc")->capture_default_str();
      c->add_option("--cap", o.cap, "largest characteristic set accepted")->capture_default_str();
    }
  };

  auto* classify = app.add_subcommand("classify", "report the action class, Omega, dependency graph and fragment");
  common(classify, false);
  classify->add_flag("--dot", o.dot, "print the dependency graph as DOT");

  auto* progress_cmd = app.add_subcommand("progress", "compute the progression and check its size bounds");
  common(progress_cmd, true);
  progress_cmd->add_option("--out", o.out, "write the progressed theory here");

  auto* verify = app.add_subcommand("verify", "progress, then check the result by bounded model enumeration");
  common(verify, true);
  verify->add_option("--n-max", o.n_max, "largest domain size checked")->capture_default_str();
  verify->add_option("--seed", o.seed, "seed for queries, sampling and faults")->capture_default_str();
  verify->add_option("--samples", o.samples, "structures sampled above the enumeration budget (0 refuses)");
  verify->add_option("--inject-fault", o.fault, "drop-conjunct|flip-literal, applied before checking");

  auto* bench_cmd = app.add_subcommand("bench", "size measurements on generated families, as CSV");
  bench_cmd->add_option("--family", o.family, "le|nr|ac")->required();
  bench_cmd->add_option("--sizes", o.sizes, "comma-separated family parameters");
  bench_cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  bench_cmd->add_flag("--grow", o.grow, "le: fix c at the first size and grow the theory instead");
  bench_cmd->add_option("--out", o.out, "write the CSV here");
  bench_cmd->add_flag("--json", o.json, "print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify) return cmd_classify(o);
    if (*progress_cmd) return cmd_progress(o);
    if (*verify) return cmd_verify(o);
    if (*bench_cmd) return cmd_bench(o);
  } catch (const CapExceeded& e) {
    std::cerr << "progressor: " << e.what() << '\n';
    return kFailure;
  } catch (const ClosureViolation& e) {
    std::cerr << "progressor: internal error: " << e.what() << '\n';
    return kFailure;
  } catch (const BudgetError& e) {
    std::cerr << "progressor: " << e.what() << " (try a smaller --n-max or --samples)\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "progressor: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
