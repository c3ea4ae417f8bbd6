#include "progressor/report.hpp"

namespace prog::report {

Json classification(const Verdict& v) {
  Json j;
  j["bat_class"] = to_string(v.bat_class);
  j["le"] = v.le;
  j["nr"] = v.nr;
  j["ac"] = v.ac;
  Json w = Json::object();
  if (!v.le) w["le"] = v.le_witness;
  if (!v.nr) w["nr"] = v.nr_witness;
  if (!v.ac) w["ac"] = v.ac_witness;
  j["witness"] = w;
  j["split"] = {{"le", v.split.le}, {"nle", v.split.nle}};
  Json omega = Json::array();
  for (const auto& e : v.omega.entries) omega.push_back({{"fluent", e.fluent}, {"args", e.args}});
  j["omega"] = omega;
  j["c"] = v.omega.c();
  Json edges = Json::array();
  for (const auto& [a, b] : v.graph.edges) edges.push_back({a, b});
  j["graph"] = {{"nodes", v.graph.nodes},
                {"edges", edges},
                {"depth", v.graph.depth},
                {"acyclic", v.graph.acyclic},
                {"cycle", v.graph.cycle}};
  j["fragment"] = v.fragment();
  j["fragment_diagnostics"] = v.fragment_diagnostics;
  return j;
}

Json stats(const SizeStats& st) {
  Json j;
  j["c"] = st.c;
  j["d"] = st.d;
  j["n"] = st.n;
  j["m"] = st.m;
  j["k"] = st.k;
  j["w"] = st.w;
  j["a"] = st.a;
  j["l"] = st.l;
  j["b"] = st.b;
  j["intermediate"] = st.intermediate;
  j["aggregate"] = st.aggregate;
  j["raw_size"] = st.raw_size;
  j["output_size"] = st.output_size;
  j["disjuncts"] = st.disjuncts;
  return j;
}

Json progression(const ProgressionResult& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["mode"] = to_string(r.mode);
  j["fragment_in"] = r.fo2_in && r.utc_in ? "both" : r.fo2_in ? "FO2" : r.utc_in ? "UTC" : "neither";
  j["fragment_out"] = r.fragment_out();
  j["output_size"] = r.stats.output_size;
  j["stats"] = stats(r.stats);
  Json bounds = Json::array();
  for (const auto& b : r.stats.checks)
    bounds.push_back({{"name", b.name}, {"measured", b.measured}, {"bound", b.bound}, {"holds", b.holds()}});
  j["bounds"] = bounds;
  j["bound_holds"] = r.stats.bounds_hold();
  return j;
}

Json oracle(const OracleVerdict& v, int n_max, bool una) {
  Json j;
  j["ok"] = v.ok;
  j["probabilistic"] = v.probabilistic;
  j["n_max"] = n_max;
  j["una"] = una;
  j["checked"] = v.checked;
  if (!v.ok) {
    j["counterexample"] = {{"n", v.n ? Json(*v.n) : Json()}, {"structure", v.witness}};
    j["detail"] = v.detail;
  }
  return j;
}

Json envelope(const std::string& command, const Json& args) {
  Json j;
  j["schema"] = "progressor-report";
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = {{"name", command}, {"args", args}};
  return j;
}

}  // namespace prog::report
