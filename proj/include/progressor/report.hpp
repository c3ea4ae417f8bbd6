// JSON reports for the command-line tool. Field order is fixed; the layout
// is described in docs/report-schema.md.

#ifndef PROGRESSOR_REPORT_HPP
#define PROGRESSOR_REPORT_HPP

#include <json.hpp>

#include "progressor/classification.hpp"
#include "progressor/oracle.hpp"
#include "progressor/progression.hpp"

namespace prog::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

Json classification(const Verdict& v);
Json stats(const SizeStats& st);
Json progression(const ProgressionResult& r);
Json oracle(const OracleVerdict& v, int n_max, bool una);

/// The envelope: schema, tool version and the command echo.
Json envelope(const std::string& command, const Json& args);

}  // namespace prog::report

#endif
