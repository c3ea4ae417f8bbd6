// Scaling families for the size bounds and least-squares fits over them.

#ifndef PROGRESSOR_BENCH_HPP
#define PROGRESSOR_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "progressor/bat.hpp"
#include "progressor/progression.hpp"

namespace prog::bench {

struct Instance {
  std::string family;
  int param = 0;  // c for le, list length for nr, depth for ac
  std::uint64_t seed = 0;
  std::string text;
  BasicActionTheory bat;
  GroundAction alpha;
};

/// c fluents all touched by the action, `idle` fluents it leaves alone, and
/// a D_S0 of `clauses` random clauses.
Instance le_instance(int c, int clauses, std::uint64_t seed, int idle = 0);
/// One NLE fluent with `k` sufficient and `k` necessary conditions.
Instance nr_instance(int k, std::uint64_t seed);
/// Seven NLE fluents of identical shape, the first `d` of them chained with
/// two-sided dependencies; n + m does not depend on d.
Instance ac_instance(int d, std::uint64_t seed);

struct Row {
  std::string family;
  std::uint64_t seed = 0;
  int param = 0;
  SizeStats stats;
  double measured = 0;  // le: raw output, nr: NLE-forgetting peak, ac: aggregate condition size
  double bound = 0;
  double size = 0;  // what the shape fit uses: nr peak, otherwise the raw output
  bool holds() const { return measured <= bound; }
};

Row measure(const Instance& inst);

/// Rows for one family. `sizes` are the family parameters; with `grow` the
/// le family keeps c = sizes.front() and grows D_S0 and the idle fluents.
std::vector<Row> run(const std::string& family, const std::vector<int>& sizes, std::uint64_t seed, bool grow = false);

std::string csv_header();
std::string csv_line(const Row& r);

struct Fit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};
/// y = a x + b by least squares.
Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
/// Exponent of y against x on a log-log scale.
Fit power_fit(const std::vector<double>& x, const std::vector<double>& y);
/// Slope of log2 y against x.
Fit log2_fit(const std::vector<double>& x, const std::vector<double>& y);

/// The shape check for a family over Row::size: exponent in n + m for le
/// and nr, log2 slope in d for ac.
Fit shape_fit(const std::string& family, const std::vector<Row>& rows);

}  // namespace prog::bench

#endif
