#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardy/graph.hpp"
#include "hardy/rng.hpp"

namespace hardy {

// ------------------------------------------------------------ .wgr files
//
//   # comment
//   vertex <name> <mass>
//   edge <name> <name> <conductance>
//   boundary <name>
//
// Names are whitespace-free tokens; ids follow declaration order. A vertex
// must be declared before an edge or boundary line mentions it.

struct ParsedGraph {
  WeightedGraph graph;
  std::optional<VertexSet> boundary;
};

/// Parses and validates. Errors carry the 1-based line in detail()[0].
ParsedGraph parse_wgr(std::string_view text);

/// Inverse of parse_wgr; reals are written in shortest round-trip form so
/// a parse of the output reproduces every weight bit for bit.
std::string serialize_wgr(const WeightedGraph& graph, const std::optional<VertexSet>& boundary = std::nullopt);

/// Resolves a comma-separated list of vertex names (labels, or v<id> for
/// unlabelled graphs).
VertexSet resolve_vertices(const WeightedGraph& graph, std::string_view names);

/// Shortest decimal that round-trips, always with a '.' or exponent.
std::string format_real(double value);

/// 12 significant digits, with a '.' or exponent; for terminal output.
std::string format_display(double value);

/// printf("%.17g"), or "null" when not finite.
std::string format_real17(double value);

// ---------------------------------------------------------- verification

enum class Relation { LessEqual, Equal };

std::string_view to_string(Relation relation);

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEqual;
  bool holds = false;
  /// Remaining allowance: (rhs + tol|rhs| + tol) - lhs for <=,
  /// (tol|rhs| + tol) - |lhs - rhs| for ==. holds <=> slack >= 0.
  double slack = 0.0;
  std::string reason;  // set when the check could not be evaluated
};

/// Builds a check under the mixed absolute/relative tolerance rule.
Check make_check(std::string name, double lhs, Relation relation, double rhs, double tolerance);

/// A check that failed because its inputs could not be computed.
Check failed_check(std::string name, std::string reason);

struct VerificationReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  double mass_total = 0.0;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::vector<std::string>>> witnesses;
  std::vector<std::pair<std::string, double>> timing_ms;
  std::string tool_version;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;

  bool all_hold() const;
  std::optional<double> quantity(std::string_view name) const;
  const Check* check(std::string_view name) const;
};

enum class Suite { Dirichlet, Neumann, Cheeger, Pinch, ResSum, PathReduction };

std::string_view to_string(Suite suite);
std::vector<Suite> all_suites();
/// "all" or a comma-separated subset of
/// dirichlet,neumann,cheeger,pinch,ressum,path-reduction.
std::vector<Suite> parse_suites(std::string_view list);

struct SuiteOptions {
  std::optional<VertexSet> boundary;  // Dirichlet suites default to {v0}
  std::vector<Suite> suites = all_suites();
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t pinch_samples = 50;
  std::size_t ressum_samples = 20;
  bool record_timing = false;
};

/// Runs the requested suites. Errors inside a suite become failed checks
/// named "<suite>_error" carrying the message as reason.
VerificationReport run_suite(const WeightedGraph& graph, const SuiteOptions& options);

/// Quantities only (no checks): lambda2, psi2, h2, phi when in range, and
/// the Dirichlet pair when a boundary is given.
VerificationReport analyze(const WeightedGraph& graph, const std::optional<VertexSet>& boundary);

enum class ReportFormat { Json, Csv };

/// JSON: fixed field order, reals at 17 significant digits. CSV: one row
/// per check.
std::string emit_report(const VerificationReport& report, ReportFormat format);

/// Potential taking both signs: gaussian-like draws minus their mean. If
/// the draws happen to be all equal, entries 0 and 1 are set to -1 and +1.
std::vector<double> random_mixed_potential(std::size_t n, Xorshift64Star& rng);

// ---------------------------------------------------------------- CLI

/// Entry point of the `hardy` tool. Returns 0 on success, 1 when a
/// verification check fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

extern const char* const kToolVersion;

}  // namespace hardy
