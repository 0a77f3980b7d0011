#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hardy/content.hpp"
#include "hardy/harness.hpp"
#include "hardy/resistance.hpp"

namespace hardy {

const char* const kToolVersion = HARDY_VERSION;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Usage, "cannot write '" + path + "'");
  f << text;
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorKind::Usage, std::string(flag) + " expects lo,hi; got '" + text + "'");
    return v;
  };
  if (comma == std::string::npos) throw Error(ErrorKind::Usage, std::string(flag) + " expects lo,hi");
  const std::string_view view(text);
  return {number(view.substr(0, comma)), number(view.substr(comma + 1))};
}

struct Args {
  std::string file;
  std::string boundary;
  bool json = false;
  bool csv = false;

  std::string suites = "all";
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool timing = false;
  std::size_t pinch_samples = 50;
  std::size_t ressum_samples = 20;

  std::size_t n = 0;
  double p = 0.5;
  std::string mass_range = "0.1,10";
  std::string kappa_range = "0.1,10";
  std::string output;

  std::string set_a;
  std::string set_b;
};

int do_analyze(const Args& a, std::ostream& out) {
  const ParsedGraph parsed = parse_wgr(read_file(a.file));
  std::optional<VertexSet> boundary = parsed.boundary;
  if (!a.boundary.empty()) boundary = resolve_vertices(parsed.graph, a.boundary);
  const VerificationReport report = analyze(parsed.graph, boundary);
  if (a.json) {
    out << emit_report(report, ReportFormat::Json);
  } else if (a.csv) {
    out << "quantity,value\n";
    for (const auto& [name, value] : report.quantities) out << name << ',' << format_real17(value) << '\n';
  } else {
    for (const auto& [name, value] : report.quantities) out << name << ' ' << format_display(value) << '\n';
    for (const auto& [name, members] : report.witnesses) {
      out << name;
      for (const auto& m : members) out << ' ' << m;
      out << '\n';
    }
  }
  return 0;
}

int do_verify(const Args& a, std::ostream& out) {
  const ParsedGraph parsed = parse_wgr(read_file(a.file));
  SuiteOptions options;
  options.boundary = parsed.boundary;
  if (!a.boundary.empty()) options.boundary = resolve_vertices(parsed.graph, a.boundary);
  options.suites = parse_suites(a.suites);
  options.tolerance = a.tolerance;
  options.seed = a.seed;
  options.record_timing = a.timing;
  options.pinch_samples = a.pinch_samples;
  options.ressum_samples = a.ressum_samples;
  const VerificationReport report = run_suite(parsed.graph, options);
  out << emit_report(report, a.csv ? ReportFormat::Csv : ReportFormat::Json);
  return report.all_hold() ? 0 : 1;
}

int do_gen_path(const Args& a, std::ostream& out) {
  if (a.n < 2) throw Error(ErrorKind::Usage, "--n must be at least 2");
  const auto masses_range = parse_range(a.mass_range, "--mass-range");
  const auto kappa_range = parse_range(a.kappa_range, "--kappa-range");
  if (!(masses_range.first > 0.0 && masses_range.first <= masses_range.second) ||
      !(kappa_range.first > 0.0 && kappa_range.first <= kappa_range.second))
    throw Error(ErrorKind::BadRange, "ranges must satisfy 0 < lo <= hi");
  Xorshift64Star rng(a.seed);
  std::vector<double> masses(a.n), kappa(a.n - 1);
  for (auto& m : masses) m = rng.uniform(masses_range.first, masses_range.second);
  for (auto& k : kappa) k = rng.uniform(kappa_range.first, kappa_range.second);
  write_output(a.output, serialize_wgr(path_graph(masses, kappa), VertexSet{0}), out);
  return 0;
}

int do_gen_random(const Args& a, std::ostream& out) {
  RandomGraphParams params;
  params.n = a.n;
  params.edge_probability = a.p;
  params.mass_range = parse_range(a.mass_range, "--mass-range");
  params.conductance_range = parse_range(a.kappa_range, "--kappa-range");
  params.seed = a.seed;
  write_output(a.output, serialize_wgr(random_graph(params)), out);
  return 0;
}

int do_resistance(const Args& a, std::ostream& out) {
  const ParsedGraph parsed = parse_wgr(read_file(a.file));
  const VertexSet set_a = resolve_vertices(parsed.graph, a.set_a);
  const VertexSet set_b = resolve_vertices(parsed.graph, a.set_b);
  out << format_display(effective_resistance(parsed.graph, set_a, set_b)) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laplacian eigenvalues, Hardy-type contents and effective resistance of weighted graphs", "hardy"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Args a;

  auto* analyze_cmd = app.add_subcommand("analyze", "Print eigenvalues and contents of a .wgr graph");
  analyze_cmd->add_option("file", a.file, ".wgr input")->required();
  analyze_cmd->add_option("--boundary", a.boundary, "Comma-separated Dirichlet boundary");
  auto* json_flag = analyze_cmd->add_flag("--json", a.json, "JSON report");
  analyze_cmd->add_flag("--csv", a.csv, "CSV quantities")->excludes(json_flag);

  auto* verify_cmd = app.add_subcommand("verify", "Check every eigenvalue inequality on a .wgr graph");
  verify_cmd->add_option("file", a.file, ".wgr input")->required();
  verify_cmd->add_option("--suite", a.suites, "all, or a list of dirichlet,neumann,cheeger,pinch,ressum,path-reduction");
  verify_cmd->add_option("--tolerance", a.tolerance, "Mixed absolute/relative tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", a.seed, "Seed for random potentials");
  verify_cmd->add_option("--boundary", a.boundary, "Comma-separated Dirichlet boundary");
  verify_cmd->add_option("--pinch-samples", a.pinch_samples, "Random potentials for the pinch suite");
  verify_cmd->add_option("--ressum-samples", a.ressum_samples, "Random pinches for the resistance-sum suite");
  verify_cmd->add_flag("--timing", a.timing, "Record per-suite wall time (makes output nondeterministic)");
  auto* vjson = verify_cmd->add_flag("--json", a.json, "JSON report (default)");
  verify_cmd->add_flag("--csv", a.csv, "CSV, one row per check")->excludes(vjson);

  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded random graph as .wgr");
  gen_cmd->require_subcommand(1);
  auto* gen_path = gen_cmd->add_subcommand("path", "Weighted path v0 - ... - v(n-1) with boundary v0");
  auto* gen_random = gen_cmd->add_subcommand("random", "Random connected graph");
  for (auto* sub : {gen_path, gen_random}) {
    sub->add_option("--n", a.n, "Vertex count")->required();
    sub->add_option("--seed", a.seed, "Generator seed");
    sub->add_option("--mass-range", a.mass_range, "lo,hi (default 0.1,10)");
    sub->add_option("--kappa-range", a.kappa_range, "lo,hi (default 0.1,10)");
    sub->add_option("-o,--output", a.output, "Output file (default stdout)");
  }
  gen_random->add_option("--p", a.p, "Extra-edge probability");

  auto* res_cmd = app.add_subcommand("resistance", "Effective resistance between two vertex sets");
  res_cmd->add_option("file", a.file, ".wgr input")->required();
  res_cmd->add_option("--a", a.set_a, "Comma-separated set A")->required();
  res_cmd->add_option("--b", a.set_b, "Comma-separated set B")->required();

  std::vector<const char*> argv;
  argv.push_back("hardy");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hardy: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*analyze_cmd) return do_analyze(a, out);
    if (*verify_cmd) return do_verify(a, out);
    if (*gen_path) return do_gen_path(a, out);
    if (*gen_random) return do_gen_random(a, out);
    if (*res_cmd) return do_resistance(a, out);
  } catch (const std::exception& e) {
    err << "hardy: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace hardy
