#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "hardy/content.hpp"
#include "hardy/harness.hpp"
#include "hardy/resistance.hpp"
#include "hardy/spectral.hpp"

namespace hardy {

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Dirichlet: return "dirichlet";
    case Suite::Neumann: return "neumann";
    case Suite::Cheeger: return "cheeger";
    case Suite::Pinch: return "pinch";
    case Suite::ResSum: return "ressum";
    case Suite::PathReduction: return "path-reduction";
  }
  return "unknown";
}

std::vector<Suite> all_suites() {
  return {Suite::Dirichlet, Suite::Neumann, Suite::Cheeger, Suite::Pinch, Suite::ResSum, Suite::PathReduction};
}

std::vector<Suite> parse_suites(std::string_view list) {
  if (list == "all") return all_suites();
  std::vector<Suite> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string_view name = list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    if (name.empty()) continue;
    bool found = false;
    for (Suite s : all_suites())
      if (to_string(s) == name) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        found = true;
      }
    if (!found) throw Error(ErrorKind::Usage, "unknown suite '" + std::string(name) + "'");
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "no suites selected");
  return out;
}

std::vector<double> random_mixed_potential(std::size_t n, Xorshift64Star& rng) {
  std::vector<double> f(n);
  double mean = 0.0;
  for (auto& x : f) {
    x = rng.gaussian_like();
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (auto& x : f) x -= mean;
  const bool neg = std::any_of(f.begin(), f.end(), [](double x) { return x < 0.0; });
  const bool pos = std::any_of(f.begin(), f.end(), [](double x) { return x > 0.0; });
  if ((!neg || !pos) && n >= 2) {
    f[0] = -1.0;
    f[1] = 1.0;
  }
  return f;
}

namespace {

std::vector<std::string> names_of(const WeightedGraph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexId v : s) out.push_back(g.label(v));
  return out;
}

/// Independent stream per suite so that selecting a subset of suites does
/// not change the draws of the others.
Xorshift64Star suite_stream(std::uint64_t seed, Suite suite) {
  return Xorshift64Star(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(suite) + 1));
}

VertexSet random_nonempty_subset(const VertexSet& from, Xorshift64Star& rng) {
  std::vector<VertexId> pick;
  for (VertexId v : from)
    if (rng.next() >> 63) pick.push_back(v);
  if (pick.empty()) pick.push_back(from.members()[rng.below(from.size())]);
  return VertexSet(std::move(pick));
}

class SuiteRunner {
 public:
  SuiteRunner(const WeightedGraph& graph, const SuiteOptions& options, VerificationReport& report)
      : g_(graph), opt_(options), r_(report) {}

  void run(Suite suite) {
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (suite) {
        case Suite::Dirichlet: dirichlet(); break;
        case Suite::Neumann: neumann(); break;
        case Suite::Cheeger: cheeger(); break;
        case Suite::Pinch: pinching(); break;
        case Suite::ResSum: resistance_sum(); break;
        case Suite::PathReduction: path_reduction(); break;
      }
    } catch (const std::exception& e) {
      r_.checks.push_back(failed_check(std::string(to_string(suite)) + "_error", e.what()));
    }
    if (opt_.record_timing) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      r_.timing_ms.emplace_back(std::string(to_string(suite)), ms.count());
    }
  }

 private:
  void quantity(const std::string& name, double value) {
    for (auto& [key, v] : r_.quantities)
      if (key == name) {
        v = value;
        return;
      }
    r_.quantities.emplace_back(name, value);
  }

  void witness(const std::string& name, const VertexSet& set) {
    for (const auto& [key, v] : r_.witnesses)
      if (key == name) return;
    r_.witnesses.emplace_back(name, names_of(g_, set));
  }

  void check(std::string name, double lhs, Relation rel, double rhs) {
    r_.checks.push_back(make_check(std::move(name), lhs, rel, rhs, opt_.tolerance));
  }

  const VertexSet& boundary() {
    if (!boundary_) boundary_ = opt_.boundary ? *opt_.boundary : VertexSet{0};
    return *boundary_;
  }

  const SpectralResult& fiedler() {
    if (!fiedler_) {
      fiedler_ = neumann_eigenvalue(g_);
      quantity("lambda2", fiedler_->eigenvalue);
    }
    return *fiedler_;
  }

  const SpectralResult& ground_state() {
    if (!ground_) {
      ground_ = dirichlet_eigenvalue(g_, boundary());
      quantity("lambda_dirichlet", ground_->eigenvalue);
    }
    return *ground_;
  }

  const ContentResult& dirichlet_content() {
    if (!psi_) {
      psi_ = dirichlet_content_exact(g_, boundary());
      quantity("psi_dirichlet", psi_->value);
      quantity("h_dirichlet", psi_->hardy);
      witness("dirichlet_A", psi_->witness_a);
    }
    return *psi_;
  }

  void dirichlet() {
    const double lambda = ground_state().eigenvalue;
    const double psi = dirichlet_content().value;
    check("dirichlet_lower", psi / 4.0, Relation::LessEqual, lambda);
    check("dirichlet_upper", lambda, Relation::LessEqual, psi);
  }

  void neumann() {
    const double lambda2 = fiedler().eigenvalue;
    const auto psi2 = neumann_content_exact(g_);
    quantity("psi2", psi2.value);
    quantity("h2", psi2.hardy);
    witness("neumann_A", psi2.witness_a);
    witness("neumann_B", *psi2.witness_b);
    check("neumann_lower", psi2.value / 4.0, Relation::LessEqual, lambda2);
    check("neumann_upper", lambda2, Relation::LessEqual, psi2.value);

    const auto sweep = neumann_content_sweep(g_);
    quantity("psi2_sweep", sweep.value);
    check("sweep_sound", psi2.value, Relation::LessEqual, sweep.value);
  }

  void cheeger() {
    const double lambda2 = fiedler().eigenvalue;
    const auto phi = isoperimetric_exact(g_);
    quantity("phi", phi.value);
    witness("cheeger_A", phi.witness_a);
    double ratio = 0.0;
    for (VertexId v = 0; v < g_.vertex_count(); ++v) ratio = std::max(ratio, g_.degree(v) / g_.mass(v));
    check("cheeger_lower", lambda2 / 2.0, Relation::LessEqual, phi.value);
    check("cheeger_upper", phi.value, Relation::LessEqual, std::sqrt(2.0 * lambda2 * ratio));
  }

  static double pinch_max(const PinchedGraph& p) {
    return std::max(dirichlet_eigenvalue(p.graph, p.nonpositive).eigenvalue,
                    dirichlet_eigenvalue(p.graph, p.nonnegative).eigenvalue);
  }

  void pinching() {
    const auto& fiedler_result = fiedler();
    const double lambda2 = fiedler_result.eigenvalue;
    const Eigen::VectorXd& x = fiedler_result.eigenvector;
    const std::vector<double> f(x.data(), x.data() + x.size());
    const PinchedGraph p = pinch(g_, f);
    const double at_eigenvector = pinch_max(p);
    quantity("pinch_eigenvector_max", at_eigenvector);
    check("pinch_eigenvector", at_eigenvector, Relation::Equal, lambda2);

    const Eigen::Map<const Eigen::VectorXd> fe(p.f_extended.data(), static_cast<Index>(p.f_extended.size()));
    check("pinch_energy", edge_energy(p.graph, fe), Relation::Equal, edge_energy(g_, x));

    if (opt_.pinch_samples == 0) return;
    auto rng = suite_stream(opt_.seed, Suite::Pinch);
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < opt_.pinch_samples; ++k)
      smallest = std::min(smallest, pinch_max(pinch(g_, random_mixed_potential(g_.vertex_count(), rng))));
    quantity("pinch_random_min", smallest);
    check("pinch_random", lambda2, Relation::LessEqual, smallest);
  }

  void resistance_sum() {
    if (opt_.ressum_samples == 0) return;
    auto rng = suite_stream(opt_.seed, Suite::ResSum);
    double worst = 0.0;
    for (std::size_t k = 0; k < opt_.ressum_samples; ++k) {
      const PinchedGraph p = pinch(g_, random_mixed_potential(g_.vertex_count(), rng));
      const VertexSet a = random_nonempty_subset(p.negative(), rng);
      const VertexSet b = random_nonempty_subset(p.positive(), rng);
      const double lhs = effective_resistance(p.graph, a, p.zero) + effective_resistance(p.graph, b, p.zero);
      worst = std::max(worst, lhs / effective_resistance(p.graph, a, b));
    }
    quantity("ressum_worst_ratio", worst);
    check("ressum", worst, Relation::LessEqual, 1.0);
  }

  void path_reduction() {
    const auto& ground = ground_state();
    const auto quotient = level_set_quotient(g_, boundary(), ground.eigenvector);
    const double on_path = dirichlet_eigenvalue(quotient.path, VertexSet{0}).eigenvalue;
    quantity("lambda_quotient_path", on_path);
    check("path_reduction", on_path, Relation::Equal, ground.eigenvalue);

    const auto path_content = hardy_path(quotient.path);
    quantity("psi_quotient_path", path_content.value);
    check("path_hardy_lower", path_content.value / 4.0, Relation::LessEqual, ground.eigenvalue);
    if (g_.vertex_count() - boundary().size() <= kMaxDirichletInterior)
      check("path_content_dominates", dirichlet_content().value, Relation::LessEqual, path_content.value);
  }

  const WeightedGraph& g_;
  const SuiteOptions& opt_;
  VerificationReport& r_;
  std::optional<VertexSet> boundary_;
  std::optional<SpectralResult> fiedler_;
  std::optional<SpectralResult> ground_;
  std::optional<ContentResult> psi_;
};

VerificationReport empty_report(const WeightedGraph& graph, std::uint64_t seed, double tolerance) {
  VerificationReport r;
  r.vertex_count = graph.vertex_count();
  r.edge_count = graph.edge_count();
  r.mass_total = graph.total_mass();
  r.tool_version = kToolVersion;
  r.seed = seed;
  r.tolerance = tolerance;
  return r;
}

}  // namespace

VerificationReport run_suite(const WeightedGraph& graph, const SuiteOptions& options) {
  VerificationReport report = empty_report(graph, options.seed, options.tolerance);
  SuiteRunner runner(graph, options, report);
  for (Suite s : all_suites())
    if (std::find(options.suites.begin(), options.suites.end(), s) != options.suites.end()) runner.run(s);
  return report;
}

VerificationReport analyze(const WeightedGraph& graph, const std::optional<VertexSet>& boundary) {
  VerificationReport report = empty_report(graph, 0, 0.0);
  auto put = [&](const std::string& name, double v) { report.quantities.emplace_back(name, v); };
  auto names = [&](const VertexSet& s) { return names_of(graph, s); };

  put("lambda2", neumann_eigenvalue(graph).eigenvalue);
  if (graph.vertex_count() <= kMaxNeumannVertices) {
    const auto psi2 = neumann_content_exact(graph);
    put("psi2", psi2.value);
    put("h2", psi2.hardy);
    report.witnesses.emplace_back("neumann_A", names(psi2.witness_a));
    report.witnesses.emplace_back("neumann_B", names(*psi2.witness_b));
  } else {
    const auto sweep = neumann_content_sweep(graph);
    put("psi2_sweep", sweep.value);
  }
  if (graph.vertex_count() <= kMaxIsoperimetricVertices) {
    const auto phi = isoperimetric_exact(graph);
    put("phi", phi.value);
    report.witnesses.emplace_back("cheeger_A", names(phi.witness_a));
  }
  if (boundary) {
    put("lambda_dirichlet", dirichlet_eigenvalue(graph, *boundary).eigenvalue);
    if (graph.vertex_count() - boundary->size() <= kMaxDirichletInterior) {
      const auto psi = dirichlet_content_exact(graph, *boundary);
      put("psi_dirichlet", psi.value);
      put("h_dirichlet", psi.hardy);
      report.witnesses.emplace_back("dirichlet_A", names(psi.witness_a));
    }
  }
  return report;
}

}  // namespace hardy
