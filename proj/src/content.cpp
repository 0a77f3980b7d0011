#include "hardy/content.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "hardy/resistance.hpp"
#include "hardy/spectral.hpp"
#include "parallel.hpp"

namespace hardy {

std::string_view to_string(ContentMethod method) {
  switch (method) {
    case ContentMethod::ExactEnumeration: return "exact-enumeration";
    case ContentMethod::PathTailSet: return "path-tailset";
    case ContentMethod::SweepHeuristic: return "sweep-heuristic";
  }
  return "unknown";
}

std::size_t enumeration_workers() {
  if (const char* env = std::getenv("HARDY_SPECTRAL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

struct Candidate {
  double value;
  std::uint64_t a;
  std::uint64_t b;

  friend bool operator<(const Candidate& x, const Candidate& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

void offer(std::optional<Candidate>& best, const Candidate& c) {
  if (!best || c < *best) best = c;
}

std::vector<VertexId> members_of(std::uint64_t mask, std::span<const VertexId> ids) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(ids[i]);
  return out;
}

double mass_sum(const WeightedGraph& graph, std::span<const VertexId> members) {
  double m = 0.0;
  for (VertexId v : members) m += graph.mass(v);
  return m;
}

/// (1/mu(A) + 1/mu(B)) / R(A,B) with A, B already in canonical order.
double ordered_pair_ratio(const WeightedGraph& graph, const DenseSymMatrix& l, std::span<const VertexId> a,
                          std::span<const VertexId> b) {
  return (1.0 / mass_sum(graph, a) + 1.0 / mass_sum(graph, b)) * inverse_resistance(l, a, b);
}

void require_positive_masses(const WeightedGraph& graph) {
  for (VertexId v = 0; v < graph.vertex_count(); ++v)
    if (!(graph.mass(v) > 0.0))
      throw Error(ErrorKind::ZeroMass, "vertex " + std::to_string(v) + " has zero mass", {v});
}

std::vector<VertexId> identity_ids(std::size_t n) {
  std::vector<VertexId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

}  // namespace

// ------------------------------------------------------------ Dirichlet

ContentResult hardy_path(const WeightedGraph& path) {
  validate(path);
  const std::size_t n = path.vertex_count();
  if (n < 2 || path.edge_count() != n - 1) throw Error(ErrorKind::NotAPath, "graph is not a path v0 - ... - vN");
  std::vector<double> kappa(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const auto e = path.find_edge(i - 1, i);
    if (!e) throw Error(ErrorKind::NotAPath, "missing path edge (" + std::to_string(i - 1) + "," + std::to_string(i) + ")");
    kappa[i] = path.edges()[*e].conductance;
  }

  std::vector<double> tail_mass(n + 1, 0.0);
  for (std::size_t k = n; k-- > 1;) tail_mass[k] = tail_mass[k + 1] + path.mass(k);
  if (!(tail_mass[1] > 0.0)) throw Error(ErrorKind::ZeroInteriorMass, "every interior mass is zero");

  double resistance = 0.0;
  double best = -1.0;
  std::size_t best_k = 1;
  for (std::size_t k = 1; k < n; ++k) {
    resistance += 1.0 / kappa[k];
    const double h = resistance * tail_mass[k];
    if (h > best) {
      best = h;
      best_k = k;
    }
  }

  ContentResult out;
  out.method = ContentMethod::PathTailSet;
  out.hardy = best;
  out.value = 1.0 / best;
  out.witness_a = VertexSet::range(best_k, n);
  return out;
}

ContentResult dirichlet_content_exact(const WeightedGraph& graph, const VertexSet& boundary) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (boundary.empty() || boundary.size() >= n || boundary.members().back() >= n)
    throw Error(ErrorKind::BadBoundary, "boundary must be a proper nonempty subset of the vertices");
  const VertexSet interior_set = boundary.complement(n);
  const std::vector<VertexId>& interior = interior_set.members();
  if (interior.size() > kMaxDirichletInterior)
    throw Error(ErrorKind::TooLarge,
                std::to_string(interior.size()) + " interior vertices exceed the enumeration limit of " +
                    std::to_string(kMaxDirichletInterior),
                {interior.size()});

  const DenseSymMatrix l = laplacian_matrix(graph);
  const std::uint64_t limit = std::uint64_t{1} << interior.size();
  const auto best = detail::parallel_min<Candidate>(
      1, limit, enumeration_workers(), [&](std::uint64_t mask, std::optional<Candidate>& local) {
        const auto a = members_of(mask, interior);
        const double mu = mass_sum(graph, a);
        if (!(mu > 0.0)) return;
        offer(local, {inverse_resistance(l, a, boundary.members()) / mu, mask, 0});
      });
  if (!best) throw Error(ErrorKind::ZeroInteriorMass, "every interior mass is zero");

  ContentResult out;
  out.method = ContentMethod::ExactEnumeration;
  out.value = best->value;
  out.hardy = 1.0 / best->value;
  out.witness_a = VertexSet(members_of(best->a, interior));
  return out;
}

// -------------------------------------------------------------- Neumann

double neumann_pair_ratio(const WeightedGraph& graph, const VertexSet& a, const VertexSet& b) {
  validate(graph);
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "content pair needs two nonempty sets");
  if (a.intersects(b)) throw Error(ErrorKind::SetsOverlap, "content pair must be disjoint");
  const DenseSymMatrix l = laplacian_matrix(graph);
  if (b < a) return ordered_pair_ratio(graph, l, b.members(), a.members());
  return ordered_pair_ratio(graph, l, a.members(), b.members());
}

ContentResult neumann_content_exact(const WeightedGraph& graph) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (n > kMaxNeumannVertices)
    throw Error(ErrorKind::TooLarge,
                std::to_string(n) + " vertices exceed the enumeration limit of " + std::to_string(kMaxNeumannVertices),
                {n});
  if (n < 2) throw Error(ErrorKind::TooSmall, "Neumann content needs at least two vertices");
  require_positive_masses(graph);

  const DenseSymMatrix l = laplacian_matrix(graph);
  const auto ids = identity_ids(n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto best = detail::parallel_min<Candidate>(
      1, full, enumeration_workers(), [&](std::uint64_t a_mask, std::optional<Candidate>& local) {
        const auto a = members_of(a_mask, ids);
        const std::uint64_t rest = full & ~a_mask;
        // Submasks of `rest`, keeping only B with a larger key than A.
        for (std::uint64_t b_mask = rest; b_mask > a_mask; b_mask = (b_mask - 1) & rest) {
          const auto b = members_of(b_mask, ids);
          offer(local, {ordered_pair_ratio(graph, l, a, b), a_mask, b_mask});
        }
      });

  ContentResult out;
  out.method = ContentMethod::ExactEnumeration;
  out.value = best->value;
  out.hardy = 1.0 / best->value;
  out.witness_a = VertexSet::from_mask(best->a);
  out.witness_b = VertexSet::from_mask(best->b);
  return out;
}

ContentResult neumann_content_sweep(const WeightedGraph& graph) {
  validate(graph);
  require_positive_masses(graph);
  const SpectralResult fiedler = neumann_eigenvalue(graph);
  const Eigen::VectorXd& x = fiedler.eigenvector;
  const std::size_t n = graph.vertex_count();

  std::vector<double> values(x.data(), x.data() + x.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  const DenseSymMatrix l = laplacian_matrix(graph);
  struct Best {
    double value;
    VertexSet a, b;
  };
  std::optional<Best> best;
  for (double lo : values) {
    if (!(lo < 0.0)) break;
    std::vector<VertexId> below;
    for (VertexId v = 0; v < n; ++v)
      if (x(static_cast<Index>(v)) <= lo) below.push_back(v);
    VertexSet a(std::move(below));
    for (double hi : values) {
      if (hi < 0.0) continue;
      std::vector<VertexId> above;
      for (VertexId v = 0; v < n; ++v)
        if (x(static_cast<Index>(v)) >= hi) above.push_back(v);
      VertexSet b(std::move(above));
      VertexSet first = a, second = std::move(b);
      if (second < first) std::swap(first, second);
      const double r = ordered_pair_ratio(graph, l, first.members(), second.members());
      const bool better = !best || r < best->value ||
                          (r == best->value && (first < best->a || (first == best->a && second < best->b)));
      if (better) best = Best{r, first, second};
    }
  }
  if (!best) throw Error(ErrorKind::SignCondition, "Neumann eigenvector has no negative entry");

  ContentResult out;
  out.method = ContentMethod::SweepHeuristic;
  out.value = best->value;
  out.hardy = 1.0 / best->value;
  out.witness_a = std::move(best->a);
  out.witness_b = std::move(best->b);
  return out;
}

// -------------------------------------------------------- isoperimetric

ContentResult isoperimetric_exact(const WeightedGraph& graph) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (n > kMaxIsoperimetricVertices)
    throw Error(ErrorKind::TooLarge,
                std::to_string(n) + " vertices exceed the enumeration limit of " +
                    std::to_string(kMaxIsoperimetricVertices),
                {n});
  if (n < 2) throw Error(ErrorKind::TooSmall, "a cut needs at least two vertices");
  require_positive_masses(graph);

  const double total = graph.total_mass();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  // mask = (m << 1) | 1 keeps vertex 0 on the A side; m = 2^{n-1} - 1 is the
  // full set and is excluded.
  const auto best = detail::parallel_min<Candidate>(
      0, (std::uint64_t{1} << (n - 1)) - 1, enumeration_workers(),
      [&](std::uint64_t m, std::optional<Candidate>& local) {
        const std::uint64_t mask = (m << 1) | 1U;
        double cut = 0.0;
        for (const auto& e : graph.edges())
          if (((mask >> e.u) & 1U) != ((mask >> e.v) & 1U)) cut += e.conductance;
        double mu = 0.0;
        for (VertexId v = 0; v < n; ++v)
          if ((mask >> v) & 1U) mu += graph.mass(v);
        const double side = std::min(mu, total - mu);
        offer(local, {cut / side, mask, full & ~mask});
      });

  ContentResult out;
  out.method = ContentMethod::ExactEnumeration;
  out.value = best->value;
  out.hardy = 1.0 / best->value;
  out.witness_a = VertexSet::from_mask(best->a);
  out.witness_b = VertexSet::from_mask(best->b);
  return out;
}

// ------------------------------------------------------ level-set path

LevelSetQuotient level_set_quotient(const WeightedGraph& graph, const VertexSet& boundary, const Eigen::VectorXd& x) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (static_cast<std::size_t>(x.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "potential length does not match vertex count");
  if (boundary.empty() || boundary.size() >= n || boundary.members().back() >= n)
    throw Error(ErrorKind::BadBoundary, "boundary must be a proper nonempty subset of the vertices");

  const double scale = x.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw Error(ErrorKind::ZeroVector, "potential is identically zero");
  const double tol = 1e-9 * scale;

  std::vector<double> q(n);
  bool has_negative = false, has_positive = false;
  for (VertexId v = 0; v < n; ++v) {
    const double value = x(static_cast<Index>(v));
    q[v] = std::abs(value) <= tol ? 0.0 : value;
    has_negative |= q[v] < 0.0;
    has_positive |= q[v] > 0.0;
  }
  if (has_negative && has_positive)
    throw Error(ErrorKind::MixedSigns, "potential takes both signs; pass a one-signed Dirichlet ground state");
  if (has_negative)
    for (auto& value : q) value = -value;
  for (VertexId v : boundary)
    if (q[v] != 0.0) throw Error(ErrorKind::BoundaryNotZero, "potential is nonzero on boundary vertex " + std::to_string(v), {v});

  // Distinct levels; a new level starts once a value exceeds the current
  // level's representative by more than tol.
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return q[a] < q[b]; });
  std::vector<double> levels{0.0};
  std::vector<std::size_t> level_of(n, 0);
  for (VertexId v : order) {
    if (q[v] - levels.back() > tol) levels.push_back(q[v]);
    level_of[v] = levels.size() - 1;
  }
  const std::size_t top = levels.size() - 1;
  if (top == 0) throw Error(ErrorKind::ZeroVector, "potential has no positive level");

  // Split every edge spanning more than one level so that, under the
  // minimum-energy extension, the inserted vertices take each skipped level.
  WeightedGraph refined = graph;
  for (const auto& e : graph.edges()) {
    VertexId lo = e.u, hi = e.v;
    if (level_of[lo] > level_of[hi]) std::swap(lo, hi);
    const std::size_t i = level_of[lo], j = level_of[hi];
    if (j - i < 2) continue;
    std::vector<double> fractions;
    const double span = levels[j] - levels[i];
    for (std::size_t m = i + 1; m <= j; ++m) fractions.push_back((levels[m] - levels[m - 1]) / span);
    double total = 0.0;
    for (double f : fractions) total += f;
    for (double& f : fractions) f /= total;
    refined = split_edge(refined, lo, hi, fractions);
    for (std::size_t m = i + 1; m < j; ++m) level_of.push_back(m);
  }

  std::vector<double> path_kappa(top, 0.0);
  std::vector<double> path_mass(top + 1, 0.0);
  for (VertexId v = 0; v < refined.vertex_count(); ++v) path_mass[level_of[v]] += refined.mass(v);
  for (const auto& e : refined.edges()) {
    const std::size_t a = level_of[e.u], b = level_of[e.v];
    if (a == b) continue;
    path_kappa[std::max(a, b) - 1] += e.conductance;
  }

  LevelSetQuotient out{path_graph(path_mass, path_kappa), std::move(levels), std::move(refined), std::move(level_of)};
  return out;
}

}  // namespace hardy
