#include "hardy/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hardy/rng.hpp"

namespace hardy {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::vector<VertexId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  std::vector<VertexId> m;
  for (VertexId i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) m.push_back(i);
  VertexSet out;
  out.members_ = std::move(m);
  return out;
}

VertexSet VertexSet::range(VertexId first, VertexId last) {
  VertexSet out;
  for (VertexId v = first; v < last; ++v) out.members_.push_back(v);
  return out;
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

std::uint64_t VertexSet::canonical_key() const {
  std::uint64_t key = 0;
  for (VertexId v : members_) {
    if (v >= 64) throw Error(ErrorKind::TooLarge, "vertex id " + std::to_string(v) + " exceeds a 64-bit key");
    key |= std::uint64_t{1} << v;
  }
  return key;
}

VertexSet VertexSet::complement(std::size_t vertex_count) const {
  VertexSet out;
  for (VertexId v = 0; v < vertex_count; ++v)
    if (!contains(v)) out.members_.push_back(v);
  return out;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
  // Numeric order of the bitmasks: decided by the largest id present in
  // exactly one of the two sets.
  auto i = a.members_.rbegin();
  auto j = b.members_.rbegin();
  for (; i != a.members_.rend() && j != b.members_.rend(); ++i, ++j) {
    if (*i != *j) return *i <=> *j;
  }
  if (i != a.members_.rend()) return std::strong_ordering::greater;
  if (j != b.members_.rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// ------------------------------------------------------------ WeightedGraph

WeightedGraph::WeightedGraph(std::vector<double> masses, std::vector<Edge> edges, std::vector<std::string> labels)
    : masses_(std::move(masses)), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (masses_.empty()) throw Error(ErrorKind::LengthMismatch, "graph needs at least one vertex");
  if (!labels_.empty() && labels_.size() != masses_.size())
    throw Error(ErrorKind::LengthMismatch, "label count does not match vertex count");
  adjacency_.resize(masses_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u >= masses_.size() || edge.v >= masses_.size())
      throw Error(ErrorKind::VertexOutOfRange, "edge " + std::to_string(e) + " references a missing vertex",
                  {edge.u, edge.v});
    adjacency_[edge.u].emplace_back(edge.v, e);
    if (edge.u != edge.v) adjacency_[edge.v].emplace_back(edge.u, e);
  }
}

double WeightedGraph::mass(const VertexSet& set) const {
  double m = 0.0;
  for (VertexId v : set) m += masses_.at(v);
  return m;
}

double WeightedGraph::total_mass() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

bool WeightedGraph::all_masses_positive() const {
  return std::all_of(masses_.begin(), masses_.end(), [](double m) { return m > 0.0; });
}

double WeightedGraph::degree(VertexId v) const {
  double d = 0.0;
  for (const auto& [w, e] : adjacency_.at(v))
    if (w != v) d += edges_[e].conductance;
  return d;
}

std::optional<std::size_t> WeightedGraph::find_edge(VertexId u, VertexId v) const {
  if (u >= adjacency_.size()) return std::nullopt;
  for (const auto& [w, e] : adjacency_[u])
    if (w == v) return e;
  return std::nullopt;
}

std::string WeightedGraph::label(VertexId v) const {
  if (labels_.empty()) return "v" + std::to_string(v);
  return labels_.at(v);
}

double WeightedGraph::cut_conductance(const VertexSet& set) const {
  double c = 0.0;
  for (const auto& e : edges_)
    if (set.contains(e.u) != set.contains(e.v)) c += e.conductance;
  return c;
}

std::vector<std::vector<VertexId>> WeightedGraph::components() const {
  std::vector<std::vector<VertexId>> out;
  std::vector<bool> seen(vertex_count(), false);
  for (VertexId root = 0; root < vertex_count(); ++root) {
    if (seen[root]) continue;
    std::vector<VertexId> comp{root};
    seen[root] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (const auto& [w, e] : adjacency_[comp[head]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

void validate(const WeightedGraph& graph) {
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges()[e];
    if (edge.u == edge.v)
      throw Error(ErrorKind::SelfLoop, "edge " + std::to_string(e) + " is a self-loop on " + std::to_string(edge.u),
                  {edge.u, edge.v});
    const auto key = std::minmax(edge.u, edge.v);
    if (!seen.emplace(key, e).second)
      throw Error(ErrorKind::DuplicateEdge,
                  "pair (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") appears twice",
                  {key.first, key.second});
    if (!(edge.conductance > 0.0) || !std::isfinite(edge.conductance))
      throw Error(ErrorKind::NonPositiveConductance,
                  "edge (" + std::to_string(edge.u) + "," + std::to_string(edge.v) + ") has conductance " +
                      std::to_string(edge.conductance),
                  {edge.u, edge.v});
  }
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    const double m = graph.mass(v);
    if (!(m >= 0.0) || !std::isfinite(m))
      throw Error(ErrorKind::NegativeMass, "vertex " + std::to_string(v) + " has mass " + std::to_string(m), {v});
  }
  auto comps = graph.components();
  if (comps.size() > 1) throw Error::disconnected(std::move(comps));
}

// ---------------------------------------------------------------- builders

WeightedGraph path_graph(std::span<const double> masses, std::span<const double> conductances) {
  if (masses.size() != conductances.size() + 1)
    throw Error(ErrorKind::LengthMismatch, "path with " + std::to_string(conductances.size()) +
                                               " edges needs " + std::to_string(conductances.size() + 1) +
                                               " masses, got " + std::to_string(masses.size()));
  std::vector<Edge> edges;
  edges.reserve(conductances.size());
  for (std::size_t i = 1; i <= conductances.size(); ++i) {
    if (!(conductances[i - 1] > 0.0))
      throw Error(ErrorKind::NonPositiveConductance, "path edge " + std::to_string(i) + " is not positive",
                  {i - 1, i});
    edges.push_back({i - 1, i, conductances[i - 1]});
  }
  return WeightedGraph(std::vector<double>(masses.begin(), masses.end()), std::move(edges));
}

namespace {

bool valid_range(std::pair<double, double> r) {
  return std::isfinite(r.first) && std::isfinite(r.second) && r.first > 0.0 && r.first <= r.second;
}

}  // namespace

WeightedGraph random_graph(const RandomGraphParams& params) {
  const std::size_t n = params.n;
  if (n < 2) throw Error(ErrorKind::BadRange, "random_graph needs n >= 2");
  if (!(params.edge_probability >= 0.0 && params.edge_probability <= 1.0))
    throw Error(ErrorKind::BadRange, "edge probability must lie in [0, 1]");
  if (!valid_range(params.mass_range)) throw Error(ErrorKind::BadRange, "mass range must satisfy 0 < lo <= hi");
  if (!valid_range(params.conductance_range))
    throw Error(ErrorKind::BadRange, "conductance range must satisfy 0 < lo <= hi");

  Xorshift64Star rng(params.seed);

  std::vector<VertexId> pruefer(n - 2);
  for (auto& x : pruefer) x = static_cast<VertexId>(rng.below(n));

  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<std::size_t> degree(n, 1);
  for (VertexId x : pruefer) ++degree[x];
  for (VertexId x : pruefer) {
    VertexId leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    adjacent[leaf][x] = adjacent[x][leaf] = true;
    --degree[leaf];
    --degree[x];
  }
  {
    VertexId a = n, b = n;
    for (VertexId v = 0; v < n; ++v)
      if (degree[v] == 1) (a == n ? a : b) = v;
    adjacent[a][b] = adjacent[b][a] = true;
  }

  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (!adjacent[i][j] && rng.uniform01() < params.edge_probability) adjacent[i][j] = adjacent[j][i] = true;

  std::vector<double> masses(n);
  for (auto& m : masses) m = rng.uniform(params.mass_range.first, params.mass_range.second);

  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (adjacent[i][j])
        edges.push_back({i, j, rng.uniform(params.conductance_range.first, params.conductance_range.second)});

  return WeightedGraph(std::move(masses), std::move(edges));
}

// ---------------------------------------------------------------- surgeries

WeightedGraph split_edge(const WeightedGraph& graph, VertexId u, VertexId v, std::span<const double> fractions) {
  const auto found = graph.find_edge(u, v);
  if (!found || u == v)
    throw Error(ErrorKind::NoSuchEdge, "no edge (" + std::to_string(u) + "," + std::to_string(v) + ")", {u, v});
  if (fractions.empty()) throw Error(ErrorKind::FractionsInvalid, "at least one fraction is required");
  double total = 0.0;
  for (double a : fractions) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::FractionsInvalid, "fractions must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::FractionsInvalid, "fractions sum to " + std::to_string(total) + ", not 1");

  const std::size_t n = graph.vertex_count();
  const std::size_t k = fractions.size();
  const double kappa = graph.edges()[*found].conductance;

  std::vector<double> masses = graph.masses();
  masses.resize(n + k - 1, 0.0);
  std::vector<std::string> labels = graph.labels();
  if (graph.has_labels())
    for (std::size_t i = 1; i < k; ++i)
      labels.push_back(graph.label(u) + "~" + graph.label(v) + "#" + std::to_string(i));

  // Chain u = c_0, c_1 = n, ..., c_{k-1} = n+k-2, c_k = v.
  auto chain = [&](std::size_t i) -> VertexId {
    if (i == 0) return u;
    if (i == k) return v;
    return n + i - 1;
  };
  std::vector<Edge> edges;
  edges.reserve(graph.edge_count() + k - 1);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (e == *found)
      edges.push_back({chain(0), chain(1), kappa / fractions[0]});
    else
      edges.push_back(graph.edges()[e]);
  }
  for (std::size_t i = 1; i < k; ++i) edges.push_back({chain(i), chain(i + 1), kappa / fractions[i]});

  return WeightedGraph(std::move(masses), std::move(edges), std::move(labels));
}

Contraction contract(const WeightedGraph& graph, const VertexSet& set) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "cannot contract an empty set");
  const std::size_t n = graph.vertex_count();
  if (set.members().back() >= n)
    throw Error(ErrorKind::VertexOutOfRange, "set member outside the graph", {set.members().back()});

  const VertexId first = set.members().front();
  std::vector<VertexId> remap(n);
  std::vector<double> masses;
  std::vector<std::string> labels;
  VertexId merged = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (set.contains(v) && v != first) continue;
    const VertexId id = masses.size();
    if (v == first) {
      merged = id;
      masses.push_back(graph.mass(set));
      if (graph.has_labels()) {
        std::string joined;
        for (VertexId w : set) joined += (joined.empty() ? "" : "+") + graph.label(w);
        labels.push_back(joined);
      }
    } else {
      masses.push_back(graph.mass(v));
      if (graph.has_labels()) labels.push_back(graph.label(v));
    }
    remap[v] = id;
  }
  for (VertexId v : set) remap[v] = merged;

  std::vector<Edge> edges;
  std::map<std::pair<VertexId, VertexId>, std::size_t> slot;
  for (const auto& e : graph.edges()) {
    const VertexId a = remap[e.u], b = remap[e.v];
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    auto [it, fresh] = slot.emplace(key, edges.size());
    if (fresh)
      edges.push_back({a, b, e.conductance});
    else
      edges[it->second].conductance += e.conductance;
  }
  return {WeightedGraph(std::move(masses), std::move(edges), std::move(labels)), merged};
}

VertexSet PinchedGraph::negative() const {
  std::vector<VertexId> m;
  for (VertexId v = 0; v < f_extended.size(); ++v)
    if (f_extended[v] < 0.0) m.push_back(v);
  return VertexSet(std::move(m));
}

VertexSet PinchedGraph::positive() const {
  std::vector<VertexId> m;
  for (VertexId v = 0; v < f_extended.size(); ++v)
    if (f_extended[v] > 0.0) m.push_back(v);
  return VertexSet(std::move(m));
}

PinchedGraph pinch(const WeightedGraph& graph, std::span<const double> f) {
  const std::size_t n = graph.vertex_count();
  if (f.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "potential has " + std::to_string(f.size()) + " entries for " +
                                                  std::to_string(n) + " vertices");
  for (VertexId v = 0; v < n; ++v)
    if (!(graph.mass(v) > 0.0)) throw Error(ErrorKind::ZeroMass, "pinch needs positive masses", {v});
  const bool has_negative = std::any_of(f.begin(), f.end(), [](double x) { return x < 0.0; });
  const bool has_positive = std::any_of(f.begin(), f.end(), [](double x) { return x > 0.0; });
  if (!has_negative || !has_positive)
    throw Error(ErrorKind::SignCondition, "potential must take both strictly positive and strictly negative values");

  PinchedGraph out;
  std::vector<double> masses = graph.masses();
  std::vector<std::string> labels = graph.labels();
  out.f_extended.assign(f.begin(), f.end());
  out.origin.resize(n);
  for (VertexId v = 0; v < n; ++v) out.origin[v].vertex = v;

  std::vector<Edge> edges;
  for (const auto& e : graph.edges()) {
    const double fu = f[e.u], fv = f[e.v];
    const bool crosses = (fu < 0.0 && fv > 0.0) || (fu > 0.0 && fv < 0.0);
    if (!crosses) {
      edges.push_back(e);
      continue;
    }
    const VertexId neg = fu < 0.0 ? e.u : e.v;
    const VertexId pos = fu < 0.0 ? e.v : e.u;
    const double span = f[pos] - f[neg];
    // Fraction of the edge (measured in resistance) from the negative end
    // to the zero crossing, and its complement, both computed without
    // cancellation.
    const double alpha = -f[neg] / span;
    const double beta = f[pos] / span;
    const VertexId s = masses.size();
    masses.push_back(0.0);
    if (graph.has_labels()) labels.push_back(graph.label(e.u) + "~" + graph.label(e.v));
    out.f_extended.push_back(0.0);
    out.origin.push_back({true, 0, e.u, e.v});
    edges.push_back({neg, s, e.conductance / alpha});
    edges.push_back({s, pos, e.conductance / beta});
  }

  out.graph = WeightedGraph(std::move(masses), std::move(edges), std::move(labels));
  std::vector<VertexId> zero, nonpos, nonneg;
  for (VertexId v = 0; v < out.f_extended.size(); ++v) {
    const double x = out.f_extended[v];
    if (x == 0.0) zero.push_back(v);
    if (x <= 0.0) nonpos.push_back(v);
    if (x >= 0.0) nonneg.push_back(v);
  }
  out.zero = VertexSet(std::move(zero));
  out.nonpositive = VertexSet(std::move(nonpos));
  out.nonnegative = VertexSet(std::move(nonneg));
  return out;
}

}  // namespace hardy
