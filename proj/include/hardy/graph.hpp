#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {

struct Edge {
  VertexId u;
  VertexId v;
  double conductance;
};

/// Sorted, duplicate-free set of vertex ids. Sets are ordered by their
/// canonical bitmask read as an unsigned integer (lowest id = bit 0), which
/// is the tie-break order used by every enumeration in the library.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<VertexId> members);
  VertexSet(std::initializer_list<VertexId> members) : VertexSet(std::vector<VertexId>(members)) {}

  static VertexSet from_mask(std::uint64_t mask);
  static VertexSet range(VertexId first, VertexId last);  // [first, last)

  const std::vector<VertexId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(VertexId v) const;
  bool intersects(const VertexSet& other) const;

  /// Bitmask with bit i set for member i. TooLarge if a member is >= 64.
  std::uint64_t canonical_key() const;

  VertexSet complement(std::size_t vertex_count) const;
  VertexSet united(const VertexSet& other) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b);

 private:
  std::vector<VertexId> members_;
};

/// Undirected simple graph with vertex masses and edge conductances.
/// Construction checks only that edge endpoints are in range; the modelling
/// assumptions (simple, connected, positive weights) are checked by
/// validate().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<double> masses, std::vector<Edge> edges, std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return masses_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<double>& masses() const noexcept { return masses_; }
  double mass(VertexId v) const { return masses_.at(v); }
  double mass(const VertexSet& set) const;
  double total_mass() const;
  bool all_masses_positive() const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Incident (neighbour, edge index) pairs.
  const std::vector<std::pair<VertexId, std::size_t>>& incident(VertexId v) const { return adjacency_.at(v); }

  /// Weighted degree: sum of incident conductances.
  double degree(VertexId v) const;

  std::optional<std::size_t> find_edge(VertexId u, VertexId v) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// The vertex label, or "v<id>" when the graph is unlabelled.
  std::string label(VertexId v) const;

  /// Total conductance of edges with exactly one endpoint in `set`.
  double cut_conductance(const VertexSet& set) const;

  /// Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<VertexId>> components() const;

 private:
  std::vector<double> masses_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adjacency_;
};

/// Throws the first violated assumption: SelfLoop, DuplicateEdge,
/// NonPositiveConductance, NegativeMass, then Disconnected.
void validate(const WeightedGraph& graph);

/// Vertices 0..N with edge (i-1, i) carrying conductances[i-1].
WeightedGraph path_graph(std::span<const double> masses, std::span<const double> conductances);

struct RandomGraphParams {
  std::size_t n = 2;
  double edge_probability = 0.5;
  std::pair<double, double> mass_range{1.0, 1.0};
  std::pair<double, double> conductance_range{1.0, 1.0};
  std::uint64_t seed = 0;
};

/// Connected random graph: a uniform random labelled spanning tree (Pruefer
/// decoding) plus every other pair independently with edge_probability.
/// Draw order from one Xorshift64Star stream: n-2 Pruefer entries; one
/// uniform per non-tree pair (i<j, lexicographic); n masses; one
/// conductance per edge in (i<j) lexicographic order.
WeightedGraph random_graph(const RandomGraphParams& params);

/// Replaces edge (u,v) by a chain of fractions.size() segments running from
/// u to v, segment i with conductance kappa / fractions[i]. The k-1 inserted
/// vertices have mass zero and are appended in chain order.
WeightedGraph split_edge(const WeightedGraph& graph, VertexId u, VertexId v, std::span<const double> fractions);

struct Contraction {
  WeightedGraph graph;
  VertexId merged;
};

/// Merges `set` into one vertex of mass mu(set). Surviving vertices keep
/// their relative order; the merged vertex takes the slot of the smallest
/// member. Parallel edges are combined by adding conductances.
Contraction contract(const WeightedGraph& graph, const VertexSet& set);

struct VertexOrigin {
  bool inserted = false;
  VertexId vertex = 0;             // original id when !inserted
  VertexId edge_u = 0, edge_v = 0;  // original edge when inserted
};

struct PinchedGraph {
  WeightedGraph graph;
  std::vector<double> f_extended;
  VertexSet zero;          // F_0
  VertexSet nonpositive;   // F_{<=0}
  VertexSet nonnegative;   // F_{>=0}
  std::vector<VertexOrigin> origin;

  VertexSet negative() const;  // F_{<0}
  VertexSet positive() const;  // F_{>0}
};

/// Inserts a zero-mass vertex on every edge whose endpoints have strictly
/// opposite signs under f, placed where the minimum-energy extension of f
/// vanishes. Exact zeros of f are left in place and belong to F_0.
PinchedGraph pinch(const WeightedGraph& graph, std::span<const double> f);

}  // namespace hardy
