#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hardy/graph.hpp"

namespace hardy {

enum class ContentMethod { ExactEnumeration, PathTailSet, SweepHeuristic };

std::string_view to_string(ContentMethod method);

/// A content (Dirichlet Psi, Neumann Psi_2 or isoperimetric Phi) with the
/// sets that attain it.
struct ContentResult {
  double value = 0.0;  // Psi, Psi_2 or Phi
  double hardy = 0.0;  // H = 1/Psi or H_2 = 1/Psi_2; 1/Phi for Phi
  VertexSet witness_a;
  std::optional<VertexSet> witness_b;
  ContentMethod method = ContentMethod::ExactEnumeration;
};

inline constexpr std::size_t kMaxDirichletInterior = 20;
inline constexpr std::size_t kMaxNeumannVertices = 12;
inline constexpr std::size_t kMaxIsoperimetricVertices = 20;

/// H = max_k (sum_{i<=k} 1/kappa_i) mu(A_k) over tail sets A_k = {v_k..v_N}
/// of a path built by path_graph, boundary {v_0}. Smallest k wins ties.
ContentResult hardy_path(const WeightedGraph& path);

/// Psi(G,S) = min over nonempty A in V \ S of R(S,A)^{-1} / mu(A), by
/// enumerating every subset. Zero-mass subsets are skipped; ties go to the
/// smallest canonical key.
ContentResult dirichlet_content_exact(const WeightedGraph& graph, const VertexSet& boundary);

/// Psi_2(G) = min over disjoint nonempty A, B of
/// (mu(A)^{-1} + mu(B)^{-1}) / R(A,B), enumerating all 3^n assignments.
/// Each unordered pair is reported once, A having the smaller key.
ContentResult neumann_content_exact(const WeightedGraph& graph);

/// Upper estimate of Psi_2 from threshold pairs t- < 0 <= t+ of the Neumann
/// eigenvector: A = {x <= t-}, B = {x >= t+}.
ContentResult neumann_content_sweep(const WeightedGraph& graph);

/// Phi(G) = min over cuts of cut conductance / min(mu(A), mu(complement)),
/// with vertex 0 kept in A.
ContentResult isoperimetric_exact(const WeightedGraph& graph);

/// (mu(A)^{-1} + mu(B)^{-1}) / R(A,B) evaluated exactly as the enumeration
/// does (pair put in canonical order first), so values are comparable bit
/// for bit with neumann_content_exact.
double neumann_pair_ratio(const WeightedGraph& graph, const VertexSet& a, const VertexSet& b);

struct LevelSetQuotient {
  WeightedGraph path;          // vertex i is level class i; boundary is vertex 0
  std::vector<double> levels;  // l_0 = 0 < l_1 < ... < l_N
  WeightedGraph refined;       // graph after splitting level-spanning edges
  std::vector<std::size_t> level_of;  // level index of every vertex of `refined`
};

/// Collapses the level sets of a one-signed potential vanishing on S into a
/// weighted path. Values within 1e-9 max|x| of each other share a level;
/// an all-nonpositive x is negated first.
LevelSetQuotient level_set_quotient(const WeightedGraph& graph, const VertexSet& boundary, const Eigen::VectorXd& x);

/// Worker threads used by the enumerations: HARDY_SPECTRAL_THREADS when set
/// to a positive integer, otherwise the hardware concurrency.
std::size_t enumeration_workers();

}  // namespace hardy
