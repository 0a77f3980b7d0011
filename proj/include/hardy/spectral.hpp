#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hardy/graph.hpp"
#include "hardy/linalg.hpp"

namespace hardy {

struct LaplacianSystem {
  DenseSymMatrix laplacian;  // L = D - A
  DenseSymMatrix mass;       // M = diag(mu)
  DenseSymMatrix degree;     // D = diag(d)
};

/// L, M and D of a graph. Only the edge list is read, so this also accepts
/// graphs that have not been validated.
LaplacianSystem laplacian(const WeightedGraph& graph);

DenseSymMatrix laplacian_matrix(const WeightedGraph& graph);

enum class ProblemKind { Neumann, Dirichlet };

struct SpectralResult {
  double eigenvalue = 0.0;
  /// Full-length vector, M-normalised (x^T M x = 1), zero on the boundary
  /// for Dirichlet problems. Sign: the entry of largest magnitude is
  /// positive, ties going to the lowest vertex id.
  Eigen::VectorXd eigenvector;
  /// ||L x - lambda M x||_2 over the active coordinates.
  double residual = 0.0;
  ProblemKind kind = ProblemKind::Neumann;
  VertexSet boundary;  // empty for Neumann
};

/// Second-smallest eigenvalue of M^{-1/2} L M^{-1/2}.
SpectralResult neumann_eigenvalue(const WeightedGraph& graph);

/// Smallest eigenvalue of the whitened principal submatrix on V \ S.
SpectralResult dirichlet_eigenvalue(const WeightedGraph& graph, const VertexSet& boundary);

/// Minimum-energy extension of the fixed values to every vertex.
Eigen::VectorXd harmonic_extension(const WeightedGraph& graph, const std::map<VertexId, double>& fixed);

/// Same, on a prebuilt Laplacian with no graph validation; `fixed[v]` is
/// set for the pinned vertices.
Eigen::VectorXd harmonic_extension(const DenseSymMatrix& laplacian, const std::vector<std::optional<double>>& fixed);

/// x^T L x / x^T M x. With a boundary, x must vanish on it exactly.
double rayleigh_quotient(const WeightedGraph& graph, const Eigen::VectorXd& x,
                         const std::optional<VertexSet>& boundary = std::nullopt);

/// Sum over edges of kappa (x_u - x_v)^2.
double edge_energy(const WeightedGraph& graph, const Eigen::VectorXd& x);

}  // namespace hardy
