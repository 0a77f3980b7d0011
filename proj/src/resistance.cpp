#include "hardy/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "hardy/spectral.hpp"

namespace hardy {

double inverse_resistance(const DenseSymMatrix& laplacian, std::span<const VertexId> a, std::span<const VertexId> b) {
  const auto n = static_cast<std::size_t>(laplacian.order());
  if (a.size() + b.size() == n) {
    // No free vertices: the unit-drop energy is the total conductance of
    // the A-B edges.
    double crossing = 0.0;
    for (VertexId i : a)
      for (VertexId j : b) crossing -= laplacian(static_cast<Index>(i), static_cast<Index>(j));
    return crossing;
  }
  std::vector<std::optional<double>> fixed(n);
  for (VertexId v : a) fixed[v] = 1.0;
  for (VertexId v : b) fixed[v] = 0.0;
  const Eigen::VectorXd x = harmonic_extension(laplacian, fixed);
  return quadratic_form(laplacian, x);
}

double effective_resistance(const WeightedGraph& graph, const VertexSet& a, const VertexSet& b) {
  validate(graph);
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "resistance needs two nonempty sets");
  if (a.members().back() >= graph.vertex_count() || b.members().back() >= graph.vertex_count())
    throw Error(ErrorKind::VertexOutOfRange, "set member outside the graph");
  if (a.intersects(b)) throw Error(ErrorKind::SetsOverlap, "resistance sets must be disjoint");
  return 1.0 / inverse_resistance(laplacian_matrix(graph), a.members(), b.members());
}

double resistance_via_pseudoinverse(const WeightedGraph& graph, VertexId a, VertexId b) {
  validate(graph);
  if (a == b) throw Error(ErrorKind::SameVertex, "resistance between a vertex and itself", {a});
  if (a >= graph.vertex_count() || b >= graph.vertex_count())
    throw Error(ErrorKind::VertexOutOfRange, "vertex outside the graph", {a, b});

  const auto eig = jacobi_eigen(laplacian_matrix(graph));
  const Index n = eig.eigenvalues.size();
  const double cutoff = static_cast<double>(n) * 1e-12 * std::abs(eig.eigenvalues(n - 1));
  double r = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (std::abs(eig.eigenvalues(k)) <= cutoff) continue;  // kernel
    const double proj = eig.eigenvectors(static_cast<Index>(a), k) - eig.eigenvectors(static_cast<Index>(b), k);
    r += proj * proj / eig.eigenvalues(k);
  }
  return r;
}

}  // namespace hardy
