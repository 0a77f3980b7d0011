#pragma once

#include <span>

#include "hardy/graph.hpp"
#include "hardy/linalg.hpp"

namespace hardy {

/// R(A,B), the reciprocal of the least energy x^T L x over potentials held
/// at 1 on A and 0 on B. Masses play no role.
double effective_resistance(const WeightedGraph& graph, const VertexSet& a, const VertexSet& b);

/// Energy-level primitive behind effective_resistance: 1/R(A,B) on a
/// prebuilt Laplacian. Members must be in range and disjoint; nothing is
/// checked. Used by the enumerations, which call it millions of times.
double inverse_resistance(const DenseSymMatrix& laplacian, std::span<const VertexId> a, std::span<const VertexId> b);

/// chi^T L^+ chi with chi = e_a - e_b, L^+ assembled from the Jacobi
/// spectrum. Kept as an independent cross-check of effective_resistance.
double resistance_via_pseudoinverse(const WeightedGraph& graph, VertexId a, VertexId b);

}  // namespace hardy
