#pragma once

// Independent reference computations built directly on Eigen's solvers.
// None of them share code with the library's own linear algebra.

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hardy/graph.hpp"
#include "hardy/rng.hpp"

namespace oracle {

inline Eigen::MatrixXd dense_laplacian(const hardy::WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    l(u, u) += e.conductance;
    l(v, v) += e.conductance;
    l(u, v) -= e.conductance;
    l(v, u) -= e.conductance;
  }
  return l;
}

inline Eigen::VectorXd masses(const hardy::WeightedGraph& g) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(g.vertex_count()));
  for (std::size_t i = 0; i < g.vertex_count(); ++i) m(static_cast<Eigen::Index>(i)) = g.mass(i);
  return m;
}

// R(A,B) from the Dirichlet problem u|A = 1, u|B = 0, solved with LDLT.
inline double resistance(const hardy::WeightedGraph& g, std::uint64_t mask_a, std::uint64_t mask_b) {
  const Eigen::MatrixXd l = dense_laplacian(g);
  const auto n = l.rows();
  std::vector<Eigen::Index> free;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask_a >> i & 1)
      u(i) = 1.0;
    else if (!(mask_b >> i & 1))
      free.push_back(i);
  }
  if (!free.empty()) {
    const auto k = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd lff(k, k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) lff(a, b) = l(free[a], free[b]);
      for (Eigen::Index j = 0; j < n; ++j)
        if (mask_a >> j & 1) rhs(a) -= l(free[a], j);
    }
    const Eigen::VectorXd x = lff.ldlt().solve(rhs);
    for (Eigen::Index a = 0; a < k; ++a) u(free[a]) = x(a);
  }
  return 1.0 / u.dot(l * u);
}

inline double neumann(const hardy::WeightedGraph& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g), masses(g).asDiagonal().toDenseMatrix());
  return es.eigenvalues()(1);
}

inline double dirichlet(const hardy::WeightedGraph& g, std::uint64_t boundary_mask) {
  const Eigen::MatrixXd l = dense_laplacian(g);
  const Eigen::VectorXd m = masses(g);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    if (!(boundary_mask >> i & 1)) keep.push_back(i);
  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd a(k, k), b = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = l(keep[i], keep[j]);
    b(i, i) = m(keep[i]);
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
  return es.eigenvalues()(0);
}

inline double mass_of(const hardy::WeightedGraph& g, std::uint64_t mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (mask >> i & 1) s += g.mass(i);
  return s;
}

// min over nonempty A in V\S of 1 / (R(S,A) mu(A)).
inline double dirichlet_content(const hardy::WeightedGraph& g, std::uint64_t boundary_mask) {
  const std::uint64_t all = (std::uint64_t{1} << g.vertex_count()) - 1;
  const std::uint64_t interior = all & ~boundary_mask;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = interior; a; a = (a - 1) & interior) {
    const double mu = mass_of(g, a);
    if (mu <= 0.0) continue;
    best = std::min(best, 1.0 / (resistance(g, a, boundary_mask) * mu));
  }
  return best;
}

// min over disjoint nonempty A, B of (1/mu(A) + 1/mu(B)) / R(A,B).
inline double neumann_content(const hardy::WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t code = 0; code < total; ++code) {
    std::uint64_t a = 0, b = 0;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      if (c % 3 == 1) a |= std::uint64_t{1} << i;
      if (c % 3 == 2) b |= std::uint64_t{1} << i;
    }
    if (!a || !b) continue;
    const double r = resistance(g, a, b);
    best = std::min(best, (1.0 / mass_of(g, a) + 1.0 / mass_of(g, b)) / r);
  }
  return best;
}

inline double isoperimetric(const hardy::WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = 1; a < all; ++a) {
    double cut = 0.0;
    for (const auto& e : g.edges())
      if ((a >> e.u & 1) != (a >> e.v & 1)) cut += e.conductance;
    best = std::min(best, cut / std::min(mass_of(g, a), mass_of(g, all & ~a)));
  }
  return best;
}

// Graph drawn the same way as the acceptance corpus: n in [3,8], weights in
// [0.1,10], edge probability 0.4.
inline hardy::WeightedGraph corpus_graph(std::uint64_t seed, std::size_t lo = 3, std::size_t hi = 8) {
  hardy::Xorshift64Star pick(seed ^ 0xC0FFEEu);
  hardy::RandomGraphParams p;
  p.n = lo + static_cast<std::size_t>(pick.below(hi - lo + 1));
  p.edge_probability = 0.4;
  p.mass_range = {0.1, 10.0};
  p.conductance_range = {0.1, 10.0};
  p.seed = seed;
  return hardy::random_graph(p);
}

// Nonempty proper subset of the vertices.
inline hardy::VertexSet random_boundary(std::size_t n, hardy::Xorshift64Star& rng) {
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::uint64_t mask = 0;
  while (mask == 0 || mask == all) mask = rng.next() & all;
  return hardy::VertexSet::from_mask(mask);
}

}  // namespace oracle
