#include "hardy/spectral.hpp"

#include <cmath>

namespace hardy {

LaplacianSystem laplacian(const WeightedGraph& graph) {
  const auto n = static_cast<Index>(graph.vertex_count());
  LaplacianSystem sys{DenseSymMatrix(n), DenseSymMatrix(n), DenseSymMatrix(n)};
  for (const auto& e : graph.edges()) {
    const auto u = static_cast<Index>(e.u), v = static_cast<Index>(e.v);
    sys.laplacian.add(u, u, e.conductance);
    sys.laplacian.add(v, v, e.conductance);
    sys.laplacian.add(u, v, -e.conductance);
    sys.degree.add(u, u, e.conductance);
    sys.degree.add(v, v, e.conductance);
  }
  for (Index v = 0; v < n; ++v) sys.mass.add(v, v, graph.mass(static_cast<VertexId>(v)));
  return sys;
}

DenseSymMatrix laplacian_matrix(const WeightedGraph& graph) {
  const auto n = static_cast<Index>(graph.vertex_count());
  DenseSymMatrix l(n);
  for (const auto& e : graph.edges()) {
    const auto u = static_cast<Index>(e.u), v = static_cast<Index>(e.v);
    l.add(u, u, e.conductance);
    l.add(v, v, e.conductance);
    l.add(u, v, -e.conductance);
  }
  return l;
}

namespace {

/// Makes the entry of largest magnitude positive. Magnitudes within
/// 1e-9 relative of the maximum count as tied; the lowest id wins.
void fix_sign(Eigen::VectorXd& x) {
  if (x.size() == 0) return;
  const double top = x.cwiseAbs().maxCoeff();
  Index best = 0;
  while (std::abs(x(best)) < top * (1.0 - 1e-9)) ++best;
  if (x(best) < 0.0) x = -x;
}

/// Whitened operator W = M^{-1/2} L M^{-1/2} on the given coordinates.
DenseSymMatrix whiten(const DenseSymMatrix& l, const WeightedGraph& graph, const std::vector<Index>& active) {
  const auto k = static_cast<Index>(active.size());
  std::vector<double> scale(active.size());
  for (std::size_t i = 0; i < active.size(); ++i)
    scale[i] = 1.0 / std::sqrt(graph.mass(static_cast<VertexId>(active[i])));
  Matrix<double> w(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i; j < k; ++j) {
      const double s = scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)];
      w(i, j) = w(j, i) = l(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]) * s;
    }
  return DenseSymMatrix(std::move(w));
}

double residual_norm(const DenseSymMatrix& l, const WeightedGraph& graph, const Eigen::VectorXd& x, double lambda,
                     const std::vector<Index>& active) {
  const Eigen::VectorXd lx = l.dense() * x;
  double s = 0.0;
  for (Index i : active) {
    const double r = lx(i) - lambda * graph.mass(static_cast<VertexId>(i)) * x(i);
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

SpectralResult neumann_eigenvalue(const WeightedGraph& graph) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (n < 2) throw Error(ErrorKind::TooSmall, "the Neumann problem needs at least two vertices");
  for (VertexId v = 0; v < n; ++v)
    if (!(graph.mass(v) > 0.0)) throw Error(ErrorKind::ZeroMass, "Neumann problem needs positive masses", {v});

  const DenseSymMatrix l = laplacian_matrix(graph);
  std::vector<Index> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Index>(i);
  const auto eig = jacobi_eigen(whiten(l, graph, all));

  SpectralResult out;
  out.kind = ProblemKind::Neumann;
  out.eigenvalue = eig.eigenvalues(1);
  out.eigenvector.resize(static_cast<Index>(n));
  for (Index i = 0; i < static_cast<Index>(n); ++i)
    out.eigenvector(i) = eig.eigenvectors(i, 1) / std::sqrt(graph.mass(static_cast<VertexId>(i)));
  fix_sign(out.eigenvector);
  out.residual = residual_norm(l, graph, out.eigenvector, out.eigenvalue, all);
  return out;
}

SpectralResult dirichlet_eigenvalue(const WeightedGraph& graph, const VertexSet& boundary) {
  validate(graph);
  const std::size_t n = graph.vertex_count();
  if (boundary.empty() || boundary.size() >= n || boundary.members().back() >= n)
    throw Error(ErrorKind::BadBoundary, "boundary must be a proper nonempty subset of the vertices");

  std::vector<Index> interior;
  for (VertexId v = 0; v < n; ++v) {
    if (boundary.contains(v)) continue;
    if (!(graph.mass(v) > 0.0))
      throw Error(ErrorKind::ZeroMass, "interior vertex " + std::to_string(v) + " has zero mass", {v});
    interior.push_back(static_cast<Index>(v));
  }

  const DenseSymMatrix l = laplacian_matrix(graph);
  const auto eig = jacobi_eigen(whiten(l, graph, interior));

  SpectralResult out;
  out.kind = ProblemKind::Dirichlet;
  out.boundary = boundary;
  out.eigenvalue = eig.eigenvalues(0);
  out.eigenvector = Eigen::VectorXd::Zero(static_cast<Index>(n));
  for (std::size_t i = 0; i < interior.size(); ++i)
    out.eigenvector(interior[i]) =
        eig.eigenvectors(static_cast<Index>(i), 0) / std::sqrt(graph.mass(static_cast<VertexId>(interior[i])));
  fix_sign(out.eigenvector);
  out.residual = residual_norm(l, graph, out.eigenvector, out.eigenvalue, interior);
  return out;
}

Eigen::VectorXd harmonic_extension(const DenseSymMatrix& laplacian, const std::vector<std::optional<double>>& fixed) {
  const Index n = laplacian.order();
  if (static_cast<Index>(fixed.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "fixed-value table does not match the Laplacian order");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<Index> free;
  bool any_fixed = false;
  for (Index v = 0; v < n; ++v) {
    if (fixed[static_cast<std::size_t>(v)]) {
      x(v) = *fixed[static_cast<std::size_t>(v)];
      any_fixed = true;
    } else {
      free.push_back(v);
    }
  }
  if (!any_fixed) throw Error(ErrorKind::EmptyFixedSet, "harmonic extension needs at least one fixed vertex");
  if (free.empty()) return x;

  // L_FF x_F = -L_FB x_B
  Eigen::VectorXd rhs(static_cast<Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) {
    double s = 0.0;
    for (Index b = 0; b < n; ++b)
      if (fixed[static_cast<std::size_t>(b)]) s -= laplacian(free[i], b) * x(b);
    rhs(static_cast<Index>(i)) = s;
  }
  const Eigen::VectorXd xf = cholesky_solve(laplacian.principal(free), rhs);
  for (std::size_t i = 0; i < free.size(); ++i) x(free[i]) = xf(static_cast<Index>(i));
  return x;
}

Eigen::VectorXd harmonic_extension(const WeightedGraph& graph, const std::map<VertexId, double>& fixed) {
  validate(graph);
  if (fixed.empty()) throw Error(ErrorKind::EmptyFixedSet, "harmonic extension needs at least one fixed vertex");
  std::vector<std::optional<double>> table(graph.vertex_count());
  for (const auto& [v, value] : fixed) {
    if (v >= graph.vertex_count()) throw Error(ErrorKind::VertexOutOfRange, "fixed vertex outside the graph", {v});
    table[v] = value;
  }
  return harmonic_extension(laplacian_matrix(graph), table);
}

double edge_energy(const WeightedGraph& graph, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != graph.vertex_count())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match vertex count");
  double s = 0.0;
  for (const auto& e : graph.edges()) {
    const double d = x(static_cast<Index>(e.u)) - x(static_cast<Index>(e.v));
    s += e.conductance * d * d;
  }
  return s;
}

double rayleigh_quotient(const WeightedGraph& graph, const Eigen::VectorXd& x, const std::optional<VertexSet>& boundary) {
  if (static_cast<std::size_t>(x.size()) != graph.vertex_count())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match vertex count");
  if (boundary)
    for (VertexId v : *boundary) {
      if (v >= graph.vertex_count()) throw Error(ErrorKind::BadBoundary, "boundary vertex outside the graph", {v});
      if (x(static_cast<Index>(v)) != 0.0)
        throw Error(ErrorKind::BoundaryViolated, "vector is nonzero on boundary vertex " + std::to_string(v), {v});
    }
  double denom = 0.0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) denom += graph.mass(v) * x(static_cast<Index>(v)) * x(static_cast<Index>(v));
  if (!(denom > 0.0)) throw Error(ErrorKind::ZeroVector, "x^T M x vanishes");
  return quadratic_form(laplacian_matrix(graph), x) / denom;
}

}  // namespace hardy
