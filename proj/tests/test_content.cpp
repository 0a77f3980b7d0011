#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "hardy/content.hpp"
#include "hardy/resistance.hpp"
#include "hardy/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using hardy::ErrorKind;
using hardy::VertexSet;
using hardy::WeightedGraph;

namespace {

WeightedGraph unit_path3() { return WeightedGraph({1, 1, 1}, {{0, 1, 1}, {1, 2, 1}}); }
WeightedGraph unit_triangle() { return WeightedGraph({1, 1, 1}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

WeightedGraph scaled(const WeightedGraph& g, double mass_factor, double kappa_factor) {
  std::vector<double> masses = g.masses();
  for (auto& m : masses) m *= mass_factor;
  std::vector<hardy::Edge> edges = g.edges();
  for (auto& e : edges) e.conductance *= kappa_factor;
  return WeightedGraph(std::move(masses), std::move(edges));
}

// Random weighted path with n+1 vertices, weights in [0.1,10].
WeightedGraph random_path(std::size_t n, hardy::Xorshift64Star& rng) {
  std::vector<double> masses(n + 1), kappa(n);
  for (auto& m : masses) m = rng.uniform(0.1, 10.0);
  for (auto& k : kappa) k = rng.uniform(0.1, 10.0);
  return hardy::path_graph(masses, kappa);
}

struct TailOptimum {
  double hardy = 0.0;
  std::size_t k = 0;
};

// Exhaustive tail-set search: max over k of (sum_{i<k} 1/kappa_i) * mu(A_k).
TailOptimum tail_oracle(const WeightedGraph& path) {
  const std::size_t n = path.vertex_count() - 1;
  TailOptimum best;
  double r = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    r += 1.0 / path.edges()[k - 1].conductance;
    double mu = 0.0;
    for (std::size_t i = k; i <= n; ++i) mu += path.mass(i);
    if (r * mu > best.hardy) best = {r * mu, k};
  }
  return best;
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* value) {
    if (const char* old = std::getenv("HARDY_SPECTRAL_THREADS")) saved_ = old;
    setenv("HARDY_SPECTRAL_THREADS", value, 1);
  }
  ~ScopedThreads() {
    if (saved_.empty())
      unsetenv("HARDY_SPECTRAL_THREADS");
    else
      setenv("HARDY_SPECTRAL_THREADS", saved_.c_str(), 1);
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(HardyPath, Examples) {
  const auto one = hardy::hardy_path(WeightedGraph({1, 1}, {{0, 1, 1}}));
  EXPECT_EQ(one.hardy, 1.0);
  EXPECT_EQ(one.witness_a, VertexSet({1}));
  EXPECT_EQ(one.method, hardy::ContentMethod::PathTailSet);

  const WeightedGraph uniform = hardy::path_graph(std::vector<double>{0, 1, 1, 1}, std::vector<double>{1, 1, 1});
  EXPECT_EQ(tail_oracle(uniform).hardy, 4.0);
  EXPECT_EQ(tail_oracle(uniform).k, 2u);
  const auto u = hardy::hardy_path(uniform);
  EXPECT_EQ(u.hardy, 4.0);
  EXPECT_EQ(u.value, 0.25);
  EXPECT_EQ(u.witness_a, VertexSet({2, 3}));

  const WeightedGraph mixed = hardy::path_graph(std::vector<double>{0, 3, 1}, std::vector<double>{1, 2});
  EXPECT_EQ(tail_oracle(mixed).hardy, 4.0);
  const auto m = hardy::hardy_path(mixed);
  EXPECT_EQ(m.hardy, 4.0);
  EXPECT_EQ(m.witness_a, VertexSet({1, 2}));
}

TEST(HardyPath, ErrorPaths) {
  EXPECT_HARDY_ERROR(hardy::hardy_path(unit_triangle()), ErrorKind::NotAPath);
  EXPECT_HARDY_ERROR(hardy::hardy_path(WeightedGraph({1, 1, 1}, {{0, 2, 1}, {2, 1, 1}})), ErrorKind::NotAPath);
  EXPECT_HARDY_ERROR(hardy::hardy_path(hardy::path_graph(std::vector<double>{1, 0, 0}, std::vector<double>{1, 1})),
                     ErrorKind::ZeroInteriorMass);
}

TEST(HardyPath, MatchesTailOracle) {
  hardy::Xorshift64Star rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph p = random_path(1 + rng.below(10), rng);
    const TailOptimum ref = tail_oracle(p);
    const auto r = hardy::hardy_path(p);
    EXPECT_NEAR(r.hardy, ref.hardy, 1e-12 * ref.hardy);
    EXPECT_EQ(r.witness_a, VertexSet::range(ref.k, p.vertex_count()));
  }
}

TEST(DirichletContent, Examples) {
  const auto one = hardy::dirichlet_content_exact(WeightedGraph({1, 1}, {{0, 1, 1}}), {0});
  EXPECT_NEAR(one.value, 1.0, 1e-15);

  const WeightedGraph p = hardy::path_graph(std::vector<double>{1, 1, 1}, std::vector<double>{1, 1});
  const auto r = hardy::dirichlet_content_exact(p, {0});
  EXPECT_NEAR(r.value, 0.5, 1e-14);
  EXPECT_NEAR(r.hardy, 2.0, 1e-14);
  EXPECT_EQ(r.witness_a, VertexSet({2}));
  EXPECT_NEAR(oracle::dirichlet_content(p, 1), 0.5, 1e-14);
}

TEST(DirichletContent, ErrorPaths) {
  EXPECT_HARDY_ERROR(hardy::dirichlet_content_exact(unit_path3(), VertexSet()), ErrorKind::BadBoundary);
  EXPECT_HARDY_ERROR(hardy::dirichlet_content_exact(unit_path3(), {0, 1, 2}), ErrorKind::BadBoundary);
  std::vector<double> masses(22, 1.0), kappa(21, 1.0);
  EXPECT_HARDY_ERROR(hardy::dirichlet_content_exact(hardy::path_graph(masses, kappa), {0}), ErrorKind::TooLarge);
}

TEST(DirichletContent, MatchesOracleAndPathLemma) {
  hardy::Xorshift64Star rng(71);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed);
    const VertexSet s = oracle::random_boundary(g.vertex_count(), rng);
    const auto r = hardy::dirichlet_content_exact(g, s);
    const double ref = oracle::dirichlet_content(g, s.canonical_key());
    EXPECT_NEAR(r.value, ref, 1e-10 * ref);
    // The value is recoverable from the witness alone.
    const double again = 1.0 / (hardy::effective_resistance(g, s, r.witness_a) * g.mass(r.witness_a));
    EXPECT_NEAR(again, r.value, 1e-10 * r.value);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph p = random_path(1 + rng.below(10), rng);
    const auto path = hardy::hardy_path(p);
    const auto exact = hardy::dirichlet_content_exact(p, {0});
    EXPECT_NEAR(exact.value, path.value, 1e-10 * path.value);
    EXPECT_EQ(exact.witness_a, path.witness_a);
  }
}

TEST(NeumannContent, Examples) {
  const auto two = hardy::neumann_content_exact(WeightedGraph({1, 2}, {{0, 1, 3}}));
  EXPECT_NEAR(two.value, 4.5, 1e-14);
  EXPECT_EQ(two.witness_a, VertexSet({0}));
  EXPECT_EQ(two.witness_b, VertexSet({1}));

  const auto p3 = hardy::neumann_content_exact(unit_path3());
  EXPECT_NEAR(oracle::neumann_content(unit_path3()), 1.0, 1e-14);
  EXPECT_NEAR(p3.value, 1.0, 1e-14);
  EXPECT_EQ(p3.witness_a, VertexSet({0}));
  EXPECT_EQ(p3.witness_b, VertexSet({2}));

  // Frozen from the 3^n enumeration oracle: every pair shape gives 3.
  EXPECT_NEAR(oracle::neumann_content(unit_triangle()), 3.0, 1e-14);
  const auto tri = hardy::neumann_content_exact(unit_triangle());
  EXPECT_NEAR(tri.value, 3.0, 1e-14);
  EXPECT_EQ(tri.witness_a, VertexSet({0}));
  EXPECT_EQ(tri.witness_b, VertexSet({1}));
}

TEST(NeumannContent, ErrorPaths) {
  std::vector<double> masses(13, 1.0), kappa(12, 1.0);
  EXPECT_HARDY_ERROR(hardy::neumann_content_exact(hardy::path_graph(masses, kappa)), ErrorKind::TooLarge);
  EXPECT_HARDY_ERROR(hardy::neumann_content_exact(WeightedGraph({1}, {})), ErrorKind::TooSmall);
  EXPECT_HARDY_ERROR(hardy::neumann_pair_ratio(unit_path3(), {0}, {0, 1}), ErrorKind::SetsOverlap);
  EXPECT_HARDY_ERROR(hardy::neumann_pair_ratio(unit_path3(), VertexSet(), {1}), ErrorKind::EmptySet);
}

TEST(NeumannContent, MatchesOracleAndWitnesses) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed, 2, 7);
    const auto r = hardy::neumann_content_exact(g);
    const double ref = oracle::neumann_content(g);
    EXPECT_NEAR(r.value, ref, 1e-10 * ref);
    EXPECT_NEAR(r.hardy * r.value, 1.0, 1e-14);
    ASSERT_TRUE(r.witness_b.has_value());
    EXPECT_FALSE(r.witness_a.intersects(*r.witness_b));
    EXPECT_LT(r.witness_a.canonical_key(), r.witness_b->canonical_key());
    const double again = (1.0 / g.mass(r.witness_a) + 1.0 / g.mass(*r.witness_b)) /
                         hardy::effective_resistance(g, r.witness_a, *r.witness_b);
    EXPECT_NEAR(again, r.value, 1e-10 * r.value);
  }
}

TEST(NeumannSweep, ExamplesAndSoundness) {
  EXPECT_NEAR(hardy::neumann_content_sweep(WeightedGraph({1, 2}, {{0, 1, 3}})).value, 4.5, 1e-14);
  const auto p3 = hardy::neumann_content_sweep(unit_path3());
  EXPECT_NEAR(p3.value, 1.0, 1e-14);
  EXPECT_EQ(p3.witness_a, VertexSet({0}));
  EXPECT_EQ(p3.witness_b, VertexSet({2}));
  EXPECT_EQ(p3.method, hardy::ContentMethod::SweepHeuristic);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed, 2, seed < 3 ? 12 : 8);
    EXPECT_GE(hardy::neumann_content_sweep(g).value, hardy::neumann_content_exact(g).value - 1e-12);
  }
}

TEST(Isoperimetric, Examples) {
  EXPECT_EQ(hardy::isoperimetric_exact(WeightedGraph({1, 1}, {{0, 1, 1}})).value, 1.0);
  const auto p3 = hardy::isoperimetric_exact(unit_path3());
  EXPECT_EQ(p3.value, 1.0);
  EXPECT_EQ(oracle::isoperimetric(unit_path3()), 1.0);
  std::vector<double> masses(21, 1.0), kappa(20, 1.0);
  EXPECT_HARDY_ERROR(hardy::isoperimetric_exact(hardy::path_graph(masses, kappa)), ErrorKind::TooLarge);
}

TEST(Isoperimetric, MatchesOracleAndRelatesToPartitionContent) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed);
    const double phi = hardy::isoperimetric_exact(g).value;
    EXPECT_NEAR(phi, oracle::isoperimetric(g), 1e-12 * phi);

    const std::size_t n = g.vertex_count();
    double restricted = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      const VertexSet a = VertexSet::from_mask(mask);
      restricted = std::min(restricted, hardy::neumann_pair_ratio(g, a, a.complement(n)));
    }
    EXPECT_LE(phi, restricted + 1e-12);
    EXPECT_LE(restricted, 2.0 * phi + 1e-12);
    if (n <= 7) {
      EXPECT_GE(phi, hardy::neumann_content_exact(g).value / 2.0 - 1e-12);
    }
  }
}

TEST(Sandwich, DirichletNeumannAndCheeger) {
  hardy::Xorshift64Star rng(73);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed, 3, 7);
    const VertexSet s = oracle::random_boundary(g.vertex_count(), rng);
    const double lambda = hardy::dirichlet_eigenvalue(g, s).eigenvalue;
    const double psi = hardy::dirichlet_content_exact(g, s).value;
    EXPECT_LE(psi / 4.0, lambda + 1e-9);
    EXPECT_LE(lambda, psi + 1e-9);

    const double lambda2 = hardy::neumann_eigenvalue(g).eigenvalue;
    const double psi2 = hardy::neumann_content_exact(g).value;
    EXPECT_LE(psi2 / 4.0, lambda2 + 1e-9);
    EXPECT_LE(lambda2, psi2 + 1e-9);

    const double phi = hardy::isoperimetric_exact(g).value;
    double ratio = 0.0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) ratio = std::max(ratio, g.degree(v) / g.mass(v));
    EXPECT_LE(lambda2 / 2.0, phi + 1e-9);
    EXPECT_LE(phi, std::sqrt(2.0 * lambda2 * ratio) + 1e-9);
  }
}

TEST(Content, ScaleCovarianceKeepsWitnesses) {
  hardy::Xorshift64Star rng(79);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed, 3, 7);
    const VertexSet s = oracle::random_boundary(g.vertex_count(), rng);
    const double c = rng.uniform(0.2, 5.0);
    const auto d = hardy::dirichlet_content_exact(g, s);
    const auto n = hardy::neumann_content_exact(g);
    const auto i = hardy::isoperimetric_exact(g);
    for (const auto& [h, factor] : {std::pair{scaled(g, 1, c), c}, std::pair{scaled(g, c, 1), 1.0 / c}}) {
      const auto dh = hardy::dirichlet_content_exact(h, s);
      const auto nh = hardy::neumann_content_exact(h);
      const auto ih = hardy::isoperimetric_exact(h);
      EXPECT_NEAR(dh.value, factor * d.value, 1e-10 * factor * d.value);
      EXPECT_NEAR(nh.value, factor * n.value, 1e-10 * factor * n.value);
      EXPECT_NEAR(ih.value, factor * i.value, 1e-10 * factor * i.value);
      EXPECT_EQ(dh.witness_a, d.witness_a);
      EXPECT_EQ(nh.witness_a, n.witness_a);
      EXPECT_EQ(nh.witness_b, n.witness_b);
      EXPECT_EQ(ih.witness_a, i.witness_a);
    }
  }
}

TEST(Content, EnumerationIndependentOfThreadCount) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed + 1000, 8, 9);
    hardy::ContentResult serial, parallel;
    {
      ScopedThreads one("1");
      EXPECT_EQ(hardy::enumeration_workers(), 1u);
      serial = hardy::neumann_content_exact(g);
    }
    {
      ScopedThreads four("4");
      EXPECT_EQ(hardy::enumeration_workers(), 4u);
      parallel = hardy::neumann_content_exact(g);
    }
    EXPECT_EQ(serial.value, parallel.value);
    EXPECT_EQ(serial.witness_a, parallel.witness_a);
    EXPECT_EQ(serial.witness_b, parallel.witness_b);
  }
}

TEST(LevelSetQuotient, Examples) {
  const WeightedGraph p = hardy::path_graph(std::vector<double>{1, 2, 3}, std::vector<double>{1.5, 0.5});
  const auto id = hardy::level_set_quotient(p, {0}, Eigen::Vector3d(0, 1, 2));
  ASSERT_EQ(id.path.vertex_count(), 3u);
  EXPECT_EQ(id.path.masses(), p.masses());
  EXPECT_EQ(id.path.edges()[0].conductance, 1.5);
  EXPECT_EQ(id.path.edges()[1].conductance, 0.5);
  EXPECT_EQ(id.levels, (std::vector<double>{0, 1, 2}));

  // Star: boundary leaf v0, centre v1, symmetric leaves v2 and v3.
  const WeightedGraph star({1, 1, 1, 1}, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
  const auto ground = hardy::dirichlet_eigenvalue(star, {0});
  const auto q = hardy::level_set_quotient(star, {0}, ground.eigenvector);
  ASSERT_EQ(q.path.vertex_count(), 3u);
  EXPECT_NEAR(q.path.edges()[0].conductance, 1.0, 1e-12);
  EXPECT_NEAR(q.path.edges()[1].conductance, 2.0, 1e-12);
  EXPECT_EQ(q.path.mass(1), 1.0);
  EXPECT_EQ(q.path.mass(2), 2.0);
  EXPECT_NEAR(hardy::dirichlet_eigenvalue(q.path, {0}).eigenvalue, ground.eigenvalue, 1e-10);
}

TEST(LevelSetQuotient, ErrorPaths) {
  const WeightedGraph p = unit_path3();
  EXPECT_HARDY_ERROR(hardy::level_set_quotient(p, {0}, Eigen::Vector3d(0, 1, -1)), ErrorKind::MixedSigns);
  EXPECT_HARDY_ERROR(hardy::level_set_quotient(p, {0}, Eigen::Vector3d(1, 1, 2)), ErrorKind::BoundaryNotZero);
  const auto flipped = hardy::level_set_quotient(p, {0}, Eigen::Vector3d(0, -1, -2));
  EXPECT_EQ(flipped.levels, (std::vector<double>{0, 1, 2}));
}

TEST(LevelSetQuotient, PreservesDirichletEigenvalue) {
  hardy::Xorshift64Star rng(83);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const WeightedGraph g = oracle::corpus_graph(seed);
    const VertexSet s = oracle::random_boundary(g.vertex_count(), rng);
    const auto ground = hardy::dirichlet_eigenvalue(g, s);
    const auto q = hardy::level_set_quotient(g, s, ground.eigenvector);
    EXPECT_NEAR(hardy::dirichlet_eigenvalue(q.path, {0}).eigenvalue, ground.eigenvalue,
                1e-8 * std::max(1.0, ground.eigenvalue))
        << "seed " << seed;
    EXPECT_NEAR(q.path.total_mass(), g.total_mass(), 1e-12 * g.total_mass());
  }
}
