#include <doctest.h>

#include <random>

#include "conecd/cone_core.hpp"

using namespace conecd;

namespace {

// Finite-t oracle for the directional derivative: the raw difference
// quotient of the projection at a concrete step.
RealVec finite_t_quotient(const RealVec& x, const RealVec& w, double t) {
  RealVec xt(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + t * w[i];
  const RealVec a = project(xt);
  const RealVec b = project(x);
  RealVec q(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) q[i] = (a[i] - b[i]) / t;
  return q;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RealVec random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  RealVec v(n);
  for (auto& e : v) e = uniform(rng, lo, hi);
  return v;
}

}  // namespace

TEST_CASE("partition classifies signs") {
  auto p = partition({1.0, -2.0, 0.0});
  CHECK(p.plus == std::vector<std::size_t>{0});
  CHECK(p.minus == std::vector<std::size_t>{1});
  CHECK(p.bullet == std::vector<std::size_t>{2});

  p = partition({0.0, 0.0});
  CHECK(p.plus.empty());
  CHECK(p.minus.empty());
  CHECK(p.bullet == std::vector<std::size_t>{0, 1});

  p = partition({3.0, 5.0});
  CHECK(p.plus == std::vector<std::size_t>{0, 1});
  CHECK(p.minus.empty());
  CHECK(p.bullet.empty());
}

TEST_CASE("partition with zero tolerance reclassifies near-zeros") {
  const auto p = partition({1.0, 1e-12, -1e-12}, 1e-9);
  CHECK(p.plus == std::vector<std::size_t>{0});
  CHECK(p.bullet == std::vector<std::size_t>{1, 2});
}

TEST_CASE("project clamps negatives") {
  CHECK(project({1.0, -2.0, 0.0}) == RealVec{1.0, 0.0, 0.0});
  CHECK(project({-1.0, -1.0}) == RealVec{0.0, 0.0});
  CHECK(project({2.0, 3.0}) == RealVec{2.0, 3.0});
}

TEST_CASE("directional derivative closed form matches finite-t oracle") {
  const RealVec x{1.0, -1.0, 0.0};
  SUBCASE("all-positive direction") {
    const RealVec w{5.0, 5.0, 5.0};
    CHECK(directional_derivative(x, w) == RealVec{5.0, 0.0, 5.0});
    const RealVec q6 = finite_t_quotient(x, w, 1e-6);
    const RealVec q8 = finite_t_quotient(x, w, 1e-8);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(q6[i] == doctest::Approx(directional_derivative(x, w)[i])
                         .epsilon(1e-9));
      CHECK(q8[i] == doctest::Approx(q6[i]).epsilon(1e-6));
    }
  }
  SUBCASE("negative on the zero coordinate") {
    const RealVec w{5.0, 5.0, -5.0};
    CHECK(directional_derivative(x, w) == RealVec{5.0, 0.0, 0.0});
    const RealVec q6 = finite_t_quotient(x, w, 1e-6);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(q6[i] == doctest::Approx(directional_derivative(x, w)[i])
                         .epsilon(1e-9));
  }
  SUBCASE("zero direction") {
    const RealVec w{0.0, 0.0, 0.0};
    CHECK(directional_derivative(x, w) == RealVec{0.0, 0.0, 0.0});
  }
}

TEST_CASE("directional derivative rejects dimension mismatch") {
  CHECK_THROWS_AS(directional_derivative({1.0, 2.0}, {1.0}),
                  DimensionMismatch);
}

TEST_CASE("regime classification") {
  CHECK(regime({1.0, 2.0}) == Regime::InteriorK);
  CHECK(regime({-1.0, -2.0}) == Regime::InteriorNegK);
  CHECK(regime({1.0, -2.0}) == Regime::HatK);
  CHECK(regime({1.0, 0.0}) == Regime::DeltaRn);
}

TEST_CASE("projection is nonexpansive, idempotent, positively homogeneous") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
    const RealVec x = random_vec(rng, n, -5.0, 5.0);
    const RealVec y = random_vec(rng, n, -5.0, 5.0);
    RealVec dxy(n), dpxy(n);
    const RealVec px = project(x), py = project(y);
    for (std::size_t i = 0; i < n; ++i) {
      dxy[i] = x[i] - y[i];
      dpxy[i] = px[i] - py[i];
    }
    CHECK(norm(dpxy) <= norm(dxy));
    CHECK(project(px) == px);
    const double lambda = uniform(rng, 0.01, 10.0);
    RealVec lx(n);
    for (std::size_t i = 0; i < n; ++i) lx[i] = lambda * x[i];
    const RealVec plx = project(lx);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(plx[i] == doctest::Approx(lambda * px[i]).epsilon(1e-12));
  }
}

TEST_CASE("difference quotient below t* is exactly the directional derivative") {
  // Exact-zero comparison needs dyadic data: integer coordinates and a
  // power-of-two step make every operation exact in binary floating
  // point. The decimal steps from the contract are checked to 1e-9.
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
    RealVec x(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(static_cast<int>(rng() % 7) - 3);
      w[i] = static_cast<double>(static_cast<int>(rng() % 9) - 4);
    }
    const RealVec d = directional_derivative(x, w);
    const double t_star = stabilization_threshold(x, w);
    for (double t : {0x1.0p-13, 0x1.0p-20}) {
      if (t >= t_star) continue;
      CHECK(finite_t_quotient(x, w, t) == d);
    }
    for (double t : {1e-4, 1e-6}) {
      if (t >= t_star) continue;
      const RealVec q = finite_t_quotient(x, w, t);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(q[i] - d[i]) <= 1e-9);
    }
  }
}

TEST_CASE("partition is a partition") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 10);
    RealVec x(n);
    for (auto& e : x)
      e = static_cast<double>(static_cast<int>(rng() % 3) - 1) *
          uniform(rng, 0.1, 2.0);
    const auto p = partition(x);
    std::vector<bool> seen(n, false);
    for (auto idxs : {p.plus, p.minus, p.bullet})
      for (std::size_t i : idxs) {
        CHECK(!seen[i]);
        seen[i] = true;
      }
    for (std::size_t i = 0; i < n; ++i) CHECK(seen[i]);
  }
}
