#pragma once

// Points of R^n, their sign partitions, the projection onto the positive
// cone, its directional derivative, and the differentiability-regime
// classifier.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace conecd {

/// Dense point of R^n. Coordinates are expected to be finite; parsing
/// front ends enforce this, library functions assume it.
using RealVec = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument(what) {}
};

struct DegenerateInput : std::invalid_argument {
  explicit DegenerateInput(const std::string& what)
      : std::invalid_argument(what) {}
};

struct PreconditionViolated : std::invalid_argument {
  explicit PreconditionViolated(const std::string& what)
      : std::invalid_argument(what) {}
};

struct TooManyBullets : std::runtime_error {
  explicit TooManyBullets(const std::string& what)
      : std::runtime_error(what) {}
};

struct TooManyBoxes : std::runtime_error {
  explicit TooManyBoxes(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySetError : std::runtime_error {
  explicit EmptySetError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void require_same_dim(const RealVec& a, const RealVec& b,
                             const char* where) {
  if (a.size() != b.size())
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
}

inline bool all_finite(const RealVec& x) {
  return std::all_of(x.begin(), x.end(),
                     [](double v) { return std::isfinite(v); });
}

inline double dot(const RealVec& a, const RealVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const RealVec& a) { return std::sqrt(dot(a, a)); }

inline double sup_norm_dist(const RealVec& a, const RealVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Index sets where a point is positive / negative / zero.
struct IndexPartition {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  std::vector<std::size_t> bullet;
};

/// Zero classification is exact by default; a nonnegative tolerance
/// reclassifies |x_i| <= zero_tol as a zero coordinate.
inline IndexPartition partition(const RealVec& x, double zero_tol = 0.0) {
  IndexPartition p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) <= zero_tol)
      p.bullet.push_back(i);
    else if (x[i] > 0.0)
      p.plus.push_back(i);
    else
      p.minus.push_back(i);
  }
  return p;
}

/// Componentwise clamp to the positive cone.
inline RealVec project(const RealVec& x) {
  RealVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::max(x[i], 0.0);
  return r;
}

/// One-sided directional derivative of the projection: identity on the
/// positive coordinates, zero on the negative ones, and max(w_i, 0) on
/// the zero coordinates.
inline RealVec directional_derivative(const RealVec& x, const RealVec& w) {
  require_same_dim(x, w, "directional_derivative");
  RealVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0)
      r[i] = w[i];
    else if (x[i] < 0.0)
      r[i] = 0.0;
    else
      r[i] = std::max(w[i], 0.0);
  }
  return r;
}

/// Largest step below which the difference quotient of the projection
/// along w is exactly linear: no nonzero coordinate of x changes sign for
/// t < t*. Returns +inf when every coordinate of x is zero.
inline double stabilization_threshold(const RealVec& x, const RealVec& w) {
  const double scale = std::max(norm(w), 1.0);
  double t_star = std::numeric_limits<double>::infinity();
  for (double xi : x)
    if (xi != 0.0) t_star = std::min(t_star, std::abs(xi) / scale);
  return t_star;
}

enum class Regime { InteriorK, InteriorNegK, HatK, DeltaRn };

/// DeltaRn (some zero coordinate) is exactly where the projection fails
/// to be Frechet differentiable.
inline Regime regime(const RealVec& x, double zero_tol = 0.0) {
  const IndexPartition p = partition(x, zero_tol);
  if (!p.bullet.empty()) return Regime::DeltaRn;
  if (p.minus.empty()) return Regime::InteriorK;
  if (p.plus.empty()) return Regime::InteriorNegK;
  return Regime::HatK;
}

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::InteriorK: return "interior_K";
    case Regime::InteriorNegK: return "interior_negK";
    case Regime::HatK: return "hat_K";
    case Regime::DeltaRn: return "delta_Rn";
  }
  return "?";
}

}  // namespace conecd
