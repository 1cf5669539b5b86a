#pragma once

// Independent verification of coderivative membership straight from the
// limsup quotient definition: exact evaluation by orthant enumeration
// over the zero coordinates, explicit witness directions for
// non-members, and sequence-based probing of the outer limit.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "conecd/coderivative.hpp"
#include "conecd/cone_core.hpp"

namespace conecd {

/// Raw difference quotient <z, u-x> - <y, P(u)-P(x)> over ||u - x||.
inline double quotient(const RealVec& xbar, const RealVec& y,
                       const RealVec& z, const RealVec& u) {
  require_same_dim(xbar, y, "quotient");
  require_same_dim(xbar, z, "quotient");
  require_same_dim(xbar, u, "quotient");
  RealVec du(xbar.size());
  for (std::size_t i = 0; i < xbar.size(); ++i) du[i] = u[i] - xbar[i];
  const double denom = norm(du);
  if (denom == 0.0) throw DegenerateInput("quotient: u == x");
  const RealVec pu = project(u);
  const RealVec px = project(xbar);
  double num = 0.0;
  for (std::size_t i = 0; i < xbar.size(); ++i)
    num += z[i] * du[i] - y[i] * (pu[i] - px[i]);
  return num / denom;
}

struct QuotientReport {
  double sup_value = 0.0;
  /// Unit direction attaining the sup when it is positive; the zero
  /// vector when the sup is 0 (no single direction is distinguished).
  RealVec argmax_direction;
  /// Zero coordinates of x, with the sign (+1/-1) chosen for each in the
  /// maximizing orthant.
  std::vector<std::size_t> bullet_indices;
  std::vector<int> orthant_signs;
  bool member = false;  // sup_value <= 0
};

inline constexpr std::size_t kMaxBulletEnumeration = 20;

/// Exact sup over unit directions d of the linearized quotient
///   sum_{x_i>0} (z_i - y_i) d_i + sum_{x_i<0} z_i d_i
///     + sum_{x_i=0} (z_i d_i - y_i max(d_i, 0)).
/// The limsup over u -> x reduces to this by piecewise linearity of the
/// projection: the quotient at u = x + t d is t-independent below the
/// stabilization threshold. Per sign orthant over the zero coordinates
/// the functional is linear, so the orthant max is the Euclidean norm of
/// the admissible coefficients; enumeration over the 2^|bullet| orthants
/// is exact. Ties break toward the lexicographically smallest pattern.
inline QuotientReport exact_sup_quotient(const RealVec& xbar,
                                         const RealVec& y, const RealVec& z) {
  require_same_dim(xbar, y, "exact_sup_quotient");
  require_same_dim(xbar, z, "exact_sup_quotient");
  const IndexPartition p = partition(xbar);
  if (p.bullet.size() > kMaxBulletEnumeration)
    throw TooManyBullets("exact_sup_quotient: " +
                         std::to_string(p.bullet.size()) +
                         " zero coordinates exceed cap " +
                         std::to_string(kMaxBulletEnumeration));

  // Free coefficients: active in every orthant.
  double free_sq = 0.0;
  RealVec free_coeff(xbar.size(), 0.0);
  for (std::size_t i : p.plus) {
    free_coeff[i] = z[i] - y[i];
    free_sq += free_coeff[i] * free_coeff[i];
  }
  for (std::size_t i : p.minus) {
    free_coeff[i] = z[i];
    free_sq += free_coeff[i] * free_coeff[i];
  }

  const std::size_t k = p.bullet.size();
  const std::uint64_t patterns = std::uint64_t{1} << k;
  double best = -1.0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double sq = free_sq;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = p.bullet[j];
      // bit set: d_i >= 0, coefficient z_i - y_i; clear: d_i <= 0,
      // coefficient z_i. A coefficient only helps when its sign matches
      // the orthant.
      if ((mask >> j) & 1u) {
        const double c = z[i] - y[i];
        if (c > 0.0) sq += c * c;
      } else {
        const double c = z[i];
        if (c < 0.0) sq += c * c;
      }
    }
    const double val = std::sqrt(sq);
    if (val > best) {
      best = val;
      best_mask = mask;
    }
  }

  QuotientReport rep;
  rep.sup_value = best;
  rep.member = best <= 0.0;
  rep.bullet_indices = p.bullet;
  rep.orthant_signs.resize(k);
  RealVec dir = free_coeff;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = p.bullet[j];
    if ((best_mask >> j) & 1u) {
      rep.orthant_signs[j] = +1;
      const double c = z[i] - y[i];
      if (c > 0.0) dir[i] = c;
    } else {
      rep.orthant_signs[j] = -1;
      const double c = z[i];
      if (c < 0.0) dir[i] = c;
    }
  }
  const double dn = norm(dir);
  if (best > 0.0 && dn > 0.0) {
    for (double& v : dir) v /= dn;
    rep.argmax_direction = dir;
  } else {
    rep.argmax_direction = RealVec(xbar.size(), 0.0);
  }
  return rep;
}

/// Explicit direction certifying non-membership, assembled exactly as in
/// the necessity part of the box-product formula's proof: z_i - y_i on
/// the positive coordinates, z_i on the negative ones, and +-1 on the
/// first violated zero coordinate (+1 when z_i > y_i, -1 when z_i < 0),
/// all other zero coordinates 0. Returns nullopt for members.
inline std::optional<RealVec> witness_direction(const RealVec& xbar,
                                                const RealVec& y,
                                                const RealVec& z) {
  require_same_dim(xbar, y, "witness_direction");
  require_same_dim(xbar, z, "witness_direction");
  const IndexPartition p = partition(xbar);
  RealVec d(xbar.size(), 0.0);
  bool violated = false;
  for (std::size_t i : p.plus)
    if (z[i] != y[i]) {
      d[i] = z[i] - y[i];
      violated = true;
    }
  for (std::size_t i : p.minus)
    if (z[i] != 0.0) {
      d[i] = z[i];
      violated = true;
    }
  for (std::size_t i : p.bullet) {
    if (z[i] > y[i]) {
      d[i] = 1.0;
      violated = true;
      break;
    }
    if (z[i] < 0.0) {
      d[i] = -1.0;
      violated = true;
      break;
    }
  }
  if (!violated) return std::nullopt;
  return d;
}

namespace detail {

// 53-bit uniform in [0, 1) from raw generator output; keeps sampled
// streams identical across standard libraries.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace detail

/// Samples convergent families (x^k, y^k, z^k) with z^k a member of the
/// coderivative set at the perturbed pair for every radius in the
/// schedule, extrapolates each family's limit as the radius goes to 0,
/// and returns cluster representatives of the limits (merge radius
/// merge_radius in the sup norm).
///
/// Families whose perturbed set is empty at some radius, or whose
/// constraint pattern has not stabilized over the last two radii, admit
/// no convergent member selection and are skipped. When the target set
/// itself is empty no family converges into it and the result is empty.
inline std::vector<RealVec> limiting_probe(
    const RealVec& xbar, const RealVec& y, std::size_t samples,
    const std::vector<double>& radii, std::uint64_t seed,
    double merge_radius = 1e-6) {
  require_same_dim(xbar, y, "limiting_probe");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1]) || !(radii[i] > 0.0))
      throw PreconditionViolated(
          "limiting_probe: radii must be strictly decreasing and positive");
  if (radii.size() < 2)
    throw PreconditionViolated("limiting_probe: need at least two radii");

  std::vector<RealVec> candidates;
  const BoxProduct target = regular_coderivative(xbar, y);
  if (target.is_empty()) return candidates;

  std::mt19937_64 rng(seed);
  const std::size_t n = xbar.size();
  const IndexPartition p = partition(xbar);

  for (std::size_t s = 0; s < samples; ++s) {
    // Perturbation directions. Zero coordinates of x move to a fixed
    // side (or stay put); the others jitter freely.
    RealVec dx(n), dy(n);
    for (std::size_t i = 0; i < n; ++i)
      dx[i] = detail::uniform(rng, -1.0, 1.0);
    for (std::size_t i : p.bullet) {
      const double pick = detail::uniform01(rng);
      if (pick < 1.0 / 3.0)
        dx[i] = detail::uniform(rng, 0.5, 1.0);
      else if (pick < 2.0 / 3.0)
        dx[i] = -detail::uniform(rng, 0.5, 1.0);
      else
        dx[i] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i)
      dy[i] = detail::uniform(rng, -1.0, 1.0);

    // One member selector per family: 0 / hi vertices or an interior
    // fraction, held fixed along the whole sequence.
    RealVec frac(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double pick = detail::uniform01(rng);
      if (pick < 1.0 / 3.0)
        frac[i] = 0.0;
      else if (pick < 2.0 / 3.0)
        frac[i] = 1.0;
      else
        frac[i] = detail::uniform(rng, 0.0, 0.99);
    }

    bool valid = true;
    std::vector<RealVec> members;       // z at each radius
    std::vector<std::vector<CoordConstraint::Kind>> kinds;
    for (double r : radii) {
      RealVec xk(n), yk(n);
      for (std::size_t i = 0; i < n; ++i) {
        xk[i] = xbar[i] + r * dx[i];
        yk[i] = y[i] + r * dy[i];
      }
      const BoxProduct sk = regular_coderivative(xk, yk);
      if (sk.is_empty()) {
        valid = false;
        break;
      }
      // A nonzero coordinate of x that flips sign at this radius has not
      // yet entered its limiting regime; the family is unusable.
      for (std::size_t i : p.plus)
        if (!(xk[i] > 0.0)) valid = false;
      for (std::size_t i : p.minus)
        if (!(xk[i] < 0.0)) valid = false;
      if (!valid) break;
      RealVec zk(n);
      std::vector<CoordConstraint::Kind> kk(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = sk.constraints[i];
        kk[i] = c.kind;
        switch (c.kind) {
          case CoordConstraint::Kind::Equal: zk[i] = c.value; break;
          case CoordConstraint::Kind::Zero: zk[i] = 0.0; break;
          case CoordConstraint::Kind::Box: zk[i] = frac[i] * c.value; break;
        }
      }
      members.push_back(std::move(zk));
      kinds.push_back(std::move(kk));
    }
    if (!valid) continue;
    // Constraint pattern must be stable over the two smallest radii for
    // the member curve to be affine in r there.
    const std::size_t m = members.size();
    if (kinds[m - 1] != kinds[m - 2]) continue;

    // z(r) is affine in r below the stabilization radius; two-point
    // extrapolation recovers the limit to machine precision.
    const double r1 = radii[m - 2], r2 = radii[m - 1];
    RealVec limit(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double slope = (members[m - 2][i] - members[m - 1][i]) / (r1 - r2);
      limit[i] = members[m - 1][i] - r2 * slope;
    }

    bool merged = false;
    for (const RealVec& c : candidates)
      if (sup_norm_dist(c, limit) <= merge_radius) {
        merged = true;
        break;
      }
    if (!merged) candidates.push_back(std::move(limit));
  }
  return candidates;
}

}  // namespace conecd
