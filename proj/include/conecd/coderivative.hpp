#pragma once

// Box-product representation of the coderivative of the positive-cone
// projection: per-coordinate constraints, membership, emptiness, vertex
// enumeration, the special-case classifier, and the self-argument
// witness.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecd/cone_core.hpp"

namespace conecd {

/// One coordinate of a box product: a singleton {c}, the singleton {0},
/// or the interval [0, hi]. Box with hi < 0 denotes the empty set, which
/// makes the representation total over all (x, y).
struct CoordConstraint {
  enum class Kind { Equal, Zero, Box };

  Kind kind = Kind::Zero;
  double value = 0.0;  // Equal: the admitted point; Box: the upper bound

  static CoordConstraint equal(double c) { return {Kind::Equal, c}; }
  static CoordConstraint zero() { return {Kind::Zero, 0.0}; }
  static CoordConstraint box(double hi) { return {Kind::Box, hi}; }

  bool is_empty() const { return kind == Kind::Box && value < 0.0; }

  double lo() const { return kind == Kind::Equal ? value : 0.0; }
  double hi() const { return kind == Kind::Zero ? 0.0 : value; }

  bool admits(double z, double tol = 0.0) const {
    switch (kind) {
      case Kind::Equal: return std::abs(z - value) <= tol;
      case Kind::Zero: return std::abs(z) <= tol;
      case Kind::Box: return z >= -tol && z <= value + tol;
    }
    return false;
  }

  friend bool operator==(const CoordConstraint& a, const CoordConstraint& b) {
    return a.kind == b.kind && a.value == b.value;
  }
};

/// Cartesian product of per-coordinate constraints. A standalone set
/// value: it keeps no reference to the (x, y) it was built from.
struct BoxProduct {
  std::vector<CoordConstraint> constraints;

  std::size_t dim() const { return constraints.size(); }

  bool is_empty() const {
    for (const auto& c : constraints)
      if (c.is_empty()) return true;
    return false;
  }

  bool contains(const RealVec& z, double tol = 0.0) const {
    if (z.size() != constraints.size())
      throw DimensionMismatch("BoxProduct::contains: dimension mismatch");
    if (is_empty()) return false;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (!constraints[i].admits(z[i], tol)) return false;
    return true;
  }
};

/// Same point set, possibly different constraint kinds (Equal(0), Zero
/// and Box(0,0) all admit exactly {0}).
inline bool set_equal(const BoxProduct& a, const BoxProduct& b) {
  if (a.dim() != b.dim()) return false;
  const bool ea = a.is_empty(), eb = b.is_empty();
  if (ea || eb) return ea == eb;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto& ca = a.constraints[i];
    const auto& cb = b.constraints[i];
    if (ca.lo() != cb.lo() || ca.hi() != cb.hi()) return false;
  }
  return true;
}

/// Regular coderivative of the projection: Equal(y_i) on the positive
/// coordinates of x, Zero on the negative ones, [0, y_i] on the zeros.
inline BoxProduct regular_coderivative(const RealVec& xbar, const RealVec& y) {
  require_same_dim(xbar, y, "regular_coderivative");
  BoxProduct s;
  s.constraints.reserve(xbar.size());
  for (std::size_t i = 0; i < xbar.size(); ++i) {
    if (xbar[i] > 0.0)
      s.constraints.push_back(CoordConstraint::equal(y[i]));
    else if (xbar[i] < 0.0)
      s.constraints.push_back(CoordConstraint::zero());
    else
      s.constraints.push_back(CoordConstraint::box(y[i]));
  }
  return s;
}

/// The limiting coderivative coincides with the regular one for this
/// projection; kept as a separate name so call sites document intent.
inline BoxProduct mordukhovich_coderivative(const RealVec& xbar,
                                            const RealVec& y) {
  return regular_coderivative(xbar, y);
}

inline constexpr std::size_t kMaxEnumeratedBoxes = 20;

/// All vertices of a nonempty box product: Equal/Zero coordinates are
/// fixed, each nondegenerate box contributes the choice {0, hi}.
/// Deterministic order: ascending bitmask over the box coordinates.
inline std::vector<RealVec> extreme_points(
    const BoxProduct& s, std::size_t max_boxes = kMaxEnumeratedBoxes) {
  if (s.is_empty())
    throw EmptySetError("extreme_points: set is empty");
  std::vector<std::size_t> boxes;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (s.constraints[i].kind == CoordConstraint::Kind::Box &&
        s.constraints[i].value > 0.0)
      boxes.push_back(i);
  if (boxes.size() > max_boxes)
    throw TooManyBoxes("extreme_points: " + std::to_string(boxes.size()) +
                       " box coordinates exceed cap " +
                       std::to_string(max_boxes));
  RealVec base(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto& c = s.constraints[i];
    base[i] = c.kind == CoordConstraint::Kind::Equal ? c.value : 0.0;
  }
  std::vector<RealVec> out;
  const std::uint64_t count = std::uint64_t{1} << boxes.size();
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    RealVec v = base;
    for (std::size_t j = 0; j < boxes.size(); ++j)
      if ((mask >> j) & 1u) v[boxes[j]] = s.constraints[boxes[j]].value;
    out.push_back(std::move(v));
  }
  return out;
}

/// Truncation map b(x; w): keeps coordinates where x is positive, zeroes
/// the rest.
inline RealVec truncate_to_plus(const RealVec& x, const RealVec& w) {
  require_same_dim(x, w, "truncate_to_plus");
  RealVec r(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0) r[i] = w[i];
  return r;
}

enum class SpecialCase {
  InteriorSingletonY,     // x in the open cone: set = {y}
  NegInteriorSingleton,   // x in the open negative cone: set = {0}
  MixedSingletonB,        // x sign-mixed without zeros: set = {b(x; y)}
  ZeroArgument,           // y = 0: set = {0}
  NegativeBulletEmpty,    // some zero coordinate of x has y_i < 0: empty
  SelfArgument,           // y = x: set = {P(x)}
  OriginFullBox           // x = 0: product of [0, y_i]
};

inline const char* special_case_name(SpecialCase c) {
  switch (c) {
    case SpecialCase::InteriorSingletonY: return "interior_singleton_y";
    case SpecialCase::NegInteriorSingleton: return "neg_interior_singleton";
    case SpecialCase::MixedSingletonB: return "mixed_singleton_b";
    case SpecialCase::ZeroArgument: return "zero_argument";
    case SpecialCase::NegativeBulletEmpty: return "negative_bullet_empty";
    case SpecialCase::SelfArgument: return "self_argument";
    case SpecialCase::OriginFullBox: return "origin_full_box";
  }
  return "?";
}

struct SpecialCaseReport {
  // Every closed-form case whose hypothesis holds, with its predicted set.
  std::vector<std::pair<SpecialCase, BoxProduct>> cases;
  BoxProduct actual;
  bool all_agree = true;  // every prediction equals the general formula
};

inline BoxProduct singleton_product(const RealVec& v) {
  BoxProduct s;
  s.constraints.reserve(v.size());
  for (double c : v) s.constraints.push_back(CoordConstraint::equal(c));
  return s;
}

/// Classifies (x, y) against the closed-form special cases and checks
/// each applicable prediction against the general formula. Overlapping
/// cases are all reported.
inline SpecialCaseReport special_cases(const RealVec& xbar, const RealVec& y) {
  require_same_dim(xbar, y, "special_cases");
  SpecialCaseReport rep;
  rep.actual = regular_coderivative(xbar, y);
  const IndexPartition p = partition(xbar);
  const std::size_t n = xbar.size();

  const bool x_zero = p.plus.empty() && p.minus.empty();
  const bool y_zero =
      std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });

  if (p.bullet.empty()) {
    if (p.minus.empty())
      rep.cases.emplace_back(SpecialCase::InteriorSingletonY,
                             singleton_product(y));
    else if (p.plus.empty())
      rep.cases.emplace_back(SpecialCase::NegInteriorSingleton,
                             singleton_product(RealVec(n, 0.0)));
    else
      rep.cases.emplace_back(SpecialCase::MixedSingletonB,
                             singleton_product(truncate_to_plus(xbar, y)));
  }
  if (y_zero)
    rep.cases.emplace_back(SpecialCase::ZeroArgument,
                           singleton_product(RealVec(n, 0.0)));
  bool neg_bullet = false;
  for (std::size_t i : p.bullet)
    if (y[i] < 0.0) neg_bullet = true;
  if (neg_bullet) {
    BoxProduct empty;
    empty.constraints.assign(n, CoordConstraint::box(-1.0));
    rep.cases.emplace_back(SpecialCase::NegativeBulletEmpty, empty);
  }
  if (xbar == y)
    rep.cases.emplace_back(SpecialCase::SelfArgument,
                           singleton_product(project(xbar)));
  if (x_zero) {
    BoxProduct box;
    box.constraints.reserve(n);
    for (double yi : y) box.constraints.push_back(CoordConstraint::box(yi));
    rep.cases.emplace_back(SpecialCase::OriginFullBox, std::move(box));
  }

  for (const auto& [tag, predicted] : rep.cases)
    if (!set_equal(predicted, rep.actual)) rep.all_agree = false;
  return rep;
}

/// For x with a zero coordinate, a positive coordinate, and x != 0,
/// returns z = P(x): a nonzero member of the coderivative set at y = x,
/// refuting the claim that this set excludes nonzero points (or is
/// empty) there.
inline RealVec self_argument_witness(const RealVec& xbar) {
  const IndexPartition p = partition(xbar);
  if (p.bullet.empty())
    throw PreconditionViolated(
        "self_argument_witness: x has no zero coordinate");
  if (p.plus.empty())
    throw PreconditionViolated(
        "self_argument_witness: x has no positive coordinate");
  return project(xbar);
}

}  // namespace conecd
