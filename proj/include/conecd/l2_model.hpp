#pragma once

// The positive cone of the sequence space: finitely supported sequences,
// cofinite index bookkeeping, the index-set-relative cone / face / order
// relation, and the sequence-space coderivative with its special cases.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conecd/coderivative.hpp"
#include "conecd/cone_core.hpp"

namespace conecd {

/// Finitely supported sequence: index -> value, unlisted coordinates are
/// exactly 0. Stored zeros are tolerated on input and ignored; use
/// normalized() to canonicalize.
using SparseSeq = std::map<std::size_t, double>;

using IndexSet = std::set<std::size_t>;

inline SparseSeq normalized(const SparseSeq& x) {
  SparseSeq out;
  for (const auto& [i, v] : x)
    if (v != 0.0) out.emplace(i, v);
  return out;
}

inline double seq_at(const SparseSeq& x, std::size_t i) {
  const auto it = x.find(i);
  return it == x.end() ? 0.0 : it->second;
}

inline IndexSet support_union(const SparseSeq& a, const SparseSeq& b) {
  IndexSet s;
  for (const auto& [i, v] : a)
    if (v != 0.0) s.insert(i);
  for (const auto& [i, v] : b)
    if (v != 0.0) s.insert(i);
  return s;
}

/// Finite positive/negative index sets; the zero set is their cofinite
/// complement and is represented implicitly.
struct SeqPartition {
  IndexSet plus;
  IndexSet minus;

  bool is_bullet(std::size_t i) const {
    return !plus.count(i) && !minus.count(i);
  }
};

inline SeqPartition seq_partition(const SparseSeq& x) {
  SeqPartition p;
  for (const auto& [i, v] : x) {
    if (v > 0.0)
      p.plus.insert(i);
    else if (v < 0.0)
      p.minus.insert(i);
  }
  return p;
}

/// Keeps the positive entries, drops the rest.
inline SparseSeq seq_project(const SparseSeq& x) {
  SparseSeq out;
  for (const auto& [i, v] : x)
    if (v > 0.0) out.emplace(i, v);
  return out;
}

inline SparseSeq seq_scale(const SparseSeq& x, double lambda) {
  SparseSeq out;
  for (const auto& [i, v] : x) out.emplace(i, lambda * v);
  return out;
}

/// Box product over the sequence space. Off the explicit map every
/// coordinate is constrained to {0} (the tail), which is forced because
/// the defining pair has finite support.
struct SeqBoxProduct {
  std::map<std::size_t, CoordConstraint> explicit_constraints;

  CoordConstraint at(std::size_t i) const {
    const auto it = explicit_constraints.find(i);
    return it == explicit_constraints.end() ? CoordConstraint::box(0.0)
                                            : it->second;
  }

  bool is_empty() const {
    for (const auto& [i, c] : explicit_constraints)
      if (c.is_empty()) return true;
    return false;
  }

  /// Membership inspects the union of the constraint support and z's
  /// support; unaffected by explicit zero entries in z.
  bool contains(const SparseSeq& z, double tol = 0.0) const {
    if (is_empty()) return false;
    IndexSet idx;
    for (const auto& [i, c] : explicit_constraints) idx.insert(i);
    for (const auto& [i, v] : z)
      if (v != 0.0) idx.insert(i);
    for (std::size_t i : idx)
      if (!at(i).admits(seq_at(z, i), tol)) return false;
    return true;
  }
};

/// Regular coderivative of the sequence projection: Equal(y_i) where x
/// is positive, {0} where x is negative, [0, y_i] on zero coordinates
/// inside the support of y, tail {0} elsewhere.
inline SeqBoxProduct seq_regular_coderivative(const SparseSeq& xbar,
                                              const SparseSeq& y) {
  const SparseSeq xs = normalized(xbar);
  const SparseSeq ys = normalized(y);
  SeqBoxProduct s;
  for (const auto& [i, v] : xs) {
    if (v > 0.0)
      s.explicit_constraints.emplace(i, CoordConstraint::equal(seq_at(ys, i)));
    else
      s.explicit_constraints.emplace(i, CoordConstraint::zero());
  }
  for (const auto& [i, v] : ys)
    if (!xs.count(i))
      s.explicit_constraints.emplace(i, CoordConstraint::box(v));
  return s;
}

/// Coincides with the regular coderivative; separate name documents
/// intent at call sites.
inline SeqBoxProduct seq_mordukhovich_coderivative(const SparseSeq& xbar,
                                                   const SparseSeq& y) {
  return seq_regular_coderivative(xbar, y);
}

// Index-set-relative sets and order. N is a finite index set; the
// "_complement" variants apply the same condition on the cofinite
// complement of N, checking only the finitely many nonzero coordinates.

/// x_i >= 0 for all i in N.
inline bool in_KN(const SparseSeq& x, const IndexSet& n) {
  for (std::size_t i : n)
    if (seq_at(x, i) < 0.0) return false;
  return true;
}

/// x_i > 0 for all i in N and x_i = 0 off N.
inline bool in_ZN(const SparseSeq& x, const IndexSet& n) {
  for (std::size_t i : n)
    if (!(seq_at(x, i) > 0.0)) return false;
  for (const auto& [i, v] : x)
    if (v != 0.0 && !n.count(i)) return false;
  return true;
}

/// x in the cone relative to N with x_i = 0 on all of N.
inline bool in_boundary_KN(const SparseSeq& x, const IndexSet& n) {
  for (std::size_t i : n)
    if (seq_at(x, i) != 0.0) return false;
  return true;
}

/// z_i <= y_i on N and z_i = y_i off N.
inline bool preceq_N(const SparseSeq& z, const SparseSeq& y,
                     const IndexSet& n) {
  for (std::size_t i : n)
    if (!(seq_at(z, i) <= seq_at(y, i))) return false;
  for (std::size_t i : support_union(z, y))
    if (!n.count(i) && seq_at(z, i) != seq_at(y, i)) return false;
  return true;
}

/// x_i >= 0 off the finite set m (cofinite-complement cone membership).
inline bool in_K_complement(const SparseSeq& x, const IndexSet& m) {
  for (const auto& [i, v] : x)
    if (v < 0.0 && !m.count(i)) return false;
  return true;
}

/// x_i = 0 off the finite set m.
inline bool in_boundary_K_complement(const SparseSeq& x, const IndexSet& m) {
  for (const auto& [i, v] : x)
    if (v != 0.0 && !m.count(i)) return false;
  return true;
}

/// z_i <= y_i off m and z_i = y_i on m.
inline bool preceq_complement(const SparseSeq& z, const SparseSeq& y,
                              const IndexSet& m) {
  for (std::size_t i : m)
    if (seq_at(z, i) != seq_at(y, i)) return false;
  for (std::size_t i : support_union(z, y))
    if (!m.count(i) && !(seq_at(z, i) <= seq_at(y, i))) return false;
  return true;
}

struct StrictSupportReport {
  bool y_in_cone_off_m = false;        // y >= 0 on the complement of M
  bool y_member = false;               // y in the coderivative set
  bool biconditional_holds = false;    // the two previous agree
  bool order_set_checked = false;      // structural identity was verified
  bool order_set_matches = false;
  bool boundary_case = false;          // y = 0 off M
  bool boundary_singleton_holds = false;
  std::string note;
};

/// For x strictly positive exactly on the finite set M, checks the three
/// closed-form consequences of the coderivative formula: the membership
/// biconditional for y, the order-relation description of the set, and
/// the singleton case when y vanishes off M.
inline StrictSupportReport strict_support_check(const SparseSeq& xbar,
                                                const SparseSeq& y,
                                                const IndexSet& m) {
  if (m.empty())
    throw PreconditionViolated("strict_support_check: M must be nonempty");
  if (!in_ZN(xbar, m))
    throw PreconditionViolated(
        "strict_support_check: x must be strictly positive exactly on M");

  StrictSupportReport rep;
  rep.note =
      "order relation evaluated over the complement of M, the index set "
      "carrying the box bounds";
  const SeqBoxProduct s = seq_regular_coderivative(xbar, y);
  rep.y_in_cone_off_m = in_K_complement(y, m);
  rep.y_member = s.contains(y, 0.0);
  rep.biconditional_holds = (rep.y_in_cone_off_m == rep.y_member);

  if (rep.y_in_cone_off_m) {
    rep.order_set_checked = true;
    rep.order_set_matches = true;
    const auto pred = [&](const SparseSeq& z) {
      return in_K_complement(z, m) && preceq_complement(z, y, m);
    };
    const auto agree = [&](const SparseSeq& z) {
      return s.contains(z, 0.0) == pred(z);
    };
    // Candidates: y itself, every vertex choice per box coordinate,
    // violations above/below each bound, a wrong value on M, and an
    // off-support nonzero.
    std::vector<SparseSeq> cands;
    cands.push_back(normalized(y));
    SparseSeq lo, hi;
    for (const auto& [i, c] : s.explicit_constraints) {
      if (c.kind == CoordConstraint::Kind::Box) {
        hi[i] = c.value;
      } else if (c.kind == CoordConstraint::Kind::Equal) {
        lo[i] = c.value;
        hi[i] = c.value;
      }
    }
    cands.push_back(normalized(lo));
    cands.push_back(normalized(hi));
    for (const auto& [i, c] : s.explicit_constraints) {
      SparseSeq above = normalized(lo), below = normalized(lo);
      above[i] = c.hi() + 1.0;
      below[i] = -1.0;
      cands.push_back(normalized(above));
      cands.push_back(normalized(below));
    }
    std::size_t fresh = 0;
    for (const auto& [i, c] : s.explicit_constraints)
      fresh = std::max(fresh, i + 1);
    for (std::size_t i : m) fresh = std::max(fresh, i + 1);
    SparseSeq off = normalized(lo);
    off[fresh] = 0.5;
    cands.push_back(off);
    for (const auto& z : cands)
      if (!agree(z)) rep.order_set_matches = false;
  }

  rep.boundary_case = in_boundary_K_complement(y, m);
  if (rep.boundary_case) {
    rep.boundary_singleton_holds = true;
    // Singleton: every explicit constraint must admit exactly y_i.
    for (const auto& [i, c] : s.explicit_constraints)
      if (c.lo() != c.hi() || c.lo() != seq_at(y, i))
        rep.boundary_singleton_holds = false;
    if (!s.contains(y, 0.0)) rep.boundary_singleton_holds = false;
  }
  return rep;
}

/// Densifies a finitely supported pair into R^n; n must exceed every
/// supported index.
inline std::pair<RealVec, RealVec> finite_embed(const SparseSeq& xbar,
                                                const SparseSeq& y,
                                                std::size_t n) {
  if (n == 0) throw PreconditionViolated("finite_embed: n must be >= 1");
  for (const auto& [i, v] : xbar)
    if (v != 0.0 && i >= n)
      throw PreconditionViolated("finite_embed: n too small for index " +
                                 std::to_string(i));
  for (const auto& [i, v] : y)
    if (v != 0.0 && i >= n)
      throw PreconditionViolated("finite_embed: n too small for index " +
                                 std::to_string(i));
  RealVec xd(n, 0.0), yd(n, 0.0);
  for (const auto& [i, v] : xbar)
    if (v != 0.0) xd[i] = v;
  for (const auto& [i, v] : y)
    if (v != 0.0) yd[i] = v;
  return {std::move(xd), std::move(yd)};
}

}  // namespace conecd
