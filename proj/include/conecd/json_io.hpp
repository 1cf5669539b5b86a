#pragma once

// JSON encodings used by the command-line front end: dense vectors as
// arrays, sparse sequences as {"index": value} objects, box products and
// oracle reports as tagged objects. Parsers reject non-finite numbers.

#include <cstddef>
#include <string>

#include <json.hpp>

#include "conecd/coderivative.hpp"
#include "conecd/cone_core.hpp"
#include "conecd/l2_model.hpp"
#include "conecd/oracle.hpp"

namespace conecd {

using Json = nlohmann::ordered_json;

struct ParseFailure : std::invalid_argument {
  explicit ParseFailure(const std::string& what)
      : std::invalid_argument(what) {}
};

inline RealVec parse_realvec(const Json& j, const char* what) {
  if (!j.is_array())
    throw ParseFailure(std::string(what) + ": expected a JSON array");
  if (j.empty())
    throw ParseFailure(std::string(what) + ": vector must have n >= 1");
  RealVec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number())
      throw ParseFailure(std::string(what) + ": non-numeric entry");
    const double d = e.get<double>();
    if (!std::isfinite(d))
      throw ParseFailure(std::string(what) + ": non-finite entry");
    v.push_back(d);
  }
  return v;
}

inline SparseSeq parse_sparseseq(const Json& j, const char* what) {
  if (!j.is_object())
    throw ParseFailure(std::string(what) + ": expected a JSON object");
  SparseSeq s;
  for (const auto& [key, val] : j.items()) {
    std::size_t idx = 0;
    try {
      std::size_t pos = 0;
      const long long parsed = std::stoll(key, &pos);
      if (pos != key.size() || parsed < 0) throw std::invalid_argument(key);
      idx = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
      throw ParseFailure(std::string(what) + ": bad index key '" + key + "'");
    }
    if (!val.is_number())
      throw ParseFailure(std::string(what) + ": non-numeric value");
    const double d = val.get<double>();
    if (!std::isfinite(d))
      throw ParseFailure(std::string(what) + ": non-finite value");
    if (d == 0.0)
      throw ParseFailure(std::string(what) + ": explicit zero at index " + key);
    if (!s.emplace(idx, d).second)
      throw ParseFailure(std::string(what) + ": duplicate index " + key);
  }
  return s;
}

inline Json to_json(const RealVec& v) { return Json(v); }

inline Json to_json(const SparseSeq& s) {
  Json j = Json::object();
  for (const auto& [i, v] : s) j[std::to_string(i)] = v;
  return j;
}

inline Json to_json(const CoordConstraint& c) {
  switch (c.kind) {
    case CoordConstraint::Kind::Equal:
      return Json{{"kind", "equal"}, {"value", c.value}};
    case CoordConstraint::Kind::Zero:
      return Json{{"kind", "zero"}};
    case CoordConstraint::Kind::Box:
      return Json{{"kind", "box"}, {"lo", 0.0}, {"hi", c.value}};
  }
  return Json();
}

inline CoordConstraint constraint_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseFailure("constraint: expected object with 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "equal") return CoordConstraint::equal(j.at("value").get<double>());
  if (kind == "zero") return CoordConstraint::zero();
  if (kind == "box") return CoordConstraint::box(j.at("hi").get<double>());
  throw ParseFailure("constraint: unknown kind '" + kind + "'");
}

inline Json to_json(const BoxProduct& s) {
  Json arr = Json::array();
  for (const auto& c : s.constraints) arr.push_back(to_json(c));
  return Json{{"constraints", arr}, {"empty", s.is_empty()}};
}

inline BoxProduct boxproduct_from_json(const Json& j) {
  BoxProduct s;
  for (const auto& e : j.at("constraints"))
    s.constraints.push_back(constraint_from_json(e));
  return s;
}

inline Json to_json(const SeqBoxProduct& s) {
  Json expl = Json::object();
  for (const auto& [i, c] : s.explicit_constraints)
    expl[std::to_string(i)] = to_json(c);
  return Json{{"explicit", expl}, {"tail", "zero"}, {"empty", s.is_empty()}};
}

inline Json to_json(const QuotientReport& r) {
  Json pattern = Json::array();
  for (std::size_t j = 0; j < r.bullet_indices.size(); ++j)
    pattern.push_back(
        Json{{"index", r.bullet_indices[j]}, {"sign", r.orthant_signs[j]}});
  return Json{{"sup_value", r.sup_value},
              {"argmax_direction", to_json(r.argmax_direction)},
              {"orthant_pattern", pattern},
              {"member", r.member}};
}

inline Json to_json(const IndexPartition& p) {
  return Json{{"plus", p.plus}, {"minus", p.minus}, {"bullet", p.bullet}};
}

inline Json to_json(const StrictSupportReport& r) {
  Json j{{"y_in_cone_off_m", r.y_in_cone_off_m},
         {"y_member", r.y_member},
         {"biconditional_holds", r.biconditional_holds},
         {"order_set_checked", r.order_set_checked},
         {"order_set_matches", r.order_set_matches},
         {"boundary_case", r.boundary_case},
         {"boundary_singleton_holds", r.boundary_singleton_holds},
         {"note", r.note}};
  return j;
}

inline Json to_json(const SpecialCaseReport& r) {
  Json cases = Json::array();
  for (const auto& [tag, set] : r.cases)
    cases.push_back(Json{{"case", special_case_name(tag)},
                         {"predicted", to_json(set)}});
  return Json{{"cases", cases},
              {"actual", to_json(r.actual)},
              {"all_agree", r.all_agree}};
}

}  // namespace conecd
