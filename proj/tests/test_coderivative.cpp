#include <doctest.h>

#include <algorithm>
#include <random>

#include "conecd/coderivative.hpp"

using namespace conecd;

namespace {

BoxProduct make(std::initializer_list<CoordConstraint> cs) {
  return BoxProduct{std::vector<CoordConstraint>(cs)};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("coderivative constraint kinds follow the sign partition") {
  SUBCASE("strictly positive point gives the singleton {y}") {
    const auto s = regular_coderivative({1.0, 2.0}, {3.5, -4.5});
    CHECK(s.constraints ==
          std::vector<CoordConstraint>{CoordConstraint::equal(3.5),
                                       CoordConstraint::equal(-4.5)});
    CHECK(s.contains({3.5, -4.5}));
    CHECK(!s.contains({3.5, -4.4}));
  }
  SUBCASE("zero coordinate contributes a box") {
    const auto s = regular_coderivative({1.0, 2.0, 0.0}, {7.0, -5.0, 4.0});
    CHECK(s.constraints ==
          std::vector<CoordConstraint>{CoordConstraint::equal(7.0),
                                       CoordConstraint::equal(-5.0),
                                       CoordConstraint::box(4.0)});
  }
  SUBCASE("negative coordinate pins to zero regardless of y") {
    const auto s = regular_coderivative({1.0, -2.0}, {6.0, 9.0});
    CHECK(s.contains({6.0, 0.0}));
    CHECK(!s.contains({6.0, 9.0}));
  }
}

TEST_CASE("limiting coderivative aliases the regular one") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
    RealVec x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(static_cast<int>(rng() % 3) - 1) *
             uniform(rng, 0.5, 2.0);
      y[i] = uniform(rng, -3.0, 3.0);
    }
    CHECK(set_equal(mordukhovich_coderivative(x, y),
                    regular_coderivative(x, y)));
  }
  CHECK(set_equal(mordukhovich_coderivative({0.0, 0.0}, {3.0, 4.0}),
                  make({CoordConstraint::box(3.0), CoordConstraint::box(4.0)})));
  CHECK(set_equal(
      mordukhovich_coderivative({0.0, 0.0, -1.0}, {5.0, 6.0, 7.0}),
      make({CoordConstraint::box(5.0), CoordConstraint::box(6.0),
            CoordConstraint::zero()})));
}

TEST_CASE("membership with tolerance") {
  const auto s = regular_coderivative({1.0, 0.0}, {1.0, 0.0});
  CHECK(s.contains({1.0, 0.0}, 0.0));
  CHECK(!make({CoordConstraint::box(3.0), CoordConstraint::box(4.0)})
             .contains({0.0, 5.0}, 0.0));
  CHECK(!make({CoordConstraint::box(-1.0), CoordConstraint::equal(1.0)})
             .contains({0.0, 1.0}, 100.0));
  CHECK(make({CoordConstraint::equal(1.0)}).contains({1.05}, 0.1));
}

TEST_CASE("emptiness iff a zero coordinate meets negative y") {
  CHECK(regular_coderivative({1.0, 0.0}, {1.0, -1.0}).is_empty());
  CHECK(!regular_coderivative({1.0, -1.0}, {1.0, -1.0}).is_empty());
  CHECK(!regular_coderivative({0.0, 0.0}, {0.0, 0.0}).is_empty());
}

TEST_CASE("extreme point enumeration") {
  const auto pts =
      extreme_points(make({CoordConstraint::box(3.0), CoordConstraint::box(4.0)}));
  REQUIRE(pts.size() == 4);
  const std::vector<RealVec> expect{
      {0.0, 0.0}, {3.0, 0.0}, {0.0, 4.0}, {3.0, 4.0}};
  for (const auto& e : expect)
    CHECK(std::find(pts.begin(), pts.end(), e) != pts.end());

  CHECK(extreme_points(make({CoordConstraint::equal(1.0),
                             CoordConstraint::equal(2.0)})) ==
        std::vector<RealVec>{{1.0, 2.0}});
  CHECK(extreme_points(make({CoordConstraint::equal(1.0),
                             CoordConstraint::box(0.0)})) ==
        std::vector<RealVec>{{1.0, 0.0}});

  CHECK_THROWS_AS(extreme_points(make({CoordConstraint::box(-1.0)})),
                  EmptySetError);
  BoxProduct wide;
  wide.constraints.assign(21, CoordConstraint::box(1.0));
  CHECK_THROWS_AS(extreme_points(wide), TooManyBoxes);
}

TEST_CASE("vertex count is 2^(number of nondegenerate boxes)") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
    RealVec x(n), y(n);
    std::size_t boxes = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(static_cast<int>(rng() % 3) - 1) *
             uniform(rng, 0.5, 2.0);
      y[i] = uniform(rng, 0.1, 3.0);
      if (x[i] == 0.0) ++boxes;
    }
    const auto s = regular_coderivative(x, y);
    CHECK(extreme_points(s).size() == (std::size_t{1} << boxes));
  }
}

TEST_CASE("convexity: random chords stay inside") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
    RealVec x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(static_cast<int>(rng() % 3) - 1) *
             uniform(rng, 0.5, 2.0);
      y[i] = uniform(rng, 0.0, 3.0);
    }
    const auto s = regular_coderivative(x, y);
    REQUIRE(!s.is_empty());
    const auto sample_member = [&] {
      RealVec z(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = s.constraints[i];
        z[i] = c.kind == CoordConstraint::Kind::Box
                   ? uniform(rng, 0.0, 0.99) * c.value
                   : c.lo();
      }
      return z;
    };
    const RealVec z1 = sample_member(), z2 = sample_member();
    const double lambda = uniform(rng, 0.0, 1.0);
    RealVec mid(n);
    for (std::size_t i = 0; i < n; ++i)
      mid[i] = lambda * z1[i] + (1.0 - lambda) * z2[i];
    CHECK(s.contains(mid, 1e-12));
  }
}

TEST_CASE("special case classifier agrees with the general formula") {
  SUBCASE("sign-mixed point gives the truncation singleton") {
    const auto rep = special_cases({1.0, 2.0, -3.0}, {4.0, 5.0, 6.0});
    REQUIRE(rep.cases.size() == 1);
    CHECK(rep.cases[0].first == SpecialCase::MixedSingletonB);
    CHECK(set_equal(rep.cases[0].second,
                    singleton_product({4.0, 5.0, 0.0})));
    CHECK(rep.all_agree);
  }
  SUBCASE("strictly negative point gives the zero singleton") {
    const auto rep = special_cases({-1.0, -2.0, -3.0}, {4.0, -5.0, 6.0});
    REQUIRE(rep.cases.size() == 1);
    CHECK(rep.cases[0].first == SpecialCase::NegInteriorSingleton);
    CHECK(set_equal(rep.cases[0].second,
                    singleton_product({0.0, 0.0, 0.0})));
    CHECK(rep.all_agree);
  }
  SUBCASE("negative y on a zero coordinate excludes every scaled copy") {
    const RealVec x{1.0, 0.0};
    const RealVec y{1.0, -1.0};
    const auto rep = special_cases(x, y);
    CHECK(rep.actual.is_empty());
    bool tagged_empty = false;
    for (const auto& [tag, set] : rep.cases)
      if (tag == SpecialCase::NegativeBulletEmpty) tagged_empty = true;
    CHECK(tagged_empty);
    for (double lambda : {-1.0, 0.0, 0.5, 0.999}) {
      const RealVec ly{lambda * y[0], lambda * y[1]};
      CHECK(!rep.actual.contains(ly));
    }
    CHECK(rep.all_agree);
  }
  SUBCASE("overlapping cases are all reported and agree") {
    const auto rep = special_cases({0.0, 0.0}, {0.0, 0.0});
    CHECK(rep.cases.size() >= 2);  // zero argument, origin, self argument
    CHECK(rep.all_agree);
  }
}

TEST_CASE("self-argument witness is a nonzero member") {
  SUBCASE("the projection itself is a nonzero member") {
    const RealVec z = self_argument_witness({1.0, 0.0});
    CHECK(z == RealVec{1.0, 0.0});
    CHECK(regular_coderivative({1.0, 0.0}, {1.0, 0.0}).contains(z, 0.0));
    CHECK(norm(z) > 0.0);
  }
  SUBCASE("mixed signs with a zero coordinate") {
    CHECK(self_argument_witness({2.0, 0.0, -1.0}) == RealVec{2.0, 0.0, 0.0});
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(self_argument_witness({0.0, 0.0}), PreconditionViolated);
    CHECK_THROWS_AS(self_argument_witness({1.0, -1.0}), PreconditionViolated);
  }
}
