#include <gtest/gtest.h>

#include "conemetric/angles.hpp"
#include "support.hpp"

using namespace conemetric;
using namespace testing_support;

TEST(Reduce, Examples) {
  EXPECT_EQ(reduce(Qs({"0", "0", "0"})), Qs({"0", "0", "0"}));
  EXPECT_EQ(reduce(Qs({"2.3", "-1.4"})), Qs({"0.3", "0.6"}));
  EXPECT_EQ(reduce(Qs({"-1", "1"})), Qs({"-1", "-1"}));
}

TEST(Reduce, RangeIdempotenceAndEvenShift) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    auto d = random_vector(rng, 5, Rational(-7), Rational(7), 12);
    auto r = reduce(d);
    EXPECT_EQ(reduce(r), r);
    for (std::size_t k = 0; k < d.size(); ++k) {
      EXPECT_GE(r[k], -1);
      EXPECT_LT(r[k], 1);
      Rational shift = d[k] - r[k];
      EXPECT_TRUE(num::is_integral(shift) && num::floor_ll(shift) % 2 == 0);
    }
  }
}

TEST(AngleVector, RejectsEmptyAndNonPositive) {
  EXPECT_THROW(AngleVector<Rational>({}), DomainError);
  try {
    AngleVector<Rational>(Qs({"1/2", "0"}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveEntry);
  }
  AngleVector<Rational> a(Qs({"1/2", "3/2"}), AngleUnit::Pi);
  EXPECT_EQ(a.unit(), AngleUnit::Pi);
  EXPECT_EQ(a.with_unit(AngleUnit::TwoPi).unit(), AngleUnit::TwoPi);
  EXPECT_EQ(a.defect(), Qs({"-1/2", "1/2"}));
}

TEST(LatticeDistance, Examples) {
  auto zero = d1_odd_lattice(Qs({"0", "0", "0"}));
  EXPECT_EQ(zero.distance, 1);
  EXPECT_EQ(zero.witness, (LatticePoint{1, 0, 0}));
  EXPECT_EQ(d1_odd_lattice(Qs({"-1/2", "-1/2", "-1/2", "-1/2"})).distance, 2);
  EXPECT_EQ(d1_odd_lattice(Qs({"0.3", "-0.2", "-0.4", "-0.6", "-0.7"})).distance, Q("9/5"));
  EXPECT_THROW(d1_odd_lattice(std::vector<Rational>{}), DomainError);
}

TEST(LatticeDistance, MatchesExhaustiveSearch) {
  Rng rng(12);
  for (int t = 0; t < 2000; ++t) {
    auto d = random_vector(rng, uniform_int(rng, 1, 6), Rational(-4), Rational(4), 10);
    auto r = d1_odd_lattice(d);
    ASSERT_EQ(r.distance, brute_d1(d));
    EXPECT_TRUE(is_odd_point(r.witness));
    EXPECT_EQ(l1_distance(d, r.witness), r.distance);
  }
}

TEST(LatticeDistance, ParityMinIdentity) {
  Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    auto d = random_vector(rng, uniform_int(rng, 1, 8), Rational(-5), Rational(5), 16);
    EXPECT_EQ(holonomy_parity_min(d).value, d1_odd_lattice(d).distance);
  }
}

TEST(LatticeDistance, HalfIntegralTiesGiveSameDistance) {
  // Ties round to even; the distance itself does not depend on the choice.
  auto d = Qs({"1/2", "3/2", "-1/2"});
  EXPECT_EQ(d1_odd_lattice(d).distance, brute_d1(d));
}

TEST(Classify, Examples) {
  auto strict = classify(AngleVector<Rational>(Qs({"1/2", "1/2", "1/2"})));
  EXPECT_EQ(strict.status, Status::StrictInterior);
  EXPECT_EQ(strict.holonomy_distance, Q("3/2"));

  auto boundary = classify(AngleVector<Rational>(Qs({"1/2", "1/2", "1"})));
  EXPECT_EQ(boundary.status, Status::HolonomyBoundary);
  EXPECT_EQ(boundary.holonomy_distance, 1);

  // Positivity holds (sum of defects -1.8 > -2). The defect (-0.9, -0.9) is at distance
  // exactly 1 from the odd point (-1, 0): two equal angles always sit on the boundary.
  auto small = classify(AngleVector<Rational>(Qs({"0.1", "0.1"})));
  EXPECT_TRUE(small.positivity_ok);
  EXPECT_EQ(small.status, Status::HolonomyBoundary);
  EXPECT_EQ(small.holonomy_distance, 1);

  auto uneven = classify(AngleVector<Rational>(Qs({"0.1", "0.3"})));
  EXPECT_TRUE(uneven.positivity_ok);
  EXPECT_EQ(uneven.status, Status::HolonomyViolated);
  EXPECT_EQ(uneven.holonomy_distance, Q("0.8"));
}

TEST(Classify, PositivityFailureTakesPrecedence) {
  auto r = classify(AngleVector<Rational>(Qs({"0.01", "0.01", "0.01"})));
  EXPECT_FALSE(r.positivity_ok);
  EXPECT_EQ(r.status, Status::PositivityViolated);
}

TEST(Classify, WitnessAttainsDistance) {
  Rng rng(14);
  for (int t = 0; t < 500; ++t) {
    auto theta = random_vector(rng, uniform_int(rng, 2, 7), Rational(1, 20), Rational(4), 8);
    auto r = classify(AngleVector<Rational>(theta));
    EXPECT_TRUE(is_odd_point(r.witness));
    EXPECT_EQ(l1_distance(defect(theta), r.witness), r.holonomy_distance);
    EXPECT_EQ(r.status == Status::HolonomyBoundary, r.positivity_ok && r.holonomy_distance == 1);
  }
}

TEST(Classify, PermutationInvariant) {
  Rng rng(15);
  for (int t = 0; t < 300; ++t) {
    auto theta = random_vector(rng, 5, Rational(1, 20), Rational(3), 6);
    auto shuffled = theta;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = classify(AngleVector<Rational>(theta)), b = classify(AngleVector<Rational>(shuffled));
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.holonomy_distance, b.holonomy_distance);
  }
}

TEST(Classify, HolonomyDistanceInvariantUnderEvenShift) {
  Rng rng(16);
  for (int t = 0; t < 300; ++t) {
    auto d = random_vector(rng, 4, Rational(-1), Rational(3), 6);
    auto moved = d;
    moved[uniform_int(rng, 0, 3)] += 2;
    EXPECT_EQ(d1_odd_lattice(d).distance, d1_odd_lattice(moved).distance);
  }
}

TEST(Classify, FloatBoundaryBand) {
  auto r = classify(AngleVector<double>({0.5, 0.5, 1.0 + 1e-12}));
  EXPECT_EQ(r.status, Status::HolonomyBoundary);
  auto s = classify(AngleVector<double>({0.5, 0.5, 0.5}));
  EXPECT_EQ(s.status, Status::StrictInterior);
  EXPECT_NEAR(s.holonomy_distance, 1.5, 1e-12);
}

TEST(PolygonFeasible, Examples) {
  auto pi3 = polygon_feasible(Qs({"1", "1", "1"}));
  EXPECT_FALSE(pi3.feasible);
  EXPECT_EQ(pi3.minimum, 0);
  EXPECT_EQ(pi3.worst_subset, (std::vector<std::size_t>{0, 1, 2}));

  auto half = polygon_feasible(Qs({"1/2", "1/2", "1/2"}));
  EXPECT_TRUE(half.feasible);
  EXPECT_EQ(half.minimum, Q("3/2"));

  auto two = polygon_feasible(Qs({"0", "0"}));
  EXPECT_TRUE(two.feasible);
  EXPECT_EQ(two.minimum, 1);
  EXPECT_EQ(two.worst_subset.size(), 1u);

  EXPECT_THROW(polygon_feasible(Qs({"1/2", "3/2"})), DomainError);
  EXPECT_TRUE(polygon_feasible(std::vector<double>{std::numbers::pi / 2, std::numbers::pi / 2, std::numbers::pi / 2}).feasible);
}

TEST(PolygonFeasible, MatchesSubsetEnumeration) {
  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    auto l = random_vector(rng, uniform_int(rng, 1, 8), Rational(0), Rational(1), 12);
    auto r = polygon_feasible(l);
    EXPECT_EQ(r.minimum, brute_polygon_min(l));
    EXPECT_EQ(r.feasible, r.minimum >= 1);
    EXPECT_EQ(r.worst_subset.size() % 2, 1u);
  }
}

TEST(PolygonFeasible, ComplementSymmetryOnOddSets) {
  // Replacing l_j by pi - l_j on an even set X permutes the odd subsets among themselves.
  Rng rng(18);
  for (int t = 0; t < 200; ++t) {
    auto l = random_vector(rng, 5, Rational(0), Rational(1), 10);
    auto c = l;
    c[0] = 1 - c[0];
    c[3] = 1 - c[3];
    EXPECT_EQ(polygon_feasible(l).minimum, polygon_feasible(c).minimum);
  }
}

TEST(PolygonFeasible, AgreesWithHolonomyDistance) {
  Rng rng(19);
  for (int t = 0; t < 500; ++t) {
    auto d = random_vector(rng, uniform_int(rng, 2, 7), Rational(-3), Rational(3), 9);
    std::vector<Rational> l;
    for (const auto& x : reduce(d)) l.push_back(num::abs(x));
    EXPECT_EQ(polygon_feasible(l).minimum, d1_odd_lattice(d).distance);
  }
}
