#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include <gaitadapt/polynomial.hpp>

#include "oracles/gepp.hpp"
#include "random_systems.hpp"
#include "test_support.hpp"

using namespace gaitadapt;

using namespace testgen;

TEST(Polynomial, EvaluatesLocalCoefficientsAndDerivatives)
{
  // p(t) = 1 + 2 (t - 1) + 3 (t - 1)^2 on [1, 3]
  const Polynomial p({1.0, 2.0, 3.0}, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(p(1.0), 1.0);
  EXPECT_DOUBLE_EQ(p(2.0), 6.0);
  EXPECT_DOUBLE_EQ(p(2.0, 1), 8.0);
  EXPECT_DOUBLE_EQ(p(2.0, 2), 6.0);
  EXPECT_DOUBLE_EQ(p(2.0, 3), 0.0);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_DOUBLE_EQ(evaluate(p, 3.0), p(3.0));
}

TEST(Polynomial, RejectsTimesOutsideDomain)
{
  const Polynomial p({1.0, 1.0}, 0.0, 1.0);
  EXPECT_NO_THROW(p(1.0 + 0.5e-9));
  EXPECT_ERROR_CODE(p(1.1), ErrorCode::OutOfDomain);
  EXPECT_ERROR_CODE(p(-0.1), ErrorCode::OutOfDomain);
  EXPECT_TRUE(p.contains(0.5));
  EXPECT_FALSE(p.contains(2.0));
}

TEST(Polynomial, ConstantHasZeroDerivatives)
{
  const auto p = Polynomial::constant(4.2, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(p(1.3), 4.2);
  EXPECT_DOUBLE_EQ(p(1.3, 1), 0.0);
  EXPECT_DOUBLE_EQ(p(1.3, 2), 0.0);
}

TEST(SolveBvp, RestToRestQuinticIsSymmetric)
{
  const std::array<BoundaryCondition, 6> bc{{
      {0, 0.0, 0.0}, {1, 0.0, 0.0}, {2, 0.0, 0.0}, {0, 2.0, 1.0}, {1, 2.0, 0.0}, {2, 2.0, 0.0}}};
  const auto p = solveBvp(bc, 0.0, 2.0);
  EXPECT_EQ(p.degree(), 5);
  EXPECT_NEAR(p(1.0), 0.5, 1e-12);
  EXPECT_NEAR(p(0.5) + p(1.5), 1.0, 1e-12);
  for(const auto & c : bc) EXPECT_NEAR(p(c.time, c.order), c.value, 1e-12);
}

TEST(SolveBvp, MeetsConditionsOnShiftedInterval)
{
  const std::array<BoundaryCondition, 4> bc{{{0, 100.0, 1.0}, {1, 100.0, -2.0}, {0, 101.0, 3.0}, {1, 101.0, 0.5}}};
  const auto p = solveBvp(bc, 100.0, 101.0);
  for(const auto & c : bc) EXPECT_NEAR(p(c.time, c.order), c.value, 1e-12);
}

TEST(SolveBvp, Errors)
{
  EXPECT_ERROR_CODE(solveBvp(std::span<const BoundaryCondition>{}, 0.0, 1.0), ErrorCode::TooFewConditions);
  const std::array<BoundaryCondition, 2> dup{{{0, 0.5, 1.0}, {0, 0.5, 2.0}}};
  EXPECT_ERROR_CODE(solveBvp(dup, 0.0, 1.0), ErrorCode::SingularSystem);
  const std::array<BoundaryCondition, 2> badOrder{{{0, 0.0, 1.0}, {3, 1.0, 2.0}}};
  EXPECT_ERROR_CODE(solveBvp(badOrder, 0.0, 1.0), ErrorCode::SingularSystem);
  // Two slopes and no position leave the constant undetermined.
  const std::array<BoundaryCondition, 2> noPosition{{{1, 0.0, 1.0}, {1, 1.0, 2.0}}};
  EXPECT_ERROR_CODE(solveBvp(noPosition, 0.0, 1.0), ErrorCode::SingularSystem);
}

TEST(SolveBvp, AgreesWithEliminationOracleOnRandomSystems)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  std::uniform_real_distribution<double> length(0.2, 3.0);
  int solved = 0;
  while(solved < 500)
  {
    const double tLo = start(rng);
    const double tHi = tLo + length(rng);
    const auto bc = randomConditions(rng, tLo, tHi);
    if(conditionNumber(bc, tLo, tHi) > 1e6) continue;
    const auto p = solveBvp(bc, tLo, tHi);
    EXPECT_LT(coefficientError(p, oracle::solveMonomial(toOracle(bc), tLo)), 1e-9);
    ++solved;
  }
}

TEST(SolveBvp, FiniteDifferencesMatchDerivatives)
{
  const std::array<BoundaryCondition, 6> bc{{
      {0, 0.0, 0.3}, {1, 0.0, -1.0}, {2, 0.0, 2.0}, {0, 1.5, -0.4}, {1, 1.5, 0.7}, {2, 1.5, 0.0}}};
  const auto p = solveBvp(bc, 0.0, 1.5);
  const double h = 1e-5;
  for(double t = 0.1; t < 1.4; t += 0.1)
  {
    EXPECT_NEAR((p(t + h) - p(t - h)) / (2 * h), p(t, 1), 1e-7);
    EXPECT_NEAR((p(t + h, 1) - p(t - h, 1)) / (2 * h), p(t, 2), 1e-7);
  }
}

TEST(SolveBvp, IsLinearInTheConditionValues)
{
  auto make = [](double a, double b, double c) {
    return std::vector<BoundaryCondition>{{0, 0.0, a}, {1, 0.0, b}, {0, 1.0, c}, {1, 1.0, 0.0}};
  };
  const auto p1 = solveBvp(make(1.0, 0.0, 2.0), 0.0, 1.0);
  const auto p2 = solveBvp(make(0.0, 3.0, -1.0), 0.0, 1.0);
  const auto sum = solveBvp(make(1.0, 6.0, 0.0), 0.0, 1.0);
  for(double t = 0.0; t <= 1.0; t += 0.125) EXPECT_NEAR(sum(t), p1(t) + 2.0 * p2(t), 1e-12);
}

TEST(SolveCoupledBvp, TwoCubicsJoinedWithC2Continuity)
{
  const std::array<SegmentSpec, 2> seg{{{3, 0.0, 1.0}, {3, 1.0, 2.0}}};
  const std::array<PointCondition, 5> pts{{
      {0, {0, 0.0, 0.0}}, {0, {1, 0.0, 0.0}}, {1, {0, 2.0, 1.0}}, {1, {1, 2.0, 0.0}}, {0, {0, 1.0, 0.4}}}};
  const std::array<CrossCondition, 3> cross{{
      {0, 0, 1.0, 1.0, 1, 0, 1.0}, {0, 1, 1.0, 1.0, 1, 1, 1.0}, {0, 2, 1.0, 1.0, 1, 2, 1.0}}};
  const auto p = solveCoupledBvp(seg, pts, cross);
  ASSERT_EQ(p.size(), 2u);
  for(int k = 0; k < 3; ++k) EXPECT_NEAR(p[0](1.0, k), p[1](1.0, k), 1e-12);
  EXPECT_NEAR(p[0](1.0), 0.4, 1e-12);
  EXPECT_NEAR(p[1](2.0), 1.0, 1e-12);
}

TEST(SolveCoupledBvp, SignedCouplingMirrorsTheOtherSegment)
{
  const std::array<SegmentSpec, 2> seg{{{1, 0.0, 1.0}, {1, 0.0, 1.0}}};
  const std::array<PointCondition, 2> pts{{{0, {0, 0.0, 0.5}}, {0, {0, 1.0, 1.5}}}};
  const std::array<CrossCondition, 2> cross{{{1, 0, 0.0, -1.0, 0, 0, 0.0}, {1, 1, 0.0, -1.0, 0, 1, 0.0}}};
  const auto p = solveCoupledBvp(seg, pts, cross);
  for(double t = 0.0; t <= 1.0; t += 0.25) EXPECT_NEAR(p[1](t), -p[0](t), 1e-12);
}

TEST(SolveCoupledBvp, CountMismatch)
{
  const std::array<SegmentSpec, 1> seg{{{3, 0.0, 1.0}}};
  const std::array<PointCondition, 2> pts{{{0, {0, 0.0, 0.0}}, {0, {0, 1.0, 1.0}}}};
  EXPECT_ERROR_CODE(solveCoupledBvp(seg, pts, std::span<const CrossCondition>{}), ErrorCode::CountMismatch);
}
