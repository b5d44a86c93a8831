#include <cmath>

#include <gaitadapt/core_types.hpp>

#include "test_support.hpp"

using namespace gaitadapt;

TEST(GaitParams, DefaultsAreValid)
{
  const GaitParams p;
  const RobotGeometry g;
  EXPECT_FALSE(validateGaitParams(p, g).has_value());
  EXPECT_DOUBLE_EQ(p.dspPeriod(), p.cyclePeriod - p.sspPeriod);
}

TEST(GaitParams, ShortStepShortDspIsValid)
{
  GaitParams p;
  p.stepLength = 0.1;
  p.sspPeriod = 1.0;
  p.cyclePeriod = 1.2;
  p.maxFootHeight = 0.05;
  p.footSpacing = 0.23;
  p.pelvisZMax = 0.79;
  p.pelvisZMin = 0.77;
  EXPECT_FALSE(validateGaitParams(p, RobotGeometry{}).has_value());
  EXPECT_NEAR(p.dspPeriod(), 0.2, 1e-15);
}

TEST(GaitParams, CycleNotLongerThanSspIsInvalidTiming)
{
  GaitParams p;
  p.cyclePeriod = p.sspPeriod;
  auto e = validateGaitParams(p, RobotGeometry{});
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->code(), ErrorCode::InvalidTiming);
}

TEST(GaitParams, PelvisTooHighIsUnreachable)
{
  GaitParams p;
  p.pelvisZMax = 2.0;
  p.pelvisZMin = 1.9;
  auto e = validateGaitParams(p, RobotGeometry{});
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->code(), ErrorCode::KinematicallyUnreachable);
}

TEST(GaitParams, NonPositiveValuesAreRejected)
{
  const RobotGeometry g;
  for(auto mutate : {+[](GaitParams & p) { p.sspPeriod = 0.0; }, +[](GaitParams & p) { p.maxFootHeight = -0.01; },
                     +[](GaitParams & p) { p.footSpacing = 0.0; }, +[](GaitParams & p) { p.stepLength = -0.1; },
                     +[](GaitParams & p) { p.pelvisZMin = p.pelvisZMax + 0.01; },
                     +[](GaitParams & p) { p.pelvisYOffset = p.pelvisYMax + 0.01; },
                     +[](GaitParams & p) { p.stepLength = NAN; }})
  {
    GaitParams p;
    mutate(p);
    auto e = validateGaitParams(p, g);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->code(), ErrorCode::NonPositiveParameter);
  }
}

TEST(RobotGeometry, DefaultsAndTotalMass)
{
  const RobotGeometry g;
  EXPECT_FALSE(validateGeometry(g).has_value());
  EXPECT_NEAR(g.totalMass(), 2.0 * (3.859 + 2.236 + 4.561 + 6.327) + 17.8 + 28.482, 1e-12);
  EXPECT_DOUBLE_EQ(g.legReach(), 0.72);
  RobotGeometry bad;
  bad.mass.thigh = 0.0;
  auto e = validateGeometry(bad);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->code(), ErrorCode::NonPositiveParameter);
}

TEST(RobotGeometry, ResetComsToMidpoints)
{
  RobotGeometry g;
  g.resetComsToMidpoints();
  EXPECT_DOUBLE_EQ(g.shankCom.z(), -0.18);
  EXPECT_DOUBLE_EQ(g.footCom.z(), 0.049);
  EXPECT_DOUBLE_EQ(g.upperBodyCom.z(), 0.3835);
}

TEST(Pose3, RotationRoundTrip)
{
  Pose3 p;
  p.position = {1.0, 2.0, 3.0};
  p.roll = 0.3;
  p.pitch = -0.4;
  p.yaw = 1.1;
  const Pose3 q = Pose3::fromRotation(p.position, p.rotation());
  EXPECT_NEAR(q.roll, p.roll, 1e-12);
  EXPECT_NEAR(q.pitch, p.pitch, 1e-12);
  EXPECT_NEAR(q.yaw, p.yaw, 1e-12);
  EXPECT_TRUE((p.rotation().transpose() * p.rotation()).isIdentity(1e-12));
}

TEST(Side, Helpers)
{
  EXPECT_EQ(opposite(Side::Left), Side::Right);
  EXPECT_EQ(sideSign(Side::Left), 1.0);
  EXPECT_EQ(sideSign(Side::Right), -1.0);
  EXPECT_EQ(toString(Side::Left), "L");
}

TEST(Errors, CodeAndDetail)
{
  const Error e(ErrorCode::DSPExhausted, "late");
  EXPECT_EQ(e.code(), ErrorCode::DSPExhausted);
  EXPECT_EQ(e.detail(), "late");
  EXPECT_NE(std::string(e.what()).find("DSPExhausted"), std::string::npos);
}
