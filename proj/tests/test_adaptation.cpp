#include <cmath>

#include <gaitadapt/adaptation.hpp>

#include "oracles/swing_descent.hpp"
#include "test_support.hpp"

using namespace gaitadapt;

namespace
{

constexpr double kTick = 0.005;

struct Harness
{
  TaskSpacePlan plan = buildPlan(GaitParams{}, RobotGeometry{});
  AdaptationConfig cfg = AdaptationConfig::fromPlan(plan, kTick, 0.1 * kTick, 0.003);
  PreplannedFn pre = [this](double t) {
    const double Ts = plan.params.sspPeriod;
    PreplannedSample s;
    if(t < Ts)
    {
      s = {plan.swing.x(t), plan.swing.x(t, 1), plan.swing.x(t, 2), plan.swing.z(t), plan.swing.z(t, 1),
           plan.swing.z(t, 2)};
    }
    else
    {
      s.x = plan.swing.x(Ts);
    }
    return s;
  };
  FootAdapter foot{cfg};

  Offsets tick(int i, bool swing, bool conSw)
  {
    return foot.step(FootTick{i, swing, conSw, i * kTick, swing ? &pre : nullptr});
  }
};

} // namespace

TEST(TMod, AgreesWithBisectionOracle)
{
  for(double H : {0.02, 0.05, 0.1})
  {
    for(double Ts : {0.6, 1.0, 1.7})
    {
      GaitParams p;
      p.maxFootHeight = H;
      p.sspPeriod = Ts;
      p.cyclePeriod = Ts + 1.0;
      TaskSpacePlan plan;
      plan.params = p;
      plan.swing = planSwingFoot(p);
      for(double frac : {0.001, 0.06, 0.3, 0.7, 0.999})
      {
        const double d = frac * H;
        EXPECT_NEAR(computeTMod(plan, d), oracle::landingTime(H, Ts, d), 1e-10) << H << " " << Ts << " " << d;
      }
    }
  }
}

TEST(TMod, LimitsAndErrors)
{
  const auto plan = buildPlan(GaitParams{}, RobotGeometry{});
  const double H = plan.params.maxFootHeight;
  EXPECT_DOUBLE_EQ(computeTMod(plan, 0.0), 0.0);
  EXPECT_NEAR(computeTMod(plan, H * (1 - 1e-12)), 0.5 * plan.params.sspPeriod, 1e-4);
  EXPECT_ERROR_CODE(computeTMod(plan, H), ErrorCode::OffsetAboveApex);
  EXPECT_ERROR_CODE(computeTMod(plan, -0.001), ErrorCode::InvalidScenario);
  double prev = 0.0;
  for(double d = 0.001; d < H; d += 0.004)
  {
    const double t = computeTMod(plan, d);
    EXPECT_GT(t, prev);
    prev = t;
  }
}

TEST(DeltaX, IsTheRemainingPreplannedTravel)
{
  const auto plan = buildPlan(GaitParams{}, RobotGeometry{});
  const double Ts = plan.params.sspPeriod;
  EXPECT_DOUBLE_EQ(computeDeltaX(plan, 0.0), 0.0);
  const double tm = computeTMod(plan, 0.003);
  EXPECT_NEAR(computeDeltaX(plan, tm), plan.swing.x(Ts) - plan.swing.x(Ts - tm), 1e-15);
  EXPECT_NEAR(computeDeltaX(plan, 0.5 * Ts), plan.params.stepLength, 1e-12);
  EXPECT_ERROR_CODE(computeDeltaX(plan, 0.6 * Ts), ErrorCode::OutOfDomain);
  EXPECT_ERROR_CODE(computeDeltaX(plan, -0.1), ErrorCode::OutOfDomain);
}

TEST(LandingMods, BoundaryValues)
{
  const TouchValues touch{0.02, -0.3, 1.5, 0.5, 0.2, -0.4};
  const auto m = buildLandingMods(touch, 0.003, 0.004, 0.15);
  EXPECT_NEAR(m.zMod(0.0), 0.0, 1e-15);
  EXPECT_NEAR(m.zMod(0.0, 1), touch.zd, 1e-12);
  EXPECT_NEAR(m.zMod(0.0, 2), touch.zdd, 1e-12);
  EXPECT_NEAR(m.zMod(0.15), -0.003, 1e-12);
  EXPECT_NEAR(m.zMod(0.15, 1), 0.0, 1e-12);
  EXPECT_NEAR(m.zMod(0.15, 2), 0.0, 1e-10);
  EXPECT_NEAR(m.xMod(0.0, 1), touch.xd, 1e-12);
  EXPECT_NEAR(m.xMod(0.15), 0.004, 1e-12);
  EXPECT_NEAR(m.xMod(0.15, 1), 0.0, 1e-12);
  EXPECT_ERROR_CODE(buildLandingMods(touch, 0.003, 0.0, 0.0), ErrorCode::OutOfDomain);
}

TEST(Release, RestToRest)
{
  const auto r = buildRelease(-0.01, 1.0);
  EXPECT_NEAR(r(0.0), -0.01, 1e-15);
  EXPECT_NEAR(r(1.0), 0.0, 1e-15);
  EXPECT_NEAR(r(0.5), -0.005, 1e-15);
  for(int k = 1; k < 3; ++k)
  {
    EXPECT_NEAR(r(0.0, k), 0.0, 1e-12);
    EXPECT_NEAR(r(1.0, k), 0.0, 1e-12);
  }
}

TEST(AdaptationConfig, DerivedCountsAndDivisibility)
{
  Harness h;
  EXPECT_EQ(h.cfg.ticksPerSsp, 200);
  EXPECT_EQ(h.cfg.ticksPerCycle, 400);
  EXPECT_GT(h.cfg.tMod, 0.0);
  EXPECT_ERROR_CODE(AdaptationConfig::fromPlan(h.plan, 0.003, 0.0003, 0.003), ErrorCode::InvalidScenario);
  EXPECT_ERROR_CODE(AdaptationConfig::fromPlan(h.plan, 0.005, 0.0, 0.003), ErrorCode::InvalidScenario);
}

TEST(FootAdapter, StanceFootStaysIdle)
{
  Harness h;
  for(int i = 0; i < 400; ++i)
  {
    const Offsets o = h.tick(i, false, true);
    EXPECT_EQ(h.foot.phase(), AdaptPhase::Idle);
    EXPECT_EQ(o.dz, 0.0);
  }
}

TEST(FootAdapter, SwitchesBeforeTheApexAreIgnored)
{
  Harness h;
  for(int i = 0; i < 100; ++i)
  {
    h.tick(i, true, true);
    EXPECT_EQ(h.foot.phase(), AdaptPhase::Idle);
  }
  h.tick(100, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::AdvanceModifying);
}

TEST(FootAdapter, AdvanceLandingEndsTriggerOffsetBelowTheTouch)
{
  Harness h;
  const int touchTick = 150;
  for(int i = 0; i < touchTick; ++i) h.tick(i, true, false);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::Monitoring);
  Offsets o = h.tick(touchTick, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::AdvanceModifying);
  EXPECT_NEAR(o.dz, 0.0, 1e-15);
  const PreplannedSample touch = h.pre(touchTick * kTick);

  bool landed = false;
  int i = touchTick + 1;
  for(; i < 400 && !landed; ++i)
  {
    o = h.tick(i, true, true);
    landed = h.foot.lastLanding().has_value();
  }
  ASSERT_TRUE(landed);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::HoldingDSP);
  const auto & e = *h.foot.lastLanding();
  EXPECT_TRUE(e.advance);
  EXPECT_NEAR(e.touchVelocity, touch.zd, 1e-15);
  EXPECT_NEAR(e.restVelocity, 0.0, 1e-12);
  const double t = (i - 1) * kTick;
  const PreplannedSample now = h.pre(t);
  EXPECT_NEAR(now.z + o.dz, touch.z - 0.003, 1e-12);
  EXPECT_NEAR(now.x + o.dx, touch.x + h.cfg.deltaX, 1e-12);
  EXPECT_EQ(o.dzPelvis, 0.0);

  // Held through the DSP, released over the next SSP.
  for(; i < 400; ++i) h.tick(i, true, false);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::HoldingDSP);
  const double held = h.foot.current().dz;
  Offsets r = h.tick(0, false, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::Releasing);
  EXPECT_NEAR(r.dz, held, 1e-15);
  for(int k = 1; k < 200; ++k) r = h.tick(k, false, true);
  EXPECT_LT(std::abs(r.dz), 1e-5 * std::abs(held));
  r = h.tick(200, false, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::Idle);
  EXPECT_EQ(r.dz, 0.0);
  EXPECT_EQ(r.dx, 0.0);
}

TEST(FootAdapter, TouchExactlyAtSspEndIsAdvance)
{
  Harness h;
  for(int i = 0; i < 200; ++i) h.tick(i, true, false);
  h.tick(200, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::AdvanceModifying);
}

TEST(FootAdapter, RetardSearchStepsDownByTheDropPerTick)
{
  Harness h;
  const double drop = h.cfg.stepDrop;
  for(int i = 0; i <= 200; ++i) h.tick(i, true, false);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::RetardSearching);
  EXPECT_NEAR(h.foot.dzFoot(), -drop, 1e-18);
  for(int i = 201; i < 210; ++i) h.tick(i, true, false);
  EXPECT_NEAR(h.foot.dzFoot(), -10 * drop, 1e-15);
  EXPECT_EQ(h.foot.dzPelvis(), h.foot.dzFoot());

  Offsets o = h.tick(210, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::RetardModifying);
  EXPECT_NEAR(o.dz, -10 * drop, 1e-15);
  int i = 211;
  for(; i < 400 && !h.foot.lastLanding(); ++i)
  {
    o = h.tick(i, true, true);
    EXPECT_EQ(o.dx, 0.0);
    EXPECT_EQ(o.dzPelvis, h.foot.dzFoot());
  }
  ASSERT_TRUE(h.foot.lastLanding().has_value());
  const auto & e = *h.foot.lastLanding();
  EXPECT_FALSE(e.advance);
  EXPECT_NEAR(e.touchVelocity, -drop / kTick, 1e-15);
  EXPECT_NEAR(e.restVelocity, 0.0, 1e-12);
  EXPECT_NEAR(o.dz, -10 * drop - 0.003, 1e-12);
  EXPECT_NEAR(o.dzPelvis, -10 * drop, 1e-15);
}

TEST(FootAdapter, ContactOnTheFirstRetardTick)
{
  Harness h;
  for(int i = 0; i <= 200; ++i) h.tick(i, true, false);
  h.tick(201, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::RetardModifying);
  EXPECT_NEAR(h.foot.dzFoot(), -h.cfg.stepDrop, 1e-18);
}

TEST(FootAdapter, NoContactByTheEndOfTheDspIsExhausted)
{
  Harness h;
  for(int i = 0; i < 400; ++i) h.tick(i, true, false);
  EXPECT_ERROR_CODE(h.tick(0, false, false), ErrorCode::DSPExhausted);
}

TEST(FootAdapter, LateContactCannotFinishInTheDsp)
{
  Harness h;
  const int lastStart = 399 - static_cast<int>(std::ceil(h.cfg.tMod / kTick));
  for(int i = 0; i < 398; ++i) h.tick(i, true, false);
  EXPECT_GT(398, lastStart);
  EXPECT_ERROR_CODE(h.tick(398, true, true), ErrorCode::DSPExhausted);
}

TEST(FootAdapter, ZeroTriggerOffsetLandsImmediately)
{
  Harness h;
  h.cfg = AdaptationConfig::fromPlan(h.plan, kTick, 0.1 * kTick, 0.0);
  h.foot = FootAdapter(h.cfg);
  for(int i = 0; i < 150; ++i) h.tick(i, true, false);
  h.tick(150, true, true);
  EXPECT_EQ(h.foot.phase(), AdaptPhase::HoldingDSP);
  ASSERT_TRUE(h.foot.lastLanding().has_value());
}
