#include <gaitadapt/gait_planner.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include <gaitadapt/csv.hpp>

namespace gaitadapt
{

SwingFootPlan planSwingFoot(const GaitParams & p)
{
  const double Ts = p.sspPeriod;
  const std::array<BoundaryCondition, 6> xbc{{
      {0, 0.0, 0.0},
      {1, 0.0, 0.0},
      {2, 0.0, 0.0},
      {0, Ts, 2.0 * p.stepLength},
      {1, Ts, 0.0},
      {2, Ts, 0.0},
  }};
  const std::array<BoundaryCondition, 7> zbc{{
      {0, 0.0, 0.0},
      {1, 0.0, 0.0},
      {2, 0.0, 0.0},
      {0, 0.5 * Ts, p.maxFootHeight},
      {0, Ts, 0.0},
      {1, Ts, 0.0},
      {2, Ts, 0.0},
  }};
  return {solveBvp(xbc, 0.0, Ts), solveBvp(zbc, 0.0, Ts), p.footSpacing};
}

PelvisPlan planPelvis(const GaitParams & p)
{
  const double Ts = p.sspPeriod;
  const double Tc = p.cyclePeriod;
  const double Td = p.dspPeriod();
  PelvisPlan out;

  {
    const std::array<SegmentSpec, 2> seg{{{3, 0.0, Ts}, {3, Ts, Tc}}};
    const std::array<PointCondition, 4> pts{{
        {0, {0, 0.0, -p.pelvisXStart}},
        {0, {0, Ts, p.pelvisXEnd}},
        {1, {0, Ts, p.pelvisXEnd}},
        {1, {0, Tc, p.stepLength - p.pelvisXStart}},
    }};
    const std::array<CrossCondition, 4> cross{{
        {0, 1, 0.0, 1.0, 1, 1, Tc},
        {0, 2, 0.0, 1.0, 1, 2, Tc},
        {1, 1, Ts, 1.0, 0, 1, Ts},
        {1, 2, Ts, 1.0, 0, 2, Ts},
    }};
    auto x = solveCoupledBvp(seg, pts, cross);
    out.xSsp = x[0];
    out.xDsp = x[1];
  }

  {
    const std::array<SegmentSpec, 2> seg{{{4, 0.0, Ts}, {3, Ts, Tc}}};
    const std::array<PointCondition, 5> pts{{
        {0, {0, 0.0, p.pelvisYOffset}},
        {0, {0, 0.5 * Ts, p.pelvisYMax}},
        {0, {0, Ts, p.pelvisYOffset}},
        {1, {0, Ts, p.pelvisYOffset}},
        {1, {0, Tc, -p.pelvisYOffset}},
    }};
    std::array<CrossCondition, 4> cross{};
    if(p.lateralCoupling == LateralCoupling::AsPrinted)
    {
      cross = {{
          {0, 1, 0.0, -1.0, 1, 1, Tc},
          {0, 1, Ts, -1.0, 1, 1, Tc},
          {1, 1, Ts, 1.0, 0, 1, Ts},
          {1, 1, Tc, 1.0, 0, 1, Ts},
      }};
    }
    else
    {
      cross = {{
          {0, 1, 0.0, -1.0, 1, 1, Tc},
          {0, 2, 0.0, -1.0, 1, 2, Tc},
          {1, 1, Ts, 1.0, 0, 1, Ts},
          {1, 2, Ts, 1.0, 0, 2, Ts},
      }};
    }
    auto y = solveCoupledBvp(seg, pts, cross);
    out.ySsp = y[0];
    out.yDsp = y[1];
  }

  {
    const double tA = 0.5 * Ts;
    const double tB = Ts + 0.5 * Td;
    const double tC = Tc + 0.5 * Ts;
    const std::array<SegmentSpec, 2> seg{{{3, tA, tB}, {3, tB, tC}}};
    const std::array<PointCondition, 4> pts{{
        {0, {0, tA, p.pelvisZMax}},
        {0, {0, tB, p.pelvisZMin}},
        {1, {0, tB, p.pelvisZMin}},
        {1, {0, tC, p.pelvisZMax}},
    }};
    const std::array<CrossCondition, 4> cross{{
        {0, 1, tA, 1.0, 1, 1, tC},
        {0, 2, tA, 1.0, 1, 2, tC},
        {1, 1, tB, 1.0, 0, 1, tB},
        {1, 2, tB, 1.0, 0, 2, tB},
    }};
    auto z = solveCoupledBvp(seg, pts, cross);
    out.z1 = z[0];
    out.z2 = z[1];
  }
  return out;
}

TaskSpacePlan TaskSpacePlan::forCycle(int k) const
{
  TaskSpacePlan out = *this;
  out.cycleIndex = k;
  out.swingSide = (k % 2 == 0) ? firstSwingSide : opposite(firstSwingSide);
  return out;
}

TaskSpacePlan buildPlan(const GaitParams & p, const RobotGeometry & g, Side firstSwing)
{
  if(auto e = validateGaitParams(p, g)) throw *e;
  TaskSpacePlan plan;
  plan.params = p;
  plan.swing = planSwingFoot(p);
  plan.pelvis = planPelvis(p);
  plan.firstSwingSide = firstSwing;
  return plan.forCycle(0);
}

namespace
{

void checkCycleTime(const TaskSpacePlan & plan, double t)
{
  if(!(t >= -Polynomial::kDomainTolerance && t <= plan.params.cyclePeriod + Polynomial::kDomainTolerance))
  {
    std::ostringstream os;
    os << "cycle time " << t << " outside [0, " << plan.params.cyclePeriod << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
}

// Lateral world coordinate of a foot center. The cycle-0 stance foot sits on
// y = 0 and the other foot on the side given by its own sign.
double footWorldY(const TaskSpacePlan & plan, Side s)
{
  const Side stance0 = opposite(plan.firstSwingSide);
  return s == stance0 ? 0.0 : -sideSign(stance0) * plan.params.footSpacing;
}

double midlineY(const TaskSpacePlan & plan)
{
  return -0.5 * sideSign(opposite(plan.firstSwingSide)) * plan.params.footSpacing;
}

// Derivative of order `order` of the relative pelvis coordinates at cycle time t.
Eigen::Vector3d pelvisRelative(const TaskSpacePlan & plan, double t, int order)
{
  const auto & p = plan.params;
  const auto & pp = plan.pelvis;
  const bool ssp = t < p.sspPeriod;
  const double x = ssp ? pp.xSsp(t, order) : pp.xDsp(t, order);
  const double y = ssp ? pp.ySsp(t, order) : pp.yDsp(t, order);
  double z = 0.0;
  if(t < 0.5 * p.sspPeriod)
    z = pp.z2(t + p.cyclePeriod, order);
  else if(t <= pp.z1.tHi())
    z = pp.z1(t, order);
  else
    z = pp.z2(t, order);
  return {x, y, z};
}

} // namespace

TaskSpaceState samplePlan(const TaskSpacePlan & plan, double t)
{
  checkCycleTime(plan, t);
  const auto & p = plan.params;
  const double Ts = p.sspPeriod;
  const double k = static_cast<double>(plan.cycleIndex);
  const Side stance = plan.stanceSide();
  const Side swing = plan.swingSide;

  TaskSpaceState s;
  s.time = t;
  const bool ssp = t < Ts;
  s.phase = ssp ? SupportPhase::SSP : SupportPhase::DSP;
  if(ssp) s.swingSide = swing;

  s.foot(stance).position = {k * p.stepLength, footWorldY(plan, stance), 0.0};
  if(ssp)
  {
    s.foot(swing).position = {(k - 1.0) * p.stepLength + plan.swing.x(t), footWorldY(plan, swing), plan.swing.z(t)};
  }
  else
  {
    s.foot(swing).position = {(k + 1.0) * p.stepLength, footWorldY(plan, swing), 0.0};
  }

  const Eigen::Vector3d rel = pelvisRelative(plan, t, 0);
  s.pelvis.position = {k * p.stepLength + rel.x(), midlineY(plan) + sideSign(stance) * rel.y(), rel.z()};
  return s;
}

TaskSpaceRates samplePlanRates(const TaskSpacePlan & plan, double t, int order)
{
  checkCycleTime(plan, t);
  if(order < 1) throw Error(ErrorCode::OutOfDomain, "samplePlanRates needs order >= 1");
  TaskSpaceRates r;
  const Side swing = plan.swingSide;
  Eigen::Vector3d & sw = swing == Side::Left ? r.leftFoot : r.rightFoot;
  if(t < plan.params.sspPeriod)
  {
    sw = {plan.swing.x(t, order), 0.0, plan.swing.z(t, order)};
  }
  const Eigen::Vector3d rel = pelvisRelative(plan, t, order);
  r.pelvis = {rel.x(), sideSign(plan.stanceSide()) * rel.y(), rel.z()};
  return r;
}

void writePlanCsv(std::ostream & os, const TaskSpacePlan & plan, int nCycles, double rateHz)
{
  if(!(rateHz > 0.0)) throw Error(ErrorCode::InvalidScenario, "sample rate must be positive");
  os << "t,left_x,left_y,left_z,right_x,right_y,right_z,pelvis_x,pelvis_y,pelvis_z\n";
  const double Tc = plan.params.cyclePeriod;
  const auto perCycle = static_cast<long>(std::llround(Tc * rateHz));
  const long total = perCycle * nCycles;
  for(long i = 0; i <= total; ++i)
  {
    const double t = static_cast<double>(i) / rateHz;
    int k = static_cast<int>(i / perCycle);
    if(k >= nCycles) k = nCycles - 1;
    const double local = std::clamp(t - k * Tc, 0.0, Tc);
    const auto s = samplePlan(plan.forCycle(k), local);
    CsvRow row(os);
    row << t;
    for(const Pose3 * pose : {&s.leftFoot, &s.rightFoot, &s.pelvis})
    {
      row << pose->position.x() << pose->position.y() << pose->position.z();
    }
    row.end();
  }
}

} // namespace gaitadapt
