#include <gaitadapt/simulator.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <gaitadapt/csv.hpp>

namespace gaitadapt
{

namespace
{

std::size_t index(Side s) { return s == Side::Left ? 0 : 1; }

// Bisection of the switch predicate between two control ticks; returns the
// earliest sampled instant at which the switches fire.
template<typename Pred>
double localizeTouch(double lo, double hi, Pred fires)
{
  if(fires(lo)) return lo;
  for(int i = 0; i < 200 && hi - lo > 1e-13; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    if(fires(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

AdaptationConfig configFor(const Scenario & s, const TaskSpacePlan & plan)
{
  return AdaptationConfig::fromPlan(plan, s.tick, s.effectiveStepDrop(), s.sensor.triggerOffset);
}

} // namespace

void validateScenario(const Scenario & s)
{
  if(auto e = validateGeometry(s.geometry)) throw *e;
  validateSensorConfig(s.sensor);
  if(!(s.tick > 0.0) || !std::isfinite(s.tick)) throw Error(ErrorCode::InvalidScenario, "tick must be positive");
  if(s.nCycles < 1) throw Error(ErrorCode::InvalidScenario, "n_cycles must be at least 1");
  const TaskSpacePlan plan = buildPlan(s.gait, s.geometry, s.firstSwing);
  (void)configFor(s, plan);
}

SimTrace run(const Scenario & s)
{
  validateScenario(s);
  const RobotGeometry & g = s.geometry;
  const TaskSpacePlan plan0 = buildPlan(s.gait, g, s.firstSwing);
  const AdaptationConfig cfg = configFor(s, plan0);
  const double Ts = s.gait.sspPeriod;
  const double Tc = s.gait.cyclePeriod;
  const long Nc = cfg.ticksPerCycle;
  const long total = Nc * s.nCycles;

  std::array<FootAdapter, 2> adapters{FootAdapter(cfg), FootAdapter(cfg)};
  std::array<ContactSwitchReading, 2> delayed{};
  // Released landing offsets of the stance foot shift the whole plan so the
  // stance foot stays where it landed.
  Eigen::Vector2d refAnchor = Eigen::Vector2d::Zero();

  SimTrace trace;
  trace.tick = s.tick;
  trace.stepDrop = cfg.stepDrop;
  trace.tMod = cfg.tMod;
  trace.rows.reserve(static_cast<std::size_t>(total));
  std::vector<std::vector<MassPoint>> masses;
  masses.reserve(static_cast<std::size_t>(total));

  for(long n = 0; n < total; ++n)
  {
    const int k = static_cast<int>(n / Nc);
    const int i = static_cast<int>(n % Nc);
    const double t = i * s.tick;
    const TaskSpacePlan plan = plan0.forCycle(k);
    const Side swing = plan.swingSide;
    const Side stance = plan.stanceSide();
    FootAdapter & st = adapters[index(stance)];
    FootAdapter & sw = adapters[index(swing)];
    const std::array<AdaptPhase, 2> before{adapters[0].phase(), adapters[1].phase()};

    TraceRow row;
    try
    {
      FootTick stIn;
      stIn.tick = i;
      const Offsets S = st.step(stIn);
      if(i == 0) refAnchor += Eigen::Vector2d(S.dx, S.dz);
      const Eigen::Vector2d ref = refAnchor - Eigen::Vector2d(S.dx, S.dz);
      const Eigen::Vector2d refRate(-S.dxRate, -S.dzRate);

      const PreplannedFn pre = [&](double tt) {
        const Eigen::Vector3d p0 = samplePlan(plan, tt).foot(swing).position;
        const Eigen::Vector3d p1 = samplePlanRates(plan, tt, 1).foot(swing);
        const Eigen::Vector3d p2 = samplePlanRates(plan, tt, 2).foot(swing);
        const Eigen::Vector3d r0 = st.releaseDerivative(tt, 0);
        const Eigen::Vector3d r1 = st.releaseDerivative(tt, 1);
        const Eigen::Vector3d r2 = st.releaseDerivative(tt, 2);
        PreplannedSample out;
        out.x = p0.x() + refAnchor.x() - r0.x();
        out.xd = p1.x() - r1.x();
        out.xdd = p2.x() - r2.x();
        out.z = p0.z() + refAnchor.y() - r0.y();
        out.zd = p1.z() - r1.y();
        out.zdd = p2.z() - r2.y();
        return out;
      };

      // Switches are read on the pose the swing foot would take with the
      // offsets it already carries.
      const Pose3 planSwing = samplePlan(plan, t).foot(swing);
      auto swingPose = [&](double tt) {
        const PreplannedSample p = pre(tt);
        Pose3 f = planSwing;
        f.position.x() = p.x + sw.current().dx;
        f.position.z() = p.z + sw.current().dz;
        return f;
      };
      const ContactSwitchReading now = sampleSwitches(swingPose(t), s.terrain, s.sensor, g);
      FootTick swIn;
      swIn.tick = i;
      swIn.swing = true;
      swIn.touchTime = t;
      swIn.preplanned = &pre;
      if(s.sensor.latencyTicks > 0)
      {
        swIn.conSw = delayed[index(swing)].conSw();
        delayed[index(swing)] = now;
      }
      else
      {
        swIn.conSw = now.conSw();
        const bool monitoring = sw.phase() == AdaptPhase::Monitoring
                             || (sw.phase() == AdaptPhase::Idle && 2 * i >= cfg.ticksPerSsp);
        if(swIn.conSw && monitoring && i > 0)
        {
          const double lo = std::max(t - s.tick, 0.5 * Ts);
          swIn.touchTime = localizeTouch(lo, t, [&](double tt) {
            return sampleSwitches(swingPose(tt), s.terrain, s.sensor, g).conSw();
          });
        }
      }
      const Offsets W = sw.step(swIn);

      TaskSpaceState cmd = samplePlan(plan, t);
      const TaskSpaceRates rates = samplePlanRates(plan, t, 1);
      auto apply = [&](Side side, const Offsets & o) {
        FootRecord & rec = side == Side::Left ? row.left : row.right;
        Pose3 & f = cmd.foot(side);
        f.position.x() += ref.x() + o.dx;
        f.position.z() += ref.y() + o.dz;
        rec.pose = f;
        rec.velocity = rates.foot(side) + Eigen::Vector3d(refRate.x() + o.dxRate, 0.0, refRate.y() + o.dzRate);
        rec.offsets = o;
      };
      apply(stance, S);
      apply(swing, W);
      cmd.pelvis.position.x() += ref.x();
      cmd.pelvis.position.z() += ref.y() + S.dzPelvis + W.dzPelvis;

      row.tick = n;
      row.t = static_cast<double>(n) * s.tick;
      row.cycle = k;
      row.support = cmd.phase;
      row.swingSide = swing;
      row.pelvis = cmd.pelvis;
      row.pelvisVelocity =
          rates.pelvis + Eigen::Vector3d(refRate.x(), 0.0, refRate.y() + S.dzPelvisRate + W.dzPelvisRate);
      row.dzPelvis = S.dzPelvis + W.dzPelvis;
      row.reference = ref;
      for(Side side : {Side::Left, Side::Right})
      {
        FootRecord & rec = side == Side::Left ? row.left : row.right;
        const FootAdapter & a = adapters[index(side)];
        rec.phase = a.phase();
        rec.dxOnline = a.dxFoot();
        rec.dzOnline = a.dzFoot();
        rec.conSw = sampleSwitches(rec.pose, s.terrain, s.sensor, g).conSw();
      }
      (stance == Side::Left ? row.left : row.right).support = true;
      (swing == Side::Left ? row.left : row.right).support = sw.phase() == AdaptPhase::HoldingDSP;

      row.joints = planToJoints(cmd, g);

      if(const auto & e = sw.lastLanding())
      {
        ContactEvent ev;
        ev.cycle = k;
        ev.foot = swing;
        ev.advance = e->advance;
        ev.touchTime = k * Tc + e->touchTime;
        ev.completionTime = k * Tc + e->completionTime;
        ev.restHeight = cmd.foot(swing).position.z();
        ev.terrainHeight = terrainUnderFoot(cmd.foot(swing), s.terrain, g);
        ev.touchVelocity = e->touchVelocity;
        ev.restVelocity = e->restVelocity;
        trace.events.push_back(ev);
      }
    }
    catch(const Error & e)
    {
      std::ostringstream os;
      os << "tick " << n << " (t = " << static_cast<double>(n) * s.tick << " s): " << e.detail();
      throw Error(e.code(), os.str());
    }

    for(Side side : {Side::Left, Side::Right})
    {
      const AdaptPhase after = adapters[index(side)].phase();
      if(after != before[index(side)]) trace.phaseChanges.push_back({row.t, side, before[index(side)], after});
    }
    masses.push_back(linkMassPoints(row.pelvis, row.joints, g));
    trace.rows.push_back(std::move(row));
  }

  // ZMP from second differences of the commanded link positions; one-sided
  // at the ends of the run.
  const std::size_t m = trace.rows.size();
  for(std::size_t n = 0; n < m; ++n)
  {
    TraceRow & row = trace.rows[n];
    std::vector<LinkState> links;
    if(m < 3)
    {
      for(const auto & mp : masses[n]) links.push_back({mp.position, Eigen::Vector3d::Zero(), mp.mass});
    }
    else
    {
      const std::size_t c = std::clamp<std::size_t>(n, 1, m - 2);
      links = centralDifferenceLinks(masses[c - 1], masses[c], masses[c + 1], s.tick);
      for(std::size_t j = 0; j < links.size(); ++j) links[j].comPosition = masses[n][j].position;
    }
    try
    {
      if(!(std::accumulate(links.begin(), links.end(), 0.0,
                           [](double acc, const LinkState & l) { return acc + l.mass * (l.comAcceleration.z() + kGravity); })
           > 0.0))
      {
        // Commanded free fall, e.g. the first tick of a stepped retard descent.
        row.zmp = Eigen::Vector2d::Constant(std::numeric_limits<double>::quiet_NaN());
        row.muReq = std::numeric_limits<double>::infinity();
        row.zmpMargin = -std::numeric_limits<double>::infinity();
        row.supported = false;
        continue;
      }
      row.zmp = computeZmp(links);
      row.muReq = requiredFriction(links);
      TaskSpaceState st;
      st.leftFoot = row.left.pose;
      st.rightFoot = row.right.pose;
      std::vector<Side> feet;
      if(row.left.support) feet.push_back(Side::Left);
      if(row.right.support) feet.push_back(Side::Right);
      row.zmpMargin = zmpMargin(row.zmp, supportPolygon(st, g, feet));
    }
    catch(const Error & e)
    {
      std::ostringstream os;
      os << "tick " << row.tick << " (t = " << row.t << " s): " << e.detail();
      throw Error(e.code(), os.str());
    }
  }
  return trace;
}

Report summarize(const SimTrace & trace)
{
  if(trace.rows.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no rows");
  Report r;
  r.ticks = trace.rows.size();
  r.duration = trace.rows.back().t - trace.rows.front().t;
  r.minZmpMargin = std::numeric_limits<double>::infinity();
  for(const auto & row : trace.rows)
  {
    if(row.zmpMargin < r.minZmpMargin)
    {
      r.minZmpMargin = row.zmpMargin;
      r.minZmpMarginTime = row.t;
    }
    r.maxMuReq = std::max(r.maxMuReq, row.muReq);
    if(!row.supported) ++r.unsupportedTicks;
  }
  for(const auto & e : trace.events)
  {
    r.maxRestVelocity = std::max(r.maxRestVelocity, std::abs(e.restVelocity));
    double & touch = e.advance ? r.maxAdvanceTouchVelocity : r.maxRetardTouchVelocity;
    touch = std::max(touch, std::abs(e.touchVelocity));
    r.steps.push_back({e.cycle, e.foot, e.advance, e.restHeight - e.terrainHeight});
  }
  r.timeline = trace.phaseChanges;
  return r;
}

std::string formatReport(const Report & r)
{
  std::ostringstream os;
  os << "ticks: " << r.ticks << "\n";
  os << "duration_s: " << formatDouble(r.duration) << "\n";
  os << "max_touchdown_velocity_at_rest_mps: " << formatDouble(r.maxRestVelocity) << "\n";
  os << "max_advance_touch_velocity_mps: " << formatDouble(r.maxAdvanceTouchVelocity) << "\n";
  os << "max_retard_touch_velocity_mps: " << formatDouble(r.maxRetardTouchVelocity) << "\n";
  os << "min_zmp_margin_m: " << formatDouble(r.minZmpMargin) << " at t = " << formatDouble(r.minZmpMarginTime) << "\n";
  os << "max_mu_req: " << formatDouble(r.maxMuReq) << "\n";
  os << "ticks_without_support: " << r.unsupportedTicks << "\n";
  os << "steps (cycle foot path rest_minus_terrain_m):\n";
  for(const auto & s : r.steps)
  {
    os << "  " << s.cycle << " " << toString(s.foot) << " " << (s.advance ? "advance" : "retard") << " "
       << formatDouble(s.error) << "\n";
  }
  os << "phase timeline (t foot from -> to):\n";
  for(const auto & c : r.timeline)
  {
    os << "  " << formatDouble(c.t) << " " << toString(c.foot) << " " << toString(c.from) << " -> "
       << toString(c.to) << "\n";
  }
  return os.str();
}

void writeTraceCsv(std::ostream & os, const SimTrace & trace)
{
  os << "t,cycle,support,swing,left_x,left_y,left_z,right_x,right_y,right_z,pelvis_x,pelvis_y,pelvis_z";
  for(const char * side : {"left", "right"})
  {
    for(const char * j : {"hip_yaw", "hip_roll", "hip_pitch", "knee_pitch", "ankle_pitch", "ankle_roll"})
    {
      os << ',' << side << '_' << j;
    }
  }
  os << ",left_con_sw,right_con_sw\n";
  for(const auto & r : trace.rows)
  {
    CsvRow row(os);
    row << r.t << r.cycle << (r.support == SupportPhase::SSP ? "SSP" : "DSP") << toString(r.swingSide);
    for(const Pose3 * p : {&r.left.pose, &r.right.pose, &r.pelvis})
    {
      row << p->position.x() << p->position.y() << p->position.z();
    }
    for(const LegJoints * j : {&r.joints.left, &r.joints.right})
    {
      for(double a : j->asArray()) row << a;
    }
    row << r.left.conSw << r.right.conSw;
    row.end();
  }
}

void writeZmpCsv(std::ostream & os, const SimTrace & trace)
{
  os << "t,x_zmp,y_zmp,margin,mu_req\n";
  for(const auto & r : trace.rows)
  {
    CsvRow row(os);
    row << r.t << r.zmp.x() << r.zmp.y() << r.zmpMargin << r.muReq;
    row.end();
  }
}

void writeOffsetsCsv(std::ostream & os, const SimTrace & trace)
{
  os << "t,left_phase,left_dx,left_dz,right_phase,right_dx,right_dz,dz_pelvis,left_con_sw,right_con_sw\n";
  for(const auto & r : trace.rows)
  {
    CsvRow row(os);
    row << r.t << toString(r.left.phase) << r.left.offsets.dx << r.left.offsets.dz << toString(r.right.phase)
        << r.right.offsets.dx << r.right.offsets.dz << r.dzPelvis << r.left.conSw << r.right.conSw;
    row.end();
  }
}

} // namespace gaitadapt
