#include <gaitadapt/adaptation.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace gaitadapt
{

namespace
{

// Slack for comparing tick times against analytically derived instants.
constexpr double kTimeSlack = 1e-9;

int ticksFor(double duration, double tick, const char * name)
{
  const double n = duration / tick;
  const double rounded = std::round(n);
  if(rounded < 1.0 || std::abs(rounded * tick - duration) > 1e-12 * std::max(1.0, duration))
  {
    std::ostringstream os;
    os << "tick " << tick << " s does not divide " << name << " " << duration << " s";
    throw Error(ErrorCode::InvalidScenario, os.str());
  }
  return static_cast<int>(rounded);
}

} // namespace

std::string_view toString(AdaptPhase p)
{
  switch(p)
  {
    case AdaptPhase::Idle: return "Idle";
    case AdaptPhase::Monitoring: return "Monitoring";
    case AdaptPhase::AdvanceModifying: return "AdvanceModifying";
    case AdaptPhase::RetardSearching: return "RetardSearching";
    case AdaptPhase::RetardModifying: return "RetardModifying";
    case AdaptPhase::HoldingDSP: return "HoldingDSP";
    case AdaptPhase::Releasing: return "Releasing";
  }
  return "?";
}

double computeTMod(const TaskSpacePlan & plan, double triggerOffset)
{
  const auto & p = plan.params;
  if(!(triggerOffset >= 0.0)) throw Error(ErrorCode::InvalidScenario, "trigger offset must be >= 0");
  if(triggerOffset >= p.maxFootHeight)
  {
    std::ostringstream os;
    os << "trigger offset " << triggerOffset << " m is not below the swing apex " << p.maxFootHeight << " m";
    throw Error(ErrorCode::OffsetAboveApex, os.str());
  }
  if(triggerOffset == 0.0) return 0.0;
  double lo = 0.5 * p.sspPeriod;
  double hi = p.sspPeriod;
  for(int i = 0; i < 200 && hi - lo > 1e-13; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    if(plan.swing.z(mid) > triggerOffset)
      lo = mid;
    else
      hi = mid;
  }
  return p.sspPeriod - 0.5 * (lo + hi);
}

double computeDeltaX(const TaskSpacePlan & plan, double tMod)
{
  const double Ts = plan.params.sspPeriod;
  if(!(tMod >= 0.0 && tMod <= 0.5 * Ts))
  {
    std::ostringstream os;
    os << "landing time " << tMod << " s outside [0, " << 0.5 * Ts << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  return plan.swing.x(Ts) - plan.swing.x(Ts - tMod);
}

LandingMods buildLandingMods(const TouchValues & touch, double triggerOffset, double deltaX, double tMod)
{
  if(!(tMod > 0.0)) throw Error(ErrorCode::OutOfDomain, "landing time must be positive");
  const std::array<BoundaryCondition, 6> z{{
      {0, 0.0, 0.0},
      {1, 0.0, touch.zd},
      {2, 0.0, touch.zdd},
      {0, tMod, -triggerOffset},
      {1, tMod, 0.0},
      {2, tMod, 0.0},
  }};
  const std::array<BoundaryCondition, 6> x{{
      {0, 0.0, 0.0},
      {1, 0.0, touch.xd},
      {2, 0.0, touch.xdd},
      {0, tMod, deltaX},
      {1, tMod, 0.0},
      {2, tMod, 0.0},
  }};
  return {solveBvp(z, 0.0, tMod), solveBvp(x, 0.0, tMod)};
}

Polynomial buildRelease(double value, double duration)
{
  const std::array<BoundaryCondition, 6> bc{{
      {0, 0.0, value},
      {1, 0.0, 0.0},
      {2, 0.0, 0.0},
      {0, duration, 0.0},
      {1, duration, 0.0},
      {2, duration, 0.0},
  }};
  return solveBvp(bc, 0.0, duration);
}

AdaptationConfig AdaptationConfig::fromPlan(const TaskSpacePlan & plan, double tick, double stepDrop,
                                            double triggerOffset)
{
  if(!(tick > 0.0) || !std::isfinite(tick)) throw Error(ErrorCode::InvalidScenario, "tick must be positive");
  if(!(stepDrop > 0.0) || !std::isfinite(stepDrop))
  {
    throw Error(ErrorCode::InvalidScenario, "retard step drop must be positive");
  }
  AdaptationConfig c;
  c.tick = tick;
  c.ticksPerSsp = ticksFor(plan.params.sspPeriod, tick, "SSP period");
  c.ticksPerCycle = ticksFor(plan.params.cyclePeriod, tick, "cycle period");
  c.stepDrop = stepDrop;
  c.triggerOffset = triggerOffset;
  c.tMod = computeTMod(plan, triggerOffset);
  c.deltaX = computeDeltaX(plan, c.tMod);
  return c;
}

void FootAdapter::startLanding(double tTouch, const TouchValues & touch, bool advance)
{
  // The landing has to be complete on the last tick of the cycle.
  const double lastTick = time(cfg_.ticksPerCycle - 1);
  if(tTouch + cfg_.tMod > lastTick + kTimeSlack)
  {
    std::ostringstream os;
    os << "landing from touch at " << tTouch << " s needs " << cfg_.tMod << " s but the last tick of the DSP is at "
       << lastTick << " s";
    throw Error(ErrorCode::DSPExhausted, os.str());
  }
  tTouch_ = tTouch;
  touch_ = touch;
  advance_ = advance;
  if(cfg_.tMod > 0.0)
  {
    mods_ = buildLandingMods(touch, cfg_.triggerOffset, advance ? cfg_.deltaX : 0.0, cfg_.tMod);
  }
  else
  {
    mods_ = LandingMods{Polynomial::constant(0.0, 0.0, 0.0), Polynomial::constant(0.0, 0.0, 0.0)};
  }
  phase_ = advance ? AdaptPhase::AdvanceModifying : AdaptPhase::RetardModifying;
}

Offsets FootAdapter::landingOffsets(double t, const PreplannedSample & pre) const
{
  const double elapsed = t - tTouch_;
  const double tau = std::clamp(elapsed, 0.0, cfg_.tMod);
  const bool moving = elapsed < cfg_.tMod;
  Offsets o;
  if(advance_)
  {
    // Online terms are recomputed every tick against the preplanned motion,
    // so the commanded foot is the touch pose plus the landing polynomials.
    const double dz = touch_->z - pre.z;
    const double dx = touch_->x - pre.x;
    o.dz = dz + mods_->zMod(tau);
    o.dx = dx + mods_->xMod(tau);
    o.dzRate = -pre.zd + (moving ? mods_->zMod(tau, 1) : 0.0);
    o.dxRate = -pre.xd + (moving ? mods_->xMod(tau, 1) : 0.0);
  }
  else
  {
    o.dz = dzFoot_ + mods_->zMod(tau);
    o.dzRate = moving ? mods_->zMod(tau, 1) : 0.0;
    o.dzPelvis = dzPelvis_;
  }
  return o;
}

Offsets FootAdapter::releaseAt(double t) const
{
  Offsets o;
  if(phase_ != AdaptPhase::Releasing) return o;
  const double tau = std::clamp(t, 0.0, releaseZ_->tHi());
  o.dx = (*releaseX_)(tau);
  o.dz = (*releaseZ_)(tau);
  o.dzPelvis = (*releasePelvis_)(tau);
  o.dxRate = (*releaseX_)(tau, 1);
  o.dzRate = (*releaseZ_)(tau, 1);
  o.dzPelvisRate = (*releasePelvis_)(tau, 1);
  return o;
}

Eigen::Vector3d FootAdapter::releaseDerivative(double t, int order) const
{
  if(phase_ != AdaptPhase::Releasing) return Eigen::Vector3d::Zero();
  const double tau = std::clamp(t, 0.0, releaseZ_->tHi());
  return {(*releaseX_)(tau, order), (*releaseZ_)(tau, order), (*releasePelvis_)(tau, order)};
}

Offsets FootAdapter::step(const FootTick & in)
{
  landed_.reset();
  const double t = time(in.tick);
  auto preplanned = [&](double at) {
    if(in.preplanned == nullptr) throw Error(ErrorCode::InvalidScenario, "swing foot tick without a preplanned track");
    return (*in.preplanned)(at);
  };

  if(in.tick == 0)
  {
    switch(phase_)
    {
      case AdaptPhase::Monitoring:
      case AdaptPhase::RetardSearching:
        throw Error(ErrorCode::DSPExhausted, "no ground contact by the end of the double support phase");
      case AdaptPhase::AdvanceModifying:
      case AdaptPhase::RetardModifying:
        throw Error(ErrorCode::DSPExhausted, "landing still in progress at the end of the double support phase");
      case AdaptPhase::HoldingDSP:
      {
        const double Ts = time(cfg_.ticksPerSsp);
        releaseX_ = buildRelease(current_.dx, Ts);
        releaseZ_ = buildRelease(current_.dz, Ts);
        releasePelvis_ = buildRelease(current_.dzPelvis, Ts);
        mods_.reset();
        phase_ = AdaptPhase::Releasing;
        break;
      }
      default: break;
    }
  }

  if(phase_ == AdaptPhase::Releasing)
  {
    if(in.tick >= cfg_.ticksPerSsp)
    {
      *this = FootAdapter(cfg_);
      return current_;
    }
    current_ = releaseAt(t);
    dxFoot_ = current_.dx;
    dzFoot_ = current_.dz;
    dzPelvis_ = current_.dzPelvis;
    return current_;
  }

  if(phase_ == AdaptPhase::Idle)
  {
    // Switch readings are ignored until the swing foot is past its apex.
    if(!in.swing || 2 * in.tick < cfg_.ticksPerSsp) return current_;
    phase_ = AdaptPhase::Monitoring;
  }

  if(phase_ == AdaptPhase::Monitoring)
  {
    if(in.conSw)
    {
      const PreplannedSample pre = preplanned(in.touchTime);
      startLanding(in.touchTime, {pre.z, pre.zd, pre.zdd, pre.x, pre.xd, pre.xdd}, true);
    }
    else if(in.tick >= cfg_.ticksPerSsp)
    {
      phase_ = AdaptPhase::RetardSearching;
    }
    else
    {
      return current_;
    }
  }

  if(phase_ == AdaptPhase::RetardSearching)
  {
    if(in.conSw)
    {
      // The stepped descent has no meaningful rate; land from rest.
      const PreplannedSample pre = preplanned(t);
      startLanding(t, {pre.z + dzFoot_, 0.0, 0.0, pre.x, 0.0, 0.0}, false);
    }
    else
    {
      dzFoot_ -= cfg_.stepDrop;
      dzPelvis_ = dzFoot_;
      current_ = Offsets{};
      current_.dz = dzFoot_;
      current_.dzPelvis = dzPelvis_;
      return current_;
    }
  }

  // AdvanceModifying, RetardModifying or HoldingDSP.
  const PreplannedSample pre = preplanned(t);
  current_ = landingOffsets(t, pre);
  if(advance_)
  {
    dzFoot_ = touch_->z - pre.z;
    dxFoot_ = touch_->x - pre.x;
  }
  if(phase_ != AdaptPhase::HoldingDSP && t - tTouch_ >= cfg_.tMod - kTimeSlack)
  {
    phase_ = AdaptPhase::HoldingDSP;
    LandingEvent e;
    e.advance = advance_;
    e.touchTime = tTouch_;
    e.completionTime = tTouch_ + cfg_.tMod;
    e.touchVelocity = advance_ ? touch_->zd : -cfg_.stepDrop / cfg_.tick;
    // Commanded vertical foot velocity at the end of the landing polynomial.
    e.restVelocity = mods_->zMod(cfg_.tMod, 1) + (advance_ ? 0.0 : pre.zd);
    landed_ = e;
  }
  return current_;
}

} // namespace gaitadapt
