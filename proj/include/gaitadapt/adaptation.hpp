#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include <gaitadapt/gait_planner.hpp>
#include <gaitadapt/polynomial.hpp>

namespace gaitadapt
{

enum class AdaptPhase
{
  Idle,
  Monitoring,
  AdvanceModifying,
  RetardSearching,
  RetardModifying,
  HoldingDSP,
  Releasing
};
std::string_view toString(AdaptPhase p);

/// Time the preplanned swing foot needs to come down the last triggerOffset
/// meters: T_s - t*, with t* the time in [T_s/2, T_s] at which the preplanned
/// height equals triggerOffset (bisection to 1e-13 s).
/// Throws OffsetAboveApex if triggerOffset >= H_max, InvalidScenario if it is
/// negative.
double computeTMod(const TaskSpacePlan & plan, double triggerOffset);

/// Horizontal preplanned travel during the last tMod seconds of the SSP.
/// Throws OutOfDomain unless 0 <= tMod <= T_s/2.
double computeDeltaX(const TaskSpacePlan & plan, double tMod);

/// Position, velocity and acceleration of the swing foot at the touch instant.
struct TouchValues
{
  double z = 0.0, zd = 0.0, zdd = 0.0;
  double x = 0.0, xd = 0.0, xdd = 0.0;
};

struct LandingMods
{
  Polynomial zMod; ///< 0 -> -triggerOffset over [0, tMod], starting with the touch rates
  Polynomial xMod; ///< 0 -> +deltaX over [0, tMod], starting with the touch rates
};

/// Quintic landing modifications ending at rest. Throws OutOfDomain unless
/// tMod > 0.
LandingMods buildLandingMods(const TouchValues & touch, double triggerOffset, double deltaX, double tMod);

/// Quintic from value at t = 0 to 0 at t = duration, at rest at both ends.
Polynomial buildRelease(double value, double duration);

/// Offsets added to the preplanned world trajectory, and their time rates.
struct Offsets
{
  double dx = 0.0, dz = 0.0, dzPelvis = 0.0;
  double dxRate = 0.0, dzRate = 0.0, dzPelvisRate = 0.0;
};

/// Preplanned world-frame sagittal and vertical motion of one foot within the
/// current cycle.
struct PreplannedSample
{
  double x = 0.0, xd = 0.0, xdd = 0.0;
  double z = 0.0, zd = 0.0, zdd = 0.0;
};
using PreplannedFn = std::function<PreplannedSample(double)>;

struct AdaptationConfig
{
  double tick = 0.005;          ///< control period [s]
  int ticksPerSsp = 200;        ///< T_s / tick
  int ticksPerCycle = 240;      ///< T_c / tick
  double stepDrop = 0.0005;     ///< h [m]: retard descent per tick
  double triggerOffset = 0.003; ///< delta_z [m]
  double tMod = 0.0;            ///< from computeTMod
  double deltaX = 0.0;          ///< from computeDeltaX

  /// Derives tick counts, tMod and deltaX from a plan. Throws InvalidScenario
  /// when the tick does not divide T_s and T_c.
  static AdaptationConfig fromPlan(const TaskSpacePlan & plan, double tick, double stepDrop, double triggerOffset);
};

/// One control tick as seen by one foot.
struct FootTick
{
  int tick = 0;          ///< index within the current cycle, 0 .. ticksPerCycle-1
  bool swing = false;    ///< the foot swings in the current cycle
  bool conSw = false;    ///< contact switch aggregate for this tick
  double touchTime = 0;  ///< instant the switches fired, in (previous tick, this tick]; only read when conSw
  const PreplannedFn * preplanned = nullptr; ///< required for the swing foot
};

/// Fired when a landing finishes (the foot is at rest on the ground).
struct LandingEvent
{
  bool advance = true;
  double touchTime = 0.0;       ///< cycle-local switch instant
  double completionTime = 0.0;  ///< cycle-local end of the landing modification
  double touchVelocity = 0.0;   ///< commanded vertical velocity at the switch instant
  double restVelocity = 0.0;    ///< commanded vertical velocity at completion
};

/// Online adaptation state machine of one foot. In its swing cycle the foot is
/// monitored from T_s/2; a touch before or at T_s takes the advance path, no
/// touch by T_s takes the retard path. The landing offsets are held through
/// the DSP and released to zero during the following SSP, in which the foot is
/// stance.
class FootAdapter
{
public:
  explicit FootAdapter(const AdaptationConfig & cfg) : cfg_(cfg) {}

  /// Advances one tick and returns the offsets to command. Throws
  /// DSPExhausted when a landing cannot finish inside the DSP.
  Offsets step(const FootTick & in);

  /// Offsets the current release applies at cycle-local time t (zero when not
  /// releasing). Used to evaluate the world frame between ticks.
  Offsets releaseAt(double t) const;
  /// order-th derivative of the release offsets (dx, dz, dzPelvis) at t.
  Eigen::Vector3d releaseDerivative(double t, int order) const;

  AdaptPhase phase() const { return phase_; }
  const Offsets & current() const { return current_; }
  /// Online terms without the landing polynomials.
  double dzFoot() const { return dzFoot_; }
  double dxFoot() const { return dxFoot_; }
  double dzPelvis() const { return dzPelvis_; }
  const std::optional<TouchValues> & touch() const { return touch_; }
  double touchTime() const { return tTouch_; }

  /// Landing completed during the last step() call, if any.
  const std::optional<LandingEvent> & lastLanding() const { return landed_; }

private:
  void startLanding(double tTouch, const TouchValues & touch, bool advance);
  Offsets landingOffsets(double t, const PreplannedSample & pre) const;
  double time(int tick) const { return tick * cfg_.tick; }

  AdaptationConfig cfg_;
  AdaptPhase phase_ = AdaptPhase::Idle;
  Offsets current_;
  double dzFoot_ = 0.0;
  double dxFoot_ = 0.0;
  double dzPelvis_ = 0.0;
  std::optional<TouchValues> touch_;
  std::optional<LandingMods> mods_;
  double tTouch_ = 0.0;
  bool advance_ = true;
  std::optional<Polynomial> releaseX_, releaseZ_, releasePelvis_;
  std::optional<LandingEvent> landed_;
};

} // namespace gaitadapt
