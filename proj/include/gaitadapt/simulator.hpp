#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <gaitadapt/adaptation.hpp>
#include <gaitadapt/balance.hpp>
#include <gaitadapt/core_types.hpp>
#include <gaitadapt/gait_planner.hpp>
#include <gaitadapt/leg_kinematics.hpp>
#include <gaitadapt/terrain_contact.hpp>

namespace gaitadapt
{

struct Scenario
{
  GaitParams gait;
  RobotGeometry geometry;
  Terrain terrain;
  SensorConfig sensor;
  double tick = 0.005;                ///< control period [s]
  int nCycles = 4;
  std::optional<double> stepDrop;     ///< h [m]; 0.1 * tick when unset
  std::uint64_t seed = 0;             ///< recorded only; the simulation is deterministic
  Side firstSwing = Side::Right;

  double effectiveStepDrop() const { return stepDrop.value_or(0.1 * tick); }
};

/// Throws InvalidScenario (or the gait validation error) when the scenario
/// cannot be run.
void validateScenario(const Scenario & s);

struct FootRecord
{
  Pose3 pose;                       ///< commanded world pose
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero(); ///< commanded world velocity
  AdaptPhase phase = AdaptPhase::Idle;
  Offsets offsets;                  ///< commanded minus preplanned, including landing polynomials
  double dxOnline = 0.0;
  double dzOnline = 0.0;
  bool conSw = false;               ///< switches sampled on the commanded pose
  bool support = false;             ///< counted in the support polygon
};

struct TraceRow
{
  long tick = 0;
  double t = 0.0;
  int cycle = 0;
  SupportPhase support = SupportPhase::SSP;
  Side swingSide = Side::Right;
  FootRecord left;
  FootRecord right;
  Pose3 pelvis;
  Eigen::Vector3d pelvisVelocity = Eigen::Vector3d::Zero();
  double dzPelvis = 0.0;
  Eigen::Vector2d reference = Eigen::Vector2d::Zero(); ///< (x, z) shift of the whole plan from released offsets
  LegJointPair joints;
  Eigen::Vector2d zmp = Eigen::Vector2d::Zero();
  double zmpMargin = 0.0;
  double muReq = 0.0;
  bool supported = true; ///< net vertical ground force positive; otherwise zmp is NaN and the margin -inf

  const FootRecord & foot(Side s) const { return s == Side::Left ? left : right; }
};

/// A completed landing of a swing foot.
struct ContactEvent
{
  int cycle = 0;
  Side foot = Side::Right;
  bool advance = true;
  double touchTime = 0.0;       ///< global time of the switch instant
  double completionTime = 0.0;  ///< global time the landing polynomial ends
  double restHeight = 0.0;      ///< commanded sole height after landing
  double terrainHeight = 0.0;   ///< highest ground under the sole
  double touchVelocity = 0.0;   ///< commanded vertical velocity at the switch instant
  double restVelocity = 0.0;    ///< commanded vertical velocity at landing completion
};

struct PhaseChange
{
  double t = 0.0;
  Side foot = Side::Left;
  AdaptPhase from = AdaptPhase::Idle;
  AdaptPhase to = AdaptPhase::Idle;
};

struct SimTrace
{
  double tick = 0.0;
  double stepDrop = 0.0;
  double tMod = 0.0;
  std::vector<TraceRow> rows;
  std::vector<ContactEvent> events;
  std::vector<PhaseChange> phaseChanges;
};

/// Runs the closed loop for nCycles cycles at the scenario tick: preplanned
/// state, switch sampling, adaptation, IK and ZMP. Errors from IK and
/// adaptation are rethrown with the tick index.
SimTrace run(const Scenario & s);

struct StepError
{
  int cycle = 0;
  Side foot = Side::Right;
  bool advance = true;
  double error = 0.0; ///< rest height minus terrain height
};

struct Report
{
  std::size_t ticks = 0;
  double duration = 0.0;
  double maxRestVelocity = 0.0;         ///< max |commanded vz| at landing completion
  double maxAdvanceTouchVelocity = 0.0; ///< max |commanded vz| at the switch instant, advance landings
  double maxRetardTouchVelocity = 0.0;  ///< stepped descent rate, retard landings
  double minZmpMargin = 0.0;
  double minZmpMarginTime = 0.0;
  double maxMuReq = 0.0;
  std::size_t unsupportedTicks = 0;
  std::vector<StepError> steps;
  std::vector<PhaseChange> timeline;
};

/// Throws EmptyTrace for a trace with no rows.
Report summarize(const SimTrace & trace);
std::string formatReport(const Report & r);

void writeTraceCsv(std::ostream & os, const SimTrace & trace);
void writeZmpCsv(std::ostream & os, const SimTrace & trace);
void writeOffsetsCsv(std::ostream & os, const SimTrace & trace);

} // namespace gaitadapt
