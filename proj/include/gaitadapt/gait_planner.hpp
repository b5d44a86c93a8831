#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include <gaitadapt/core_types.hpp>
#include <gaitadapt/polynomial.hpp>

namespace gaitadapt
{

/// Swing foot motion relative to its lift-off point. x and z are defined on
/// [0, T_s]; the lateral distance to the stance foot stays fixed.
struct SwingFootPlan
{
  Polynomial x;
  Polynomial z;
  double lateralOffset = 0.0;
};

/// Pelvis motion relative to the stance foot of the current cycle. y is
/// measured from the midline between the feet, positive toward the stance
/// foot. The vertical pieces straddle the cycle: z1 runs from the SSP midpoint
/// to the DSP midpoint, z2 from there to the next SSP midpoint.
struct PelvisPlan
{
  Polynomial xSsp, xDsp;
  Polynomial ySsp, yDsp;
  Polynomial z1, z2;
};

struct TaskSpacePlan
{
  GaitParams params;
  SwingFootPlan swing;
  PelvisPlan pelvis;
  int cycleIndex = 0;
  Side swingSide = Side::Right;
  Side firstSwingSide = Side::Right; ///< swing side of cycle 0; fixes the world frame

  /// The same steady-state plan shifted to cycle k; the swing side alternates.
  TaskSpacePlan forCycle(int k) const;
  Side stanceSide() const { return opposite(swingSide); }
};

/// Quintic x (one stride, 2*D_s) and sextic z (apex H_max at T_s/2), both at
/// rest at the ends of the SSP.
SwingFootPlan planSwingFoot(const GaitParams & p);

/// Cyclic pelvis pieces in x (cubic + cubic), y (quartic + cubic) and z
/// (cubic + cubic), each pair solved jointly.
PelvisPlan planPelvis(const GaitParams & p);

/// Validates the parameters and builds the cycle-0 plan.
TaskSpacePlan buildPlan(const GaitParams & p, const RobotGeometry & g, Side firstSwing = Side::Right);

/// Task-space state at cycle-local time t in [0, T_c], in the world frame
/// (origin at the cycle-0 stance foot center, x forward, z up).
TaskSpaceState samplePlan(const TaskSpacePlan & plan, double t);

/// order-th time derivative (1 or 2) of the world-frame positions.
struct TaskSpaceRates
{
  Eigen::Vector3d leftFoot = Eigen::Vector3d::Zero();
  Eigen::Vector3d rightFoot = Eigen::Vector3d::Zero();
  Eigen::Vector3d pelvis = Eigen::Vector3d::Zero();

  const Eigen::Vector3d & foot(Side s) const { return s == Side::Left ? leftFoot : rightFoot; }
};
TaskSpaceRates samplePlanRates(const TaskSpacePlan & plan, double t, int order);

/// Writes `t,left_x,left_y,left_z,right_x,right_y,right_z,pelvis_x,pelvis_y,pelvis_z`
/// for nCycles cycles at the given sample rate.
void writePlanCsv(std::ostream & os, const TaskSpacePlan & plan, int nCycles, double rateHz);

} // namespace gaitadapt
