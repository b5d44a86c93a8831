#pragma once

#include <array>

#include <Eigen/Core>

#include <gaitadapt/core_types.hpp>

namespace gaitadapt
{

/// Joint angles of one leg. Hip axes (yaw, roll, pitch) intersect at the hip
/// joint center; knee and ankle pitch axes are parallel to the hip pitch axis.
struct LegJoints
{
  double hipYaw = 0.0;
  double hipRoll = 0.0;
  double hipPitch = 0.0;
  double kneePitch = 0.0;  ///< >= 0, shank folds backward
  double anklePitch = 0.0;
  double ankleRoll = 0.0;

  std::array<double, 6> asArray() const { return {hipYaw, hipRoll, hipPitch, kneePitch, anklePitch, ankleRoll}; }
};

/// Joint-center positions and link orientations of one leg, relative to the
/// pelvis frame.
struct LegFrames
{
  Eigen::Vector3d hip;
  Eigen::Matrix3d thighRotation;
  Eigen::Vector3d knee;
  Eigen::Matrix3d shankRotation;
  Eigen::Vector3d ankle;
  Eigen::Matrix3d footRotation;
  Eigen::Vector3d sole;
};

/// Hip joint center relative to the pelvis center.
Eigen::Vector3d hipOffset(const RobotGeometry & g, Side side);

LegFrames legFrames(const LegJoints & j, const RobotGeometry & g, Side side);

/// Sole center pose relative to the pelvis.
Pose3 forwardKinematics(const LegJoints & j, const RobotGeometry & g, Side side);

/// Closed-form inverse kinematics by reversing the chain at the ankle: the
/// hip position seen from the foot frame fixes knee and ankle angles, then the
/// remaining hip rotation gives yaw, roll and pitch.
///
/// Throws Unreachable when the hip-to-ankle distance exceeds thigh + shank,
/// SingularPosture when it is within singularityMargin of full extension.
/// With a zero margin a fully stretched target yields knee = 0.
LegJoints inverseKinematics(const Pose3 & footInPelvis, const RobotGeometry & g, Side side,
                            double singularityMargin = 0.0);

struct LegJointPair
{
  LegJoints left;
  LegJoints right;
};

/// IK for both legs from world-frame foot and pelvis poses, using the knee
/// singularity guard. Errors carry the offending side in their message.
LegJointPair planToJoints(const TaskSpaceState & state, const RobotGeometry & g);

} // namespace gaitadapt
