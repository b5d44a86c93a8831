#include <gaitadapt/leg_kinematics.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

namespace gaitadapt
{

namespace
{

Eigen::Matrix3d rotX(double a) { return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix(); }
Eigen::Matrix3d rotY(double a) { return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitY()).toRotationMatrix(); }
Eigen::Matrix3d rotZ(double a) { return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()).toRotationMatrix(); }

// Slack for rounding when a target sits exactly at full extension.
constexpr double kReachRoundoff = 1e-12;

} // namespace

Eigen::Vector3d hipOffset(const RobotGeometry & g, Side side)
{
  return {0.0, sideSign(side) * 0.5 * g.hipSpacing, 0.0};
}

LegFrames legFrames(const LegJoints & j, const RobotGeometry & g, Side side)
{
  LegFrames f;
  f.hip = hipOffset(g, side);
  f.thighRotation = rotZ(j.hipYaw) * rotX(j.hipRoll) * rotY(j.hipPitch);
  f.knee = f.hip + f.thighRotation * Eigen::Vector3d(0.0, 0.0, -g.thighLength);
  f.shankRotation = f.thighRotation * rotY(j.kneePitch);
  f.ankle = f.knee + f.shankRotation * Eigen::Vector3d(0.0, 0.0, -g.shankLength);
  f.footRotation = f.shankRotation * rotY(j.anklePitch) * rotX(j.ankleRoll);
  f.sole = f.ankle + f.footRotation * Eigen::Vector3d(0.0, 0.0, -g.ankleHeight);
  return f;
}

Pose3 forwardKinematics(const LegJoints & j, const RobotGeometry & g, Side side)
{
  const LegFrames f = legFrames(j, g, side);
  return Pose3::fromRotation(f.sole, f.footRotation);
}

LegJoints inverseKinematics(const Pose3 & footInPelvis, const RobotGeometry & g, Side side, double singularityMargin)
{
  const double L1 = g.thighLength;
  const double L2 = g.shankLength;
  const Eigen::Matrix3d Rf = footInPelvis.rotation();
  const Eigen::Vector3d ankle = footInPelvis.position + Rf * Eigen::Vector3d(0.0, 0.0, g.ankleHeight);

  // Hip seen from the ankle, in the foot frame.
  const Eigen::Vector3d r = Rf.transpose() * (hipOffset(g, side) - ankle);
  const double c = r.norm();
  const double reach = L1 + L2;
  if(c > reach + kReachRoundoff || c < std::abs(L1 - L2) - kReachRoundoff)
  {
    std::ostringstream os;
    os << "hip-to-ankle distance " << c << " m outside [" << std::abs(L1 - L2) << ", " << reach << "]";
    throw Error(ErrorCode::Unreachable, os.str());
  }
  if(singularityMargin > 0.0 && c > reach - singularityMargin)
  {
    std::ostringstream os;
    os << "knee within " << reach - c << " m of full extension";
    throw Error(ErrorCode::SingularPosture, os.str());
  }

  LegJoints j;
  const double cosKnee = std::clamp((c * c - L1 * L1 - L2 * L2) / (2.0 * L1 * L2), -1.0, 1.0);
  j.kneePitch = std::acos(cosKnee);
  j.ankleRoll = std::atan2(r.y(), r.z());
  const double sagittal = std::atan2(r.x(), std::hypot(r.y(), r.z()));
  const double kneeWedge = std::atan2(L2 * std::sin(j.kneePitch), L1 + L2 * std::cos(j.kneePitch));
  j.anklePitch = -(sagittal - kneeWedge) - j.kneePitch;

  // Remaining hip rotation Rz(yaw) Rx(roll) Ry(pitch).
  const Eigen::Matrix3d hip = Rf * rotX(j.ankleRoll).transpose() * rotY(j.kneePitch + j.anklePitch).transpose();
  j.hipRoll = std::asin(std::clamp(hip(2, 1), -1.0, 1.0));
  j.hipYaw = std::atan2(-hip(0, 1), hip(1, 1));
  j.hipPitch = std::atan2(-hip(2, 0), hip(2, 2));
  return j;
}

LegJointPair planToJoints(const TaskSpaceState & state, const RobotGeometry & g)
{
  const Eigen::Matrix3d Rp = state.pelvis.rotation();
  auto solve = [&](Side side) {
    const Pose3 & foot = state.foot(side);
    const Eigen::Vector3d rel = Rp.transpose() * (foot.position - state.pelvis.position);
    const Eigen::Matrix3d Rrel = Rp.transpose() * foot.rotation();
    try
    {
      return inverseKinematics(Pose3::fromRotation(rel, Rrel), g, side, kKneeSingularityMargin);
    }
    catch(const Error & e)
    {
      throw Error(e.code(), std::string(side == Side::Left ? "left" : "right") + " leg: " + e.detail());
    }
  };
  return {solve(Side::Left), solve(Side::Right)};
}

} // namespace gaitadapt
