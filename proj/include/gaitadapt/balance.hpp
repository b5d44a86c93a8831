#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include <gaitadapt/core_types.hpp>
#include <gaitadapt/leg_kinematics.hpp>

namespace gaitadapt
{

struct LinkState
{
  Eigen::Vector3d comPosition = Eigen::Vector3d::Zero();
  Eigen::Vector3d comAcceleration = Eigen::Vector3d::Zero();
  double mass = 0.0;
};

/// Ground-plane ZMP of a set of point masses, ignoring each link's rotational
/// inertia:
///   x_zmp = sum m_i ((z''_i + g) x_i - x''_i z_i) / sum m_i (z''_i + g)
/// Throws NoSupport when the denominator is not positive.
Eigen::Vector2d computeZmp(std::span<const LinkState> links, double gravity = kGravity);

/// |sum m_i (x''_i, y''_i)| / sum m_i (z''_i + g). Throws NoSupport like computeZmp.
double requiredFriction(std::span<const LinkState> links, double gravity = kGravity);

/// Convex, counterclockwise, positive-area polygon in the ground plane.
class SupportPolygon
{
public:
  /// Convex hull of the given points (Andrew's monotone chain). Duplicate and
  /// collinear points are dropped. Throws NoSupport if the hull has no area.
  static SupportPolygon hullOf(std::span<const Eigen::Vector2d> points);

  const std::vector<Eigen::Vector2d> & vertices() const { return vertices_; }
  double area() const;

private:
  std::vector<Eigen::Vector2d> vertices_;
};

/// Sole rectangle corners of a foot at its pose (yaw applied).
std::array<Eigen::Vector2d, 4> soleCorners(const Pose3 & foot, const RobotGeometry & g);

/// Hull of the listed stance feet. Throws NoStanceFoot when the list is empty.
SupportPolygon supportPolygon(const TaskSpaceState & state, const RobotGeometry & g,
                              std::span<const Side> stanceFeet);

/// Stance feet taken from the state: the non-swing foot in SSP, both in DSP.
SupportPolygon supportPolygon(const TaskSpaceState & state, const RobotGeometry & g);

/// Signed distance from the point to the polygon boundary: positive inside,
/// negative outside, zero on the boundary.
double zmpMargin(const Eigen::Vector2d & zmp, const SupportPolygon & polygon);

struct MassPoint
{
  double mass = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

/// World positions of all link centers of mass (upper body, pelvis, and the
/// foot, ankle, shank and thigh of each leg) for the given pelvis pose and
/// joint angles.
std::vector<MassPoint> linkMassPoints(const Pose3 & pelvis, const LegJointPair & joints, const RobotGeometry & g);

/// Link states at the middle sample, with accelerations from the central
/// difference (prev - 2 cur + next) / dt^2. All three lists must match.
std::vector<LinkState> centralDifferenceLinks(std::span<const MassPoint> prev, std::span<const MassPoint> cur,
                                              std::span<const MassPoint> next, double dt);

} // namespace gaitadapt
