#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <gaitadapt/errors.hpp>

namespace gaitadapt
{

inline constexpr double kGravity = 9.80665;

enum class Side
{
  Left,
  Right
};

/// +1 for the left leg (positive y), -1 for the right leg.
inline double sideSign(Side s) { return s == Side::Left ? 1.0 : -1.0; }
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string_view toString(Side s);

enum class SupportPhase
{
  SSP,
  DSP
};

/// How the lateral pelvis pieces are coupled at the SSP/DSP boundaries.
enum class LateralCoupling
{
  /// Mirror velocity couplings at both ends of the single support piece plus
  /// velocity continuity and a terminal velocity coupling on the double
  /// support piece; together these pin every boundary velocity to zero.
  AsPrinted,
  /// Replaces the duplicated DSP velocity coupling with acceleration
  /// continuity at both boundaries, giving a C2 periodic lateral motion.
  AccelContinuous
};

/// Scalar parameters of one steady walking cycle. The DSP period is derived so
/// it can never disagree with the SSP and cycle periods.
struct GaitParams
{
  double stepLength = 0.30;     ///< D_s [m]; the swing foot travels 2*D_s per SSP
  double sspPeriod = 1.0;       ///< T_s [s]
  double cyclePeriod = 2.0;     ///< T_c [s]
  double maxFootHeight = 0.05;  ///< H_max [m]
  double footSpacing = 0.23;    ///< L_p [m], lateral distance between foot centers
  double pelvisXStart = 0.06;   ///< x_s [m], pelvis behind stance foot at SSP start
  double pelvisXEnd = 0.06;     ///< x_e [m], pelvis ahead of stance foot at SSP end
  double pelvisYOffset = 0.10;  ///< y_d [m], pelvis offset toward stance foot at SSP start/end
  double pelvisYMax = 0.105;    ///< y_m [m], maximum pelvis offset toward stance foot
  double pelvisZMax = 0.76;     ///< z_max [m]
  double pelvisZMin = 0.74;     ///< z_min [m]
  LateralCoupling lateralCoupling = LateralCoupling::AsPrinted;

  double dspPeriod() const { return cyclePeriod - sspPeriod; }
};

/// Per-link masses [kg].
struct LinkMasses
{
  double foot = 3.859;
  double ankle = 2.236;
  double shank = 4.561;
  double thigh = 6.327;
  double pelvis = 17.8;
  double upperBody = 28.482;
};

/// Mass and geometric description of the lower body, in SI units. Defaults
/// describe a full-size humanoid of about 80 kg.
struct RobotGeometry
{
  LinkMasses mass;
  double footLength = 0.265;
  double footWidth = 0.160;
  double ankleHeight = 0.098;  ///< ankle joint axes above the sole
  double shankLength = 0.360;
  double thighLength = 0.360;
  double hipSpacing = 0.230;   ///< distance between the two hip joint centers
  double hipToPelvis = 0.115;  ///< lateral pelvis-center to hip distance (hipSpacing / 2 for this robot)
  double pelvisToHead = 0.767;

  // Center-of-mass offsets, each in its own link frame:
  //   foot: from sole center; ankle: from ankle joint; shank: from knee;
  //   thigh: from hip joint; pelvis and upper body: from pelvis center.
  Eigen::Vector3d footCom{0.0, 0.0, 0.049};
  Eigen::Vector3d ankleCom{0.0, 0.0, 0.0};
  Eigen::Vector3d shankCom{0.0, 0.0, -0.180};
  Eigen::Vector3d thighCom{0.0, 0.0, -0.180};
  Eigen::Vector3d pelvisCom{0.0, 0.0, 0.0};
  Eigen::Vector3d upperBodyCom{0.0, 0.0, 0.3835};

  /// Both legs plus pelvis and upper body.
  double totalMass() const;

  /// Straight-knee hip-to-ankle distance.
  double legReach() const { return thighLength + shankLength; }

  /// Puts every CoM at the midpoint of its link segment.
  void resetComsToMidpoints();
};

struct Pose3
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  /// R = Rz(yaw) * Ry(pitch) * Rx(roll)
  Eigen::Matrix3d rotation() const;
  static Pose3 fromRotation(const Eigen::Vector3d & p, const Eigen::Matrix3d & R);
};

struct TaskSpaceState
{
  Pose3 leftFoot;
  Pose3 rightFoot;
  Pose3 pelvis;
  double time = 0.0;
  SupportPhase phase = SupportPhase::SSP;
  std::optional<Side> swingSide; ///< empty iff phase == DSP

  const Pose3 & foot(Side s) const { return s == Side::Left ? leftFoot : rightFoot; }
  Pose3 & foot(Side s) { return s == Side::Left ? leftFoot : rightFoot; }
};

/// Singularity guard: plans must keep the knee at least this far short of full
/// extension (hip-to-ankle distance, meters).
inline constexpr double kKneeSingularityMargin = 1e-6;

/// Checks the parameter invariants and that every boundary posture of the
/// cycle (SSP start, SSP midpoint, SSP end, DSP end) is within straight-leg
/// reach. The pelvis is taken at z_max in every posture, which bounds the
/// reach requirement from above. Returns the first violation found.
std::optional<Error> validateGaitParams(const GaitParams & p, const RobotGeometry & g);

/// Positive masses and lengths.
std::optional<Error> validateGeometry(const RobotGeometry & g);

} // namespace gaitadapt
