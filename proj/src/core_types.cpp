#include <gaitadapt/core_types.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace gaitadapt
{

std::string_view toString(Side s) { return s == Side::Left ? "L" : "R"; }

double RobotGeometry::totalMass() const
{
  const double leg = mass.foot + mass.ankle + mass.shank + mass.thigh;
  return 2.0 * leg + mass.pelvis + mass.upperBody;
}

void RobotGeometry::resetComsToMidpoints()
{
  footCom = {0.0, 0.0, 0.5 * ankleHeight};
  ankleCom = Eigen::Vector3d::Zero();
  shankCom = {0.0, 0.0, -0.5 * shankLength};
  thighCom = {0.0, 0.0, -0.5 * thighLength};
  pelvisCom = Eigen::Vector3d::Zero();
  upperBodyCom = {0.0, 0.0, 0.5 * pelvisToHead};
}

Eigen::Matrix3d Pose3::rotation() const
{
  return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY())
          * Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Pose3 Pose3::fromRotation(const Eigen::Vector3d & p, const Eigen::Matrix3d & R)
{
  Pose3 out;
  out.position = p;
  out.pitch = std::asin(std::clamp(-R(2, 0), -1.0, 1.0));
  out.roll = std::atan2(R(2, 1), R(2, 2));
  out.yaw = std::atan2(R(1, 0), R(0, 0));
  return out;
}

namespace
{

std::optional<Error> fail(ErrorCode code, const std::string & what) { return Error(code, what); }

} // namespace

std::optional<Error> validateGeometry(const RobotGeometry & g)
{
  const std::array<std::pair<const char *, double>, 14> values{{
      {"mass.foot", g.mass.foot},
      {"mass.ankle", g.mass.ankle},
      {"mass.shank", g.mass.shank},
      {"mass.thigh", g.mass.thigh},
      {"mass.pelvis", g.mass.pelvis},
      {"mass.upper_body", g.mass.upperBody},
      {"foot_length", g.footLength},
      {"foot_width", g.footWidth},
      {"ankle_height", g.ankleHeight},
      {"shank_length", g.shankLength},
      {"thigh_length", g.thighLength},
      {"hip_spacing", g.hipSpacing},
      {"hip_to_pelvis", g.hipToPelvis},
      {"pelvis_to_head", g.pelvisToHead},
  }};
  for(const auto & [name, v] : values)
  {
    if(!(v > 0.0) || !std::isfinite(v))
    {
      return fail(ErrorCode::NonPositiveParameter, std::string(name) + " must be positive");
    }
  }
  return std::nullopt;
}

std::optional<Error> validateGaitParams(const GaitParams & p, const RobotGeometry & g)
{
  const std::array<double, 11> all{p.stepLength,   p.sspPeriod,    p.cyclePeriod,   p.maxFootHeight,
                                   p.footSpacing,  p.pelvisXStart, p.pelvisXEnd,    p.pelvisYOffset,
                                   p.pelvisYMax,   p.pelvisZMax,   p.pelvisZMin};
  for(double v : all)
  {
    if(!std::isfinite(v)) return fail(ErrorCode::NonPositiveParameter, "gait parameters must be finite");
  }
  if(!(p.sspPeriod > 0.0)) return fail(ErrorCode::NonPositiveParameter, "ssp_period must be positive");
  if(!(p.sspPeriod < p.cyclePeriod))
  {
    return fail(ErrorCode::InvalidTiming, "ssp_period must be shorter than cycle_period");
  }
  if(!(p.maxFootHeight > 0.0)) return fail(ErrorCode::NonPositiveParameter, "max_foot_height must be positive");
  if(p.stepLength < 0.0) return fail(ErrorCode::NonPositiveParameter, "step_length must be non-negative");
  if(!(p.footSpacing > 0.0)) return fail(ErrorCode::NonPositiveParameter, "foot_spacing must be positive");
  if(!(p.pelvisZMin > 0.0)) return fail(ErrorCode::NonPositiveParameter, "pelvis_z_min must be positive");
  if(p.pelvisZMin > p.pelvisZMax)
  {
    return fail(ErrorCode::NonPositiveParameter, "pelvis_z_min must not exceed pelvis_z_max");
  }
  if(p.pelvisYOffset > p.pelvisYMax)
  {
    return fail(ErrorCode::NonPositiveParameter, "pelvis_y_offset must not exceed pelvis_y_max");
  }
  if(auto e = validateGeometry(g)) return e;

  // Boundary postures in a frame centered between the feet, y toward the
  // stance foot, x from the stance foot center.
  struct Posture
  {
    const char * name;
    double pelvisX, pelvisY, swingX, swingZ;
  };
  const std::array<Posture, 4> postures{{
      {"SSP start", -p.pelvisXStart, p.pelvisYOffset, -p.stepLength, 0.0},
      {"SSP midpoint", 0.5 * (p.pelvisXEnd - p.pelvisXStart), p.pelvisYMax, 0.0, p.maxFootHeight},
      {"SSP end", p.pelvisXEnd, p.pelvisYOffset, p.stepLength, 0.0},
      {"DSP end", p.stepLength - p.pelvisXStart, -p.pelvisYOffset, p.stepLength, 0.0},
  }};
  const double limit = g.legReach() - kKneeSingularityMargin;
  const double halfHip = 0.5 * g.hipSpacing;
  const double halfFeet = 0.5 * p.footSpacing;
  for(const auto & q : postures)
  {
    const Eigen::Vector3d stanceHip{q.pelvisX, q.pelvisY + halfHip, p.pelvisZMax};
    const Eigen::Vector3d swingHip{q.pelvisX, q.pelvisY - halfHip, p.pelvisZMax};
    const Eigen::Vector3d stanceAnkle{0.0, halfFeet, g.ankleHeight};
    const Eigen::Vector3d swingAnkle{q.swingX, -halfFeet, q.swingZ + g.ankleHeight};
    const double d = std::max((stanceHip - stanceAnkle).norm(), (swingHip - swingAnkle).norm());
    if(d > limit)
    {
      std::ostringstream os;
      os << "hip-to-ankle distance " << d << " m at " << q.name << " exceeds leg reach " << limit << " m";
      return fail(ErrorCode::KinematicallyUnreachable, os.str());
    }
  }
  return std::nullopt;
}

} // namespace gaitadapt
