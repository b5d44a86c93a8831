#include <gaitadapt/balance.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaitadapt
{

namespace
{

double cross(const Eigen::Vector2d & o, const Eigen::Vector2d & a, const Eigen::Vector2d & b)
{
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double segmentDistance(const Eigen::Vector2d & p, const Eigen::Vector2d & a, const Eigen::Vector2d & b)
{
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double u = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + u * ab - p).norm();
}

struct Totals
{
  double normal = 0.0;
  Eigen::Vector2d tangential = Eigen::Vector2d::Zero();
  Eigen::Vector2d moment = Eigen::Vector2d::Zero();
};

Totals sumLinks(std::span<const LinkState> links, double gravity)
{
  Totals t;
  for(const auto & l : links)
  {
    const double fz = l.mass * (l.comAcceleration.z() + gravity);
    t.normal += fz;
    t.tangential += l.mass * l.comAcceleration.head<2>();
    t.moment += fz * l.comPosition.head<2>() - l.mass * l.comAcceleration.head<2>() * l.comPosition.z();
  }
  if(!(t.normal > 0.0)) throw Error(ErrorCode::NoSupport, "net vertical support force is not positive");
  return t;
}

} // namespace

Eigen::Vector2d computeZmp(std::span<const LinkState> links, double gravity)
{
  const Totals t = sumLinks(links, gravity);
  return t.moment / t.normal;
}

double requiredFriction(std::span<const LinkState> links, double gravity)
{
  const Totals t = sumLinks(links, gravity);
  return t.tangential.norm() / t.normal;
}

SupportPolygon SupportPolygon::hullOf(std::span<const Eigen::Vector2d> points)
{
  std::vector<Eigen::Vector2d> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const auto & a, const auto & b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  SupportPolygon poly;
  if(pts.size() >= 3)
  {
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t k = 0;
    for(const auto & p : pts)
    {
      while(k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
      hull[k++] = p;
    }
    for(std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;)
    {
      while(k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    poly.vertices_ = std::move(hull);
  }
  if(poly.vertices_.size() < 3 || !(poly.area() > 0.0))
  {
    throw Error(ErrorCode::NoSupport, "support polygon has no area");
  }
  return poly;
}

double SupportPolygon::area() const
{
  double a = 0.0;
  for(std::size_t i = 0; i < vertices_.size(); ++i)
  {
    const auto & p = vertices_[i];
    const auto & q = vertices_[(i + 1) % vertices_.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

std::array<Eigen::Vector2d, 4> soleCorners(const Pose3 & foot, const RobotGeometry & g)
{
  const double hl = 0.5 * g.footLength;
  const double hw = 0.5 * g.footWidth;
  const double c = std::cos(foot.yaw);
  const double s = std::sin(foot.yaw);
  std::array<Eigen::Vector2d, 4> out;
  const std::array<Eigen::Vector2d, 4> local{{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}}};
  for(std::size_t i = 0; i < 4; ++i)
  {
    out[i] = foot.position.head<2>() + Eigen::Vector2d(c * local[i].x() - s * local[i].y(), s * local[i].x() + c * local[i].y());
  }
  return out;
}

SupportPolygon supportPolygon(const TaskSpaceState & state, const RobotGeometry & g, std::span<const Side> stanceFeet)
{
  if(stanceFeet.empty()) throw Error(ErrorCode::NoStanceFoot, "no foot in stance");
  std::vector<Eigen::Vector2d> pts;
  for(Side s : stanceFeet)
  {
    const auto c = soleCorners(state.foot(s), g);
    pts.insert(pts.end(), c.begin(), c.end());
  }
  return SupportPolygon::hullOf(pts);
}

SupportPolygon supportPolygon(const TaskSpaceState & state, const RobotGeometry & g)
{
  if(state.phase == SupportPhase::DSP)
  {
    const std::array<Side, 2> both{Side::Left, Side::Right};
    return supportPolygon(state, g, both);
  }
  if(!state.swingSide) throw Error(ErrorCode::NoStanceFoot, "single support without a swing side");
  const std::array<Side, 1> one{opposite(*state.swingSide)};
  return supportPolygon(state, g, one);
}

double zmpMargin(const Eigen::Vector2d & zmp, const SupportPolygon & polygon)
{
  const auto & v = polygon.vertices();
  double inside = std::numeric_limits<double>::infinity();
  double boundary = std::numeric_limits<double>::infinity();
  for(std::size_t i = 0; i < v.size(); ++i)
  {
    const auto & a = v[i];
    const auto & b = v[(i + 1) % v.size()];
    inside = std::min(inside, cross(a, b, zmp) / (b - a).norm());
    boundary = std::min(boundary, segmentDistance(zmp, a, b));
  }
  // For a convex polygon the nearest edge line is the nearest boundary point
  // when inside.
  return inside >= 0.0 ? inside : -boundary;
}

std::vector<MassPoint> linkMassPoints(const Pose3 & pelvis, const LegJointPair & joints, const RobotGeometry & g)
{
  const Eigen::Matrix3d Rp = pelvis.rotation();
  const Eigen::Vector3d & p0 = pelvis.position;
  std::vector<MassPoint> out;
  out.reserve(10);
  out.push_back({g.mass.upperBody, p0 + Rp * g.upperBodyCom});
  out.push_back({g.mass.pelvis, p0 + Rp * g.pelvisCom});
  for(Side s : {Side::Left, Side::Right})
  {
    const LegFrames f = legFrames(s == Side::Left ? joints.left : joints.right, g, s);
    auto world = [&](const Eigen::Vector3d & local) { return Eigen::Vector3d(p0 + Rp * local); };
    out.push_back({g.mass.thigh, world(f.hip + f.thighRotation * g.thighCom)});
    out.push_back({g.mass.shank, world(f.knee + f.shankRotation * g.shankCom)});
    out.push_back({g.mass.ankle, world(f.ankle + f.footRotation * g.ankleCom)});
    out.push_back({g.mass.foot, world(f.sole + f.footRotation * g.footCom)});
  }
  return out;
}

std::vector<LinkState> centralDifferenceLinks(std::span<const MassPoint> prev, std::span<const MassPoint> cur,
                                              std::span<const MassPoint> next, double dt)
{
  if(prev.size() != cur.size() || next.size() != cur.size())
  {
    throw Error(ErrorCode::CountMismatch, "link lists differ in length");
  }
  std::vector<LinkState> out(cur.size());
  const double inv = 1.0 / (dt * dt);
  for(std::size_t i = 0; i < cur.size(); ++i)
  {
    out[i].mass = cur[i].mass;
    out[i].comPosition = cur[i].position;
    out[i].comAcceleration = (prev[i].position - 2.0 * cur[i].position + next[i].position) * inv;
  }
  return out;
}

} // namespace gaitadapt
