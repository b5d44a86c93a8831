#include <gaitadapt/terrain_contact.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <gaitadapt/balance.hpp>

namespace gaitadapt
{

Terrain::Terrain(std::vector<TerrainSegment> segments) : segments_(std::move(segments))
{
  for(const auto & s : segments_)
  {
    if(!std::isfinite(s.xStart) || !std::isfinite(s.xEnd) || !std::isfinite(s.height))
    {
      throw Error(ErrorCode::InvalidScenario, "terrain segment has a non-finite value");
    }
    if(!(s.xEnd > s.xStart))
    {
      std::ostringstream os;
      os << "terrain segment [" << s.xStart << ", " << s.xEnd << ") is empty";
      throw Error(ErrorCode::InvalidScenario, os.str());
    }
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const TerrainSegment & a, const TerrainSegment & b) { return a.xStart < b.xStart; });
  for(std::size_t i = 1; i < segments_.size(); ++i)
  {
    if(segments_[i].xStart < segments_[i - 1].xEnd)
    {
      std::ostringstream os;
      os << "terrain segments starting at " << segments_[i - 1].xStart << " and " << segments_[i].xStart
         << " overlap";
      throw Error(ErrorCode::InvalidScenario, os.str());
    }
  }
}

double Terrain::heightAt(double x, double /*y*/) const
{
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const TerrainSegment & s) { return v < s.xStart; });
  if(it == segments_.begin()) return 0.0;
  --it;
  return x < it->xEnd ? it->height : 0.0;
}

void validateSensorConfig(const SensorConfig & cfg)
{
  if(!(cfg.triggerOffset >= 0.0) || !std::isfinite(cfg.triggerOffset))
  {
    throw Error(ErrorCode::InvalidScenario, "sensor trigger offset must be finite and >= 0");
  }
  if(cfg.latencyTicks < 0 || cfg.latencyTicks > 1)
  {
    throw Error(ErrorCode::InvalidScenario, "sensor latency must be 0 or 1 ticks");
  }
}

ContactSwitchReading sampleSwitches(const Pose3 & foot, const Terrain & terrain, const SensorConfig & cfg,
                                    const RobotGeometry & g)
{
  ContactSwitchReading r;
  const auto corners = soleCorners(foot, g);
  const double trigger = foot.position.z() - cfg.triggerOffset;
  for(std::size_t i = 0; i < 4; ++i)
  {
    r.corners[i] = trigger <= terrain.heightAt(corners[i].x(), corners[i].y());
  }
  return r;
}

double terrainUnderFoot(const Pose3 & foot, const Terrain & terrain, const RobotGeometry & g)
{
  const auto corners = soleCorners(foot, g);
  double lo = corners[0].x();
  double hi = corners[0].x();
  for(const auto & c : corners)
  {
    lo = std::min(lo, c.x());
    hi = std::max(hi, c.x());
  }
  // Walk the covered interval: segment heights where segments overlap it,
  // ground level in any gap.
  double h = -std::numeric_limits<double>::infinity();
  double cursor = lo;
  for(const auto & s : terrain.segments())
  {
    if(s.xEnd <= lo || s.xStart > hi) continue;
    if(s.xStart > cursor) h = std::max(h, 0.0);
    h = std::max(h, s.height);
    cursor = std::max(cursor, s.xEnd);
  }
  if(cursor <= hi) h = std::max(h, 0.0);
  return h;
}

} // namespace gaitadapt
