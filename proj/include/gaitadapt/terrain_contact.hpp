#pragma once

#include <array>
#include <vector>

#include <gaitadapt/core_types.hpp>

namespace gaitadapt
{

/// Flat patch of ground at a fixed height over x in [xStart, xEnd).
/// Negative heights are holes.
struct TerrainSegment
{
  double xStart = 0.0;
  double xEnd = 0.0;
  double height = 0.0;
};

/// Piecewise-flat ground that varies only along x; height 0 outside every
/// segment.
class Terrain
{
public:
  Terrain() = default;

  /// Segments may be given in any order. Throws InvalidScenario for
  /// non-finite values, empty segments (xEnd <= xStart) or overlaps.
  explicit Terrain(std::vector<TerrainSegment> segments);

  /// Segment height if xStart <= x < xEnd, else 0. y is ignored.
  double heightAt(double x, double y = 0.0) const;

  const std::vector<TerrainSegment> & segments() const { return segments_; }

private:
  std::vector<TerrainSegment> segments_; ///< sorted by xStart
};

struct SensorConfig
{
  double triggerOffset = 0.003; ///< delta_z [m]: switches fire this far above the ground
  int latencyTicks = 0;         ///< 0 or 1 control ticks of reporting delay
};

/// Throws InvalidScenario unless triggerOffset >= 0 and latencyTicks is 0 or 1.
void validateSensorConfig(const SensorConfig & cfg);

/// One switch per sole corner, ordered front-left, rear-left, rear-right,
/// front-right.
struct ContactSwitchReading
{
  std::array<bool, 4> corners{};

  /// Aggregate contact flag: any corner triggered.
  bool conSw() const { return corners[0] || corners[1] || corners[2] || corners[3]; }
};

/// Corner i triggers iff sole_z - triggerOffset <= terrain height under it.
/// The foot is assumed level (zero roll and pitch).
ContactSwitchReading sampleSwitches(const Pose3 & foot, const Terrain & terrain, const SensorConfig & cfg,
                                    const RobotGeometry & g);

/// Highest terrain point under the sole rectangle of a level foot.
double terrainUnderFoot(const Pose3 & foot, const Terrain & terrain, const RobotGeometry & g);

} // namespace gaitadapt
