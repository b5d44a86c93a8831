#include <gaitadapt/config.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gaitadapt
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if(b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while(i < s.size())
  {
    while(i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while(i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if(i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string & what)
{
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double number(std::string_view w, int line)
{
  double v = 0.0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if(ec != std::errc() || p != w.data() + w.size()) fail(line, "'" + std::string(w) + "' is not a number");
  return v;
}

long integer(std::string_view w, int line)
{
  long v = 0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if(ec != std::errc() || p != w.data() + w.size()) fail(line, "'" + std::string(w) + "' is not an integer");
  return v;
}

using Setter = std::function<void(Scenario &, const std::vector<std::string_view> &, int)>;

template<typename F>
Setter one(F f)
{
  return [f](Scenario & s, const std::vector<std::string_view> & v, int line) {
    if(v.size() != 1) fail(line, "expected one value");
    f(s, v[0], line);
  };
}

Setter real(std::function<double &(Scenario &)> field)
{
  return one([field](Scenario & s, std::string_view w, int line) { field(s) = number(w, line); });
}

Setter vec3(std::function<Eigen::Vector3d &(Scenario &)> field)
{
  return [field](Scenario & s, const std::vector<std::string_view> & v, int line) {
    if(v.size() != 3) fail(line, "expected three values");
    field(s) = Eigen::Vector3d(number(v[0], line), number(v[1], line), number(v[2], line));
  };
}

const std::map<std::string, Setter, std::less<>> & setters()
{
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> m;
    m["step_length"] = real([](Scenario & s) -> double & { return s.gait.stepLength; });
    m["ssp_period"] = real([](Scenario & s) -> double & { return s.gait.sspPeriod; });
    m["cycle_period"] = real([](Scenario & s) -> double & { return s.gait.cyclePeriod; });
    m["max_foot_height"] = real([](Scenario & s) -> double & { return s.gait.maxFootHeight; });
    m["foot_spacing"] = real([](Scenario & s) -> double & { return s.gait.footSpacing; });
    m["pelvis_x_start"] = real([](Scenario & s) -> double & { return s.gait.pelvisXStart; });
    m["pelvis_x_end"] = real([](Scenario & s) -> double & { return s.gait.pelvisXEnd; });
    m["pelvis_y_offset"] = real([](Scenario & s) -> double & { return s.gait.pelvisYOffset; });
    m["pelvis_y_max"] = real([](Scenario & s) -> double & { return s.gait.pelvisYMax; });
    m["pelvis_z_max"] = real([](Scenario & s) -> double & { return s.gait.pelvisZMax; });
    m["pelvis_z_min"] = real([](Scenario & s) -> double & { return s.gait.pelvisZMin; });
    m["lateral_coupling"] = one([](Scenario & s, std::string_view w, int line) {
      if(w == "as_printed")
        s.gait.lateralCoupling = LateralCoupling::AsPrinted;
      else if(w == "accel_continuous")
        s.gait.lateralCoupling = LateralCoupling::AccelContinuous;
      else
        fail(line, "lateral_coupling must be as_printed or accel_continuous");
    });

    m["mass_foot"] = real([](Scenario & s) -> double & { return s.geometry.mass.foot; });
    m["mass_ankle"] = real([](Scenario & s) -> double & { return s.geometry.mass.ankle; });
    m["mass_shank"] = real([](Scenario & s) -> double & { return s.geometry.mass.shank; });
    m["mass_thigh"] = real([](Scenario & s) -> double & { return s.geometry.mass.thigh; });
    m["mass_pelvis"] = real([](Scenario & s) -> double & { return s.geometry.mass.pelvis; });
    m["mass_upper_body"] = real([](Scenario & s) -> double & { return s.geometry.mass.upperBody; });
    m["foot_length"] = real([](Scenario & s) -> double & { return s.geometry.footLength; });
    m["foot_width"] = real([](Scenario & s) -> double & { return s.geometry.footWidth; });
    m["ankle_height"] = real([](Scenario & s) -> double & { return s.geometry.ankleHeight; });
    m["shank_length"] = real([](Scenario & s) -> double & { return s.geometry.shankLength; });
    m["thigh_length"] = real([](Scenario & s) -> double & { return s.geometry.thighLength; });
    m["hip_spacing"] = real([](Scenario & s) -> double & { return s.geometry.hipSpacing; });
    m["hip_to_pelvis"] = real([](Scenario & s) -> double & { return s.geometry.hipToPelvis; });
    m["pelvis_to_head"] = real([](Scenario & s) -> double & { return s.geometry.pelvisToHead; });
    m["com_foot"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.footCom; });
    m["com_ankle"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.ankleCom; });
    m["com_shank"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.shankCom; });
    m["com_thigh"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.thighCom; });
    m["com_pelvis"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.pelvisCom; });
    m["com_upper_body"] = vec3([](Scenario & s) -> Eigen::Vector3d & { return s.geometry.upperBodyCom; });

    m["tick"] = real([](Scenario & s) -> double & { return s.tick; });
    m["n_cycles"] = one([](Scenario & s, std::string_view w, int line) {
      s.nCycles = static_cast<int>(integer(w, line));
    });
    m["step_drop"] = one([](Scenario & s, std::string_view w, int line) { s.stepDrop = number(w, line); });
    m["seed"] = one([](Scenario & s, std::string_view w, int line) {
      const long v = integer(w, line);
      if(v < 0) fail(line, "seed must be non-negative");
      s.seed = static_cast<std::uint64_t>(v);
    });
    m["first_swing"] = one([](Scenario & s, std::string_view w, int line) {
      if(w == "left")
        s.firstSwing = Side::Left;
      else if(w == "right")
        s.firstSwing = Side::Right;
      else
        fail(line, "first_swing must be left or right");
    });
    m["sensor_offset"] = real([](Scenario & s) -> double & { return s.sensor.triggerOffset; });
    m["sensor_latency"] = one([](Scenario & s, std::string_view w, int line) {
      s.sensor.latencyTicks = static_cast<int>(integer(w, line));
    });
    return m;
  }();
  return table;
}

} // namespace

Scenario parseScenario(std::string_view text)
{
  Scenario s;
  std::vector<TerrainSegment> segments;
  std::set<std::string, std::less<>> seen;
  int lineNo = 0;
  std::size_t pos = 0;
  while(pos <= text.size())
  {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineNo;
    if(const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if(line.empty()) continue;

    std::string_view key;
    std::vector<std::string_view> values;
    if(const auto eq = line.find('='); eq != std::string_view::npos)
    {
      key = trim(line.substr(0, eq));
      values = words(trim(line.substr(eq + 1)));
    }
    else
    {
      auto w = words(line);
      key = w.front();
      values.assign(w.begin() + 1, w.end());
    }

    if(key == "obstacle")
    {
      if(values.size() != 3) fail(lineNo, "obstacle needs x_start x_end height");
      segments.push_back({number(values[0], lineNo), number(values[1], lineNo), number(values[2], lineNo)});
      continue;
    }
    const auto it = setters().find(key);
    if(it == setters().end()) fail(lineNo, "unknown key '" + std::string(key) + "'");
    if(!seen.emplace(key).second) fail(lineNo, "key '" + std::string(key) + "' given twice");
    it->second(s, values, lineNo);
  }
  s.terrain = Terrain(std::move(segments));
  return s;
}

Scenario loadScenario(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if(!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseScenario(buf.str());
}

} // namespace gaitadapt
