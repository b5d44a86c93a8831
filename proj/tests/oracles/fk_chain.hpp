#pragma once

// Forward kinematics as a product of 4x4 homogeneous transforms, one per joint
// and link, written out element by element.

#include <array>
#include <cmath>

namespace oracle
{

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 identity()
{
  Mat4 m{};
  for(int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat4 mul(const Mat4 & a, const Mat4 & b)
{
  Mat4 r{};
  for(int i = 0; i < 4; ++i)
    for(int j = 0; j < 4; ++j)
      for(int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Mat4 trans(double x, double y, double z)
{
  Mat4 m = identity();
  m[0][3] = x;
  m[1][3] = y;
  m[2][3] = z;
  return m;
}

inline Mat4 rx(double a)
{
  Mat4 m = identity();
  m[1][1] = std::cos(a);
  m[1][2] = -std::sin(a);
  m[2][1] = std::sin(a);
  m[2][2] = std::cos(a);
  return m;
}

inline Mat4 ry(double a)
{
  Mat4 m = identity();
  m[0][0] = std::cos(a);
  m[0][2] = std::sin(a);
  m[2][0] = -std::sin(a);
  m[2][2] = std::cos(a);
  return m;
}

inline Mat4 rz(double a)
{
  Mat4 m = identity();
  m[0][0] = std::cos(a);
  m[0][1] = -std::sin(a);
  m[1][0] = std::sin(a);
  m[1][1] = std::cos(a);
  return m;
}

struct LegDims
{
  double hipY;   // lateral hip offset from the pelvis center (signed)
  double thigh;
  double shank;
  double ankle;  // ankle axes above the sole
};

// Sole frame in the pelvis frame for joints {yaw, roll, pitch, knee, anklePitch, ankleRoll}.
inline Mat4 soleTransform(const std::array<double, 6> & q, const LegDims & d)
{
  Mat4 T = trans(0.0, d.hipY, 0.0);
  T = mul(T, rz(q[0]));
  T = mul(T, rx(q[1]));
  T = mul(T, ry(q[2]));
  T = mul(T, trans(0.0, 0.0, -d.thigh));
  T = mul(T, ry(q[3]));
  T = mul(T, trans(0.0, 0.0, -d.shank));
  T = mul(T, ry(q[4]));
  T = mul(T, rx(q[5]));
  T = mul(T, trans(0.0, 0.0, -d.ankle));
  return T;
}

} // namespace oracle
