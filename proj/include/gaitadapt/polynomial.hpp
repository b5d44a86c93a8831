#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <gaitadapt/errors.hpp>

namespace gaitadapt
{

/// p^(order)(time) = value, with order in {0, 1, 2}.
struct BoundaryCondition
{
  int order = 0;
  double time = 0.0;
  double value = 0.0;
};

/// Single-variable polynomial on a closed time interval. Coefficients are
/// stored in powers of the local time (t - tLo), which keeps evaluation well
/// conditioned for intervals that start far from zero.
class Polynomial
{
public:
  Polynomial() = default;
  Polynomial(std::vector<double> localCoefficients, double tLo, double tHi);

  static Polynomial constant(double value, double tLo, double tHi);

  /// order-th time derivative at t. Throws OutOfDomain when t is outside
  /// [tLo, tHi] by more than kDomainTolerance; orders above the degree are 0.
  double operator()(double t, int order = 0) const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double tLo() const { return tLo_; }
  double tHi() const { return tHi_; }
  bool contains(double t) const;

  /// Coefficients of (t - tLo)^i.
  const std::vector<double> & localCoefficients() const { return coeffs_; }

  static constexpr double kDomainTolerance = 1e-9;

private:
  std::vector<double> coeffs_;
  double tLo_ = 0.0;
  double tHi_ = 0.0;
};

/// Free-function form of Polynomial::operator().
inline double evaluate(const Polynomial & p, double t, int order = 0) { return p(t, order); }

/// Relative/absolute hybrid tolerance every solved condition must meet.
inline constexpr double kBoundaryTolerance = 1e-9;

/// Degree-n polynomial on [tLo, tHi] meeting n+1 conditions exactly.
/// Errors: TooFewConditions (empty list), SingularSystem (duplicate
/// (order, time) pairs, unsupported order, or a singular/ill-conditioned
/// system).
Polynomial solveBvp(std::span<const BoundaryCondition> conditions, double tLo, double tHi);

struct SegmentSpec
{
  int degree = 3;
  double tLo = 0.0;
  double tHi = 1.0;
};

struct PointCondition
{
  std::size_t segment = 0;
  BoundaryCondition condition;
};

/// p_a^(orderA)(timeA) = sign * p_b^(orderB)(timeB)
struct CrossCondition
{
  std::size_t segmentA = 0;
  int orderA = 0;
  double timeA = 0.0;
  double sign = 1.0;
  std::size_t segmentB = 0;
  int orderB = 0;
  double timeB = 0.0;
};

/// Solves several polynomial pieces jointly. The number of point plus cross
/// conditions must equal the total coefficient count (CountMismatch
/// otherwise).
std::vector<Polynomial> solveCoupledBvp(std::span<const SegmentSpec> segments,
                                        std::span<const PointCondition> points,
                                        std::span<const CrossCondition> crosses);

} // namespace gaitadapt
