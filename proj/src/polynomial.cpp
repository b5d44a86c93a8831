#include <gaitadapt/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace gaitadapt
{

namespace
{

// j! / (j - k)!
double fallingFactorial(int j, int k)
{
  double f = 1.0;
  for(int i = 0; i < k; ++i) f *= static_cast<double>(j - i);
  return f;
}

void checkCondition(const BoundaryCondition & bc)
{
  if(bc.order < 0 || bc.order > 2)
  {
    throw Error(ErrorCode::SingularSystem, "boundary condition order must be 0, 1 or 2");
  }
  if(!std::isfinite(bc.time) || !std::isfinite(bc.value))
  {
    throw Error(ErrorCode::SingularSystem, "boundary condition time and value must be finite");
  }
}

// Row of the k-th derivative of sum_j c_j s^j with respect to s, at s.
void fillDerivativeRow(Eigen::Ref<Eigen::RowVectorXd> row, int degree, int k, double s)
{
  row.setZero();
  for(int j = k; j <= degree; ++j)
  {
    row(j) = fallingFactorial(j, k) * std::pow(s, j - k);
  }
}

bool nearlyEqual(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * std::max(1.0, scale); }

} // namespace

Polynomial::Polynomial(std::vector<double> localCoefficients, double tLo, double tHi)
: coeffs_(std::move(localCoefficients)), tLo_(tLo), tHi_(tHi)
{
  if(coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::constant(double value, double tLo, double tHi) { return Polynomial({value}, tLo, tHi); }

bool Polynomial::contains(double t) const
{
  return t >= tLo_ - kDomainTolerance && t <= tHi_ + kDomainTolerance;
}

double Polynomial::operator()(double t, int order) const
{
  if(!contains(t))
  {
    std::ostringstream os;
    os << "t = " << t << " outside [" << tLo_ << ", " << tHi_ << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  if(order < 0) throw Error(ErrorCode::OutOfDomain, "negative derivative order");
  const int n = degree();
  if(order > n) return 0.0;
  const double tau = std::clamp(t, tLo_, tHi_) - tLo_;
  double acc = 0.0;
  for(int j = n; j >= order; --j)
  {
    acc = acc * tau + coeffs_[static_cast<std::size_t>(j)] * fallingFactorial(j, order);
  }
  return acc;
}

std::vector<Polynomial> solveCoupledBvp(std::span<const SegmentSpec> segments,
                                        std::span<const PointCondition> points,
                                        std::span<const CrossCondition> crosses)
{
  if(segments.empty()) throw Error(ErrorCode::TooFewConditions, "no segments");

  std::vector<int> offset(segments.size() + 1, 0);
  for(std::size_t i = 0; i < segments.size(); ++i)
  {
    const auto & seg = segments[i];
    if(seg.degree < 0) throw Error(ErrorCode::CountMismatch, "negative segment degree");
    if(!(seg.tHi > seg.tLo) || !std::isfinite(seg.tLo) || !std::isfinite(seg.tHi))
    {
      throw Error(ErrorCode::SingularSystem, "segment domain must be a non-empty finite interval");
    }
    offset[i + 1] = offset[i] + seg.degree + 1;
  }
  const int unknowns = offset.back();
  const auto equations = static_cast<int>(points.size() + crosses.size());
  if(equations == 0) throw Error(ErrorCode::TooFewConditions, "no conditions");
  if(equations != unknowns)
  {
    std::ostringstream os;
    os << equations << " conditions for " << unknowns << " coefficients";
    throw Error(ErrorCode::CountMismatch, os.str());
  }

  for(std::size_t a = 0; a < points.size(); ++a)
  {
    if(points[a].segment >= segments.size()) throw Error(ErrorCode::CountMismatch, "segment index out of range");
    checkCondition(points[a].condition);
    const double span = segments[points[a].segment].tHi - segments[points[a].segment].tLo;
    for(std::size_t b = 0; b < a; ++b)
    {
      if(points[b].segment == points[a].segment && points[b].condition.order == points[a].condition.order
         && nearlyEqual(points[b].condition.time, points[a].condition.time, span))
      {
        throw Error(ErrorCode::SingularSystem, "duplicate (order, time) boundary condition");
      }
    }
  }
  for(const auto & c : crosses)
  {
    if(c.segmentA >= segments.size() || c.segmentB >= segments.size())
    {
      throw Error(ErrorCode::CountMismatch, "segment index out of range");
    }
    checkCondition({c.orderA, c.timeA, 0.0});
    checkCondition({c.orderB, c.timeB, 0.0});
  }

  // Unknowns are coefficients in the normalized variable s = (t - tLo) / L of
  // each segment; d^k/dt^k = L^-k d^k/ds^k.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(unknowns, unknowns);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(unknowns);
  Eigen::RowVectorXd scratch;
  int r = 0;
  for(const auto & pc : points)
  {
    const auto & seg = segments[pc.segment];
    const double L = seg.tHi - seg.tLo;
    const auto & bc = pc.condition;
    scratch.resize(seg.degree + 1);
    fillDerivativeRow(scratch, seg.degree, bc.order, (bc.time - seg.tLo) / L);
    A.row(r).segment(offset[pc.segment], seg.degree + 1) = scratch;
    b(r) = bc.value * std::pow(L, bc.order);
    ++r;
  }
  for(const auto & c : crosses)
  {
    const auto & sa = segments[c.segmentA];
    const auto & sb = segments[c.segmentB];
    const double La = sa.tHi - sa.tLo;
    const double Lb = sb.tHi - sb.tLo;
    scratch.resize(sa.degree + 1);
    fillDerivativeRow(scratch, sa.degree, c.orderA, (c.timeA - sa.tLo) / La);
    A.row(r).segment(offset[c.segmentA], sa.degree + 1) += scratch / std::pow(La, c.orderA);
    scratch.resize(sb.degree + 1);
    fillDerivativeRow(scratch, sb.degree, c.orderB, (c.timeB - sb.tLo) / Lb);
    A.row(r).segment(offset[c.segmentB], sb.degree + 1) -= c.sign * scratch / std::pow(Lb, c.orderB);
    ++r;
  }

  // Row equilibration.
  for(int i = 0; i < unknowns; ++i)
  {
    const double m = A.row(i).cwiseAbs().maxCoeff();
    if(m == 0.0) throw Error(ErrorCode::SingularSystem, "condition does not constrain any coefficient");
    A.row(i) /= m;
    b(i) /= m;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if(!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "boundary conditions are linearly dependent");
  const Eigen::VectorXd x = lu.solve(b);

  std::vector<Polynomial> out;
  out.reserve(segments.size());
  for(std::size_t i = 0; i < segments.size(); ++i)
  {
    const auto & seg = segments[i];
    const double L = seg.tHi - seg.tLo;
    std::vector<double> local(static_cast<std::size_t>(seg.degree + 1));
    for(int j = 0; j <= seg.degree; ++j)
    {
      local[static_cast<std::size_t>(j)] = x(offset[i] + j) / std::pow(L, j);
    }
    out.emplace_back(std::move(local), seg.tLo, seg.tHi);
  }

  // Post-check in original units; a nearly singular system shows up here.
  auto evalAt = [&](std::size_t seg, double t, int order) {
    const auto & p = out[seg];
    // Conditions may sit outside the segment domain; evaluate the local
    // expansion directly instead of going through the domain check.
    const auto & c = p.localCoefficients();
    const double tau = t - p.tLo();
    double acc = 0.0;
    for(int j = p.degree(); j >= order; --j) acc = acc * tau + c[static_cast<std::size_t>(j)] * fallingFactorial(j, order);
    return acc;
  };
  for(const auto & pc : points)
  {
    const double got = evalAt(pc.segment, pc.condition.time, pc.condition.order);
    if(!(std::abs(got - pc.condition.value) <= kBoundaryTolerance * std::max(1.0, std::abs(pc.condition.value))))
    {
      throw Error(ErrorCode::SingularSystem, "solution misses a boundary condition (ill-conditioned system)");
    }
  }
  for(const auto & c : crosses)
  {
    const double a = evalAt(c.segmentA, c.timeA, c.orderA);
    const double bb = c.sign * evalAt(c.segmentB, c.timeB, c.orderB);
    if(!(std::abs(a - bb) <= kBoundaryTolerance * std::max({1.0, std::abs(a), std::abs(bb)})))
    {
      throw Error(ErrorCode::SingularSystem, "solution misses a coupling condition (ill-conditioned system)");
    }
  }
  return out;
}

Polynomial solveBvp(std::span<const BoundaryCondition> conditions, double tLo, double tHi)
{
  if(conditions.empty()) throw Error(ErrorCode::TooFewConditions, "at least one boundary condition is required");
  const SegmentSpec seg{static_cast<int>(conditions.size()) - 1, tLo, tHi};
  std::vector<PointCondition> points;
  points.reserve(conditions.size());
  for(const auto & bc : conditions) points.push_back({0, bc});
  return solveCoupledBvp(std::span(&seg, 1), points, {}).front();
}

} // namespace gaitadapt
