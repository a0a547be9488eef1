#include "ifs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifs/errors.hpp"

namespace ifs {

namespace {

// Kahan-compensated sum; keeps the sum-to-1 check meaningful at 1e6 atoms.
double compensated_weight_sum(const std::vector<EmpiricalMeasure::Atom>& atoms) {
  double s = 0.0, c = 0.0;
  for (const auto& a : atoms) {
    const double y = a.weight - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) return;
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  std::vector<Atom> merged;
  merged.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!(a.point >= 0.0 && a.point <= 1.0))
      throw ValidationError("atom point outside [0,1]: " +
                            std::to_string(a.point));
    if (!(a.weight > 0.0))
      throw ValidationError("atom weight must be strictly positive");
    if (!merged.empty() && merged.back().point == a.point)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);
  const double sum = compensated_weight_sum(atoms_);
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("atom weights must sum to 1 within 1e-12, got " +
                          std::to_string(sum));
}

EmpiricalMeasure EmpiricalMeasure::from_points(
    const std::vector<double>& points) {
  if (points.empty()) return EmpiricalMeasure();
  // Normalize so the merged weights sum to 1 exactly up to rounding.
  const double w = 1.0 / static_cast<double>(points.size());
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (double p : points) atoms.push_back({p, w});
  return EmpiricalMeasure(std::move(atoms));
}

double EmpiricalMeasure::mass() const { return compensated_weight_sum(atoms_); }

double EmpiricalMeasure::cdf(double x) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.point > x) break;
    s += a.weight;
  }
  return s;
}

double EmpiricalMeasure::mean() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight * a.point;
  return s;
}

double wasserstein1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  // Merge breakpoints; between consecutive breakpoints both CDFs are flat.
  const auto& A = mu.atoms();
  const auto& B = nu.atoms();
  std::vector<double> cuts;
  cuts.reserve(A.size() + B.size() + 2);
  cuts.push_back(0.0);
  for (const auto& a : A) cuts.push_back(a.point);
  for (const auto& b : B) cuts.push_back(b.point);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double dist = 0.0;
  double fa = 0.0, fb = 0.0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    while (ia < A.size() && A[ia].point <= cuts[c]) fa += A[ia++].weight;
    while (ib < B.size() && B[ib].point <= cuts[c]) fb += B[ib++].weight;
    dist += std::abs(fa - fb) * (cuts[c + 1] - cuts[c]);
  }
  return dist;
}

ClassMembership class_membership(const EmpiricalMeasure& mu, double M,
                                 double alpha) {
  if (!(M > 0.0)) throw ValidationError("class_membership: M must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("class_membership: alpha must be in (0,1)");
  ClassMembership r;
  const auto& atoms = mu.atoms();
  double cum = 0.0;
  for (const auto& a : atoms) {
    cum += a.weight;
    const double defect = cum - M * std::pow(a.point, alpha);
    if (defect > 1e-12) r.member_minus = false;
    if (defect > r.worst_violation) {
      r.worst_violation = defect;
      r.worst_location = a.point;
    }
  }
  double tail = 0.0;
  for (std::size_t i = atoms.size(); i-- > 0;) {
    tail += atoms[i].weight;
    const double defect = tail - M * std::pow(1.0 - atoms[i].point, alpha);
    if (defect > 1e-12) r.member_plus = false;
    if (defect > r.worst_violation) {
      r.worst_violation = defect;
      r.worst_location = atoms[i].point;
    }
  }
  return r;
}

namespace {

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 1e-30))
    throw ValidationError("tail fit: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

std::pair<double, double> tail_exponent_fit(const EmpiricalMeasure& mu) {
  const auto& atoms = mu.atoms();
  if (atoms.size() < 100)
    throw ValidationError("tail_exponent_fit needs >= 100 atoms, got " +
                          std::to_string(atoms.size()));
  const std::size_t decile = atoms.size() / 10;

  std::vector<double> lx, ly;
  double cum = 0.0;
  for (std::size_t i = 0; i < decile; ++i) {
    cum += atoms[i].weight;
    if (atoms[i].point <= 0.0) continue;
    lx.push_back(std::log(atoms[i].point));
    ly.push_back(std::log(cum));
  }
  if (lx.size() < 2 || lx.front() == lx.back())
    throw ValidationError("tail_exponent_fit: no usable lower-tail data");
  const double a0 = ls_slope(lx, ly);

  lx.clear();
  ly.clear();
  double tail = 0.0;
  for (std::size_t i = atoms.size(); i-- > atoms.size() - decile;) {
    tail += atoms[i].weight;
    const double d = 1.0 - atoms[i].point;
    if (d <= 0.0) continue;
    lx.push_back(std::log(d));
    ly.push_back(std::log(tail));
  }
  if (lx.size() < 2 || lx.front() == lx.back())
    throw ValidationError("tail_exponent_fit: no usable upper-tail data");
  const double a1 = ls_slope(lx, ly);
  return {a0, a1};
}

}  // namespace ifs
