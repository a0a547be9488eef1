#pragma once

#include <utility>
#include <vector>

namespace ifs {

// A finitely-supported probability measure on [0,1]: sorted atoms with
// strictly positive weights summing to 1 within 1e-12. The empty measure is
// allowed as the zero-mass degenerate case (e.g. pushforward of nothing).
class EmpiricalMeasure {
 public:
  struct Atom {
    double point;
    double weight;
  };

  EmpiricalMeasure() = default;
  // Sorts and validates. Atoms at identical points are merged.
  explicit EmpiricalMeasure(std::vector<Atom> atoms);

  static EmpiricalMeasure dirac(double x) { return EmpiricalMeasure({{x, 1.0}}); }
  // Equal weights 1/n at the given points.
  static EmpiricalMeasure from_points(const std::vector<double>& points);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  double mass() const;

  // Right-continuous CDF: total weight of atoms at or below x.
  double cdf(double x) const;

  double mean() const;

  // Integral of f against the measure.
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * f(a.point);
    return s;
  }

 private:
  std::vector<Atom> atoms_;
};

// Exact Wasserstein-1 distance between two finitely-supported measures:
// the area between the two step CDFs, integrated over the merged breakpoint
// list.
double wasserstein1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// Membership in the tail classes P^-_{M,alpha} (mu([0,x]) <= M x^alpha for
// all x) and P^+_{M,alpha} (mu([1-x,1]) <= M x^alpha for all x). For atom
// measures the supremum of the defect is attained at atom locations, so the
// check is exact there.
struct ClassMembership {
  bool member_minus = true;
  bool member_plus = true;
  double worst_violation = 0.0;  // max of mu-tail minus bound, over both sides
  double worst_location = 0.0;
};

ClassMembership class_membership(const EmpiricalMeasure& mu, double M,
                                 double alpha);

// Diagnostic tail-exponent fit: least-squares slope of log CDF against log x
// over the lowest decile of atoms, and the mirror image for the upper tail.
// Requires >= 100 atoms and a nondegenerate tail; throws ValidationError
// otherwise.
std::pair<double, double> tail_exponent_fit(const EmpiricalMeasure& mu);

}  // namespace ifs
