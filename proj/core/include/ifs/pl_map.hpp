#pragma once

#include <utility>
#include <vector>

namespace ifs {

// A strictly increasing piecewise-linear homeomorphism of [0,1].
//
// Nodes run from (0,0) to (1,1) with strictly increasing coordinates in both
// axes, so every segment slope is positive and finite. The map is exactly
// linear on its first and last segments, which makes it C^1 near 0 and 1 with
// derivative equal to the segment slope.
class PiecewiseLinearMap {
 public:
  struct Node {
    double x;
    double y;
  };

  // Throws ValidationError if the node list violates the invariants above.
  explicit PiecewiseLinearMap(std::vector<Node> nodes);

  static PiecewiseLinearMap identity();

  // Piecewise-linear interpolation; exact at breakpoints.
  // Throws ValidationError for x outside [0,1].
  double eval(double x) const;

  // Inverse homeomorphism; eval(eval_inverse(y)) == y within 1e-12.
  double eval_inverse(double y) const;

  // First and last segment slopes, exactly as constructed.
  std::pair<double, double> endpoint_slopes() const {
    return {slopes_.front(), slopes_.back()};
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<double>& slopes() const { return slopes_; }

  // Interior breakpoint abscissae (excludes 0 and 1).
  std::vector<double> interior_breakpoints() const;

 private:
  std::vector<Node> nodes_;
  std::vector<double> slopes_;  // one per segment
};

}  // namespace ifs
