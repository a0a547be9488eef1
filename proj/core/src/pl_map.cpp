#include "ifs/pl_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifs/errors.hpp"

namespace ifs {

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<Node> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2)
    throw ValidationError("map needs at least 2 nodes, got " +
                          std::to_string(nodes_.size()));
  if (nodes_.front().x != 0.0 || nodes_.front().y != 0.0)
    throw ValidationError("first node must be (0,0)");
  if (nodes_.back().x != 1.0 || nodes_.back().y != 1.0)
    throw ValidationError("last node must be (1,1)");
  slopes_.reserve(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double dx = nodes_[i + 1].x - nodes_[i].x;
    const double dy = nodes_[i + 1].y - nodes_[i].y;
    if (!(dx > 0.0))
      throw ValidationError("node x-coordinates must be strictly increasing "
                            "(segment " + std::to_string(i) + ")");
    if (!(dy > 0.0))
      throw ValidationError("node y-coordinates must be strictly increasing "
                            "(segment " + std::to_string(i) + ")");
    const double slope = dy / dx;
    if (!std::isfinite(slope) || !(slope > 0.0))
      throw ValidationError("segment slope must be positive and finite");
    slopes_.push_back(slope);
  }
}

PiecewiseLinearMap PiecewiseLinearMap::identity() {
  return PiecewiseLinearMap({{0.0, 0.0}, {1.0, 1.0}});
}

double PiecewiseLinearMap::eval(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError("eval: x outside [0,1]: " + std::to_string(x));
  if (x == 1.0) return 1.0;
  // Segment containing x; breakpoints map exactly to their node values.
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const Node& n) { return v < n.x; });
  const std::size_t s =
      std::min(static_cast<std::size_t>(it - nodes_.begin()) - 1,
               nodes_.size() - 2);
  if (x == nodes_[s].x) return nodes_[s].y;
  return nodes_[s].y + slopes_[s] * (x - nodes_[s].x);
}

double PiecewiseLinearMap::eval_inverse(double y) const {
  if (!(y >= 0.0 && y <= 1.0))
    throw ValidationError("eval_inverse: y outside [0,1]: " + std::to_string(y));
  if (y == 1.0) return 1.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), y,
                             [](double v, const Node& n) { return v < n.y; });
  const std::size_t s =
      std::min(static_cast<std::size_t>(it - nodes_.begin()) - 1,
               nodes_.size() - 2);
  if (y == nodes_[s].y) return nodes_[s].x;
  return nodes_[s].x + (y - nodes_[s].y) / slopes_[s];
}

std::vector<double> PiecewiseLinearMap::interior_breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) out.push_back(nodes_[i].x);
  return out;
}

}  // namespace ifs
