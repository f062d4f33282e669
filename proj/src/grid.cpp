#include "ff/grid.hpp"

#include <stdexcept>

namespace ff {

Grid build_grid(double x_min, double x_max, int n) {
  if (!(x_min < x_max))
    throw std::invalid_argument("build_grid: need x_min < x_max");
  if (n < 16) throw std::invalid_argument("build_grid: need n >= 16");
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n = n;
  g.dx = (x_max - x_min) / (n + 1);
  g.points.resize(n);
  for (int i = 0; i < n; ++i) g.points[i] = x_min + (i + 1) * g.dx;
  return g;
}

}  // namespace ff
