// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "yeefem/femcore.hpp"

namespace yeefem
{

PointLocator::PointLocator(const Mesh &m, int buckets_per_side) : mesh_(&m)
{
  lo_ = {1e300, 1e300};
  hi_ = {-1e300, -1e300};
  for (const auto &v : m.vertices())
  {
    lo_ = {std::min(lo_[0], v[0]), std::min(lo_[1], v[1])};
    hi_ = {std::max(hi_[0], v[0]), std::max(hi_[1], v[1])};
  }
  if (buckets_per_side <= 0)
  {
    buckets_per_side = std::max(1, static_cast<int>(std::sqrt(m.num_triangles() / 2.0)));
  }
  nx_ = ny_ = buckets_per_side;
  const double dx = (hi_[0] - lo_[0]) / nx_, dy = (hi_[1] - lo_[1]) / ny_;
  auto cell = [&](double x, double lo, double d, int n) {
    if (!(d > 0.0))
    {
      return 0;
    }
    return std::clamp(static_cast<int>((x - lo) / d), 0, n - 1);
  };

  std::vector<std::array<int, 4>> boxes(m.num_triangles());
  std::vector<int> counts(nx_ * ny_ + 1, 0);
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto &tri = m.triangle(t);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (int v : tri)
    {
      x0 = std::min(x0, m.vertex(v)[0]);
      x1 = std::max(x1, m.vertex(v)[0]);
      y0 = std::min(y0, m.vertex(v)[1]);
      y1 = std::max(y1, m.vertex(v)[1]);
    }
    boxes[t] = {cell(x0, lo_[0], dx, nx_), cell(x1, lo_[0], dx, nx_), cell(y0, lo_[1], dy, ny_),
                cell(y1, lo_[1], dy, ny_)};
    for (int i = boxes[t][0]; i <= boxes[t][1]; i++)
    {
      for (int j = boxes[t][2]; j <= boxes[t][3]; j++)
      {
        counts[j * nx_ + i + 1]++;
      }
    }
  }
  for (std::size_t c = 1; c < counts.size(); c++)
  {
    counts[c] += counts[c - 1];
  }
  offsets_ = counts;
  items_.resize(counts.back());
  for (int t = 0; t < m.num_triangles(); t++)
  {
    for (int i = boxes[t][0]; i <= boxes[t][1]; i++)
    {
      for (int j = boxes[t][2]; j <= boxes[t][3]; j++)
      {
        items_[counts[j * nx_ + i]++] = t;
      }
    }
  }
}

PointLocator::Hit PointLocator::locate(const Vec2 &p, double tol) const
{
  Hit hit;
  const double dx = (hi_[0] - lo_[0]) / nx_, dy = (hi_[1] - lo_[1]) / ny_;
  const double slack = 1e-12 * std::max(hi_[0] - lo_[0], hi_[1] - lo_[1]);
  if (p[0] < lo_[0] - slack || p[0] > hi_[0] + slack || p[1] < lo_[1] - slack ||
      p[1] > hi_[1] + slack)
  {
    return hit;
  }
  const int i = dx > 0.0 ? std::clamp(static_cast<int>((p[0] - lo_[0]) / dx), 0, nx_ - 1) : 0;
  const int j = dy > 0.0 ? std::clamp(static_cast<int>((p[1] - lo_[1]) / dy), 0, ny_ - 1) : 0;
  const int c = j * nx_ + i;
  double best = -1e300;
  for (int k = offsets_[c]; k < offsets_[c + 1]; k++)
  {
    const int t = items_[k];
    const auto g = barycentric_gradients(*mesh_, t);
    const auto l = g.barycentric(p);
    const double worst = std::min({l[0], l[1], l[2]});
    if (worst >= -tol && worst > best)
    {
      best = worst;
      hit.triangle = t;
      hit.lambda = l;
    }
  }
  return hit;
}

}  // namespace yeefem
