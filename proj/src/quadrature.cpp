// SPDX-License-Identifier: Apache-2.0

#include "yeefem/quadrature.hpp"

#include <cmath>

namespace yeefem
{

const LineRule &gauss_legendre4()
{
  static const LineRule rule = [] {
    const double x1 = 0.33998104358485626480, x2 = 0.86113631159405257522;
    const double w1 = 0.65214515486254614263, w2 = 0.34785484513745385737;
    LineRule r;
    r.x = {0.5 * (1.0 - x2), 0.5 * (1.0 - x1), 0.5 * (1.0 + x1), 0.5 * (1.0 + x2)};
    r.w = {0.5 * w2, 0.5 * w1, 0.5 * w1, 0.5 * w2};
    return r;
  }();
  return rule;
}

namespace
{

void add_orbit(TriangleRule &r, double a, double w)
{
  const double b = 1.0 - 2.0 * a;
  r.bary.push_back({b, a, a});
  r.bary.push_back({a, b, a});
  r.bary.push_back({a, a, b});
  r.w.insert(r.w.end(), 3, w);
}

}  // namespace

const TriangleRule &triangle_rule_deg4()
{
  static const TriangleRule rule = [] {
    TriangleRule r;
    r.degree = 4;
    add_orbit(r, 0.445948490915965, 0.223381589678011);
    add_orbit(r, 0.091576213509771, 0.109951743655322);
    // Renormalize the tabulated weights so constants integrate exactly.
    double sum = 0.0;
    for (double w : r.w)
    {
      sum += w;
    }
    for (double &w : r.w)
    {
      w /= sum;
    }
    return r;
  }();
  return rule;
}

const TriangleRule &triangle_rule_deg5()
{
  static const TriangleRule rule = [] {
    TriangleRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    r.bary.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.w.push_back(9.0 / 40.0);
    add_orbit(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
    add_orbit(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
    return r;
  }();
  return rule;
}

}  // namespace yeefem
