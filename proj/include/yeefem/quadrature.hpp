// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_QUADRATURE_HPP
#define YEEFEM_QUADRATURE_HPP

#include <array>
#include <vector>

namespace yeefem
{

// Gauss-Legendre rule on [0, 1], exact to degree 7. Weights sum to 1.
struct LineRule
{
  std::array<double, 4> x;
  std::array<double, 4> w;
};
const LineRule &gauss_legendre4();

// Rule on a triangle in barycentric coordinates. Weights sum to 1 and are
// multiplied by the triangle area.
struct TriangleRule
{
  std::vector<std::array<double, 3>> bary;
  std::vector<double> w;
  int degree;
};
const TriangleRule &triangle_rule_deg4();  // 6 points
const TriangleRule &triangle_rule_deg5();  // 7 points

}  // namespace yeefem

#endif  // YEEFEM_QUADRATURE_HPP
