// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_VEC2_HPP
#define YEEFEM_VEC2_HPP

#include <array>
#include <cmath>

namespace yeefem
{

using Vec2 = std::array<double, 2>;

constexpr Vec2 operator+(const Vec2 &a, const Vec2 &b) { return {a[0] + b[0], a[1] + b[1]}; }
constexpr Vec2 operator-(const Vec2 &a, const Vec2 &b) { return {a[0] - b[0], a[1] - b[1]}; }
constexpr Vec2 operator*(double s, const Vec2 &a) { return {s * a[0], s * a[1]}; }
constexpr double dot(const Vec2 &a, const Vec2 &b) { return a[0] * b[0] + a[1] * b[1]; }
// z-component of the 3D cross product of (a,0) and (b,0).
constexpr double cross(const Vec2 &a, const Vec2 &b) { return a[0] * b[1] - a[1] * b[0]; }
inline double norm(const Vec2 &a) { return std::hypot(a[0], a[1]); }

}  // namespace yeefem

#endif  // YEEFEM_VEC2_HPP
