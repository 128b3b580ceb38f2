// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_SCENARIO_HPP
#define YEEFEM_SCENARIO_HPP

#include <vector>

#include "yeefem/femcore.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/vec2.hpp"

namespace yeefem
{

// Gaussian pulse a(s) = amplitude exp(-decay (s + offset)^2).
struct Envelope
{
  double amplitude = 2.0;
  double decay = 10.0;
  double offset = 3.0;

  double value(double s) const;
  double derivative(double s) const;
};

//
// Plane wave hitting a lossy cylinder in the square (-1, 1)^2.
//
struct Scenario
{
  ScattererGeometry geometry;
  Vec2 k = {0.70710678118654752, 0.70710678118654752};
  Envelope envelope;
  double final_time = 2.5;
  std::vector<double> snapshot_times = {1.5, 2.0, 2.5};
  // Optional volume source; empty means f = 0.
  VectorField source;

  void validate() const;
  MaterialField materials(const Mesh &m) const;
};

// Incident field (-k2, k1) a(k.x - t).
Vec2 plane_wave(const Scenario &s, const Vec2 &x, double t);

// Scalar boundary datum nu curl of the incident field, nu a'(k.x - t).
double boundary_trace_g(const Scenario &s, const Vec2 &x, double t);

}  // namespace yeefem

#endif  // YEEFEM_SCENARIO_HPP
