// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "yeefem/errors.hpp"
#include "yeefem/scenario.hpp"

namespace yeefem
{

double Envelope::value(double s) const
{
  const double z = s + offset;
  return amplitude * std::exp(-decay * z * z);
}

double Envelope::derivative(double s) const
{
  const double z = s + offset;
  return -2.0 * decay * z * amplitude * std::exp(-decay * z * z);
}

void Scenario::validate() const
{
  geometry.validate();
  if (std::abs(norm(k) - 1.0) > 1e-12)
  {
    throw ConfigError("wave direction must be a unit vector");
  }
  if (!(final_time > 0.0))
  {
    throw ConfigError("final time must be positive");
  }
  if (!(envelope.decay > 0.0))
  {
    throw ConfigError("envelope decay must be positive");
  }
  for (double t : snapshot_times)
  {
    if (t < 0.0 || t > final_time)
    {
      throw ConfigError("snapshot time outside [0, T]");
    }
  }
}

MaterialField Scenario::materials(const Mesh &m) const
{
  return MaterialField::from_labels(m, geometry.outside, geometry.inside);
}

Vec2 plane_wave(const Scenario &s, const Vec2 &x, double t)
{
  const double a = s.envelope.value(dot(s.k, x) - t);
  return {-s.k[1] * a, s.k[0] * a};
}

double boundary_trace_g(const Scenario &s, const Vec2 &x, double t)
{
  return s.geometry.outside[2] * s.envelope.derivative(dot(s.k, x) - t);
}

}  // namespace yeefem
