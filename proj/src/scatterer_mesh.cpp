// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "yeefem/errors.hpp"
#include "yeefem/mesh.hpp"

namespace yeefem
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

double polar_angle(const Vec2 &p)
{
  double a = std::atan2(p[1], p[0]);
  return a < 0.0 ? a + two_pi : a;
}

// Closed polyline around the origin, ordered by increasing polar angle in [0, 2pi).
struct Ring
{
  std::vector<int> ids;
  std::vector<double> angles;
};

class RingBuilder
{
public:
  explicit RingBuilder(std::vector<Vec2> &vertices) : vertices_(vertices) {}

  Ring add(std::vector<Vec2> points)
  {
    std::vector<std::pair<double, Vec2>> sorted;
    sorted.reserve(points.size());
    for (const auto &p : points)
    {
      sorted.emplace_back(polar_angle(p), p);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    Ring ring;
    for (const auto &[a, p] : sorted)
    {
      ring.ids.push_back(static_cast<int>(vertices_.size()));
      ring.angles.push_back(a);
      vertices_.push_back(p);
    }
    return ring;
  }

private:
  std::vector<Vec2> &vertices_;
};

void push_oriented(std::vector<std::array<int, 3>> &tris, const std::vector<Vec2> &v, int a,
                   int b, int c)
{
  if (cross(v[b] - v[a], v[c] - v[a]) < 0.0)
  {
    std::swap(b, c);
  }
  tris.push_back({a, b, c});
}

// Triangulates the annulus between two nested star-shaped rings by walking
// both in angular order and always advancing the ring whose next point comes
// first.
void zip_rings(const Ring &inner, const Ring &outer, const std::vector<Vec2> &v,
               std::vector<std::array<int, 3>> &tris)
{
  const std::size_t na = inner.ids.size(), nb = outer.ids.size();
  auto next_angle = [](const Ring &r, std::size_t i) {
    return i + 1 < r.ids.size() ? r.angles[i + 1] : r.angles[0] + two_pi;
  };
  std::size_t i = 0, j = 0;
  while (i < na || j < nb)
  {
    const bool advance_inner = j == nb || (i < na && next_angle(inner, i) < next_angle(outer, j));
    const int a = inner.ids[i % na], b = outer.ids[j % nb];
    if (advance_inner)
    {
      push_oriented(tris, v, a, inner.ids[(i + 1) % na], b);
      i++;
    }
    else
    {
      push_oriented(tris, v, a, b, outer.ids[(j + 1) % nb]);
      j++;
    }
  }
}

// Resamples a closed curve, given densely as a polyline starting at angle 0,
// into `count` points equidistant in arc length.
std::vector<Vec2> resample_closed(const std::vector<Vec2> &dense, int count)
{
  std::vector<double> arc(dense.size() + 1, 0.0);
  for (std::size_t k = 0; k < dense.size(); k++)
  {
    arc[k + 1] = arc[k] + norm(dense[(k + 1) % dense.size()] - dense[k]);
  }
  const double total = arc.back();
  std::vector<Vec2> out;
  out.reserve(count);
  std::size_t seg = 0;
  for (int q = 0; q < count; q++)
  {
    const double s = total * q / count;
    while (arc[seg + 1] < s)
    {
      seg++;
    }
    const double w = (s - arc[seg]) / (arc[seg + 1] - arc[seg]);
    const Vec2 &p0 = dense[seg], &p1 = dense[(seg + 1) % dense.size()];
    out.push_back(p0 + w * (p1 - p0));
  }
  return out;
}

double polyline_length(const std::vector<Vec2> &pts)
{
  double len = 0.0;
  for (std::size_t k = 0; k < pts.size(); k++)
  {
    len += norm(pts[(k + 1) % pts.size()] - pts[k]);
  }
  return len;
}


double opposite_angle(const Vec2 &apex, const Vec2 &p, const Vec2 &q)
{
  const Vec2 u = p - apex, v = q - apex;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

// Lawson flips towards a Delaunay triangulation. Edges between triangles of
// different labels are never flipped, so the interface is preserved.
bool flip_pass(const std::vector<Vec2> &v, std::vector<std::array<int, 3>> &tris,
               const std::vector<int> &labels)
{
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (int t = 0; t < static_cast<int>(tris.size()); t++)
  {
    for (int k = 0; k < 3; k++)
    {
      const int a = tris[t][k], b = tris[t][(k + 1) % 3];
      edge_tris[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  }
  std::vector<char> touched(tris.size(), 0);
  bool flipped = false;
  for (const auto &[edge, ts] : edge_tris)
  {
    if (ts.size() != 2 || labels[ts[0]] != labels[ts[1]] || touched[ts[0]] || touched[ts[1]])
    {
      continue;
    }
    const auto [a, b] = edge;
    auto apex = [&](int t) {
      for (int x : tris[t])
      {
        if (x != a && x != b)
        {
          return x;
        }
      }
      return -1;
    };
    const int c = apex(ts[0]), d = apex(ts[1]);
    if (opposite_angle(v[c], v[a], v[b]) + opposite_angle(v[d], v[a], v[b]) <=
        std::numbers::pi + 1e-10)
    {
      continue;
    }
    std::vector<std::array<int, 3>> repl;
    push_oriented(repl, v, c, a, d);
    push_oriented(repl, v, d, b, c);
    tris[ts[0]] = repl[0];
    tris[ts[1]] = repl[1];
    touched[ts[0]] = touched[ts[1]] = 1;
    flipped = true;
  }
  return flipped;
}

// One step of a truss relaxation: every edge shorter than the common rest
// length pushes its end points apart. Moves that would flatten or invert an
// incident triangle are halved until valid or dropped.
void spring_pass(std::vector<Vec2> &v, const std::vector<std::array<int, 3>> &tris,
                 const std::vector<char> &fixed)
{
  const int nv = static_cast<int>(v.size());
  std::vector<std::pair<int, int>> bars;
  std::vector<std::vector<int>> incident(nv);
  for (int t = 0; t < static_cast<int>(tris.size()); t++)
  {
    for (int k = 0; k < 3; k++)
    {
      const int a = tris[t][k], b = tris[t][(k + 1) % 3];
      bars.emplace_back(std::min(a, b), std::max(a, b));
      incident[a].push_back(t);
    }
  }
  std::sort(bars.begin(), bars.end());
  bars.erase(std::unique(bars.begin(), bars.end()), bars.end());

  double sum_sq = 0.0;
  for (const auto &[a, b] : bars)
  {
    const Vec2 d = v[b] - v[a];
    sum_sq += dot(d, d);
  }
  const double rest = 1.0 * std::sqrt(sum_sq / bars.size());
  std::vector<Vec2> force(nv, Vec2{0.0, 0.0});
  for (const auto &[a, b] : bars)
  {
    const Vec2 d = v[b] - v[a];
    const double len = norm(d);
    const double f = (rest - len) / len;
    force[a] = force[a] - f * d;
    force[b] = force[b] + f * d;
  }

  auto min_area = [&](int i) {
    double m = std::numeric_limits<double>::infinity();
    for (int t : incident[i])
    {
      const auto &tri = tris[t];
      m = std::min(m, cross(v[tri[1]] - v[tri[0]], v[tri[2]] - v[tri[0]]));
    }
    return m;
  };
  for (int i = 0; i < nv; i++)
  {
    if (fixed[i])
    {
      continue;
    }
    const Vec2 old = v[i];
    const double floor = 0.25 * min_area(i);
    Vec2 step = 0.2 * force[i];
    for (int tries = 0; tries < 6; tries++)
    {
      v[i] = old + step;
      if (min_area(i) > floor)
      {
        break;
      }
      v[i] = old;
      step = 0.5 * step;
    }
  }
}

}  // namespace

std::vector<Vec2> ScattererGeometry::polygon() const
{
  std::vector<Vec2> pts(segments);
  for (int k = 0; k < segments; k++)
  {
    const double a = two_pi * k / segments;
    pts[k] = {radius * std::cos(a), radius * std::sin(a)};
  }
  return pts;
}

bool ScattererGeometry::inside_polygon(const Vec2 &p) const
{
  const auto poly = polygon();
  for (int k = 0; k < segments; k++)
  {
    const Vec2 &a = poly[k], &b = poly[(k + 1) % segments];
    if (cross(b - a, p - a) < 0.0)
    {
      return false;
    }
  }
  return true;
}

void ScattererGeometry::validate() const
{
  if (segments < 8)
  {
    throw ConfigError("scatterer polygon needs at least 8 segments, got " +
                      std::to_string(segments));
  }
  if (!(radius > 0.0) || !(radius < half_width))
  {
    throw ConfigError("scatterer radius must lie in (0, half_width)");
  }
  if (coarse_spacing < 0.0 || coarse_spacing >= half_width)
  {
    throw ConfigError("coarse spacing must lie in [0, half_width)");
  }
}

Mesh generate_scatterer_mesh(const ScattererGeometry &geom, int level)
{
  geom.validate();
  if (level < 0)
  {
    throw ConfigError("refinement level must be non-negative");
  }
  const int n = geom.segments;
  const double r = geom.radius, w = geom.half_width;
  const double spacing =
      geom.coarse_spacing > 0.0 ? geom.coarse_spacing : 2.0 * r * std::sin(std::numbers::pi / n);
  const auto poly = geom.polygon();

  // Radial distance to the polygon boundary along direction `a`.
  auto polygon_point = [&](double a) {
    const int k = std::min(static_cast<int>(a / (two_pi / n)), n - 1);
    const Vec2 &p = poly[k], &q = poly[(k + 1) % n];
    const Vec2 d = {std::cos(a), std::sin(a)};
    const double s = cross(p, q - p) / cross(d, q - p);
    return s * d;
  };
  auto square_point = [&](double a) {
    const Vec2 d = {std::cos(a), std::sin(a)};
    return (w / std::max(std::abs(d[0]), std::abs(d[1]))) * d;
  };

  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> labels;
  RingBuilder builder(vertices);

  // Scatterer: polygon, inner regular rings, center fan.
  const Ring polygon_ring = builder.add(poly);
  const int inner_layers = std::max(2, static_cast<int>(std::lround(r / spacing)));
  Ring prev = polygon_ring;
  for (int l = inner_layers - 1; l >= 1; l--)
  {
    const double rl = r * l / inner_layers;
    const int count = std::max(4, static_cast<int>(std::lround(two_pi * rl / spacing)));
    std::vector<Vec2> pts(count);
    for (int q = 0; q < count; q++)
    {
      const double a = two_pi * (q + 0.5 * (l % 2)) / count;
      pts[q] = {rl * std::cos(a), rl * std::sin(a)};
    }
    Ring ring = builder.add(std::move(pts));
    zip_rings(ring, prev, vertices, tris);
    prev = std::move(ring);
  }
  const int center = static_cast<int>(vertices.size());
  vertices.push_back({0.0, 0.0});
  for (std::size_t q = 0; q < prev.ids.size(); q++)
  {
    push_oriented(tris, vertices, center, prev.ids[q], prev.ids[(q + 1) % prev.ids.size()]);
  }
  labels.assign(tris.size(), 1);

  // Surrounding medium: rings blending the polygon into the square.
  const double mean_gap = 0.5 * ((w - r) + (std::sqrt(2.0) * w - r));
  const int outer_layers = std::max(1, static_cast<int>(std::ceil(mean_gap / spacing - 1e-9)));
  const int per_side = std::max(1, static_cast<int>(std::lround(2.0 * w / spacing)));
  prev = polygon_ring;
  for (int l = 1; l <= outer_layers; l++)
  {
    std::vector<Vec2> pts;
    if (l == outer_layers)
    {
      // Shortened corner segments keep the corner triangles' hypotenuse near the spacing.
      const double uniform = 2.0 * w / per_side;
      const double corner = per_side >= 3 ? 0.75 * uniform : uniform;
      const double step = per_side >= 3 ? (2.0 * w - 2.0 * corner) / (per_side - 2) : uniform;
      for (int q = 0; q < per_side; q++)
      {
        const double s = q == 0 ? -w : -w + corner + (q - 1) * step;
        pts.push_back({w, s});
        pts.push_back({-s, w});
        pts.push_back({-w, -s});
        pts.push_back({s, -w});
      }
    }
    else
    {
      const double blend = static_cast<double>(l) / outer_layers;
      const int dense_count = 64 * n;
      std::vector<Vec2> dense(dense_count);
      for (int q = 0; q < dense_count; q++)
      {
        const double a = two_pi * q / dense_count;
        dense[q] = (1.0 - blend) * polygon_point(a) + blend * square_point(a);
      }
      const int count = std::max(
          n, static_cast<int>(std::lround(polyline_length(dense) / spacing)));
      pts = resample_closed(dense, count);
    }
    Ring ring = builder.add(std::move(pts));
    zip_rings(prev, ring, vertices, tris);
    prev = std::move(ring);
  }
  labels.resize(tris.size(), 0);

  std::vector<char> fixed(vertices.size(), 0);
  for (int id : polygon_ring.ids)
  {
    fixed[id] = 1;
  }
  for (int id : prev.ids)
  {
    fixed[id] = 1;
  }
  for (int round = 0; round < 300; round++)
  {
    for (int pass = 0; pass < 50 && flip_pass(vertices, tris, labels); pass++)
    {
    }
    spring_pass(vertices, tris, fixed);
  }
  for (int pass = 0; pass < 50 && flip_pass(vertices, tris, labels); pass++)
  {
  }

  Mesh mesh(std::move(vertices), std::move(tris), std::move(labels));
  for (int l = 0; l < level; l++)
  {
    mesh = refine_uniform(mesh);
  }
  return mesh;
}

}  // namespace yeefem
