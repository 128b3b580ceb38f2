// SPDX-License-Identifier: Apache-2.0

#include "yeefem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yeefem/errors.hpp"

namespace yeefem
{

namespace
{

std::uint64_t edge_key(int a, int b)
{
  if (a > b)
  {
    std::swap(a, b);
  }
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(const Vec2 &a, const Vec2 &b, const Vec2 &c)
{
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
           std::vector<int> tri_label, int level, std::vector<int> parents)
  : vertices_(std::move(vertices)), triangles_(std::move(triangles)),
    tri_label_(std::move(tri_label)), parents_(std::move(parents)), level_(level)
{
  if (tri_label_.empty())
  {
    tri_label_.assign(triangles_.size(), 0);
  }
  if (tri_label_.size() != triangles_.size())
  {
    throw ValidationError("label count " + std::to_string(tri_label_.size()) +
                          " does not match triangle count " +
                          std::to_string(triangles_.size()));
  }
  if (!parents_.empty() && parents_.size() != triangles_.size())
  {
    throw ValidationError("parent map size does not match triangle count");
  }
  const int nv = num_vertices();
  for (int t = 0; t < num_triangles(); t++)
  {
    for (int v : triangles_[t])
    {
      if (v < 0 || v >= nv)
      {
        throw ValidationError("triangle " + std::to_string(t) +
                              " references missing vertex " + std::to_string(v));
      }
    }
  }
  validate();
  build_topology();
}

void Mesh::validate() const
{
  for (int t = 0; t < num_triangles(); t++)
  {
    const auto &tri = triangles_[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
    {
      throw ValidationError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const Vec2 &a = vertices_[tri[0]], &b = vertices_[tri[1]], &c = vertices_[tri[2]];
    if (!std::isfinite(a[0] + a[1] + b[0] + b[1] + c[0] + c[1]))
    {
      throw ValidationError("triangle " + std::to_string(t) + " has non-finite coordinates");
    }
    const double diam2 =
        std::max({dot(b - a, b - a), dot(c - b, c - b), dot(a - c, a - c)});
    const double area = signed_area(a, b, c);
    if (std::abs(area) <= 1e-14 * diam2)
    {
      throw ValidationError("triangle " + std::to_string(t) + " is degenerate");
    }
    if (area < 0.0)
    {
      throw ValidationError("triangle " + std::to_string(t) +
                            " is not counterclockwise");
    }
  }
}

void Mesh::build_topology()
{
  const int nt = num_triangles();
  std::vector<std::pair<std::uint64_t, int>> keys;
  keys.reserve(3 * nt);
  for (int t = 0; t < nt; t++)
  {
    for (int k = 0; k < 3; k++)
    {
      const int a = triangles_[t][(k + 1) % 3], b = triangles_[t][(k + 2) % 3];
      keys.emplace_back(edge_key(a, b), 3 * t + k);
    }
  }
  // Edge ids follow the first appearance in triangle order.
  std::stable_sort(keys.begin(), keys.end(),
                   [](const auto &x, const auto &y) { return x.first < y.first; });

  std::vector<int> first_slot;
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < keys.size();)
  {
    std::size_t j = i;
    while (j < keys.size() && keys[j].first == keys[i].first)
    {
      j++;
    }
    if (j - i > 2)
    {
      const auto a = static_cast<int>(keys[i].first >> 32);
      const auto b = static_cast<int>(keys[i].first & 0xffffffffu);
      throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is shared by " + std::to_string(j - i) +
                            " triangles; mesh is not conforming");
    }
    groups.emplace_back(i, j);
    first_slot.push_back(keys[i].second);
    i = j;
  }
  std::vector<int> order(groups.size());
  for (std::size_t g = 0; g < groups.size(); g++)
  {
    order[g] = static_cast<int>(g);
  }
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return first_slot[x] < first_slot[y]; });

  edges_.resize(groups.size());
  edge_tris_.assign(groups.size(), {-1, -1});
  tri_edges_.assign(nt, {});
  edge_lookup_.clear();
  edge_lookup_.reserve(groups.size());
  for (std::size_t e = 0; e < order.size(); e++)
  {
    const auto [begin, end] = groups[order[e]];
    const std::uint64_t key = keys[begin].first;
    const auto i = static_cast<int>(key >> 32);
    const auto j = static_cast<int>(key & 0xffffffffu);
    edges_[e] = {i, j};
    edge_lookup_.emplace_back(key, static_cast<int>(e));
    int count = 0;
    int prev_sign = 0;
    for (std::size_t s = begin; s < end; s++)
    {
      const int t = keys[s].second / 3, k = keys[s].second % 3;
      const int a = triangles_[t][(k + 1) % 3];
      const int sign = (a == i) ? 1 : -1;
      if (count == 1 && sign == prev_sign)
      {
        throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is traversed in the same direction by both neighbours");
      }
      tri_edges_[t][k] = {static_cast<int>(e), sign};
      edge_tris_[e][count++] = t;
      prev_sign = sign;
    }
  }
  std::sort(edge_lookup_.begin(), edge_lookup_.end());

  boundary_edges_.clear();
  boundary_vertex_.assign(vertices_.size(), 0);
  for (int e = 0; e < num_edges(); e++)
  {
    if (edge_tris_[e][1] < 0)
    {
      boundary_edges_.push_back(e);
      boundary_vertex_[edges_[e][0]] = 1;
      boundary_vertex_[edges_[e][1]] = 1;
    }
  }
}

int Mesh::find_edge(int a, int b) const
{
  const std::uint64_t key = edge_key(a, b);
  auto it = std::lower_bound(edge_lookup_.begin(), edge_lookup_.end(),
                             std::make_pair(key, -1));
  if (it != edge_lookup_.end() && it->first == key)
  {
    return it->second;
  }
  return -1;
}

double Mesh::area(int t) const
{
  const auto &tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::edge_length(int e) const
{
  return norm(vertices_[edges_[e][1]] - vertices_[edges_[e][0]]);
}

double Mesh::max_edge_length() const
{
  double h = 0.0;
  for (int e = 0; e < num_edges(); e++)
  {
    h = std::max(h, edge_length(e));
  }
  return h;
}

Vec2 Mesh::centroid(int t) const
{
  const auto &tri = triangles_[t];
  const Vec2 s = vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]];
  return (1.0 / 3.0) * s;
}

Mesh refine_uniform(const Mesh &m)
{
  const int nv = m.num_vertices();
  std::vector<Vec2> vertices = m.vertices();
  vertices.reserve(nv + m.num_edges());
  for (const auto &[i, j] : m.edges())
  {
    vertices.push_back(0.5 * (m.vertex(i) + m.vertex(j)));
  }

  std::vector<std::array<int, 3>> triangles;
  std::vector<int> labels, parents;
  triangles.reserve(4 * m.num_triangles());
  labels.reserve(4 * m.num_triangles());
  parents.reserve(4 * m.num_triangles());
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto &[a, b, c] = m.triangle(t);
    const auto &te = m.tri_edges()[t];
    // mid[k] is the midpoint of the edge opposite local vertex k.
    const int ma = nv + te[0].edge, mb = nv + te[1].edge, mc = nv + te[2].edge;
    for (const auto &child : {std::array<int, 3>{a, mc, mb}, std::array<int, 3>{b, ma, mc},
                              std::array<int, 3>{c, mb, ma}, std::array<int, 3>{ma, mb, mc}})
    {
      triangles.push_back(child);
      labels.push_back(m.tri_label()[t]);
      parents.push_back(t);
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(labels), m.level() + 1,
              std::move(parents));
}

MaterialField MaterialField::from_labels(const Mesh &m, std::array<double, 3> outside,
                                         std::array<double, 3> inside)
{
  MaterialField mat;
  const int nt = m.num_triangles();
  mat.eps.resize(nt);
  mat.sigma.resize(nt);
  mat.nu.resize(nt);
  for (int t = 0; t < nt; t++)
  {
    const auto &vals = m.tri_label()[t] == 0 ? outside : inside;
    mat.eps[t] = vals[0];
    mat.sigma[t] = vals[1];
    mat.nu[t] = vals[2];
  }
  mat.validate(m);
  return mat;
}

void MaterialField::validate(const Mesh &m) const
{
  const auto nt = static_cast<std::size_t>(m.num_triangles());
  if (eps.size() != nt || sigma.size() != nt || nu.size() != nt)
  {
    throw ParameterError("material arrays must have one entry per triangle");
  }
  for (std::size_t t = 0; t < nt; t++)
  {
    if (!(eps[t] > 0.0) || !(nu[t] > 0.0) || !(sigma[t] >= 0.0))
    {
      throw ParameterError("invalid material on triangle " + std::to_string(t) +
                           ": need eps > 0, nu > 0, sigma >= 0");
    }
  }
}

}  // namespace yeefem
