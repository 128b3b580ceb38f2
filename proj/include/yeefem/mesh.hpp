// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_MESH_HPP
#define YEEFEM_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yeefem/vec2.hpp"

namespace yeefem
{

// An edge seen from one triangle: global edge id plus +1 when the global
// orientation (lower to higher vertex id) agrees with the triangle's
// counterclockwise traversal, -1 otherwise.
struct EdgeRef
{
  int edge;
  int sign;
};

//
// Conforming triangulation of a planar domain. Immutable after construction.
//
// Local edge k of a triangle joins local vertices (k+1)%3 and (k+2)%3, i.e. it
// is the edge opposite local vertex k. Global edges are stored as (i, j) with
// i < j, and the tangent of an edge points from v_i to v_j.
//
class Mesh
{
public:
  Mesh() = default;

  // Builds the edge table and validates conformity, orientation and
  // non-degeneracy. `parents` is optional and maps each triangle to the
  // triangle of the mesh it was refined from.
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
       std::vector<int> tri_label, int level = 0, std::vector<int> parents = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int level() const { return level_; }

  const std::vector<Vec2> &vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>> &triangles() const { return triangles_; }
  const std::vector<int> &tri_label() const { return tri_label_; }
  const std::vector<std::array<int, 2>> &edges() const { return edges_; }
  const std::vector<std::array<EdgeRef, 3>> &tri_edges() const { return tri_edges_; }
  const std::vector<int> &boundary_edges() const { return boundary_edges_; }
  const std::vector<int> &parents() const { return parents_; }

  const Vec2 &vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3> &triangle(int t) const { return triangles_[t]; }
  const std::array<int, 2> &edge(int e) const { return edges_[e]; }

  // Triangles adjacent to an edge; the second entry is -1 on the boundary.
  const std::array<int, 2> &edge_triangles(int e) const { return edge_tris_[e]; }
  bool is_boundary_edge(int e) const { return edge_tris_[e][1] < 0; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }

  // Edge id joining two vertices, or -1.
  int find_edge(int a, int b) const;

  double area(int t) const;
  double edge_length(int e) const;
  double max_edge_length() const;
  Vec2 centroid(int t) const;

private:
  void build_topology();
  void validate() const;

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> tri_label_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<EdgeRef, 3>> tri_edges_;
  std::vector<std::array<int, 2>> edge_tris_;
  std::vector<int> boundary_edges_;
  std::vector<char> boundary_vertex_;
  std::vector<std::pair<std::uint64_t, int>> edge_lookup_;
  std::vector<int> parents_;
  int level_ = 0;
};

// Red refinement: every triangle is split into four through its edge
// midpoints. Coarse vertex ids are kept, the midpoint of coarse edge e gets
// id num_vertices + e, and children inherit the parent's label.
Mesh refine_uniform(const Mesh &m);

// Plain-text mesh format:
//   meshfmt 1 2d
//   vertices N      followed by N lines "x y"
//   triangles M     followed by M lines "i j k label" (0-based, counterclockwise)
// Lines starting with '#' are comments.
Mesh parse_mesh(std::string_view text);
Mesh read_mesh_file(const std::string &path);
void write_mesh(std::ostream &os, const Mesh &m);
void write_mesh_file(const std::string &path, const Mesh &m);

// Piecewise constant material parameters, one value per triangle.
struct MaterialField
{
  std::vector<double> eps;
  std::vector<double> sigma;
  std::vector<double> nu;

  // Assigns values by triangle label: label 0 gets `outside`, anything else
  // `inside`. Each entry is {eps, sigma, nu}.
  static MaterialField from_labels(const Mesh &m, std::array<double, 3> outside,
                                   std::array<double, 3> inside);
  void validate(const Mesh &m) const;
};

struct ScattererGeometry
{
  double half_width = 1.0;
  double radius = 0.3;
  int segments = 16;
  // Target edge length of the coarse mesh; <= 0 uses the polygon side length.
  double coarse_spacing = 0.0;
  std::array<double, 3> outside = {1.0, 0.0, 1.0};  // eps, sigma, nu
  std::array<double, 3> inside = {1.0, 100.0, 1.0};

  // Vertices of the inscribed polygon, counterclockwise starting on the
  // positive x axis.
  std::vector<Vec2> polygon() const;
  bool inside_polygon(const Vec2 &p) const;
  void validate() const;
};

// Coarse interface-resolving mesh of the square followed by `level` red
// refinements. Triangles inside the polygon carry label 1, others label 0.
Mesh generate_scatterer_mesh(const ScattererGeometry &geom, int level);

enum class ReductionMode
{
  None,
  A5,
  A5Star,
  All,
};

// Predicate deciding whether the volume source jumps across an interior edge.
using JumpPredicate = bool (*)(const Mesh &, int edge);

// Returns a flag per edge: true when the edge carries one degree of freedom.
// In A5Star mode every boundary edge keeps two dofs, since the boundary data
// of the scattering problem is nonzero there while the pulse passes.
std::vector<bool> classify_reduced_edges(const Mesh &m, const MaterialField &mat,
                                         ReductionMode mode,
                                         JumpPredicate f_jumps = nullptr);

// Edges whose two neighbours have different labels.
std::vector<int> interface_edges(const Mesh &m);

ReductionMode parse_reduction_mode(std::string_view s);
std::string to_string(ReductionMode mode);

}  // namespace yeefem

#endif  // YEEFEM_MESH_HPP
