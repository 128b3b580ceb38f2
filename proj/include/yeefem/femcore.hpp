// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_FEMCORE_HPP
#define YEEFEM_FEMCORE_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "yeefem/mesh.hpp"
#include "yeefem/vec2.hpp"

namespace yeefem
{

// Which finite element space a coefficient vector belongs to: the full space
// with two dofs per edge, or the reduced space with one dof on reduced edges.
enum class Space
{
  Full,
  Reduced,
};

struct DofVector
{
  Space space = Space::Full;
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

//
// Degrees of freedom of the edge element space. Full-space dofs are sorted
// edge-wise: dof 2e belongs to Phi_ij = lambda_i grad(lambda_j) and dof 2e+1
// to Phi_ji = -lambda_j grad(lambda_i), where (i, j), i < j, is edge e.
// The reduced space keeps the edge-wise ordering with one dof for every
// reduced edge (basis Phi_ij + Phi_ji) and two for every other edge.
//
class DofMap
{
public:
  DofMap() = default;
  explicit DofMap(const Mesh &m, std::vector<bool> reduced = {});

  int num_edges() const { return static_cast<int>(reduced_.size()); }
  int n_full() const { return 2 * num_edges(); }
  int n_reduced() const { return n_reduced_; }
  int size(Space s) const { return s == Space::Full ? n_full() : n_reduced(); }
  int num_reduced_edges() const { return n_full() - n_reduced_; }

  static int full_dof(int edge, int which) { return 2 * edge + which; }
  bool is_reduced(int edge) const { return reduced_[edge]; }
  // First reduced-space dof of an edge.
  int reduced_offset(int edge) const { return offset_[edge]; }
  const std::vector<bool> &reduced_flags() const { return reduced_; }

  // Coefficient duplication onto both dofs of reduced edges.
  DofVector prolong(const DofVector &v) const;
  // Full-space coefficients whatever the input space.
  DofVector to_full(const DofVector &v) const;
  // Averaging restriction: the reduced coefficients of the projection of v.
  DofVector restrict_average(const DofVector &v) const;

  void check(const DofVector &v) const;

private:
  std::vector<bool> reduced_;
  std::vector<int> offset_;
  int n_reduced_ = 0;
};

struct ElementGeometry
{
  std::array<Vec2, 3> vertices;
  std::array<Vec2, 3> grads;  // gradients of the barycentric coordinates
  double area;

  std::array<double, 3> barycentric(const Vec2 &p) const;
  Vec2 point(const std::array<double, 3> &lambda) const;
};

ElementGeometry barycentric_gradients(const std::array<Vec2, 3> &vertices);
ElementGeometry barycentric_gradients(const Mesh &m, int t);

// One of the six element basis functions: sign * lambda_tail * grad(lambda_head)
// with local vertex ids. The sign is +1 when the tail has the lower global id.
struct LocalBasis
{
  int tail;
  int head;
  double sign;
};

// Local index 2k + w refers to local edge k; w = 0 is the function attached
// to the lower global vertex of the edge.
struct ElementDofs
{
  std::array<int, 6> dof;
  std::array<LocalBasis, 6> basis;
};

ElementDofs element_dofs(const Mesh &m, int t);

Vec2 eval_basis(const ElementGeometry &g, const LocalBasis &b, const std::array<double, 3> &lambda);
// Evaluation at a physical point; throws DomainError when p lies outside the
// triangle beyond a barycentric tolerance of 1e-10.
Vec2 eval_basis(const ElementGeometry &g, const LocalBasis &b, const Vec2 &p);
Vec2 basis_vertex_value(const ElementGeometry &g, const LocalBasis &b, int local_vertex);
double curl_basis(const ElementGeometry &g, const LocalBasis &b);

// Field value and curl of a full-space vector inside triangle t.
Vec2 element_value(const Mesh &m, int t, std::span<const double> full,
                   const std::array<double, 3> &lambda);
double element_curl(const Mesh &m, int t, std::span<const double> full);
std::vector<double> element_curls(const Mesh &m, std::span<const double> full);

// Vertex-rule pairing sum_T alpha_T |T|/3 sum_v a(v) . b(v). Both vectors
// must live in the full space.
double vertex_quadrature(const Mesh &m, const DofMap &d, std::span<const double> alpha,
                         const DofVector &a, const DofVector &b);

using VectorField = std::function<Vec2(const Vec2 &x, double t)>;
using ScalarField = std::function<double(const Vec2 &x, double t)>;

enum class InterpolationMode
{
  Full,     // P1 tangential moments on every edge
  Reduced,  // P0 moments on reduced edges, P1 elsewhere
};

DofVector interpolate(const VectorField &F, double t, const Mesh &m, const DofMap &d,
                      InterpolationMode mode);

class PointLocator;

// Evaluates a discrete field at a point. Reduced vectors are prolonged first.
Vec2 eval_field(const DofVector &c, const Mesh &m, const DofMap &d, const Vec2 &p);
Vec2 eval_field(const DofVector &c, const Mesh &m, const DofMap &d, const Vec2 &p,
                const PointLocator &locator);

// L2 distance between a discrete field and an analytic one, degree 5 rule.
double l2_error(const DofVector &c, const Mesh &m, const DofMap &d, const VectorField &F,
                double t);

//
// Uniform bucket grid over the mesh bounding box for point location.
//
class PointLocator
{
public:
  explicit PointLocator(const Mesh &m, int buckets_per_side = 0);

  struct Hit
  {
    int triangle = -1;
    std::array<double, 3> lambda{};
  };

  // Triangle containing p within barycentric tolerance; triangle = -1 if none.
  Hit locate(const Vec2 &p, double tol = 1e-10) const;

private:
  const Mesh *mesh_;
  Vec2 lo_, hi_;
  int nx_, ny_;
  std::vector<int> offsets_;
  std::vector<int> items_;
};

}  // namespace yeefem

#endif  // YEEFEM_FEMCORE_HPP
