// SPDX-License-Identifier: Apache-2.0

#include "yeefem/femcore.hpp"

#include <cmath>

#include "yeefem/errors.hpp"
#include "yeefem/quadrature.hpp"

namespace yeefem
{

DofMap::DofMap(const Mesh &m, std::vector<bool> reduced) : reduced_(std::move(reduced))
{
  const int ne = m.num_edges();
  if (reduced_.empty())
  {
    reduced_.assign(ne, false);
  }
  if (static_cast<int>(reduced_.size()) != ne)
  {
    throw ContractError("reduced-edge flags must have one entry per edge");
  }
  offset_.resize(ne);
  int next = 0;
  for (int e = 0; e < ne; e++)
  {
    offset_[e] = next;
    next += reduced_[e] ? 1 : 2;
  }
  n_reduced_ = next;
}

void DofMap::check(const DofVector &v) const
{
  if (static_cast<int>(v.size()) != size(v.space))
  {
    throw ContractError("dof vector of length " + std::to_string(v.size()) +
                        " does not match its space dimension " +
                        std::to_string(size(v.space)));
  }
}

DofVector DofMap::prolong(const DofVector &v) const
{
  if (v.space != Space::Reduced)
  {
    throw ContractError("prolongation expects a reduced-space vector");
  }
  check(v);
  DofVector out{Space::Full, std::vector<double>(n_full())};
  for (int e = 0; e < num_edges(); e++)
  {
    const int r = offset_[e];
    out.coeffs[2 * e] = v.coeffs[r];
    out.coeffs[2 * e + 1] = reduced_[e] ? v.coeffs[r] : v.coeffs[r + 1];
  }
  return out;
}

DofVector DofMap::to_full(const DofVector &v) const
{
  if (v.space == Space::Full)
  {
    check(v);
    return v;
  }
  return prolong(v);
}

DofVector DofMap::restrict_average(const DofVector &v) const
{
  if (v.space != Space::Full)
  {
    throw ContractError("restriction expects a full-space vector");
  }
  check(v);
  DofVector out{Space::Reduced, std::vector<double>(n_reduced_)};
  for (int e = 0; e < num_edges(); e++)
  {
    const int r = offset_[e];
    if (reduced_[e])
    {
      out.coeffs[r] = 0.5 * (v.coeffs[2 * e] + v.coeffs[2 * e + 1]);
    }
    else
    {
      out.coeffs[r] = v.coeffs[2 * e];
      out.coeffs[r + 1] = v.coeffs[2 * e + 1];
    }
  }
  return out;
}

ElementGeometry barycentric_gradients(const std::array<Vec2, 3> &v)
{
  ElementGeometry g;
  g.vertices = v;
  const double twice_area = cross(v[1] - v[0], v[2] - v[0]);
  const double diam2 =
      std::max({dot(v[1] - v[0], v[1] - v[0]), dot(v[2] - v[1], v[2] - v[1]),
                dot(v[0] - v[2], v[0] - v[2])});
  if (!(std::abs(twice_area) > 2e-14 * diam2))
  {
    throw GeometryError("degenerate triangle");
  }
  g.area = 0.5 * twice_area;
  for (int a = 0; a < 3; a++)
  {
    const Vec2 &p = v[(a + 1) % 3], &q = v[(a + 2) % 3];
    g.grads[a] = {(p[1] - q[1]) / twice_area, (q[0] - p[0]) / twice_area};
  }
  if (g.area < 0.0)
  {
    g.area = -g.area;
  }
  return g;
}

ElementGeometry barycentric_gradients(const Mesh &m, int t)
{
  const auto &tri = m.triangle(t);
  return barycentric_gradients({m.vertex(tri[0]), m.vertex(tri[1]), m.vertex(tri[2])});
}

std::array<double, 3> ElementGeometry::barycentric(const Vec2 &p) const
{
  std::array<double, 3> l;
  for (int a = 0; a < 3; a++)
  {
    // lambda_a is affine, equal to 1 at vertex a and 0 at the others.
    const Vec2 &q = vertices[(a + 1) % 3];
    l[a] = dot(grads[a], p - q);
  }
  return l;
}

Vec2 ElementGeometry::point(const std::array<double, 3> &l) const
{
  return {l[0] * vertices[0][0] + l[1] * vertices[1][0] + l[2] * vertices[2][0],
          l[0] * vertices[0][1] + l[1] * vertices[1][1] + l[2] * vertices[2][1]};
}

ElementDofs element_dofs(const Mesh &m, int t)
{
  ElementDofs out;
  const auto &tri = m.triangle(t);
  const auto &te = m.tri_edges()[t];
  for (int k = 0; k < 3; k++)
  {
    const int p = (k + 1) % 3, q = (k + 2) % 3;
    // Local vertex holding the lower global id of this edge.
    const int lo = tri[p] < tri[q] ? p : q;
    const int hi = lo == p ? q : p;
    const int e = te[k].edge;
    out.dof[2 * k] = DofMap::full_dof(e, 0);
    out.basis[2 * k] = {lo, hi, 1.0};
    out.dof[2 * k + 1] = DofMap::full_dof(e, 1);
    out.basis[2 * k + 1] = {hi, lo, -1.0};
  }
  return out;
}

Vec2 eval_basis(const ElementGeometry &g, const LocalBasis &b, const std::array<double, 3> &l)
{
  return (b.sign * l[b.tail]) * g.grads[b.head];
}

Vec2 eval_basis(const ElementGeometry &g, const LocalBasis &b, const Vec2 &p)
{
  const auto l = g.barycentric(p);
  constexpr double tol = 1e-10;
  for (double x : l)
  {
    if (x < -tol || x > 1.0 + tol)
    {
      throw DomainError("point lies outside the triangle");
    }
  }
  return eval_basis(g, b, l);
}

Vec2 basis_vertex_value(const ElementGeometry &g, const LocalBasis &b, int local_vertex)
{
  if (local_vertex != b.tail)
  {
    return {0.0, 0.0};
  }
  return b.sign * g.grads[b.head];
}

double curl_basis(const ElementGeometry &g, const LocalBasis &b)
{
  // curl(lambda_a grad lambda_b) = grad lambda_a x grad lambda_b
  return b.sign * cross(g.grads[b.tail], g.grads[b.head]);
}

Vec2 element_value(const Mesh &m, int t, std::span<const double> full,
                   const std::array<double, 3> &lambda)
{
  const auto g = barycentric_gradients(m, t);
  const auto ed = element_dofs(m, t);
  Vec2 v = {0.0, 0.0};
  for (int k = 0; k < 6; k++)
  {
    v = v + full[ed.dof[k]] * eval_basis(g, ed.basis[k], lambda);
  }
  return v;
}

double element_curl(const Mesh &m, int t, std::span<const double> full)
{
  const auto g = barycentric_gradients(m, t);
  const auto ed = element_dofs(m, t);
  double c = 0.0;
  for (int k = 0; k < 6; k++)
  {
    c += full[ed.dof[k]] * curl_basis(g, ed.basis[k]);
  }
  return c;
}

std::vector<double> element_curls(const Mesh &m, std::span<const double> full)
{
  std::vector<double> out(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); t++)
  {
    out[t] = element_curl(m, t, full);
  }
  return out;
}

double vertex_quadrature(const Mesh &m, const DofMap &d, std::span<const double> alpha,
                         const DofVector &a, const DofVector &b)
{
  if (a.space != Space::Full || b.space != Space::Full)
  {
    throw ContractError("vertex quadrature expects full-space vectors");
  }
  d.check(a);
  d.check(b);
  if (static_cast<int>(alpha.size()) != m.num_triangles())
  {
    throw ContractError("weight must have one entry per triangle");
  }
  double sum = 0.0;
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto g = barycentric_gradients(m, t);
    const auto ed = element_dofs(m, t);
    double local = 0.0;
    for (int v = 0; v < 3; v++)
    {
      Vec2 av = {0.0, 0.0}, bv = {0.0, 0.0};
      for (int k = 0; k < 6; k++)
      {
        const Vec2 phi = basis_vertex_value(g, ed.basis[k], v);
        av = av + a.coeffs[ed.dof[k]] * phi;
        bv = bv + b.coeffs[ed.dof[k]] * phi;
      }
      local += dot(av, bv);
    }
    sum += alpha[t] * g.area / 3.0 * local;
  }
  return sum;
}

DofVector interpolate(const VectorField &F, double t, const Mesh &m, const DofMap &d,
                      InterpolationMode mode)
{
  const auto &rule = gauss_legendre4();
  const bool reduced = mode == InterpolationMode::Reduced;
  DofVector out{reduced ? Space::Reduced : Space::Full,
                std::vector<double>(reduced ? d.n_reduced() : d.n_full())};
  for (int e = 0; e < m.num_edges(); e++)
  {
    const auto &[i, j] = m.edge(e);
    const Vec2 &vi = m.vertex(i);
    const Vec2 tangent = m.vertex(j) - vi;
    // Moments of F . (v_j - v_i) against 1 - s and s along the edge. On the
    // edge, Phi_ij . (v_j - v_i) = lambda_i and Phi_ji . (v_j - v_i) = lambda_j.
    double m0 = 0.0, m1 = 0.0;
    for (int q = 0; q < 4; q++)
    {
      const double s = rule.x[q];
      const double ft = dot(F(vi + s * tangent, t), tangent);
      m0 += rule.w[q] * (1.0 - s) * ft;
      m1 += rule.w[q] * s * ft;
    }
    if (reduced && d.is_reduced(e))
    {
      out.coeffs[d.reduced_offset(e)] = m0 + m1;
      continue;
    }
    // Solve [[1/3, 1/6], [1/6, 1/3]] c = (m0, m1).
    const double cij = 4.0 * m0 - 2.0 * m1;
    const double cji = 4.0 * m1 - 2.0 * m0;
    const int base = reduced ? d.reduced_offset(e) : 2 * e;
    out.coeffs[base] = cij;
    out.coeffs[base + 1] = cji;
  }
  return out;
}

Vec2 eval_field(const DofVector &c, const Mesh &m, const DofMap &d, const Vec2 &p)
{
  const PointLocator locator(m);
  return eval_field(c, m, d, p, locator);
}

Vec2 eval_field(const DofVector &c, const Mesh &m, const DofMap &d, const Vec2 &p,
                const PointLocator &locator)
{
  const auto hit = locator.locate(p);
  if (hit.triangle < 0)
  {
    throw DomainError("point (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                      ") lies outside the mesh");
  }
  const DofVector full = d.to_full(c);
  return element_value(m, hit.triangle, full.coeffs, hit.lambda);
}

double l2_error(const DofVector &c, const Mesh &m, const DofMap &d, const VectorField &F,
                double t)
{
  const DofVector full = d.to_full(c);
  const auto &rule = triangle_rule_deg5();
  double sum = 0.0;
  for (int tri = 0; tri < m.num_triangles(); tri++)
  {
    const auto g = barycentric_gradients(m, tri);
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const Vec2 diff =
          element_value(m, tri, full.coeffs, rule.bary[q]) - F(g.point(rule.bary[q]), t);
      sum += rule.w[q] * g.area * dot(diff, diff);
    }
  }
  return std::sqrt(sum);
}

}  // namespace yeefem
