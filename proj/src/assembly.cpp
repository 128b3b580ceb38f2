// SPDX-License-Identifier: Apache-2.0

#include "yeefem/assembly.hpp"

#include <algorithm>

#include "yeefem/errors.hpp"
#include "yeefem/quadrature.hpp"

namespace yeefem
{

namespace
{

void check_weight(const Mesh &m, std::span<const double> w, const char *name)
{
  if (static_cast<int>(w.size()) != m.num_triangles())
  {
    throw ParameterError(std::string(name) + " must have one entry per triangle");
  }
}

}  // namespace

std::vector<std::vector<int>> vertex_dof_blocks(const Mesh &m)
{
  std::vector<std::vector<int>> blocks(m.num_vertices());
  for (int e = 0; e < m.num_edges(); e++)
  {
    const auto &[i, j] = m.edge(e);
    blocks[i].push_back(DofMap::full_dof(e, 0));
    blocks[j].push_back(DofMap::full_dof(e, 1));
  }
  for (auto &b : blocks)
  {
    std::sort(b.begin(), b.end());
  }
  return blocks;
}

BlockDiagMatrix assemble_lumped_mass(const Mesh &m, const DofMap &d,
                                     std::span<const double> alpha)
{
  check_weight(m, alpha, "mass weight");
  for (int t = 0; t < m.num_triangles(); t++)
  {
    if (alpha[t] < 0.0)
    {
      throw ParameterError("negative mass weight on triangle " + std::to_string(t));
    }
  }
  BlockDiagMatrix mass(d.n_full(), vertex_dof_blocks(m));
  std::vector<int> position(d.n_full());
  for (int v = 0; v < mass.num_blocks(); v++)
  {
    const auto &dofs = mass.block_dofs(v);
    for (std::size_t k = 0; k < dofs.size(); k++)
    {
      position[dofs[k]] = static_cast<int>(k);
    }
  }

  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto g = barycentric_gradients(m, t);
    const auto ed = element_dofs(m, t);
    const double w = alpha[t] * g.area / 3.0;
    for (int v = 0; v < 3; v++)
    {
      const int gv = m.triangle(t)[v];
      auto block = mass.block(gv);
      const int n = mass.block_size(gv);
      for (int a = 0; a < 6; a++)
      {
        if (ed.basis[a].tail != v)
        {
          continue;
        }
        const Vec2 pa = basis_vertex_value(g, ed.basis[a], v);
        for (int b = 0; b < 6; b++)
        {
          if (ed.basis[b].tail != v)
          {
            continue;
          }
          const Vec2 pb = basis_vertex_value(g, ed.basis[b], v);
          block[position[ed.dof[a]] * n + position[ed.dof[b]]] += w * dot(pa, pb);
        }
      }
    }
  }
  return mass;
}

SparseMatrix assemble_stiffness(const Mesh &m, const DofMap &d, std::span<const double> nu)
{
  check_weight(m, nu, "reluctivity");
  std::vector<Triplet> trip;
  trip.reserve(36 * static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto g = barycentric_gradients(m, t);
    const auto ed = element_dofs(m, t);
    std::array<double, 6> c;
    for (int a = 0; a < 6; a++)
    {
      c[a] = curl_basis(g, ed.basis[a]);
    }
    const double w = nu[t] * g.area;
    for (int a = 0; a < 6; a++)
    {
      for (int b = 0; b < 6; b++)
      {
        trip.push_back({ed.dof[a], ed.dof[b], w * c[a] * c[b]});
      }
    }
  }
  return SparseMatrix::from_triplets(d.n_full(), d.n_full(), std::move(trip), true);
}

SparseMatrix assemble_consistent_mass(const Mesh &m, const DofMap &d,
                                      std::span<const double> alpha)
{
  check_weight(m, alpha, "mass weight");
  std::vector<Triplet> trip;
  trip.reserve(36 * static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto g = barycentric_gradients(m, t);
    const auto ed = element_dofs(m, t);
    for (int a = 0; a < 6; a++)
    {
      const auto &ba = ed.basis[a];
      for (int b = 0; b < 6; b++)
      {
        const auto &bb = ed.basis[b];
        // int_T lambda_p lambda_q = |T| (1 + delta_pq) / 12
        const double ll = g.area * (ba.tail == bb.tail ? 2.0 : 1.0) / 12.0;
        const double v =
            alpha[t] * ba.sign * bb.sign * ll * dot(g.grads[ba.head], g.grads[bb.head]);
        trip.push_back({ed.dof[a], ed.dof[b], v});
      }
    }
  }
  return SparseMatrix::from_triplets(d.n_full(), d.n_full(), std::move(trip), true);
}

DofVector assemble_volume_load(const Mesh &m, const DofMap &d, const VectorField &f, double t)
{
  DofVector out{Space::Full, std::vector<double>(d.n_full(), 0.0)};
  const auto &rule = triangle_rule_deg4();
  for (int tri = 0; tri < m.num_triangles(); tri++)
  {
    const auto g = barycentric_gradients(m, tri);
    const auto ed = element_dofs(m, tri);
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const auto &l = rule.bary[q];
      const Vec2 fq = f(g.point(l), t);
      const double w = rule.w[q] * g.area;
      for (int a = 0; a < 6; a++)
      {
        out.coeffs[ed.dof[a]] += w * dot(fq, eval_basis(g, ed.basis[a], l));
      }
    }
  }
  return out;
}

void assemble_boundary_load_into(const Mesh &m, const ScalarField &g, double t,
                                 std::span<double> out)
{
  const auto &rule = gauss_legendre4();
  for (int e : m.boundary_edges())
  {
    const int t0 = m.edge_triangles(e)[0];
    int sign = 0;
    for (const auto &ref : m.tri_edges()[t0])
    {
      if (ref.edge == e)
      {
        sign = ref.sign;
      }
    }
    const auto &[i, j] = m.edge(e);
    const Vec2 &vi = m.vertex(i);
    const Vec2 dir = m.vertex(j) - vi;
    // Along the edge Phi_ij . tau = lambda_i / |e| and Phi_ji . tau = lambda_j / |e|
    // for tau pointing from v_i to v_j.
    double m0 = 0.0, m1 = 0.0;
    for (int q = 0; q < 4; q++)
    {
      const double s = rule.x[q];
      const double gq = g(vi + s * dir, t);
      m0 += rule.w[q] * (1.0 - s) * gq;
      m1 += rule.w[q] * s * gq;
    }
    out[DofMap::full_dof(e, 0)] = sign * m0;
    out[DofMap::full_dof(e, 1)] = sign * m1;
  }
}

DofVector assemble_boundary_load(const Mesh &m, const DofMap &d, const ScalarField &g, double t)
{
  DofVector out{Space::Full, std::vector<double>(d.n_full(), 0.0)};
  assemble_boundary_load_into(m, g, t, out.coeffs);
  return out;
}

}  // namespace yeefem
