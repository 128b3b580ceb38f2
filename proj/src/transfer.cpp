// SPDX-License-Identifier: Apache-2.0

#include "yeefem/transfer.hpp"

#include "yeefem/errors.hpp"

namespace yeefem
{

namespace
{

void check_nested(const Mesh &coarse, const Mesh &fine)
{
  const int nv = coarse.num_vertices();
  if (fine.num_vertices() != nv + coarse.num_edges() ||
      fine.num_triangles() != 4 * coarse.num_triangles() ||
      static_cast<int>(fine.parents().size()) != fine.num_triangles())
  {
    throw ContractError("fine mesh is not the red refinement of the coarse mesh");
  }
  for (int v = 0; v < nv; v++)
  {
    if (fine.vertex(v) != coarse.vertex(v))
    {
      throw ContractError("fine mesh does not keep the coarse vertices");
    }
  }
  for (int e = 0; e < coarse.num_edges(); e++)
  {
    const auto &[i, j] = coarse.edge(e);
    if (norm(fine.vertex(nv + e) - 0.5 * (coarse.vertex(i) + coarse.vertex(j))) >
        1e-12 * (1.0 + norm(fine.vertex(nv + e))))
    {
      throw ContractError("fine mesh midpoints do not match the coarse edges");
    }
  }
}

// Barycentric coordinates of a fine vertex inside the parent triangle.
std::array<double, 3> parent_bary(const Mesh &coarse, int parent, int fine_vertex)
{
  const int nv = coarse.num_vertices();
  const auto &tri = coarse.triangle(parent);
  std::array<double, 3> l = {0.0, 0.0, 0.0};
  if (fine_vertex < nv)
  {
    for (int k = 0; k < 3; k++)
    {
      if (tri[k] == fine_vertex)
      {
        l[k] = 1.0;
        return l;
      }
    }
  }
  else
  {
    const auto &te = coarse.tri_edges()[parent];
    for (int k = 0; k < 3; k++)
    {
      if (te[k].edge == fine_vertex - nv)
      {
        l[(k + 1) % 3] = 0.5;
        l[(k + 2) % 3] = 0.5;
        return l;
      }
    }
  }
  throw ContractError("fine vertex does not belong to its parent triangle");
}

}  // namespace

SparseMatrix transfer_matrix(const Mesh &coarse, const Mesh &fine)
{
  check_nested(coarse, fine);
  std::vector<Triplet> trip;
  trip.reserve(24 * static_cast<std::size_t>(fine.num_edges()));
  for (int fe = 0; fe < fine.num_edges(); fe++)
  {
    const auto &[a, b] = fine.edge(fe);
    const int parent = fine.parents()[fine.edge_triangles(fe)[0]];
    const auto g = barycentric_gradients(coarse, parent);
    const auto ed = element_dofs(coarse, parent);
    const Vec2 dir = fine.vertex(b) - fine.vertex(a);
    const std::array<std::array<double, 3>, 2> ends = {parent_bary(coarse, parent, a),
                                                       parent_bary(coarse, parent, b)};
    // Fine dof 2fe is the tangential value at v_a, dof 2fe+1 the one at v_b.
    for (int w = 0; w < 2; w++)
    {
      for (int k = 0; k < 6; k++)
      {
        const double v = dot(eval_basis(g, ed.basis[k], ends[w]), dir);
        if (v != 0.0)
        {
          trip.push_back({DofMap::full_dof(fe, w), ed.dof[k], v});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(2 * fine.num_edges(), 2 * coarse.num_edges(),
                                     std::move(trip));
}

DofVector transfer_coarse_to_fine(const DofVector &c, const Mesh &coarse, const Mesh &fine)
{
  if (c.space != Space::Full || static_cast<int>(c.size()) != 2 * coarse.num_edges())
  {
    throw ContractError("transfer expects a full-space vector on the coarse mesh");
  }
  return {Space::Full, transfer_matrix(coarse, fine) * c.coeffs};
}

}  // namespace yeefem
