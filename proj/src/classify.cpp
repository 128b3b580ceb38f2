// SPDX-License-Identifier: Apache-2.0

#include "yeefem/errors.hpp"
#include "yeefem/mesh.hpp"

namespace yeefem
{

std::vector<bool> classify_reduced_edges(const Mesh &m, const MaterialField &mat,
                                         ReductionMode mode, JumpPredicate f_jumps)
{
  const int ne = m.num_edges();
  std::vector<bool> reduced(ne, false);
  if (mode == ReductionMode::None)
  {
    return reduced;
  }
  if (mode == ReductionMode::All)
  {
    reduced.assign(ne, true);
    return reduced;
  }
  mat.validate(m);
  for (int e = 0; e < ne; e++)
  {
    const auto &[t0, t1] = m.edge_triangles(e);
    if (t1 < 0)
    {
      // sigma must vanish on reduced boundary edges; A5* also needs g = 0.
      reduced[e] = mode == ReductionMode::A5 && mat.sigma[t0] == 0.0;
      continue;
    }
    bool keep = mat.sigma[t0] != mat.sigma[t1];
    if (mode == ReductionMode::A5Star && f_jumps != nullptr)
    {
      keep = keep || f_jumps(m, e);
    }
    reduced[e] = !keep;
  }
  return reduced;
}

std::vector<int> interface_edges(const Mesh &m)
{
  std::vector<int> out;
  for (int e = 0; e < m.num_edges(); e++)
  {
    const auto &[t0, t1] = m.edge_triangles(e);
    if (t1 >= 0 && m.tri_label()[t0] != m.tri_label()[t1])
    {
      out.push_back(e);
    }
  }
  return out;
}

ReductionMode parse_reduction_mode(std::string_view s)
{
  if (s == "none")
  {
    return ReductionMode::None;
  }
  if (s == "A5" || s == "a5")
  {
    return ReductionMode::A5;
  }
  if (s == "A5star" || s == "a5star")
  {
    return ReductionMode::A5Star;
  }
  if (s == "all")
  {
    return ReductionMode::All;
  }
  throw ConfigError("unknown reduction mode '" + std::string(s) + "'");
}

std::string to_string(ReductionMode mode)
{
  switch (mode)
  {
    case ReductionMode::None:
      return "none";
    case ReductionMode::A5:
      return "A5";
    case ReductionMode::A5Star:
      return "A5star";
    case ReductionMode::All:
      return "all";
  }
  return "?";
}

}  // namespace yeefem
