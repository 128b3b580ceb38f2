// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_ASSEMBLY_HPP
#define YEEFEM_ASSEMBLY_HPP

#include <span>
#include <vector>

#include "yeefem/block_diag.hpp"
#include "yeefem/femcore.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

// Per-vertex dof lists: the dof of Phi_ij is attached to v_i.
std::vector<std::vector<int>> vertex_dof_blocks(const Mesh &m);

// Mass matrix of the vertex rule with piecewise constant weight alpha >= 0.
// Throws ParameterError for negative weights.
BlockDiagMatrix assemble_lumped_mass(const Mesh &m, const DofMap &d,
                                     std::span<const double> alpha);

// Exactly integrated curl-curl matrix sum_T nu_T |T| curl(Phi_a) curl(Phi_b).
SparseMatrix assemble_stiffness(const Mesh &m, const DofMap &d, std::span<const double> nu);

// Exactly integrated L2 mass matrix with piecewise constant weight.
SparseMatrix assemble_consistent_mass(const Mesh &m, const DofMap &d,
                                      std::span<const double> alpha);

// <f(t), Phi> with the 6-point degree-4 triangle rule.
DofVector assemble_volume_load(const Mesh &m, const DofMap &d, const VectorField &f, double t);

// Boundary pairing int_{dOmega} g (Phi . tau) ds, tau the counterclockwise
// boundary tangent, with 4-point Gauss per boundary edge.
DofVector assemble_boundary_load(const Mesh &m, const DofMap &d, const ScalarField &g,
                                 double t);

// Boundary load into a preallocated full-space vector; only boundary dofs are
// written, all other entries are left untouched.
void assemble_boundary_load_into(const Mesh &m, const ScalarField &g, double t,
                                 std::span<double> out);

}  // namespace yeefem

#endif  // YEEFEM_ASSEMBLY_HPP
