// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_TRANSFER_HPP
#define YEEFEM_TRANSFER_HPP

#include "yeefem/femcore.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

// Exact embedding of the full space on `coarse` into the full space on its
// red refinement `fine`. Throws ContractError if the meshes are not nested.
SparseMatrix transfer_matrix(const Mesh &coarse, const Mesh &fine);

DofVector transfer_coarse_to_fine(const DofVector &c, const Mesh &coarse, const Mesh &fine);

}  // namespace yeefem

#endif  // YEEFEM_TRANSFER_HPP
