// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_REDUCTION_HPP
#define YEEFEM_REDUCTION_HPP

#include "yeefem/block_diag.hpp"
#include "yeefem/femcore.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

//
// Operators between the full and the reduced coefficient spaces.
//   P (n_full x n_reduced): blocks (1;1) on reduced edges, identity otherwise.
//   R = (P^T P)^{-1} P^T:   rows (1/2, 1/2) on reduced edges.
//   Q = P R:                averaging projector, blocks 1/2 [[1,1],[1,1]].
//
struct ReductionOperators
{
  SparseMatrix P;
  SparseMatrix R;
  SparseMatrix Q;
};

ReductionOperators build_projection_matrices(const DofMap &d);

// Matrices of the reduced leapfrog recursion.
struct ReducedSystem
{
  SparseMatrix Minv;    // R M^{-1} R^T
  SparseMatrix Msigma;  // P^T M_sigma P
  SparseMatrix K;       // P^T K P
};

ReducedSystem reduce_system(const BlockDiagMatrix &minv, const SparseMatrix &msigma,
                            const SparseMatrix &k, const ReductionOperators &ops);

// R M^{-1} load, the right-hand side built from full-space load vectors.
DofVector reduce_rhs_lifted(const DofVector &load, const BlockDiagMatrix &minv,
                            const ReductionOperators &ops);

// Load vector assembled on the reduced space, i.e. tested with Phi_ij + Phi_ji
// on reduced edges. Equals P^T applied to the full-space load.
DofVector restrict_load(const DofVector &load, const ReductionOperators &ops);

// Mtilde^{-1} load_reduced, the right-hand side built on the reduced space.
DofVector reduce_rhs_direct(const DofVector &load_reduced, const SparseMatrix &mtilde_inv);

}  // namespace yeefem

#endif  // YEEFEM_REDUCTION_HPP
