// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_STUDIES_HPP
#define YEEFEM_STUDIES_HPP

#include <iosfwd>
#include <vector>

#include "yeefem/cfl.hpp"
#include "yeefem/scenario.hpp"
#include "yeefem/simulation.hpp"

namespace yeefem
{

enum class StudyReference
{
  Auto,         // nested pairs for NC1, same-mesh NC1 otherwise
  NestedPair,   // |||E_h - E_2h|||, the coarse run is the reference
  SameMeshNC1,  // |||E_h - E_h^NC1|||
};

struct ConvergenceRow
{
  int level = 0;
  double h = 0.0;
  int dofs = 0;
  double error = 0.0;
  double eoc = 0.0;  // NaN on the first row
  double tau = 0.0;
};

struct StudyOptions
{
  Method method = Method::NC1;
  RhsMode rhs = RhsMode::Lifted;
  std::vector<int> levels;
  double cfl = 0.28;
  StudyReference reference = StudyReference::Auto;
};

// Per-element split of the final-pair error between a run and its reference.
struct ErrorLocalization
{
  int level = 0;
  // Local |d(A - Ref)|^2 / max_n |d Ref|^2 + |curl avg(A - Ref)|^2 / max_n |curl avg Ref|^2.
  std::vector<double> contribution;
  int worst_element = -1;
  bool worst_touches_interface = false;
  bool worst_touches_boundary = false;
};

struct StudyResult
{
  std::vector<ConvergenceRow> rows;
  // Filled for same-mesh comparisons, on the finest level.
  ErrorLocalization localization;
};

// Runs all levels in lockstep with tau_L = cfl h_{L0} 2^{L0 - L}, where L0 is
// the first level, so that every finer run has exactly twice the steps of the
// next coarser one. Nested studies emit one row per level after the first.
StudyResult convergence_study(const Scenario &sc, const StudyOptions &opt);

// Header `h,dofs,error,eoc`.
void write_convergence_csv(std::ostream &os, const std::vector<ConvergenceRow> &rows);

struct CflRow
{
  int level = 0;
  double h = 0.0;
  double c_nc1 = 0.0;
  double c_n0plus = 0.0;
};

// tau_max / h for NC1 (gamma = 0) and N0plus with A5 edges (gamma = 1).
std::vector<CflRow> cfl_table(const Scenario &sc, const std::vector<int> &levels,
                              const CflOptions &opt = {});

// Header `h,C_nc1,C_n0plus`.
void write_cfl_csv(std::ostream &os, const std::vector<CflRow> &rows);

}  // namespace yeefem

#endif  // YEEFEM_STUDIES_HPP
