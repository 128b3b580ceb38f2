// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_SIMULATION_HPP
#define YEEFEM_SIMULATION_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yeefem/assembly.hpp"
#include "yeefem/energy.hpp"
#include "yeefem/reduction.hpp"
#include "yeefem/scenario.hpp"
#include "yeefem/timestep.hpp"

namespace yeefem
{

enum class Method
{
  NC1,     // two dofs on every edge
  N0plus,  // one dof where the reduction conditions allow it
  N0,      // one dof on every edge
};

enum class RhsMode
{
  Lifted,  // R Minv (f + g)
  Direct,  // Mtilde_inv P^T (f + g)
};

enum class SchemeKind
{
  Auto,     // full recursion for NC1, reduced recursion otherwise
  Full,     // full recursion with the projected conductivity term
  Reduced,  // recursion on the reduced coefficients
};

Method parse_method(std::string_view s);
RhsMode parse_rhs_mode(std::string_view s);
std::string to_string(Method m);
std::string to_string(RhsMode r);

// Edge classification used by a method: NC1 none, N0plus A5 (lifted) or
// A5star (direct), N0 all edges.
ReductionMode reduction_mode(Method m, RhsMode r);

struct SimulationOptions
{
  Method method = Method::NC1;
  RhsMode rhs = RhsMode::Lifted;
  SchemeKind scheme = SchemeKind::Auto;
  double cfl = 0.28;  // tau = cfl * h unless tau > 0
  double tau = 0.0;
  bool loads = true;
  bool record_energy = true;
  // Replaces the method's edge classification when set.
  std::optional<std::vector<bool>> reduced_edges;
};

//
// One leapfrog simulation of a scenario on a fixed mesh. The state starts at
// E^0 = E^1 = 0 with n = 1.
//
class Simulation
{
public:
  Simulation(const Scenario &sc, std::shared_ptr<const Mesh> mesh,
             const SimulationOptions &opt = {});
  Simulation(const Simulation &) = delete;
  Simulation &operator=(const Simulation &) = delete;

  const Mesh &mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const Scenario &scenario() const { return sc_; }
  const SimulationOptions &options() const { return opt_; }
  const MaterialField &materials() const { return mat_; }
  const DofMap &dofs() const { return dofs_; }
  bool reduced_scheme() const { return reduced_scheme_; }
  // Number of unknowns advanced per step.
  int num_unknowns() const { return static_cast<int>(state_.curr.size()); }

  double tau() const { return state_.tau; }
  long step_index() const { return state_.n; }
  double time() const { return state_.time(); }
  // Steps needed to reach the final time, N = ceil(T / tau).
  long num_steps() const { return num_steps_; }

  const BlockDiagMatrix &mass_eps() const { return meps_; }
  const BlockDiagMatrix &mass_tau_inverse() const { return mtau_inv_; }
  const SparseMatrix &mass_sigma() const { return msigma_; }
  const SparseMatrix &mass_sigma_projected() const { return mhat_sigma_; }
  const SparseMatrix &stiffness() const { return k_; }
  const ReductionOperators &projections() const { return ops_; }
  const ReducedSystem &reduced_system() const { return red_; }

  const TimeStepState &state() const { return state_; }
  // Replaces (E^{n-1}, E^n) by vectors of the scheme's space.
  void set_state(std::vector<double> prev, std::vector<double> curr, long n);

  // Full-space load f^n + g^n at time t.
  void load_at(double t, std::vector<double> &out) const;

  void advance();

  // Current iterates expressed in the full space (P applied for reduced schemes).
  void full_iterates(std::vector<double> &prev, std::vector<double> &curr) const;
  std::vector<double> full_current() const;

  // Energy of the current pair (E^{n-1}, E^n), evaluated on full-space iterates.
  EnergyTerms energy() const;

private:
  Scenario sc_;
  std::shared_ptr<const Mesh> mesh_;
  SimulationOptions opt_;
  MaterialField mat_;
  DofMap dofs_;
  bool reduced_scheme_ = false;
  long num_steps_ = 0;

  BlockDiagMatrix meps_;
  BlockDiagMatrix mtau_inv_;
  SparseMatrix msigma_;
  SparseMatrix mhat_sigma_;
  SparseMatrix k_;
  ReductionOperators ops_;
  ReducedSystem red_;
  std::unique_ptr<EnergyEvaluator> energy_;

  TimeStepState state_;
  StepWorkspace ws_;
  mutable std::vector<double> load_, tmp_, rhs_, e_prev_, e_curr_;
};

struct Snapshot
{
  long step = 0;
  double t = 0.0;
  DofVector field;  // full space
};

struct SolutionRecord
{
  Method method = Method::NC1;
  RhsMode rhs = RhsMode::Lifted;
  int level = 0;
  double tau = 0.0;
  double h = 0.0;
  int dofs = 0;  // unknowns of the advanced scheme
  long steps = 0;
  std::shared_ptr<const Mesh> mesh;
  std::vector<bool> reduced_edges;
  std::vector<Snapshot> snapshots;
  std::vector<EnergyRow> energy;
  // Full-space iterates E^0 .. E^N when requested.
  std::vector<std::vector<double>> trajectory;

  const Snapshot &snapshot_at(double t) const;
};

struct RunOptions
{
  SimulationOptions sim;
  int level = 0;
  bool keep_trajectory = false;
};

// Runs to the final time, recording snapshots (nearest step) and the energy trace.
// A divergence rethrows DivergenceError carrying the energy totals so far.
SolutionRecord run(const Scenario &sc, const RunOptions &opt);
SolutionRecord run(const Scenario &sc, std::shared_ptr<const Mesh> mesh, const RunOptions &opt);

}  // namespace yeefem

#endif  // YEEFEM_SIMULATION_HPP
