// SPDX-License-Identifier: Apache-2.0

#include "yeefem/simulation.hpp"

#include <cmath>
#include <sstream>

#include "yeefem/errors.hpp"

namespace yeefem
{

Method parse_method(std::string_view s)
{
  if (s == "nc1" || s == "NC1")
  {
    return Method::NC1;
  }
  if (s == "n0plus" || s == "N0plus")
  {
    return Method::N0plus;
  }
  if (s == "n0" || s == "N0")
  {
    return Method::N0;
  }
  throw ConfigError("unknown method '" + std::string(s) + "'");
}

RhsMode parse_rhs_mode(std::string_view s)
{
  if (s == "lifted")
  {
    return RhsMode::Lifted;
  }
  if (s == "direct")
  {
    return RhsMode::Direct;
  }
  throw ConfigError("unknown rhs mode '" + std::string(s) + "'");
}

std::string to_string(Method m)
{
  switch (m)
  {
    case Method::NC1:
      return "nc1";
    case Method::N0plus:
      return "n0plus";
    case Method::N0:
      return "n0";
  }
  return "?";
}

std::string to_string(RhsMode r)
{
  return r == RhsMode::Lifted ? "lifted" : "direct";
}

ReductionMode reduction_mode(Method m, RhsMode r)
{
  switch (m)
  {
    case Method::NC1:
      return ReductionMode::None;
    case Method::N0plus:
      return r == RhsMode::Lifted ? ReductionMode::A5 : ReductionMode::A5Star;
    case Method::N0:
      return ReductionMode::All;
  }
  return ReductionMode::None;
}

Simulation::Simulation(const Scenario &sc, std::shared_ptr<const Mesh> mesh,
                       const SimulationOptions &opt)
  : sc_(sc), mesh_(std::move(mesh)), opt_(opt)
{
  if (!mesh_)
  {
    throw ContractError("simulation needs a mesh");
  }
  sc_.validate();
  const Mesh &m = *mesh_;
  mat_ = sc_.materials(m);

  std::vector<bool> reduced = opt_.reduced_edges
                                  ? *opt_.reduced_edges
                                  : classify_reduced_edges(m, mat_, reduction_mode(opt_.method, opt_.rhs));
  if (static_cast<int>(reduced.size()) != m.num_edges())
  {
    throw ContractError("edge classification does not match the mesh");
  }
  dofs_ = DofMap(m, std::move(reduced));

  double tau = opt_.tau;
  if (!(tau > 0.0))
  {
    if (!(opt_.cfl > 0.0))
    {
      throw ParameterError("either tau or a positive cfl factor is required");
    }
    tau = opt_.cfl * m.max_edge_length();
  }
  num_steps_ = static_cast<long>(std::ceil(sc_.final_time / tau - 1e-9));

  switch (opt_.scheme)
  {
    case SchemeKind::Auto:
      reduced_scheme_ = opt_.method != Method::NC1;
      break;
    case SchemeKind::Full:
      reduced_scheme_ = false;
      break;
    case SchemeKind::Reduced:
      reduced_scheme_ = true;
      break;
  }

  const int nt = m.num_triangles();
  std::vector<double> eps_tau(nt);
  for (int t = 0; t < nt; t++)
  {
    eps_tau[t] = mat_.eps[t] + 0.5 * tau * mat_.sigma[t];
  }
  meps_ = assemble_lumped_mass(m, dofs_, mat_.eps);
  mtau_inv_ = invert_block_mass(assemble_lumped_mass(m, dofs_, eps_tau));
  msigma_ = assemble_lumped_mass(m, dofs_, mat_.sigma).to_sparse();
  k_ = assemble_stiffness(m, dofs_, mat_.nu);
  ops_ = build_projection_matrices(dofs_);
  const bool any_reduced = dofs_.num_reduced_edges() > 0;
  mhat_sigma_ = any_reduced ? triple_product(ops_.Q, msigma_, ops_.Q) : msigma_;
  mhat_sigma_.set_symmetric(true);
  if (reduced_scheme_)
  {
    red_ = reduce_system(mtau_inv_, msigma_, k_, ops_);
  }
  energy_ = std::make_unique<EnergyEvaluator>(meps_, msigma_, k_, any_reduced ? &ops_.Q : nullptr);

  const int n = reduced_scheme_ ? dofs_.n_reduced() : dofs_.n_full();
  state_ = zero_state(reduced_scheme_ ? Space::Reduced : Space::Full, n, tau);
  load_.assign(dofs_.n_full(), 0.0);
}

void Simulation::set_state(std::vector<double> prev, std::vector<double> curr, long n)
{
  if (prev.size() != state_.curr.size() || curr.size() != state_.curr.size())
  {
    throw ContractError("state vectors do not match the scheme's space");
  }
  state_.prev = std::move(prev);
  state_.curr = std::move(curr);
  state_.n = n;
}

void Simulation::load_at(double t, std::vector<double> &out) const
{
  out.assign(dofs_.n_full(), 0.0);
  if (!opt_.loads)
  {
    return;
  }
  if (sc_.source)
  {
    out = assemble_volume_load(*mesh_, dofs_, sc_.source, t).coeffs;
  }
  const Scenario &sc = sc_;
  std::vector<double> g(dofs_.n_full(), 0.0);
  assemble_boundary_load_into(
      *mesh_, [&sc](const Vec2 &x, double s) { return boundary_trace_g(sc, x, s); }, t, g);
  for (std::size_t i = 0; i < out.size(); i++)
  {
    out[i] += g[i];
  }
}

void Simulation::advance()
{
  load_at(state_.time(), load_);
  if (!reduced_scheme_)
  {
    step_full(state_, mtau_inv_, mhat_sigma_, k_, load_, ws_);
    return;
  }
  tmp_.resize(dofs_.n_full());
  if (opt_.rhs == RhsMode::Lifted)
  {
    mtau_inv_.multiply(load_, tmp_);
    rhs_ = ops_.R * tmp_;
  }
  else
  {
    rhs_ = red_.Minv * restrict_load({Space::Full, load_}, ops_).coeffs;
  }
  step_reduced(state_, red_.Minv, red_.Msigma, red_.K, rhs_, ws_);
}

void Simulation::full_iterates(std::vector<double> &prev, std::vector<double> &curr) const
{
  if (!reduced_scheme_)
  {
    prev = state_.prev;
    curr = state_.curr;
    return;
  }
  prev.resize(dofs_.n_full());
  curr.resize(dofs_.n_full());
  ops_.P.multiply(state_.prev, prev);
  ops_.P.multiply(state_.curr, curr);
}

std::vector<double> Simulation::full_current() const
{
  if (!reduced_scheme_)
  {
    return state_.curr;
  }
  return ops_.P * state_.curr;
}

EnergyTerms Simulation::energy() const
{
  full_iterates(e_prev_, e_curr_);
  return (*energy_)(e_prev_, e_curr_, state_.tau);
}

const Snapshot &SolutionRecord::snapshot_at(double t) const
{
  for (const auto &s : snapshots)
  {
    if (std::abs(s.t - t) <= 0.5 * tau)
    {
      return s;
    }
  }
  std::ostringstream os;
  os << "no snapshot at t = " << t << "; available:";
  for (const auto &s : snapshots)
  {
    os << ' ' << s.t;
  }
  throw LookupError(os.str());
}

SolutionRecord run(const Scenario &sc, const RunOptions &opt)
{
  return run(sc, std::make_shared<const Mesh>(generate_scatterer_mesh(sc.geometry, opt.level)),
             opt);
}

SolutionRecord run(const Scenario &sc, std::shared_ptr<const Mesh> mesh, const RunOptions &opt)
{
  Simulation sim(sc, std::move(mesh), opt.sim);
  SolutionRecord rec;
  rec.method = opt.sim.method;
  rec.rhs = opt.sim.rhs;
  rec.level = sim.mesh().level();
  rec.tau = sim.tau();
  rec.h = sim.mesh().max_edge_length();
  rec.dofs = sim.num_unknowns();
  rec.steps = sim.num_steps();
  rec.mesh = sim.mesh_ptr();
  rec.reduced_edges = sim.dofs().reduced_flags();

  std::vector<long> snap_steps;
  for (double t : sc.snapshot_times)
  {
    snap_steps.push_back(std::lround(t / sim.tau()));
  }
  auto record = [&](long n, const std::vector<double> &field) {
    for (std::size_t i = 0; i < snap_steps.size(); i++)
    {
      if (snap_steps[i] == n)
      {
        rec.snapshots.push_back({n, n * sim.tau(), {Space::Full, field}});
      }
    }
    if (opt.keep_trajectory)
    {
      rec.trajectory.push_back(field);
    }
  };
  auto log_energy = [&]() {
    if (opt.sim.record_energy)
    {
      const long n = sim.step_index() - 1;
      rec.energy.push_back({n, n * sim.tau(), sim.energy()});
    }
  };

  std::vector<double> prev, curr;
  sim.full_iterates(prev, curr);
  record(0, prev);
  record(1, curr);
  log_energy();
  try
  {
    while (sim.step_index() < sim.num_steps())
    {
      sim.advance();
      record(sim.step_index(), sim.full_current());
      log_energy();
    }
  }
  catch (const DivergenceError &e)
  {
    std::vector<double> totals;
    for (const auto &r : rec.energy)
    {
      totals.push_back(r.terms.total);
    }
    throw DivergenceError(e.step(), e.detail(), std::move(totals));
  }
  return rec;
}

}  // namespace yeefem
