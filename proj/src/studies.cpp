// SPDX-License-Identifier: Apache-2.0

#include "yeefem/studies.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "yeefem/error_norm.hpp"
#include "yeefem/errors.hpp"
#include "yeefem/format.hpp"
#include "yeefem/quadrature.hpp"
#include "yeefem/transfer.hpp"

namespace yeefem
{

namespace
{

void check_levels(const std::vector<int> &levels)
{
  if (levels.size() < 3)
  {
    throw ParameterError("a study needs at least three levels");
  }
  for (std::size_t i = 0; i < levels.size(); i++)
  {
    if (levels[i] < 0 || (i > 0 && levels[i] != levels[i - 1] + 1))
    {
      throw ParameterError("study levels must be consecutive and non-negative");
    }
  }
}

std::vector<std::shared_ptr<const Mesh>> mesh_hierarchy(const Scenario &sc,
                                                        const std::vector<int> &levels)
{
  std::vector<std::shared_ptr<const Mesh>> meshes;
  meshes.push_back(std::make_shared<const Mesh>(generate_scatterer_mesh(sc.geometry, levels[0])));
  for (std::size_t i = 1; i < levels.size(); i++)
  {
    meshes.push_back(std::make_shared<const Mesh>(refine_uniform(*meshes.back())));
  }
  return meshes;
}

void fill_eoc(std::vector<ConvergenceRow> &rows)
{
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    rows[i].eoc = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : std::log2(rows[i - 1].error / rows[i].error);
  }
}

[[noreturn]] void rethrow_with_level(const DivergenceError &e, int level)
{
  throw DivergenceError(e.step(), "level " + std::to_string(level) + ": " + e.detail(),
                        e.energy_trace());
}

ErrorLocalization localize(const Mesh &m, const std::vector<double> &a_prev,
                           const std::vector<double> &a_curr, const std::vector<double> &r_prev,
                           const std::vector<double> &r_curr, double tau,
                           const ErrorAccumulator &acc)
{
  ErrorLocalization loc;
  loc.level = m.level();
  const std::size_t n = a_curr.size();
  std::vector<double> dt(n), avg(n);
  for (std::size_t i = 0; i < n; i++)
  {
    const double d0 = a_prev[i] - r_prev[i], d1 = a_curr[i] - r_curr[i];
    dt[i] = (d1 - d0) / tau;
    avg[i] = 0.5 * (d0 + d1);
  }
  const double wdt = 1.0 / (acc.dt_reference() * acc.dt_reference());
  const double wc = 1.0 / (acc.curl_reference() * acc.curl_reference());
  const auto &rule = triangle_rule_deg4();
  loc.contribution.resize(m.num_triangles());
  double worst = -1.0;
  for (int t = 0; t < m.num_triangles(); t++)
  {
    double l2 = 0.0;
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const Vec2 v = element_value(m, t, dt, rule.bary[q]);
      l2 += rule.w[q] * dot(v, v);
    }
    l2 *= m.area(t);
    const double c = element_curl(m, t, avg);
    loc.contribution[t] = wdt * l2 + wc * m.area(t) * c * c;
    if (loc.contribution[t] > worst)
    {
      worst = loc.contribution[t];
      loc.worst_element = t;
    }
  }

  std::vector<char> on_interface(m.num_vertices(), 0);
  for (int e : interface_edges(m))
  {
    on_interface[m.edge(e)[0]] = on_interface[m.edge(e)[1]] = 1;
  }
  for (int v : m.triangle(loc.worst_element))
  {
    loc.worst_touches_interface = loc.worst_touches_interface || on_interface[v];
    loc.worst_touches_boundary = loc.worst_touches_boundary || m.is_boundary_vertex(v);
  }
  return loc;
}

StudyResult nested_study(const Scenario &sc, const StudyOptions &opt)
{
  const auto meshes = mesh_hierarchy(sc, opt.levels);
  const int m = static_cast<int>(meshes.size());
  const double tau0 = opt.cfl * meshes[0]->max_edge_length();

  std::vector<std::unique_ptr<Simulation>> sims;
  for (int j = 0; j < m; j++)
  {
    SimulationOptions so;
    so.method = opt.method;
    so.rhs = opt.rhs;
    so.tau = std::ldexp(tau0, -j);
    so.record_energy = false;
    sims.push_back(std::make_unique<Simulation>(sc, meshes[j], so));
  }
  std::vector<SparseMatrix> transfer;
  std::vector<ErrorAccumulator> acc;
  for (int j = 0; j + 1 < m; j++)
  {
    transfer.push_back(transfer_matrix(*meshes[j], *meshes[j + 1]));
    acc.emplace_back(*meshes[j + 1]);
    const std::vector<double> zero(2 * meshes[j + 1]->num_edges(), 0.0);
    acc[j].sample(zero, zero, sims[j]->tau());
  }

  const long n0 = sims[0]->num_steps();
  const long nf = n0 << (m - 1);
  for (long k = 1; k <= nf; k++)
  {
    for (int j = m - 1; j >= 0; j--)
    {
      const int shift = m - 1 - j;
      if (k % (1L << shift) != 0)
      {
        continue;
      }
      try
      {
        while (sims[j]->step_index() < (k >> shift))
        {
          sims[j]->advance();
        }
      }
      catch (const DivergenceError &e)
      {
        rethrow_with_level(e, opt.levels[j]);
      }
    }
    for (int j = 0; j + 1 < m; j++)
    {
      if (k % (1L << (m - 1 - j)) == 0)
      {
        acc[j].sample(transfer[j] * sims[j]->full_current(), sims[j + 1]->full_current(),
                      sims[j]->tau());
      }
    }
  }

  StudyResult res;
  for (int j = 0; j + 1 < m; j++)
  {
    ConvergenceRow row;
    row.level = opt.levels[j + 1];
    row.h = meshes[j + 1]->max_edge_length();
    row.dofs = sims[j + 1]->num_unknowns();
    row.error = acc[j].value();
    row.tau = sims[j + 1]->tau();
    res.rows.push_back(row);
  }
  fill_eoc(res.rows);
  return res;
}

StudyResult same_mesh_study(const Scenario &sc, const StudyOptions &opt)
{
  const auto meshes = mesh_hierarchy(sc, opt.levels);
  const double tau0 = opt.cfl * meshes[0]->max_edge_length();
  StudyResult res;
  for (std::size_t j = 0; j < meshes.size(); j++)
  {
    SimulationOptions so;
    so.method = opt.method;
    so.rhs = opt.rhs;
    so.tau = std::ldexp(tau0, -static_cast<int>(j));
    so.record_energy = false;
    Simulation a(sc, meshes[j], so);
    so.method = Method::NC1;
    Simulation ref(sc, meshes[j], so);

    ErrorAccumulator acc(*meshes[j]);
    std::vector<double> a_prev, a_curr, r_prev, r_curr;
    a.full_iterates(a_prev, a_curr);
    ref.full_iterates(r_prev, r_curr);
    acc.sample(a_prev, r_prev, a.tau());
    acc.sample(a_curr, r_curr, a.tau());
    try
    {
      while (a.step_index() < a.num_steps())
      {
        a.advance();
        ref.advance();
        a_prev.swap(a_curr);
        r_prev.swap(r_curr);
        a_curr = a.full_current();
        r_curr = ref.full_current();
        acc.sample(a_curr, r_curr, a.tau());
      }
    }
    catch (const DivergenceError &e)
    {
      rethrow_with_level(e, opt.levels[j]);
    }

    ConvergenceRow row;
    row.level = opt.levels[j];
    row.h = meshes[j]->max_edge_length();
    row.dofs = a.num_unknowns();
    row.error = acc.value();
    row.tau = a.tau();
    res.rows.push_back(row);
    if (j + 1 == meshes.size())
    {
      res.localization = localize(*meshes[j], a_prev, a_curr, r_prev, r_curr, a.tau(), acc);
    }
  }
  fill_eoc(res.rows);
  return res;
}

}  // namespace

StudyResult convergence_study(const Scenario &sc, const StudyOptions &opt)
{
  sc.validate();
  check_levels(opt.levels);
  if (!(opt.cfl > 0.0))
  {
    throw ParameterError("cfl factor must be positive");
  }
  StudyReference ref = opt.reference;
  if (ref == StudyReference::Auto)
  {
    ref = opt.method == Method::NC1 ? StudyReference::NestedPair : StudyReference::SameMeshNC1;
  }
  return ref == StudyReference::NestedPair ? nested_study(sc, opt) : same_mesh_study(sc, opt);
}

void write_convergence_csv(std::ostream &os, const std::vector<ConvergenceRow> &rows)
{
  os << "h,dofs,error,eoc\n";
  for (const auto &r : rows)
  {
    os << format_double(r.h) << ',' << r.dofs << ',' << format_double(r.error) << ','
       << (std::isnan(r.eoc) ? std::string() : format_double(r.eoc)) << '\n';
  }
}

std::vector<CflRow> cfl_table(const Scenario &sc, const std::vector<int> &levels,
                              const CflOptions &opt)
{
  sc.validate();
  if (levels.empty())
  {
    throw ParameterError("cfl table needs at least one level");
  }
  std::vector<CflRow> rows;
  for (int level : levels)
  {
    const Mesh m = generate_scatterer_mesh(sc.geometry, level);
    const MaterialField mat = sc.materials(m);
    const DofMap full(m);
    const DofMap reduced(m, classify_reduced_edges(m, mat, ReductionMode::A5));
    const BlockDiagMatrix meps = assemble_lumped_mass(m, full, mat.eps);
    const SparseMatrix msigma = assemble_lumped_mass(m, full, mat.sigma).to_sparse();
    const SparseMatrix k = assemble_stiffness(m, full, mat.nu);
    const ReductionOperators ops = build_projection_matrices(reduced);
    const SparseMatrix mhat = triple_product(ops.Q, msigma, ops.Q);
    const double upper = cfl_bracket(m, mat);

    CflRow row;
    row.level = level;
    row.h = m.max_edge_length();
    row.c_nc1 = estimate_tau_max(meps, msigma, msigma, k, 0, upper, opt).tau_max / row.h;
    row.c_n0plus = estimate_tau_max(meps, msigma, mhat, k, 1, upper, opt).tau_max / row.h;
    rows.push_back(row);
  }
  return rows;
}

void write_cfl_csv(std::ostream &os, const std::vector<CflRow> &rows)
{
  os << "h,C_nc1,C_n0plus\n";
  for (const auto &r : rows)
  {
    os << format_double(r.h) << ',' << format_double(r.c_nc1) << ','
       << format_double(r.c_n0plus) << '\n';
  }
}

}  // namespace yeefem
