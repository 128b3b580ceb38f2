// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "yeefem/config.hpp"
#include "yeefem/errors.hpp"
#include "yeefem/export.hpp"
#include "yeefem/format.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/studies.hpp"

using namespace yeefem;

namespace
{

// "3..6" or "3,4,5".
std::vector<int> parse_levels(const std::string &s)
{
  std::vector<int> out;
  const auto dots = s.find("..");
  try
  {
    if (dots != std::string::npos)
    {
      const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
      for (int l = a; l <= b; l++)
      {
        out.push_back(l);
      }
    }
    else
    {
      std::size_t pos = 0;
      while (pos <= s.size())
      {
        const auto comma = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        if (comma == std::string::npos)
        {
          break;
        }
        pos = comma + 1;
      }
    }
  }
  catch (const std::exception &)
  {
    throw ConfigError("cannot parse levels '" + s + "'");
  }
  if (out.empty())
  {
    throw ConfigError("empty level list '" + s + "'");
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path &p)
{
  if (p.has_parent_path())
  {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream os(p);
  if (!os)
  {
    throw ConfigError("cannot open '" + p.string() + "' for writing");
  }
  return os;
}

struct Overrides
{
  std::string method, rhs, levels, out;
  int level = 0;
  double cfl = 0.0, tau = 0.0, final_time = 0.0;
  CLI::Option *level_opt = nullptr, *cfl_opt = nullptr, *tau_opt = nullptr, *t_opt = nullptr,
              *method_opt = nullptr, *rhs_opt = nullptr, *levels_opt = nullptr,
              *out_opt = nullptr;

  void add_run(CLI::App *app)
  {
    method_opt = app->add_option("--method", method, "nc1, n0plus or n0");
    rhs_opt = app->add_option("--rhs", rhs, "lifted or direct");
    level_opt = app->add_option("--level", level, "refinement level");
    cfl_opt = app->add_option("--cfl", cfl, "time step factor, tau = cfl h");
    tau_opt = app->add_option("--tau", tau, "explicit time step");
    t_opt = app->add_option("--T", final_time, "final time");
    out_opt = app->add_option("--out", out, "output directory");
  }

  void apply(AppConfig &cfg) const
  {
    if (method_opt && method_opt->count())
    {
      cfg.method = parse_method(method);
    }
    if (rhs_opt && rhs_opt->count())
    {
      cfg.rhs = parse_rhs_mode(rhs);
    }
    if (level_opt && level_opt->count())
    {
      cfg.level = level;
    }
    if (cfl_opt && cfl_opt->count())
    {
      cfg.cfl = cfl;
    }
    if (tau_opt && tau_opt->count())
    {
      cfg.tau = tau;
    }
    if (t_opt && t_opt->count())
    {
      cfg.scenario.final_time = final_time;
    }
    if (levels_opt && levels_opt->count())
    {
      cfg.levels = parse_levels(levels);
    }
    if (out_opt && out_opt->count())
    {
      cfg.out = out;
    }
  }
};

// Snapshot times beyond a shortened final time are dropped.
Scenario trimmed(const Scenario &in)
{
  Scenario sc = in;
  std::vector<double> kept;
  for (double t : sc.snapshot_times)
  {
    if (t <= sc.final_time)
    {
      kept.push_back(t);
    }
    else
    {
      std::cerr << "warning: dropping snapshot time " << format_double(t) << " beyond T\n";
    }
  }
  sc.snapshot_times = kept;
  return sc;
}

SolutionRecord run_config(const AppConfig &cfg, const Scenario &sc)
{
  RunOptions ro;
  ro.level = cfg.level;
  ro.sim.method = cfg.method;
  ro.sim.rhs = cfg.rhs;
  ro.sim.cfl = cfg.cfl;
  ro.sim.tau = cfg.tau;
  return run(sc, ro);
}

void print_mesh_info(std::ostream &os, const Mesh &m, const Scenario &sc)
{
  const MaterialField mat = sc.materials(m);
  os << "level " << m.level() << "\n"
     << "vertices " << m.num_vertices() << "\n"
     << "triangles " << m.num_triangles() << "\n"
     << "edges " << m.num_edges() << "\n"
     << "boundary_edges " << m.boundary_edges().size() << "\n"
     << "interface_edges " << interface_edges(m).size() << "\n"
     << "h " << format_double(m.max_edge_length()) << "\n";
  for (auto mode : {ReductionMode::A5, ReductionMode::A5Star, ReductionMode::All})
  {
    const auto red = classify_reduced_edges(m, mat, mode);
    long n = 0;
    for (bool r : red)
    {
      n += r;
    }
    os << "reduced_edges_" << to_string(mode) << " " << n << "\n";
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Edge element leapfrog solver for a lossy scatterer"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file");

  auto *mesh = app.add_subcommand("mesh", "mesh generation and inspection");
  mesh->require_subcommand(1);
  std::string mesh_in, mesh_out;
  int mesh_level = 0, refine_times = 1;
  auto *gen = mesh->add_subcommand("gen", "generate the scatterer mesh");
  gen->add_option("--level", mesh_level, "refinement level");
  gen->add_option("--out", mesh_out, "output file (stdout if omitted)");
  auto *refine = mesh->add_subcommand("refine", "red refinement of a mesh file");
  refine->add_option("--in", mesh_in, "input mesh file")->required();
  refine->add_option("--times", refine_times, "number of refinements");
  refine->add_option("--out", mesh_out, "output file (stdout if omitted)");
  auto *info = mesh->add_subcommand("info", "mesh statistics");
  info->add_option("--in", mesh_in, "mesh file (generated mesh if omitted)");
  info->add_option("--level", mesh_level, "refinement level of the generated mesh");

  auto *runc = app.add_subcommand("run", "run one simulation");
  Overrides run_ov;
  run_ov.add_run(runc);

  auto *conv = app.add_subcommand("convergence", "convergence study over nested levels");
  Overrides conv_ov;
  conv_ov.add_run(conv);
  conv_ov.levels_opt = conv->add_option("--levels", conv_ov.levels, "levels, e.g. 3..6");

  auto *cfl = app.add_subcommand("cfl", "CFL constants per level");
  std::string cfl_levels;
  auto *cfl_levels_opt = cfl->add_option("--levels", cfl_levels, "levels, e.g. 0..4");
  std::string cfl_out;
  cfl->add_option("--out", cfl_out, "output directory");

  auto *exp = app.add_subcommand("export", "run and export one snapshot");
  Overrides exp_ov;
  exp_ov.add_run(exp);
  double export_t = 2.0;
  std::string export_format = "csv", export_file;
  exp->add_option("--t", export_t, "snapshot time");
  exp->add_option("--format", export_format, "csv or vtk");
  exp->add_option("--file", export_file, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try
  {
    AppConfig cfg;
    if (!config_path.empty())
    {
      cfg = load_config(config_path);
    }

    if (mesh->parsed())
    {
      Mesh m;
      if (gen->parsed())
      {
        m = generate_scatterer_mesh(cfg.scenario.geometry, mesh_level);
      }
      else if (refine->parsed())
      {
        m = read_mesh_file(mesh_in);
        for (int i = 0; i < refine_times; i++)
        {
          m = refine_uniform(m);
        }
      }
      else
      {
        m = mesh_in.empty() ? generate_scatterer_mesh(cfg.scenario.geometry, mesh_level)
                            : read_mesh_file(mesh_in);
        print_mesh_info(std::cout, m, cfg.scenario);
        return 0;
      }
      if (mesh_out.empty())
      {
        write_mesh(std::cout, m);
      }
      else
      {
        write_mesh_file(mesh_out, m);
      }
      return 0;
    }

    if (runc->parsed())
    {
      run_ov.apply(cfg);
      const Scenario sc = trimmed(cfg.scenario);
      const SolutionRecord rec = run_config(cfg, sc);
      const std::filesystem::path dir(cfg.out);
      auto energy = open_out(dir / "energy.csv");
      write_energy_csv(energy, rec.energy);
      for (double t : sc.snapshot_times)
      {
        auto os = open_out(dir / ("snapshot_t" + format_double(t) + ".csv"));
        write_field_csv(os, *rec.mesh, rec.snapshot_at(t).field);
      }
      std::cout << "method " << to_string(rec.method) << " rhs " << to_string(rec.rhs)
                << " level " << rec.level << " h " << format_double(rec.h) << " tau "
                << format_double(rec.tau) << " steps " << rec.steps << " dofs " << rec.dofs
                << "\n";
      return 0;
    }

    if (conv->parsed())
    {
      conv_ov.apply(cfg);
      StudyOptions so;
      so.method = cfg.method;
      so.rhs = cfg.rhs;
      so.levels = cfg.levels;
      so.cfl = cfg.cfl;
      const StudyResult res = convergence_study(trimmed(cfg.scenario), so);
      if (conv_ov.out_opt->count() || !config_path.empty())
      {
        auto os = open_out(std::filesystem::path(cfg.out) / "convergence.csv");
        write_convergence_csv(os, res.rows);
      }
      write_convergence_csv(std::cout, res.rows);
      if (res.localization.worst_element >= 0)
      {
        std::cerr << "worst element " << res.localization.worst_element
                  << (res.localization.worst_touches_interface ? " touches the interface" : "")
                  << (res.localization.worst_touches_boundary ? " touches the boundary" : "")
                  << "\n";
      }
      return 0;
    }

    if (cfl->parsed())
    {
      const std::vector<int> levels =
          cfl_levels_opt->count() ? parse_levels(cfl_levels)
                                  : (cfg.levels.empty() ? std::vector<int>{0, 1, 2} : cfg.levels);
      const auto rows = cfl_table(cfg.scenario, levels);
      if (!cfl_out.empty())
      {
        auto os = open_out(std::filesystem::path(cfl_out) / "cfl.csv");
        write_cfl_csv(os, rows);
      }
      write_cfl_csv(std::cout, rows);
      return 0;
    }

    if (exp->parsed())
    {
      exp_ov.apply(cfg);
      const ExportFormat fmt = parse_export_format(export_format);
      Scenario sc = trimmed(cfg.scenario);
      sc.snapshot_times.push_back(export_t);
      const SolutionRecord rec = run_config(cfg, sc);
      if (export_file.empty())
      {
        export_snapshot(std::cout, rec, export_t, fmt);
      }
      else
      {
        export_snapshot_file(export_file, rec, export_t, fmt);
      }
      return 0;
    }
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
