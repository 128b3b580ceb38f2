// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "yeefem/assembly.hpp"
#include "yeefem/cfl.hpp"
#include "yeefem/energy.hpp"
#include "yeefem/errors.hpp"
#include "yeefem/reduction.hpp"
#include "yeefem/simulation.hpp"
#include "yeefem/studies.hpp"

using namespace yeefem;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double max_diff(const std::vector<double> &a, const std::vector<double> &b)
{
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); i++)
  {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

double tau_max_of(const Simulation &sim)
{
  const int gamma = sim.dofs().num_reduced_edges() > 0 ? 1 : 0;
  return estimate_tau_max(sim.mass_eps(), sim.mass_sigma(), sim.mass_sigma_projected(),
                          sim.stiffness(), gamma, cfl_bracket(sim.mesh(), sim.materials()))
      .tau_max;
}

Outcome quadrature_exactness()
{
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.5, 2.0);
  double worst = 0.0;
  for (int it = 0; it < 1000; it++)
  {
    const auto v = oracle::random_triangle(rng);
    const Mesh m({v[0], v[1], v[2]}, {{0, 1, 2}}, {0});
    const DofMap d(m);
    const std::vector<double> alpha{pos(rng)};
    const Vec2 c{u(rng), u(rng)};
    const VectorField constant = [c](const Vec2 &, double) { return c; };
    const DofVector a = interpolate(constant, 0.0, m, d, InterpolationMode::Full);
    const DofVector b{Space::Full, oracle::random_vector(rng, d.n_full())};
    const double exact = oracle::integrate(v, [&](const Vec2 &x) {
      return alpha[0] * dot(oracle::field(m, 0, a.coeffs, x), oracle::field(m, 0, b.coeffs, x));
    });
    const double scale = oracle::integrate(v, [&](const Vec2 &x) {
      return std::abs(alpha[0] * dot(oracle::field(m, 0, a.coeffs, x),
                                     oracle::field(m, 0, b.coeffs, x)));
    });
    worst = std::max(worst, std::abs(vertex_quadrature(m, d, alpha, a, b) - exact) / scale);
  }
  return {worst <= 1e-12, "max rel err " + fmt(worst) + " on 1000 random triangles"};
}

Outcome curl_commuting()
{
  const ScattererGeometry g;
  const Mesh m = generate_scatterer_mesh(g, 3);
  const DofMap d(m, std::vector<bool>(m.num_edges(), true));
  const auto ops = build_projection_matrices(d);
  std::vector<std::array<double, 3>> local(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); t++)
  {
    for (int k = 0; k < 3; k++)
    {
      local[t][k] = std::abs(oracle::basis_curl(m, t, m.tri_edges()[t][k].edge));
    }
  }
  std::mt19937_64 rng(20240602);
  double worst = 0.0;
  for (int it = 0; it < 100; it++)
  {
    const auto v = oracle::random_vector(rng, d.n_full());
    const auto c0 = element_curls(m, v), c1 = element_curls(m, ops.Q * v);
    for (int t = 0; t < m.num_triangles(); t++)
    {
      // Relative to the sum of the magnitudes of the element's contributions.
      double scale = 0.0;
      for (int k = 0; k < 3; k++)
      {
        const int e = m.tri_edges()[t][k].edge;
        scale += (std::abs(v[2 * e]) + std::abs(v[2 * e + 1])) * local[t][k];
      }
      worst = std::max(worst, std::abs(c0[t] - c1[t]) / scale);
    }
  }
  return {worst <= 1e-12, "max curl defect " + fmt(worst) + " over 100 vectors, " +
                              std::to_string(m.num_triangles()) + " elements"};
}

Outcome reduction_equivalence()
{
  Scenario sc;
  const auto mesh = std::make_shared<const Mesh>(generate_scatterer_mesh(sc.geometry, 2));
  SimulationOptions opt;
  opt.method = Method::N0plus;
  opt.rhs = RhsMode::Lifted;
  opt.record_energy = false;
  opt.scheme = SchemeKind::Full;
  Simulation full(sc, mesh, opt);
  opt.scheme = SchemeKind::Reduced;
  Simulation red(sc, mesh, opt);
  double worst = 0.0, scale = 0.0;
  long steps = 0;
  while (full.step_index() < full.num_steps())
  {
    full.advance();
    red.advance();
    steps++;
    const auto rf = full.projections().R * full.state().curr;
    worst = std::max(worst, max_diff(rf, red.state().curr));
    scale = std::max(scale, oracle::max_abs(rf));
  }
  return {steps >= 100 && worst <= 1e-10,
          "max |R E - E~| " + fmt(worst) + " over " + std::to_string(steps) +
              " steps (field max " + fmt(scale) + ")"};
}

Outcome energy_behaviour()
{
  std::ostringstream detail;
  bool pass = true;

  Scenario lossless;
  lossless.geometry.inside = {1.0, 0.0, 1.0};
  const auto mesh = std::make_shared<const Mesh>(generate_scatterer_mesh(lossless.geometry, 1));

  // (a) sigma = 0, no loads, 0.9 tau_max.
  {
    SimulationOptions probe;
    probe.loads = false;
    const double tau_max = tau_max_of(Simulation(lossless, mesh, probe));
    probe.tau = 0.9 * tau_max;
    Simulation sim(lossless, mesh, probe);
    std::mt19937_64 rng(20240603);
    auto v = oracle::random_vector(rng, sim.num_unknowns());
    sim.set_state(std::vector<double>(v.size(), 0.0), v, 1);
    const double e0 = sim.energy().total;
    double drift = 0.0;
    for (int n = 0; n < 1000; n++)
    {
      sim.advance();
      drift = std::max(drift, std::abs(sim.energy().total - e0) / e0);
    }
    const bool ok = drift <= 1e-10;
    pass = pass && ok;
    detail << "4a " << (ok ? "ok" : "fail") << " rel drift " << fmt(drift);
  }

  // (b) sigma = 100 inside, loads switched off once the pulse is in the domain.
  {
    Scenario sc;
    const auto m = std::make_shared<const Mesh>(generate_scatterer_mesh(sc.geometry, 1));
    double worst = 0.0, decay = 1.0;
    for (Method method : {Method::NC1, Method::N0plus, Method::N0})
    {
      SimulationOptions opt;
      opt.method = method;
      opt.scheme = SchemeKind::Full;
      opt.tau = 0.9 * tau_max_of(Simulation(sc, m, opt));
      Simulation driven(sc, m, opt);
      while (driven.time() < 1.5)
      {
        driven.advance();
      }
      opt.loads = false;
      Simulation free(sc, m, opt);
      free.set_state(driven.state().prev, driven.state().curr, driven.step_index());
      double e = free.energy().total;
      const double e0 = e;
      for (int n = 0; n < 1000; n++)
      {
        free.advance();
        const double next = free.energy().total;
        worst = std::max(worst, (next - e) / std::abs(e));
        e = next;
      }
      decay = std::min(decay, e0 > 0.0 ? 1.0 - e / e0 : 0.0);
    }
    const bool ok = worst <= 1e-11 && decay > 0.0;
    pass = pass && ok;
    detail << "; 4b " << (ok ? "ok" : "fail") << " max rel rise " << fmt(worst)
           << ", min energy loss " << fmt(decay);
  }

  // (c) 1.1 tau_max must be detected as divergent.
  {
    SimulationOptions probe;
    probe.loads = false;
    const double tau_max = tau_max_of(Simulation(lossless, mesh, probe));
    auto growth = [&](double factor) {
      SimulationOptions opt = probe;
      opt.tau = factor * tau_max;
      Simulation sim(lossless, mesh, opt);
      std::mt19937_64 rng(20240604);
      auto v = oracle::random_vector(rng, sim.num_unknowns());
      sim.set_state(v, v, 1);
      const auto e0 = sim.energy();
      const double n0 = e0.kinetic + e0.curl;
      double worst = 1.0;
      try
      {
        for (int n = 0; n < 2000; n++)
        {
          sim.advance();
          const auto e = sim.energy();
          worst = std::max(worst, (e.kinetic + e.curl) / n0);
          if (!(worst < 1e3))
          {
            break;
          }
        }
      }
      catch (const DivergenceError &)
      {
        return std::numeric_limits<double>::infinity();
      }
      return worst;
    };
    const double g11 = growth(1.1), g15 = growth(1.5);
    const bool ok = !(g11 < 1e3);
    pass = pass && ok;
    detail << "; 4c " << (ok ? "ok" : "fail") << " growth " << fmt(g11)
           << " at 1.1 tau_max (" << fmt(g15) << " at 1.5 tau_max)";
  }
  return {pass, detail.str()};
}

struct Studies
{
  StudyResult nc1, n0plus, n0plus_direct, n0;
};

Studies run_studies()
{
  Scenario sc;
  Studies s;
  StudyOptions opt;
  opt.levels = {0, 1, 2, 3};
  s.nc1 = convergence_study(sc, opt);
  opt.method = Method::N0plus;
  s.n0plus = convergence_study(sc, opt);
  opt.rhs = RhsMode::Direct;
  s.n0plus_direct = convergence_study(sc, opt);
  opt.method = Method::N0;
  opt.rhs = RhsMode::Lifted;
  opt.levels = {1, 2, 3, 4};
  s.n0 = convergence_study(sc, opt);
  return s;
}

std::string eocs(const StudyResult &r)
{
  std::string s;
  for (const auto &row : r.rows)
  {
    if (!std::isnan(row.eoc))
    {
      s += (s.empty() ? "" : "/") + fmt(row.eoc);
    }
  }
  return s;
}

Outcome convergence_rates(const Studies &s)
{
  auto last = [](const StudyResult &r) { return r.rows.back().eoc; };
  auto in_band = [](double e) { return e >= 0.8 && e <= 1.2; };
  const auto &n0 = s.n0.rows;
  const double e1 = n0[n0.size() - 2].eoc, e2 = n0.back().eoc;
  const bool ok_nc1 = in_band(last(s.nc1));
  const bool ok_plus = in_band(last(s.n0plus));
  const bool ok_direct = in_band(last(s.n0plus_direct));
  const bool ok_n0 = e2 <= 0.85 && e2 < e1;
  return {ok_nc1 && ok_plus && ok_direct && ok_n0,
          "NC1 eoc " + eocs(s.nc1) + "; N0plus lifted " + eocs(s.n0plus) + "; N0plus direct " +
              eocs(s.n0plus_direct) + "; N0 " + eocs(s.n0) + " (finest dofs " +
              std::to_string(n0.back().dofs) + ")"};
}

Outcome cfl_constants()
{
  Scenario sc;
  const std::vector<int> levels{0, 1, 2, 3, 4};
  const auto rows = cfl_table(sc, levels);
  const auto &fine = rows.back();
  double top = 0.0;
  std::string cols;
  for (const auto &r : rows)
  {
    top = std::max({top, r.c_nc1, r.c_n0plus});
    cols += (cols.empty() ? "" : " ") + fmt(r.c_nc1) + "/" + fmt(r.c_n0plus);
  }
  const double agree = std::abs(fine.c_nc1 - fine.c_n0plus) / fine.c_nc1;
  const bool bounded = top <= 1.5 * fine.c_nc1;

  sc.geometry.inside = {1.0, 0.0, 1.0};
  double lossless = 0.0;
  for (const auto &r : cfl_table(sc, levels))
  {
    lossless = std::max(lossless, std::abs(r.c_nc1 - r.c_n0plus) / r.c_nc1);
  }
  return {bounded && agree < 1e-3 && lossless <= 1e-12,
          "C_nc1/C_n0plus " + cols + "; finest rel gap " + fmt(agree) +
              "; sigma=0 max rel gap " + fmt(lossless)};
}

Outcome cfl_estimator()
{
  std::mt19937_64 rng(20240605);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  double worst = 0.0;
  int cases = 0, largest = 0;
  for (int n : {3, 4, 5})
  {
    const Mesh base = oracle::unit_square(n);
    auto v = base.vertices();
    for (auto &p : v)
    {
      const bool edge = p[0] == 0.0 || p[0] == 1.0 || p[1] == 0.0 || p[1] == 1.0;
      if (!edge)
      {
        p[0] += jitter(rng) / n;
        p[1] += jitter(rng) / n;
      }
    }
    std::vector<int> labels(base.num_triangles(), 0);
    const Mesh shape(v, base.triangles(), labels);
    for (int t = 0; t < shape.num_triangles(); t++)
    {
      const Vec2 c = shape.centroid(t);
      labels[t] = std::hypot(c[0] - 0.5, c[1] - 0.5) < 0.3 ? 1 : 0;
    }
    const Mesh m(v, base.triangles(), labels);
    for (double sigma : {0.0, 1.0, 100.0})
    {
      const MaterialField mat = MaterialField::from_labels(m, {1.0, 0.0, 1.0}, {2.0, sigma, 0.5});
      for (auto mode : {ReductionMode::None, ReductionMode::A5, ReductionMode::All})
      {
        const DofMap d(m, classify_reduced_edges(m, mat, mode));
        const auto ops = build_projection_matrices(d);
        const auto meps = assemble_lumped_mass(m, d, mat.eps);
        const auto ms = assemble_lumped_mass(m, d, mat.sigma).to_sparse();
        const auto mhat = triple_product(ops.Q, ms, ops.Q);
        const auto k = assemble_stiffness(m, d, mat.nu);
        for (int gamma : {0, 1})
        {
          const double got =
              estimate_tau_max(meps, ms, mhat, k, gamma, cfl_bracket(m, mat)).tau_max;
          const double expect =
              oracle::tau_max(oracle::dense(meps), oracle::dense(mhat) - oracle::dense(ms),
                              oracle::dense(k), gamma);
          worst = std::max(worst, std::abs(got - expect) / expect);
          cases++;
          largest = std::max(largest, d.n_full());
        }
      }
    }
  }
  return {worst <= 1e-5, "max rel err " + fmt(worst) + " over " + std::to_string(cases) +
                             " cases, up to " + std::to_string(largest) + " dofs"};
}

Outcome localization(const Studies &s)
{
  const auto &l = s.n0.localization;
  const bool ok = l.worst_element >= 0 && (l.worst_touches_interface || l.worst_touches_boundary);
  return {ok, "level " + std::to_string(l.level) + " worst element " +
                  std::to_string(l.worst_element) +
                  (l.worst_touches_interface ? " touches the interface"
                                             : (l.worst_touches_boundary ? " touches the boundary"
                                                                         : " is interior"))};
}

Outcome interpolation_rate()
{
  const VectorField f = [](const Vec2 &x, double) {
    return Vec2{std::sin(3.0 * x[1]) * std::exp(x[0]), std::cos(2.0 * x[0] * x[1])};
  };
  std::vector<double> err, h;
  for (int level = 0; level < 3; level++)
  {
    const Mesh m = generate_scatterer_mesh(ScattererGeometry{}, level);
    const DofMap d(m, std::vector<bool>(m.num_edges(), true));
    err.push_back(l2_error(interpolate(f, 0.0, m, d, InterpolationMode::Reduced), m, d, f, 0.0));
    h.push_back(m.max_edge_length());
  }
  bool ok = true;
  std::string rates;
  for (int k = 1; k < 3; k++)
  {
    const double r = std::log(err[k - 1] / err[k]) / std::log(h[k - 1] / h[k]);
    ok = ok && r >= 0.9 && r <= 1.1;
    rates += (rates.empty() ? "" : "/") + fmt(r);
  }
  return {ok, "rates " + rates};
}

}  // namespace

int main(int argc, char **argv)
{
  std::set<int> only;
  for (int i = 1; i < argc; i++)
  {
    only.insert(std::stoi(argv[i]));
  }
  auto wanted = [&](int c) { return only.empty() || only.count(c) > 0; };

  bool all = true;
  auto report = [&](int c, const std::function<Outcome()> &f) {
    if (!wanted(c))
    {
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = f();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::printf("criterion %d: %s  %s [%.1f s]\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
  };

  report(1, quadrature_exactness);
  report(2, curl_commuting);
  report(3, reduction_equivalence);
  report(4, energy_behaviour);
  if (wanted(5) || wanted(8))
  {
    Studies studies;
    bool have = false;
    report(5, [&] {
      studies = run_studies();
      have = true;
      return convergence_rates(studies);
    });
    report(8, [&] {
      if (!have)
      {
        studies = run_studies();
        have = true;
      }
      return localization(studies);
    });
  }
  report(6, cfl_constants);
  report(7, cfl_estimator);
  report(9, interpolation_rate);
  return all ? 0 : 1;
}
