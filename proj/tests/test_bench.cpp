// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "yeefem/config.hpp"
#include "yeefem/error_norm.hpp"
#include "yeefem/errors.hpp"
#include "yeefem/export.hpp"
#include "yeefem/studies.hpp"
#include "yeefem/transfer.hpp"

using namespace yeefem;

namespace
{

std::vector<std::string> lines(const std::string &s)
{
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);)
  {
    out.push_back(l);
  }
  return out;
}

std::vector<double> split_numbers(const std::string &l)
{
  std::vector<double> v;
  std::istringstream is(l);
  for (std::string f; std::getline(is, f, ',');)
  {
    v.push_back(std::stod(f));
  }
  return v;
}

SolutionRecord short_run(double t_end, int level = 0, Method method = Method::NC1)
{
  Scenario sc;
  sc.final_time = t_end;
  sc.snapshot_times = {t_end};
  RunOptions ro;
  ro.level = level;
  ro.sim.method = method;
  ro.keep_trajectory = true;
  return run(sc, ro);
}

}  // namespace

TEST_CASE("plane wave and boundary datum")
{
  const Scenario sc;
  const double r = 1.0 / std::sqrt(2.0);
  // Peak of the envelope: k.x - t = -3.
  const Vec2 x{0.2, -0.4};
  const double t = r * (x[0] + x[1]) + 3.0;
  const Vec2 e = plane_wave(sc, x, t);
  CHECK(std::hypot(e[0], e[1]) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(boundary_trace_g(sc, x, t)) <= 1e-14);
  // Initial data at the lower-left corner is negligible.
  const Vec2 c = plane_wave(sc, {-1.0, -1.0}, 0.0);
  CHECK(std::hypot(c[0], c[1]) < 1e-10);
  CHECK(std::abs(boundary_trace_g(sc, {-1.0, -1.0}, 0.0)) < 1e-9);
  CHECK(sc.envelope.value(-1.414) < 1e-10);

  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 100; it++)
  {
    const Vec2 p{u(rng), u(rng)};
    const double s = 2.0 * u(rng);
    const Vec2 w = plane_wave(sc, p, s);
    CHECK(std::abs(w[0] * sc.k[0] + w[1] * sc.k[1]) <= 1e-14);
    // g equals the scalar curl of the incident field.
    const double d = 1e-5;
    const double curl = (plane_wave(sc, {p[0] + d, p[1]}, s)[1] -
                         plane_wave(sc, {p[0] - d, p[1]}, s)[1]) /
                            (2 * d) -
                        (plane_wave(sc, {p[0], p[1] + d}, s)[0] -
                         plane_wave(sc, {p[0], p[1] - d}, s)[0]) /
                            (2 * d);
    CHECK(boundary_trace_g(sc, p, s) == doctest::Approx(curl).epsilon(1e-6).scale(1.0));
    const double a = p[0];
    CHECK(sc.envelope.derivative(a) ==
          doctest::Approx((sc.envelope.value(a + d) - sc.envelope.value(a - d)) / (2 * d))
              .epsilon(1e-6)
              .scale(1.0));
  }
}

TEST_CASE("transfer to the refined mesh is exact")
{
  const ScattererGeometry g;
  const Mesh coarse = generate_scatterer_mesh(g, 0);
  const Mesh fine = refine_uniform(coarse);
  const DofMap dc(coarse), df(fine);
  std::mt19937_64 rng(52);
  const DofVector c{Space::Full, oracle::random_vector(rng, dc.n_full())};
  const DofVector f = transfer_coarse_to_fine(c, coarse, fine);
  REQUIRE(f.size() == static_cast<std::size_t>(df.n_full()));

  const PointLocator lc(coarse), lf(fine);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 100; it++)
  {
    const Vec2 p{u(rng), u(rng)};
    const Vec2 a = eval_field(c, coarse, dc, p, lc), b = eval_field(f, fine, df, p, lf);
    CHECK(std::abs(a[0] - b[0]) <= 1e-12 * (1.0 + std::abs(a[0])));
    CHECK(std::abs(a[1] - b[1]) <= 1e-12 * (1.0 + std::abs(a[1])));
  }
  const auto cc = element_curls(coarse, c.coeffs), cf = element_curls(fine, f.coeffs);
  for (int t = 0; t < fine.num_triangles(); t++)
  {
    const double parent = cc[fine.parents()[t]];
    CHECK(std::abs(cf[t] - parent) <= 1e-12 * (1.0 + std::abs(parent)));
  }

  const VectorField constant = [](const Vec2 &, double) { return Vec2{0.7, -0.2}; };
  const auto ic = interpolate(constant, 0.0, coarse, dc, InterpolationMode::Full);
  const auto tf = transfer_coarse_to_fine(ic, coarse, fine);
  const auto ifine = interpolate(constant, 0.0, fine, df, InterpolationMode::Full);
  CHECK(oracle::max_abs([&] {
          std::vector<double> d(tf.size());
          for (std::size_t i = 0; i < d.size(); i++)
          {
            d[i] = tf.coeffs[i] - ifine.coeffs[i];
          }
          return d;
        }()) <= 1e-13);

  CHECK_THROWS_AS(transfer_matrix(coarse, refine_uniform(fine)), ContractError);
  CHECK_THROWS_AS(transfer_matrix(coarse, generate_scatterer_mesh(g, 0)), ContractError);
  CHECK_THROWS_AS(transfer_coarse_to_fine(f, coarse, fine), ContractError);
}

TEST_CASE("error norm")
{
  const SolutionRecord a = short_run(0.8);
  SUBCASE("identical records")
  {
    CHECK(error_norm(a, a) == 0.0);
  }
  SUBCASE("homogeneity")
  {
    SolutionRecord ref = a;
    for (auto &v : ref.trajectory)
    {
      for (double &x : v)
      {
        x *= 2.0;
      }
    }
    CHECK(error_norm(a, ref) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("accumulator terms")
  {
    ErrorAccumulator acc(*a.mesh);
    std::vector<double> zero(a.trajectory[0].size(), 0.0);
    for (const auto &v : a.trajectory)
    {
      acc.sample(zero, v, a.tau);
    }
    CHECK(acc.pairs() == static_cast<long>(a.trajectory.size()) - 1);
    CHECK(acc.dt_error() == doctest::Approx(acc.dt_reference()));
    CHECK(acc.curl_error() == doctest::Approx(acc.curl_reference()));
    CHECK(acc.value() == doctest::Approx(2.0));
    ErrorAccumulator empty(*a.mesh);
    empty.sample(zero, zero, a.tau);
    empty.sample(zero, zero, a.tau);
    CHECK_THROWS_AS(empty.value(), ContractError);
    CHECK_THROWS_AS(empty.sample(std::vector<double>(3, 0.0), zero, a.tau), ContractError);
  }
  SUBCASE("nested levels and incompatible grids")
  {
    const SolutionRecord b = short_run(0.8, 1);
    const double e = error_norm(b, a);
    CHECK(e > 0.0);
    CHECK(e < 1.0);
    CHECK(error_norm(a, b) > 0.0);
    SolutionRecord odd = a;
    odd.tau *= 1.5;
    CHECK_THROWS_AS(error_norm(b, odd), ContractError);
    SolutionRecord bare = a;
    bare.trajectory.clear();
    CHECK_THROWS_AS(error_norm(bare, a), ContractError);
  }
}

TEST_CASE("snapshot export")
{
  const SolutionRecord rec = short_run(1.0);
  const Mesh &m = *rec.mesh;
  std::ostringstream csv;
  export_snapshot(csv, rec, 1.0, ExportFormat::Csv);
  const auto rows = lines(csv.str());
  REQUIRE(rows.size() == static_cast<std::size_t>(m.num_triangles()) + 1);
  CHECK(rows[0] == "cx,cy,Ex,Ey,|E|,curlE");
  const DofMap d(m);
  const auto curls = element_curls(m, rec.snapshot_at(1.0).field.coeffs);
  double largest = 0.0;
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto v = split_numbers(rows[t + 1]);
    REQUIRE(v.size() == 6);
    CHECK(v[0] == doctest::Approx(m.centroid(t)[0]).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(m.centroid(t)[1]).epsilon(1e-14));
    CHECK(std::abs(v[4] - std::hypot(v[2], v[3])) <= 1e-14 * (1.0 + v[4]));
    CHECK(v[5] == doctest::Approx(curls[t]).epsilon(1e-14));
    const Vec2 e = eval_field(rec.snapshot_at(1.0).field, m, d, m.centroid(t));
    CHECK(std::abs(v[2] - e[0]) <= 1e-12 * std::abs(e[0]) + 1e-300);
    largest = std::max(largest, v[4]);
  }
  CHECK(largest > 0.01);

  std::ostringstream vtk;
  export_snapshot(vtk, rec, 1.0, ExportFormat::VtkLegacy);
  const std::string s = vtk.str();
  CHECK(s.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(s.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  CHECK(s.find("CELL_DATA " + std::to_string(m.num_triangles())) != std::string::npos);
  CHECK(s.find("POINTS " + std::to_string(m.num_vertices())) != std::string::npos);

  std::ostringstream zero;
  write_field_csv(zero, m, {Space::Full, std::vector<double>(d.n_full(), 0.0)});
  const auto zrows = lines(zero.str());
  for (std::size_t i = 1; i < zrows.size(); i++)
  {
    const auto v = split_numbers(zrows[i]);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);
    CHECK(v[4] == 0.0);
    CHECK(v[5] == 0.0);
  }

  std::ostringstream sink;
  try
  {
    export_snapshot(sink, rec, 7.0, ExportFormat::Csv);
    FAIL("expected LookupError");
  }
  catch (const LookupError &e)
  {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  CHECK(parse_export_format("csv") == ExportFormat::Csv);
  CHECK(parse_export_format("vtk") == ExportFormat::VtkLegacy);
  CHECK_THROWS_AS(parse_export_format("png"), ConfigError);
}

TEST_CASE("bit-identical output across runs")
{
  std::string out[2];
  for (auto &o : out)
  {
    const SolutionRecord rec = short_run(0.6);
    std::ostringstream os;
    export_snapshot(os, rec, 0.6, ExportFormat::Csv);
    write_energy_csv(os, rec.energy);
    o = os.str();
  }
  CHECK(out[0] == out[1]);
}

TEST_CASE("configuration")
{
  const AppConfig c = parse_config(R"({
    "geometry": {"radius": 0.25, "inside": {"eps": 1, "sigma": 50, "nu": 1}},
    "envelope": {"decay": 12},
    "final_time": 2.0,
    "snapshot_times": [1.0, 2.0],
    "method": "n0plus",
    "rhs": "direct",
    "levels": [1, 2, 3],
    "cfl": 0.2
  })");
  CHECK(c.scenario.geometry.radius == 0.25);
  CHECK(c.scenario.geometry.inside[1] == 50.0);
  CHECK(c.scenario.geometry.outside[1] == 0.0);
  CHECK(c.scenario.envelope.decay == 12.0);
  CHECK(c.scenario.envelope.amplitude == 2.0);
  CHECK(c.scenario.final_time == 2.0);
  CHECK(c.method == Method::N0plus);
  CHECK(c.rhs == RhsMode::Direct);
  CHECK(c.levels == std::vector<int>{1, 2, 3});
  CHECK(c.cfl == 0.2);
  CHECK(c.level == 0);

  const AppConfig back = parse_config(dump_config(c));
  CHECK(dump_config(back) == dump_config(c));

  CHECK_THROWS_AS(parse_config(R"({"finaltime": 2})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"geometry": {"radius": 0.3, "colour": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cfl": "fast"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"k": [1]})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("table headers")
{
  std::ostringstream a, b;
  write_convergence_csv(a, {{1, 0.1, 100, 0.5, std::nan(""), 0.028}, {2, 0.05, 400, 0.25, 1.0, 0.014}});
  write_cfl_csv(b, {{0, 0.1, 0.3, 0.29}});
  const auto la = lines(a.str()), lb = lines(b.str());
  CHECK(la[0] == "h,dofs,error,eoc");
  CHECK(la.size() == 3);
  CHECK(lb[0] == "h,C_nc1,C_n0plus");
  CHECK(lb.size() == 2);
}

TEST_CASE("no field ahead of the incident pulse")
{
  // At time t the pulse occupies k.x <= t - 1.82 up to a 1e-6 tail.
  const SolutionRecord rec = short_run(1.5, 1);
  const Mesh &m = *rec.mesh;
  const DofMap d(m);
  const auto &field = rec.snapshot_at(1.5).field;
  const Scenario sc;
  double ahead = 0.0, behind = 0.0;
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const Vec2 c = m.centroid(t);
    const Vec2 e = eval_field(field, m, d, c);
    const double s = sc.k[0] * c[0] + sc.k[1] * c[1];
    (s > 1.0 ? ahead : behind) = std::max(s > 1.0 ? ahead : behind, std::hypot(e[0], e[1]));
  }
  CHECK(behind > 0.1);
  CHECK(ahead < 1e-6 * sc.envelope.amplitude);
}

TEST_CASE("energy plateau without conductivity once the pulse has left the boundary")
{
  Scenario sc;
  sc.geometry.inside = {1.0, 0.0, 1.0};
  sc.final_time = 8.0;
  sc.snapshot_times = {};
  RunOptions ro;
  const SolutionRecord rec = run(sc, ro);
  double lo = 1e300, hi = 0.0, peak = 0.0;
  for (const auto &row : rec.energy)
  {
    peak = std::max(peak, row.terms.total);
    if (row.t >= 6.5)
    {
      lo = std::min(lo, row.terms.total);
      hi = std::max(hi, row.terms.total);
    }
  }
  CHECK(peak > 1.0);
  CHECK(hi > 0.0);
  CHECK((hi - lo) / hi <= 1e-10);
}

TEST_CASE("cfl table")
{
  Scenario sc;
  const auto rows = cfl_table(sc, {0, 1});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].h == doctest::Approx(0.5 * rows[0].h));
  for (const auto &r : rows)
  {
    CHECK(r.c_nc1 > 0.2);
    CHECK(r.c_nc1 < 0.4);
    CHECK(r.c_n0plus > 0.0);
    CHECK(r.c_n0plus <= r.c_nc1 * (1.0 + 1e-6));
  }
  sc.geometry.inside = {1.0, 0.0, 1.0};
  for (const auto &r : cfl_table(sc, {0, 1}))
  {
    CHECK(r.c_nc1 == r.c_n0plus);
  }
  CHECK_THROWS_AS(cfl_table(sc, {}), ParameterError);
}

TEST_CASE("small convergence studies")
{
  Scenario sc;
  sc.final_time = 1.5;
  sc.snapshot_times = {};
  SUBCASE("nested NC1")
  {
    StudyOptions opt;
    opt.levels = {0, 1, 2};
    const auto res = convergence_study(sc, opt);
    REQUIRE(res.rows.size() == 2);
    CHECK(std::isnan(res.rows[0].eoc));
    CHECK(res.rows[1].eoc > 0.5);
    for (std::size_t i = 0; i < res.rows.size(); i++)
    {
      CHECK(res.rows[i].level == static_cast<int>(i) + 1);
      CHECK(res.rows[i].error > 0.0);
    }
    CHECK(res.rows[1].dofs == doctest::Approx(4.0 * res.rows[0].dofs).epsilon(0.05));
    CHECK(res.rows[1].h == doctest::Approx(0.5 * res.rows[0].h));
    CHECK(res.rows[1].tau == doctest::Approx(0.5 * res.rows[0].tau).epsilon(1e-14));
    CHECK(res.rows[1].eoc ==
          doctest::Approx(std::log2(res.rows[0].error / res.rows[1].error)).epsilon(1e-12));
  }
  SUBCASE("same-mesh N0 against NC1")
  {
    StudyOptions opt;
    opt.method = Method::N0;
    opt.levels = {0, 1, 2};
    const auto res = convergence_study(sc, opt);
    REQUIRE(res.rows.size() == 3);
    CHECK(std::isnan(res.rows[0].eoc));
    const Mesh fine = generate_scatterer_mesh(sc.geometry, 2);
    CHECK(res.rows[2].dofs == fine.num_edges());
    CHECK(res.localization.level == 2);
    CHECK(res.localization.worst_element >= 0);
    CHECK(res.localization.contribution.size() ==
          static_cast<std::size_t>(fine.num_triangles()));
  }
  SUBCASE("parameter errors")
  {
    StudyOptions opt;
    opt.levels = {0, 1};
    CHECK_THROWS_AS(convergence_study(sc, opt), ParameterError);
    opt.levels = {0, 2, 3};
    CHECK_THROWS_AS(convergence_study(sc, opt), ParameterError);
  }
}
