// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_CONFIG_HPP
#define YEEFEM_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "yeefem/scenario.hpp"
#include "yeefem/simulation.hpp"

namespace yeefem
{

//
// JSON configuration. Scenario fields sit at the top level:
//   geometry {half_width, radius, segments, coarse_spacing,
//             outside {eps, sigma, nu}, inside {eps, sigma, nu}},
//   k [k1, k2], envelope {amplitude, decay, offset}, final_time, snapshot_times,
// next to the run settings method, rhs, level, levels, cfl, tau, out.
// Missing keys keep their defaults; unknown keys are rejected.
//
struct AppConfig
{
  Scenario scenario;
  Method method = Method::NC1;
  RhsMode rhs = RhsMode::Lifted;
  int level = 0;
  std::vector<int> levels;
  double cfl = 0.28;
  double tau = 0.0;
  std::string out = "out";
};

AppConfig parse_config(std::string_view json_text, const AppConfig &base = {});
AppConfig load_config(const std::string &path, const AppConfig &base = {});
std::string dump_config(const AppConfig &cfg);

}  // namespace yeefem

#endif  // YEEFEM_CONFIG_HPP
