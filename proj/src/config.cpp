// SPDX-License-Identifier: Apache-2.0

#include "yeefem/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "yeefem/errors.hpp"

namespace yeefem
{

namespace
{

using json = nlohmann::json;

void check_keys(const json &j, std::initializer_list<const char *> allowed, const char *where)
{
  if (!j.is_object())
  {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto &[key, value] : j.items())
  {
    bool ok = false;
    for (const char *a : allowed)
    {
      ok = ok || key == a;
    }
    if (!ok)
    {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
void read(const json &j, const char *key, T &out)
{
  if (j.contains(key))
  {
    try
    {
      out = j.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

void read_material(const json &j, const char *key, std::array<double, 3> &out)
{
  if (!j.contains(key))
  {
    return;
  }
  const json &m = j.at(key);
  check_keys(m, {"eps", "sigma", "nu"}, key);
  read(m, "eps", out[0]);
  read(m, "sigma", out[1]);
  read(m, "nu", out[2]);
}

json material_json(const std::array<double, 3> &m)
{
  return {{"eps", m[0]}, {"sigma", m[1]}, {"nu", m[2]}};
}

}  // namespace

AppConfig parse_config(std::string_view json_text, const AppConfig &base)
{
  json j;
  try
  {
    j = json::parse(json_text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j,
             {"geometry", "k", "envelope", "final_time", "snapshot_times", "method", "rhs",
              "level", "levels", "cfl", "tau", "out"},
             "config");
  AppConfig cfg = base;
  Scenario &sc = cfg.scenario;
  if (j.contains("geometry"))
  {
    const json &g = j.at("geometry");
    check_keys(g, {"half_width", "radius", "segments", "coarse_spacing", "outside", "inside"},
               "geometry");
    read(g, "half_width", sc.geometry.half_width);
    read(g, "radius", sc.geometry.radius);
    read(g, "segments", sc.geometry.segments);
    read(g, "coarse_spacing", sc.geometry.coarse_spacing);
    read_material(g, "outside", sc.geometry.outside);
    read_material(g, "inside", sc.geometry.inside);
  }
  if (j.contains("k"))
  {
    std::vector<double> k;
    read(j, "k", k);
    if (k.size() != 2)
    {
      throw ConfigError("k must have two components");
    }
    sc.k = {k[0], k[1]};
  }
  if (j.contains("envelope"))
  {
    const json &e = j.at("envelope");
    check_keys(e, {"amplitude", "decay", "offset"}, "envelope");
    read(e, "amplitude", sc.envelope.amplitude);
    read(e, "decay", sc.envelope.decay);
    read(e, "offset", sc.envelope.offset);
  }
  read(j, "final_time", sc.final_time);
  read(j, "snapshot_times", sc.snapshot_times);
  if (j.contains("method"))
  {
    std::string s;
    read(j, "method", s);
    cfg.method = parse_method(s);
  }
  if (j.contains("rhs"))
  {
    std::string s;
    read(j, "rhs", s);
    cfg.rhs = parse_rhs_mode(s);
  }
  read(j, "level", cfg.level);
  read(j, "levels", cfg.levels);
  read(j, "cfl", cfg.cfl);
  read(j, "tau", cfg.tau);
  read(j, "out", cfg.out);
  sc.validate();
  return cfg;
}

AppConfig load_config(const std::string &path, const AppConfig &base)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), base);
}

std::string dump_config(const AppConfig &cfg)
{
  const Scenario &sc = cfg.scenario;
  json j = {
      {"geometry",
       {{"half_width", sc.geometry.half_width},
        {"radius", sc.geometry.radius},
        {"segments", sc.geometry.segments},
        {"coarse_spacing", sc.geometry.coarse_spacing},
        {"outside", material_json(sc.geometry.outside)},
        {"inside", material_json(sc.geometry.inside)}}},
      {"k", {sc.k[0], sc.k[1]}},
      {"envelope",
       {{"amplitude", sc.envelope.amplitude},
        {"decay", sc.envelope.decay},
        {"offset", sc.envelope.offset}}},
      {"final_time", sc.final_time},
      {"snapshot_times", sc.snapshot_times},
      {"method", to_string(cfg.method)},
      {"rhs", to_string(cfg.rhs)},
      {"level", cfg.level},
      {"levels", cfg.levels},
      {"cfl", cfg.cfl},
      {"tau", cfg.tau},
      {"out", cfg.out},
  };
  return j.dump(2);
}

}  // namespace yeefem
