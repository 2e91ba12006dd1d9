#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "json.hpp"
#include "magskin/cli.hpp"

namespace magskin::cli
{

using nlohmann::json;

namespace
{

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
  throw UsageError(path + ": " + what);
}

void only_keys(const json &j, const std::string &path, const std::set<std::string> &allowed)
{
  if (!j.is_object())
  {
    fail(path, "expected an object");
  }
  for (const auto &[key, value] : j.items())
  {
    if (!allowed.count(key))
    {
      fail(path + "." + key, "unknown key");
    }
  }
}

double get_number(const json &j, const std::string &path)
{
  if (!j.is_number())
  {
    fail(path, "expected a number");
  }
  return j.get<double>();
}

int get_int(const json &j, const std::string &path)
{
  if (!j.is_number_integer())
  {
    fail(path, "expected an integer");
  }
  return j.get<int>();
}

std::string get_string(const json &j, const std::string &path)
{
  if (!j.is_string())
  {
    fail(path, "expected a string");
  }
  return j.get<std::string>();
}

cplx get_complex(const json &j, const std::string &path)
{
  if (j.is_number())
  {
    return j.get<double>();
  }
  if (!j.is_array() || j.size() != 2)
  {
    fail(path, "expected a number or a [re, im] pair");
  }
  return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
}

TangentVector get_tangent(const json &j, const std::string &path)
{
  if (!j.is_array() || j.size() != 2)
  {
    fail(path, "expected two components");
  }
  return {get_complex(j[0], path + "[0]"), get_complex(j[1], path + "[1]")};
}

std::vector<double> get_number_list(const json &j, const std::string &path)
{
  if (!j.is_array())
  {
    fail(path, "expected a list of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> get_int_list(const json &j, const std::string &path)
{
  if (!j.is_array())
  {
    fail(path, "expected a list of integers");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    out.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Config key for a field name reported by InvalidParameter.
std::string config_key(const std::string &name)
{
  static const std::pair<const char *, const char *> keys[] = {
      {"omega", "omega_rad_per_s"},       {"eps0", "eps0_F_per_m"},
      {"mu_plus", "mu_plus_H_per_m"},     {"mu_minus", "mu_minus_H_per_m"},
      {"sigma_plus", "sigma_plus_S_per_m"}, {"sigma_minus", "sigma_minus_S_per_m"},
      {"r_in", "r_in_m"},                 {"r_out", "r_out_m"},
      {"r_source", "r_source_m"},         {"radius", "radius_m"}};
  for (const auto &[field, key] : keys)
  {
    if (name == field)
    {
      return key;
    }
  }
  return name;
}

[[noreturn]] void fail_parameter(const std::string &prefix, const InvalidParameter &e)
{
  std::string what = e.what();
  const std::string lead = e.name() + ": ";
  if (what.rfind(lead, 0) == 0)
  {
    what.erase(0, lead.size());
  }
  fail(prefix + config_key(e.name()), what);
}

void read_physical(const json &j, const std::string &path, PhysicalConfig &cfg)
{
  only_keys(j, path,
            {"omega_rad_per_s", "eps0_F_per_m", "mu_plus_H_per_m", "mu_minus_H_per_m", "sigma_plus_S_per_m",
             "sigma_minus_S_per_m"});
  auto read = [&](const char *key, double &field) {
    if (j.contains(key))
    {
      field = get_number(j[key], path + "." + key);
    }
  };
  read("omega_rad_per_s", cfg.omega);
  read("eps0_F_per_m", cfg.eps0);
  read("mu_plus_H_per_m", cfg.mu_plus);
  read("mu_minus_H_per_m", cfg.mu_minus);
  read("sigma_plus_S_per_m", cfg.sigma_plus);
  read("sigma_minus_S_per_m", cfg.sigma_minus);
}

Surface read_surface(const json &j, const std::string &path)
{
  only_keys(j, path, {"kind", "radius_m"});
  const std::string kind = j.contains("kind") ? get_string(j["kind"], path + ".kind") : "plane";
  if (kind == "plane")
  {
    return Surface::plane();
  }
  if (!j.contains("radius_m"))
  {
    fail(path + ".radius_m", "required for a " + kind);
  }
  const double r = get_number(j["radius_m"], path + ".radius_m");
  try
  {
    if (kind == "cylinder")
    {
      return Surface::cylinder(r);
    }
    if (kind == "sphere")
    {
      return Surface::sphere(r);
    }
  }
  catch (const InvalidParameter &e)
  {
    fail_parameter(path + ".", e);
  }
  fail(path + ".kind", "expected plane, cylinder or sphere");
}

CylinderBenchmark read_benchmark(const json &j, const std::string &path)
{
  only_keys(j, path, {"geometry", "r_in_m", "r_out_m", "r_source_m", "mode", "source_amplitude", "physical"});
  CylinderBenchmark b = default_benchmark(0.1, 0);
  if (j.contains("geometry"))
  {
    const std::string g = get_string(j["geometry"], path + ".geometry");
    if (g == "cylinder")
    {
      b.geometry = BenchmarkGeometry::Cylinder;
    }
    else if (g == "plane-layer")
    {
      b.geometry = BenchmarkGeometry::PlaneLayer;
    }
    else
    {
      fail(path + ".geometry", "expected cylinder or plane-layer");
    }
  }
  if (j.contains("r_in_m"))
  {
    b.r_in = get_number(j["r_in_m"], path + ".r_in_m");
  }
  if (j.contains("r_out_m"))
  {
    b.r_out = get_number(j["r_out_m"], path + ".r_out_m");
  }
  if (j.contains("r_source_m"))
  {
    b.r_source = get_number(j["r_source_m"], path + ".r_source_m");
  }
  if (j.contains("mode"))
  {
    b.mode = get_int(j["mode"], path + ".mode");
  }
  if (j.contains("source_amplitude"))
  {
    b.source_amplitude = get_complex(j["source_amplitude"], path + ".source_amplitude");
  }
  if (j.contains("physical"))
  {
    read_physical(j["physical"], path + ".physical", b.cfg);
  }
  try
  {
    b.validate();
  }
  catch (const InvalidParameter &e)
  {
    const bool material = e.name().rfind("r_", 0) != 0 && e.name() != "mode" && e.name() != "source_amplitude";
    fail_parameter(path + (material ? ".physical." : "."), e);
  }
  return b;
}

ProfileSpec read_profile(const json &j, const std::string &path)
{
  only_keys(j, path, {"E0", "E1", "wavevector_per_m", "surface_point_m", "points", "max_depth_m", "h0_m"});
  ProfileSpec p;
  if (j.contains("E0"))
  {
    p.trace.E0 = get_tangent(j["E0"], path + ".E0");
  }
  if (j.contains("E1"))
  {
    p.trace.E1 = get_tangent(j["E1"], path + ".E1");
  }
  if (j.contains("wavevector_per_m"))
  {
    const std::vector<double> k = get_number_list(j["wavevector_per_m"], path + ".wavevector_per_m");
    if (k.size() != 2)
    {
      fail(path + ".wavevector_per_m", "expected two components");
    }
    p.trace.wavevector = {k[0], k[1]};
  }
  if (j.contains("surface_point_m"))
  {
    const std::vector<double> y = get_number_list(j["surface_point_m"], path + ".surface_point_m");
    if (y.size() != 2)
    {
      fail(path + ".surface_point_m", "expected two components");
    }
    p.point = {y[0], y[1]};
  }
  if (j.contains("points"))
  {
    p.points = get_int(j["points"], path + ".points");
  }
  if (j.contains("max_depth_m"))
  {
    p.max_depth = get_number(j["max_depth_m"], path + ".max_depth_m");
  }
  if (j.contains("h0_m"))
  {
    p.h0 = get_number(j["h0_m"], path + ".h0_m");
  }
  return p;
}

}  // namespace

const char *to_string(Command c)
{
  switch (c)
  {
    case Command::Params:
      return "params";
    case Command::SkinDepth:
      return "skin-depth";
    case Command::ProfileTable:
      return "profile-table";
    case Command::IbcFactors:
      return "ibc-factors";
    case Command::IbcSweep:
      return "ibc-sweep";
    case Command::ExpansionError:
      return "expansion-error";
    case Command::Convergence:
      return "convergence";
  }
  return "unknown";
}

Command parse_command(const std::string &name)
{
  for (Command c : {Command::Params, Command::SkinDepth, Command::ProfileTable, Command::IbcFactors,
                    Command::IbcSweep, Command::ExpansionError, Command::Convergence})
  {
    if (name == to_string(c))
    {
      return c;
    }
  }
  fail("command", "unknown command '" + name + "'");
}

Format parse_format(const std::string &name)
{
  if (name == "csv")
  {
    return Format::Csv;
  }
  if (name == "json")
  {
    return Format::Json;
  }
  fail("format", "expected csv or json, got '" + name + "'");
}

PhysicalConfig apply_sweep(const PhysicalConfig &cfg, const std::string &variable, double value)
{
  PhysicalConfig out = cfg;
  if (variable == "mu_r")
  {
    out.mu_minus = value * cfg.mu_plus;
  }
  else if (variable == "eps")
  {
    out = cfg.with_eps(value);
  }
  else if (variable == "sigma_minus")
  {
    out.sigma_minus = value;
  }
  else if (variable == "omega")
  {
    out.omega = value;
  }
  else
  {
    fail("sweep.variable", "expected mu_r, eps, sigma_minus or omega, got '" + variable + "'");
  }
  return out;
}

void RunConfig::validate() const
{
  auto check_list = [](const std::vector<double> &v, const std::string &path) {
    if (v.empty())
    {
      fail(path, "empty sweep list");
    }
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      {
        fail(path + "[" + std::to_string(i) + "]", "sweep values must be finite and > 0");
      }
      if (i > 0 && !(v[i] > v[i - 1]))
      {
        fail(path + "[" + std::to_string(i) + "]", "sweep values must be strictly increasing");
      }
    }
  };
  if (sweep)
  {
    apply_sweep(physical, sweep->variable, 1.0);
    check_list(sweep->values, "sweep.values");
  }
  check_list(eps_list, "eps");
  if (modes.empty())
  {
    fail("modes", "empty mode list");
  }
  for (std::size_t i = 0; i < modes.size(); ++i)
  {
    if (modes[i] < 0 || modes[i] > 200)
    {
      fail("modes[" + std::to_string(i) + "]", "mode must be in [0, 200]");
    }
  }
  if (k && (*k < 0 || *k > 2))
  {
    fail("k", "must be 0, 1 or 2");
  }
  if (jobs < 1)
  {
    fail("jobs", "must be >= 1");
  }
  if (profile.points < 2)
  {
    fail("profile.points", "must be >= 2");
  }
  if (profile.max_depth < 0.0 || profile.h0 < 0.0)
  {
    fail("profile", "depths must be >= 0");
  }
  try
  {
    physical.validate();
  }
  catch (const InvalidParameter &e)
  {
    fail_parameter("physical.", e);
  }
}

Format RunConfig::output_format() const
{
  if (format)
  {
    return *format;
  }
  switch (command)
  {
    case Command::Params:
    case Command::IbcFactors:
    case Command::Convergence:
      return Format::Json;
    default:
      return Format::Csv;
  }
}

RunConfig parse_config(const std::string &json_text, Command command)
{
  json j;
  try
  {
    j = json::parse(json_text);
  }
  catch (const json::parse_error &e)
  {
    fail("config", std::string("invalid JSON: ") + e.what());
  }
  only_keys(j, "config",
            {"command", "physical", "surface", "benchmark", "sweep", "profile", "output", "k", "modes", "eps",
             "study", "jobs"});

  RunConfig rc;
  rc.command = command;
  if (j.contains("command") && parse_command(get_string(j["command"], "command")) != command)
  {
    fail("command", "config names '" + j["command"].get<std::string>() + "' but '" + to_string(command) +
                        "' was requested");
  }
  if (j.contains("physical"))
  {
    read_physical(j["physical"], "physical", rc.physical);
  }
  if (j.contains("surface"))
  {
    rc.surface = read_surface(j["surface"], "surface");
  }
  if (j.contains("benchmark"))
  {
    rc.benchmark = read_benchmark(j["benchmark"], "benchmark");
  }
  if (j.contains("sweep"))
  {
    const json &s = j["sweep"];
    only_keys(s, "sweep", {"variable", "values"});
    if (!s.contains("variable"))
    {
      fail("sweep.variable", "required");
    }
    if (!s.contains("values"))
    {
      fail("sweep.values", "required");
    }
    rc.sweep = Sweep{get_string(s["variable"], "sweep.variable"), get_number_list(s["values"], "sweep.values")};
  }
  if (j.contains("profile"))
  {
    rc.profile = read_profile(j["profile"], "profile");
  }
  if (j.contains("output"))
  {
    const json &o = j["output"];
    only_keys(o, "output", {"path", "format"});
    if (o.contains("path"))
    {
      rc.output_path = get_string(o["path"], "output.path");
    }
    if (o.contains("format"))
    {
      try
      {
        rc.format = parse_format(get_string(o["format"], "output.format"));
      }
      catch (const UsageError &e)
      {
        fail("output.format", e.what());
      }
    }
  }
  if (j.contains("k"))
  {
    rc.k = get_int(j["k"], "k");
  }
  if (j.contains("modes"))
  {
    rc.modes = get_int_list(j["modes"], "modes");
  }
  else if (rc.benchmark && j["benchmark"].contains("mode"))
  {
    rc.modes = {rc.benchmark->mode};
  }
  if (j.contains("eps"))
  {
    rc.eps_list = get_number_list(j["eps"], "eps");
  }
  if (j.contains("study"))
  {
    const std::string s = get_string(j["study"], "study");
    if (s != "ibc" && s != "expansion")
    {
      fail("study", "expected ibc or expansion");
    }
    rc.study = s == "ibc" ? StudyKind::Ibc : StudyKind::TruncatedExpansion;
  }
  if (j.contains("jobs"))
  {
    rc.jobs = get_int(j["jobs"], "jobs");
  }
  rc.validate();
  return rc;
}

}  // namespace magskin::cli
