#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magskin/cli.hpp"
#include "magskin/ibc.hpp"
#include "magskin/skin_depth.hpp"

namespace magskin::cli
{

namespace
{

// Evaluates fn(0..n-1) on up to `jobs` threads; results keep their index, and the
// lowest-index exception is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)> &fn)
{
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers)
    {
      try
      {
        out[i] = fn(i);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1)
  {
    work(0);
  }
  else
  {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
    {
      pool.emplace_back(work, w);
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
  return out;
}

// One config per sweep value, or the base config alone.
std::vector<PhysicalConfig> sweep_configs(const RunConfig &rc, const PhysicalConfig &base)
{
  if (!rc.sweep)
  {
    return {base};
  }
  std::vector<PhysicalConfig> out;
  for (double v : rc.sweep->values)
  {
    out.push_back(apply_sweep(base, rc.sweep->variable, v));
  }
  return out;
}

void prefix_sweep(const RunConfig &rc, Table &t)
{
  if (!rc.sweep)
  {
    return;
  }
  t.columns.insert(t.columns.begin(), rc.sweep->variable + "_value");
  const std::size_t per_point = t.rows.size() / rc.sweep->values.size();
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    t.rows[r].insert(t.rows[r].begin(), rc.sweep->values[r / per_point]);
  }
}

Table cmd_params(const RunConfig &rc)
{
  Table t;
  t.columns = {"mu_r",          "eps_small",     "delta_plus",     "delta_minus",    "kappa_plus",
               "theta",         "lambda_re",     "lambda_im",      "alpha_plus_re",  "alpha_plus_im",
               "alpha_minus_re", "alpha_minus_im", "ell",          "phi_value",      "ell_phi"};
  for (const PhysicalConfig &cfg : sweep_configs(rc, rc.physical))
  {
    const DerivedParams dp = derive_params(cfg);
    t.rows.push_back({dp.mu_r, dp.eps_small, dp.delta_plus, dp.delta_minus, dp.kappa_plus, dp.theta,
                      dp.lambda.real(), dp.lambda.imag(), dp.alpha_plus.real(), dp.alpha_plus.imag(),
                      dp.alpha_minus.real(), dp.alpha_minus.imag(), dp.ell, dp.phi_value, dp.ell_phi()});
  }
  t.single_record = !rc.sweep;
  prefix_sweep(rc, t);
  return t;
}

Table cmd_skin_depth(const RunConfig &rc)
{
  const PhysicalConfig base = rc.benchmark ? rc.benchmark->cfg : rc.physical;
  const std::vector<PhysicalConfig> cfgs = sweep_configs(rc, base);
  const auto rows = parallel_map<std::vector<Cell>>(cfgs.size(), rc.jobs, [&](std::size_t i) {
    const DerivedParams dp = derive_params(cfgs[i]);
    const Surface s = rc.benchmark ? rc.benchmark->surface() : rc.surface;
    const SkinDepthReport r = comparison_report(dp, s);
    double numeric = r.numeric;
    if (rc.benchmark)
    {
      CylinderBenchmark b = *rc.benchmark;
      b.cfg = cfgs[i];
      numeric = exact_skin_depth(solve_exact(b));
    }
    const double lp = dp.ell_phi();
    return std::vector<Cell>{dp.mu_r, dp.eps_small, dp.ell, dp.phi_value, s.mean_curvature(), numeric,
                             r.asymptotic, r.classical, r.eddy2d, r.high_conductivity,
                             std::abs(numeric - r.asymptotic) / lp};
  });
  Table t;
  t.columns = {"mu_r",       "eps",         "ell",      "phi",        "H",       "L_numeric",
               "L_asymptotic", "L_classical", "L_eddy2d", "L_highcond", "residual"};
  t.rows = rows;
  return t;
}

Table cmd_profile_table(const RunConfig &rc)
{
  const ProfileSpec &p = rc.profile;
  const Surface &s = rc.surface;
  check_trace(s, p.trace);
  const DerivedParams dp = derive_params(rc.physical);
  const double eps = dp.eps_small;
  const double depth = p.max_depth > 0.0 ? p.max_depth : 5.0 * dp.ell_phi();
  double h0 = p.h0;
  if (h0 == 0.0)
  {
    h0 = s.kind() == SurfaceKind::Plane ? std::numeric_limits<double>::infinity() : 0.5 * s.tubular_radius();
  }
  Table t;
  t.columns = {"y3", "Y3", "Wt1_re", "Wt1_im", "Wt2_re", "Wt2_im", "Wn_re", "Wn_im", "modulus"};
  for (int i = 0; i < p.points; ++i)
  {
    const double y3 = depth * i / (p.points - 1);
    const double Y3 = y3 / eps;
    const TangentVector w = eval_W0(p.trace, dp.lambda, p.point, Y3) +
                            cplx(eps) * eval_W1(s, p.trace, dp.lambda, p.point, Y3);
    const cplx e = eps * eval_fke1(p.trace, dp.lambda, p.point, Y3);
    const double mod = field_modulus(s, p.trace, dp.lambda, p.point, y3, eps, h0, true);
    t.rows.push_back({y3, Y3, w.c1.real(), w.c1.imag(), w.c2.real(), w.c2.imag(), e.real(), e.imag(), mod});
  }
  return t;
}

Table cmd_ibc_factors(const RunConfig &rc)
{
  std::vector<int> ks = rc.k ? std::vector<int>{*rc.k} : std::vector<int>{0, 1, 2};
  Table t;
  t.columns = {"k", "scalar_part_re", "scalar_part_im", "curvature_coeff_re", "curvature_coeff_im",
               "leontovich_gap"};
  for (const PhysicalConfig &cfg : sweep_configs(rc, rc.physical))
  {
    const double gap = leontovich_gap(cfg);
    for (int k : ks)
    {
      const ImpedanceOperator op = impedance_operator(k, cfg);
      t.rows.push_back({static_cast<long long>(k), op.scalar_part.real(), op.scalar_part.imag(),
                        op.curvature_part.real(), op.curvature_part.imag(), gap});
    }
  }
  t.single_record = !rc.sweep && ks.size() == 1;
  prefix_sweep(rc, t);
  return t;
}

struct SweepResult
{
  std::vector<double> eps;
  std::vector<int> modes;
  std::vector<StudyPoint> points;  // mode-major
};

SweepResult run_study(const RunConfig &rc, StudyKind kind, int order)
{
  SweepResult r;
  r.modes = rc.modes;
  r.eps = rc.eps_list;
  if (rc.sweep)
  {
    if (rc.sweep->variable != "eps" && rc.sweep->variable != "mu_r")
    {
      throw UsageError("sweep.variable: convergence sweeps run over eps or mu_r");
    }
    r.eps.clear();
    for (double v : rc.sweep->values)
    {
      r.eps.push_back(rc.sweep->variable == "eps" ? v : 1.0 / std::sqrt(v));
    }
  }
  const CylinderBenchmark base = rc.benchmark ? *rc.benchmark : default_benchmark(0.1, 0);
  const std::size_t n = r.modes.size() * r.eps.size();
  r.points = parallel_map<StudyPoint>(n, rc.jobs, [&](std::size_t i) {
    CylinderBenchmark b = base;
    b.mode = r.modes[i / r.eps.size()];
    return study_points(b, kind, order, {r.eps[i % r.eps.size()]}).front();
  });
  return r;
}

Table study_table(const SweepResult &r)
{
  Table t;
  t.columns = {"mode", "eps", "mu_r", "error_E", "error_H", "local_slope"};
  const std::size_t ne = r.eps.size();
  for (std::size_t m = 0; m < r.modes.size(); ++m)
  {
    std::vector<double> total;
    for (std::size_t i = 0; i < ne; ++i)
    {
      total.push_back(r.points[m * ne + i].error.total());
    }
    const std::vector<double> slopes = local_slopes(r.eps, total);
    for (std::size_t i = 0; i < ne; ++i)
    {
      const StudyPoint &p = r.points[m * ne + i];
      t.rows.push_back({static_cast<long long>(p.mode), p.eps, p.mu_r, p.error.e, p.error.h, slopes[i]});
    }
  }
  return t;
}

std::string json_number_list(const std::vector<double> &v)
{
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    out += (i ? ", " : "") + (std::isfinite(v[i]) ? format_double(v[i]) : std::string("null"));
  }
  return out + "]";
}

std::string convergence_report(const RunConfig &rc, int order, const SweepResult &r, Format format)
{
  const std::size_t ne = r.eps.size();
  Table summary;
  summary.columns = {"mode", "quantity", "expected_slope", "slope", "intercept", "r_squared", "conclusive",
                     "rejected", "diagnostic"};
  std::vector<std::string> records;
  for (std::size_t m = 0; m < r.modes.size(); ++m)
  {
    const std::vector<StudyPoint> pts(r.points.begin() + m * ne, r.points.begin() + (m + 1) * ne);
    const StudyFits fits = fit_study(pts);
    const std::pair<const char *, const ConvergenceFit *> named[] = {
        {"E", &fits.e}, {"H", &fits.h}, {"total", &fits.total}};
    for (const auto &[name, f] : named)
    {
      const std::vector<Cell> row{static_cast<long long>(r.modes[m]), std::string(name), order + 1.0, f->slope,
                                  f->intercept, f->r_squared, f->conclusive, f->rejected, f->diagnostic};
      summary.rows.push_back(row);
      Table one;
      one.columns = summary.columns;
      one.rows = {row};
      one.single_record = true;
      std::string rec = to_json(one);
      rec.erase(rec.size() - 3);  // drop "\n}\n"
      rec += ",\n  \"eps\": " + json_number_list(f->x) + ",\n  \"error\": " + json_number_list(f->error) +
             ",\n  \"local_slopes\": " + json_number_list(f->local_slopes) + "\n}";
      records.push_back(rec);
    }
  }
  if (format == Format::Csv)
  {
    return to_csv(summary);
  }
  std::string out = "{\n  \"study\": \"" + std::string(to_string(rc.study)) +
                    "\",\n  \"order\": " + std::to_string(order) + ",\n  \"fits\": [\n";
  for (std::size_t i = 0; i < records.size(); ++i)
  {
    std::string indented;
    std::istringstream in(records[i]);
    std::string line;
    bool first = true;
    while (std::getline(in, line))
    {
      indented += (first ? "" : "\n") + std::string("    ") + line;
      first = false;
    }
    out += indented + (i + 1 < records.size() ? ",\n" : "\n");
  }
  return out + "  ]\n}\n";
}

std::string emit(const Table &t, Format f) { return f == Format::Csv ? to_csv(t) : to_json(t); }

}  // namespace

std::string run(const RunConfig &rc)
{
  rc.validate();
  const Format f = rc.output_format();
  switch (rc.command)
  {
    case Command::Params:
      return emit(cmd_params(rc), f);
    case Command::SkinDepth:
      return emit(cmd_skin_depth(rc), f);
    case Command::ProfileTable:
      return emit(cmd_profile_table(rc), f);
    case Command::IbcFactors:
      return emit(cmd_ibc_factors(rc), f);
    case Command::IbcSweep:
      return emit(study_table(run_study(rc, StudyKind::Ibc, rc.k.value_or(1))), f);
    case Command::ExpansionError:
      return emit(study_table(run_study(rc, StudyKind::TruncatedExpansion, rc.k.value_or(1))), f);
    case Command::Convergence:
    {
      const int order = rc.k.value_or(1);
      return convergence_report(rc, order, run_study(rc, rc.study, order), f);
    }
  }
  throw UsageError("command: not handled");
}

namespace
{

std::vector<std::string> split_list(const std::string &text, const std::string &path)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
  {
    if (item.empty())
    {
      throw UsageError(path + ": empty list item");
    }
    out.push_back(item);
  }
  if (out.empty())
  {
    throw UsageError(path + ": empty sweep list");
  }
  return out;
}

template <class T>
T parse_item(const std::string &s, const std::string &path)
{
  std::size_t used = 0;
  T v{};
  try
  {
    if constexpr (std::is_same_v<T, int>)
    {
      v = std::stoi(s, &used);
    }
    else
    {
      v = std::stod(s, &used);
    }
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used != s.size() || s.empty())
  {
    throw UsageError(path + ": cannot parse '" + s + "'");
  }
  return v;
}

std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw UsageError("--config: cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main_entry(int argc, char **argv)
{
  CLI::App app{"Magnetic skin-effect asymptotics: parameters, profiles, skin depth and impedance conditions"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name, modes_text, eps_text, study_name;
  std::optional<int> k;
  std::optional<int> jobs;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--format", format_name, "csv or json");
  app.add_option("--k", k, "IBC order or expansion truncation order (0, 1, 2)");
  app.add_option("--modes", modes_text, "comma-separated azimuthal modes");
  app.add_option("--eps", eps_text, "comma-separated eps values");
  app.add_option("--jobs", jobs, "worker threads for sweeps");
  app.add_option("--study", study_name, "convergence study kind: ibc or expansion");

  const std::vector<std::pair<const char *, const char *>> commands{
      {"params", "derived parameters as JSON"},
      {"skin-depth", "numeric and asymptotic skin depths"},
      {"profile-table", "boundary-layer profile along the normal"},
      {"ibc-factors", "impedance operator coefficients"},
      {"ibc-sweep", "IBC shell errors against the exact solution"},
      {"expansion-error", "truncated-expansion shell errors"},
      {"convergence", "fitted convergence rates"}};
  for (const auto &[name, help] : commands)
  {
    app.add_subcommand(name, help)->fallthrough();
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try
  {
    const Command command = parse_command(app.get_subcommands().front()->get_name());
    RunConfig rc;
    rc.command = command;
    if (!config_path.empty())
    {
      rc = parse_config(read_file(config_path), command);
    }
    if (!out_path.empty())
    {
      rc.output_path = out_path;
    }
    if (!format_name.empty())
    {
      rc.format = parse_format(format_name);
    }
    if (k)
    {
      rc.k = *k;
    }
    if (jobs)
    {
      rc.jobs = *jobs;
    }
    if (app.count("--modes"))
    {
      rc.modes.clear();
      for (const std::string &s : split_list(modes_text, "--modes"))
      {
        rc.modes.push_back(parse_item<int>(s, "--modes"));
      }
    }
    if (app.count("--eps"))
    {
      rc.eps_list.clear();
      for (const std::string &s : split_list(eps_text, "--eps"))
      {
        rc.eps_list.push_back(parse_item<double>(s, "--eps"));
      }
    }
    if (!study_name.empty())
    {
      if (study_name != "ibc" && study_name != "expansion")
      {
        throw UsageError("--study: expected ibc or expansion");
      }
      rc.study = study_name == "ibc" ? StudyKind::Ibc : StudyKind::TruncatedExpansion;
    }
    rc.validate();

    const std::string text = run(rc);
    if (rc.output_path.empty())
    {
      std::cout << text;
      std::cout.flush();
    }
    else
    {
      std::ofstream out(rc.output_path, std::ios::binary);
      out << text;
      if (!out)
      {
        std::cerr << "magskin: cannot write '" << rc.output_path << "'\n";
        return 1;
      }
    }
    return 0;
  }
  catch (const UsageError &e)
  {
    std::cerr << "magskin: usage error: " << e.what() << "\n";
    return 2;
  }
  catch (const CheckFailed &e)
  {
    std::cerr << "magskin: check failed: " << e.what() << "\n";
    return 3;
  }
  catch (const std::exception &e)
  {
    std::cerr << "magskin: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace magskin::cli
