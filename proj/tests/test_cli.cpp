#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "magskin/cli.hpp"

using namespace magskin;
using namespace magskin::cli;

namespace
{

std::vector<std::vector<std::string>> parse_csv(const std::string &text)
{
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
  {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
    {
      cells.push_back(cell);
    }
    out.push_back(cells);
  }
  return out;
}

std::string header(const std::string &csv) { return csv.substr(0, csv.find('\n')); }

RunConfig config_for(Command c)
{
  RunConfig rc;
  rc.command = c;
  return rc;
}

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string &args)
{
  const std::string cmd = std::string(MAGSKIN_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("float formatting round-trips")
{
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 1.0})
  {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("params JSON carries lambda")
{
  const std::string out = run(config_for(Command::Params));
  const nlohmann::json j = nlohmann::json::parse(out);
  const DerivedParams dp = derive_params(PhysicalConfig{});
  CHECK(j.at("lambda_re").get<double>() == dp.lambda.real());
  CHECK(j.at("lambda_im").get<double>() == dp.lambda.imag());
  CHECK(j.at("lambda_re").get<double>() == doctest::Approx(0.4550898605622273413).epsilon(1e-15));
  CHECK(j.at("lambda_im").get<double>() == doctest::Approx(-1.098684113467809966).epsilon(1e-15));
  for (const char *key : {"mu_r", "eps_small", "delta_plus", "delta_minus", "kappa_plus", "theta", "alpha_plus_re",
                          "alpha_plus_im", "alpha_minus_re", "alpha_minus_im", "ell", "phi_value"})
  {
    CHECK(j.contains(key));
  }
}

TEST_CASE("CSV headers")
{
  CHECK(header(run(config_for(Command::SkinDepth))) ==
        "mu_r,eps,ell,phi,H,L_numeric,L_asymptotic,L_classical,L_eddy2d,L_highcond,residual");
  CHECK(header(run(config_for(Command::ProfileTable))) == "y3,Y3,Wt1_re,Wt1_im,Wt2_re,Wt2_im,Wn_re,Wn_im,modulus");
  RunConfig rc = config_for(Command::IbcSweep);
  rc.modes = {0};
  rc.eps_list = {0.01, 0.1};
  CHECK(header(run(rc)) == "mode,eps,mu_r,error_E,error_H,local_slope");
  rc.command = Command::ExpansionError;
  CHECK(header(run(rc)) == "mode,eps,mu_r,error_E,error_H,local_slope");
  rc = config_for(Command::IbcFactors);
  rc.format = Format::Csv;
  CHECK(header(run(rc)) == "k,scalar_part_re,scalar_part_im,curvature_coeff_re,curvature_coeff_im,leontovich_gap");
}

TEST_CASE("ibc-factors JSON")
{
  RunConfig rc = config_for(Command::IbcFactors);
  rc.k = 1;
  const nlohmann::json j = nlohmann::json::parse(run(rc));
  CHECK(j.at("k") == 1);
  CHECK(j.at("scalar_part_re").get<double>() == doctest::Approx(1.098684113467809966).epsilon(1e-15));
  CHECK(j.at("scalar_part_im").get<double>() == doctest::Approx(0.4550898605622273413).epsilon(1e-15));
  CHECK(j.at("curvature_coeff_re").get<double>() == 0.0);
  rc.k.reset();
  CHECK(nlohmann::json::parse(run(rc)).size() == 3);
}

TEST_CASE("byte determinism across runs and worker counts")
{
  RunConfig rc = config_for(Command::IbcSweep);
  rc.k = 2;
  rc.jobs = 1;
  const std::string a = run(rc);
  rc.jobs = 4;
  const std::string b = run(rc);
  const std::string c = run(rc);
  CHECK(a == b);
  CHECK(b == c);

  rc.command = Command::Convergence;
  rc.jobs = 3;
  const std::string d = run(rc);
  rc.jobs = 1;
  CHECK(d == run(rc));
}

TEST_CASE("ibc-sweep k = 2 local slopes near 3")
{
  RunConfig rc = config_for(Command::IbcSweep);
  rc.k = 2;
  rc.jobs = 4;
  const auto rows = parse_csv(run(rc));
  REQUIRE(rows.size() == 1 + 3 * 5);
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    if (rows[i][5] == "nan")
    {
      continue;
    }
    CHECK(std::abs(std::stod(rows[i][5]) - 3.0) <= 0.3);
  }
}

TEST_CASE("fits recomputed from the CSV match in-process fits")
{
  RunConfig rc = config_for(Command::IbcSweep);
  rc.k = 1;
  rc.modes = {0, 2};
  const auto rows = parse_csv(run(rc));
  for (int mode : rc.modes)
  {
    std::vector<double> eps, e, h;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
      if (std::stoi(rows[i][0]) == mode)
      {
        eps.push_back(std::stod(rows[i][1]));
        e.push_back(std::stod(rows[i][3]));
        h.push_back(std::stod(rows[i][4]));
      }
    }
    const StudyFits in_process = convergence_study(default_benchmark(0.1, mode), StudyKind::Ibc, 1, rc.eps_list);
    const ConvergenceFit fe = fit_power_law(eps, e);
    const ConvergenceFit fh = fit_power_law(eps, h);
    CHECK(std::abs(fe.slope - in_process.e.slope) <= 1e-12 * std::abs(in_process.e.slope));
    CHECK(std::abs(fh.slope - in_process.h.slope) <= 1e-12 * std::abs(in_process.h.slope));
    CHECK(std::abs(fe.intercept - in_process.e.intercept) <= 1e-12 * std::abs(in_process.e.intercept));
  }
}

TEST_CASE("convergence report")
{
  RunConfig rc = config_for(Command::Convergence);
  rc.k = 0;
  rc.modes = {1};
  rc.study = StudyKind::TruncatedExpansion;
  const nlohmann::json j = nlohmann::json::parse(run(rc));
  CHECK(j.at("study") == "expansion");
  CHECK(j.at("order") == 0);
  REQUIRE(j.at("fits").size() == 3);
  for (const auto &f : j.at("fits"))
  {
    CHECK(f.at("conclusive").get<bool>());
    CHECK(std::abs(f.at("slope").get<double>() - 1.0) <= 0.2);
    CHECK(f.at("eps").size() == 5);
    CHECK(f.at("local_slopes").size() == 4);
  }
}

TEST_CASE("config parsing and usage errors")
{
  const RunConfig rc = parse_config(R"({"physical": {"omega_rad_per_s": 2.0, "sigma_minus_S_per_m": 5e7},
                                        "surface": {"kind": "cylinder", "radius_m": 0.01},
                                        "sweep": {"variable": "mu_r", "values": [10, 100]},
                                        "output": {"format": "json"}})",
                                    Command::SkinDepth);
  CHECK(rc.physical.omega == 2.0);
  CHECK(rc.physical.sigma_minus == 5e7);
  CHECK(rc.surface.kind() == SurfaceKind::Cylinder);
  CHECK(rc.output_format() == Format::Json);
  CHECK(nlohmann::json::parse(run(rc)).size() == 2);

  auto message = [](const std::string &text, Command c) -> std::string {
    try
    {
      parse_config(text, c);
    }
    catch (const UsageError &e)
    {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"eps": []})", Command::IbcSweep).find("eps: empty sweep list") == 0);
  CHECK(message(R"({"sweep": {"variable": "mu_r", "values": []}})", Command::Params).find("sweep.values") == 0);
  CHECK(message(R"({"sweep": {"variable": "mu_r", "values": [10, 1]}})", Command::Params).find("sweep.values[1]") ==
        0);
  CHECK(message(R"({"sweep": {"variable": "sigma", "values": [1]}})", Command::Params).find("sweep.variable") == 0);
  CHECK(message(R"({"physical": {"omega": 1}})", Command::Params).find("physical.omega: unknown key") == 0);
  CHECK(message(R"({"physical": {"sigma_plus_S_per_m": -1}})", Command::Params).find("physical.sigma_plus_S_per_m: must") == 0);
  CHECK(message(R"({"benchmark": {"r_source_m": 0.5}})", Command::IbcSweep).find("benchmark.r_source_m: must") == 0);
  CHECK(message(R"({"benchmark": {"r_source_m": 3}})", Command::IbcSweep).find("benchmark.r_out_m: must") == 0);
  CHECK(message(R"({"benchmark": {"physical": {"eps0_F_per_m": 0}}})", Command::IbcSweep)
            .find("benchmark.physical.eps0_F_per_m: must") == 0);
  CHECK(message(R"({"surface": {"kind": "sphere", "radius_m": -1}})", Command::Params).find("surface.radius") == 0);
  CHECK(message(R"({"surface": {"kind": "torus", "radius_m": 1}})", Command::Params).find("surface.kind") == 0);
  CHECK(message(R"({"k": 3})", Command::IbcSweep).find("k:") == 0);
  CHECK(message(R"({"command": "params"})", Command::IbcSweep).find("command") == 0);
  CHECK(message("{", Command::Params).find("config") == 0);

  const RunConfig b = parse_config(R"({"benchmark": {"mode": 4}})", Command::IbcSweep);
  CHECK(b.modes == std::vector<int>{4});
}

TEST_CASE("skin-depth on the benchmark uses the exact solution")
{
  const RunConfig rc = parse_config(R"({"benchmark": {}, "sweep": {"variable": "mu_r", "values": [1e4]}})",
                                    Command::SkinDepth);
  const auto rows = parse_csv(run(rc));
  REQUIRE(rows.size() == 2);
  const double numeric = std::stod(rows[1][5]);
  const CylinderBenchmark b = with_eps(default_benchmark(0.1, 0), 0.01);
  CHECK(numeric == exact_skin_depth(solve_exact(b)));
  CHECK(std::stod(rows[1][4]) == 0.5);
}

TEST_CASE("tool exit codes and output files")
{
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "magskin_cli_test";
  std::filesystem::create_directories(dir);
  const std::filesystem::path out1 = dir / "a.csv", out2 = dir / "b.csv";
  CHECK(run_tool("ibc-sweep --k 1 --modes 0,1 --jobs 1 --out " + out1.string()) == 0);
  CHECK(run_tool("ibc-sweep --k 1 --modes 0,1 --jobs 4 --out " + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(header(slurp(out1)) == "mode,eps,mu_r,error_E,error_H,local_slope");

  CHECK(run_tool("ibc-sweep --eps \"\"") == 2);
  CHECK(run_tool("ibc-sweep --eps 0.1,0.01") == 2);
  CHECK(run_tool("ibc-sweep --k 5") == 2);
  CHECK(run_tool("params --format xml") == 2);
  CHECK(run_tool("frobnicate") == 2);
  CHECK(run_tool("params --config " + (dir / "missing.json").string()) == 2);

  // a sphere trace must be pointwise: domain error from the profiles module
  const std::filesystem::path cfg = dir / "sphere.json";
  std::ofstream(cfg) << R"({"surface": {"kind": "sphere", "radius_m": 1},
                            "profile": {"wavevector_per_m": [1, 0]}})";
  CHECK(run_tool("profile-table --config " + cfg.string()) == 1);
  std::filesystem::remove_all(dir);
}
