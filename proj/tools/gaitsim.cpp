#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <gaitadapt/config.hpp>
#include <gaitadapt/csv.hpp>
#include <gaitadapt/simulator.hpp>

namespace fs = std::filesystem;
using namespace gaitadapt;

namespace
{

std::ofstream openOut(const fs::path & p)
{
  std::ofstream os(p, std::ios::binary);
  if(!os) throw Error(ErrorCode::IoError, "cannot write " + p.string());
  return os;
}

int simulate(const std::string & scenarioPath, const std::string & outDir)
{
  const Scenario s = loadScenario(scenarioPath);
  const SimTrace trace = run(s);
  fs::create_directories(outDir);
  {
    auto os = openOut(fs::path(outDir) / "trace.csv");
    writeTraceCsv(os, trace);
  }
  {
    auto os = openOut(fs::path(outDir) / "zmp.csv");
    writeZmpCsv(os, trace);
  }
  {
    auto os = openOut(fs::path(outDir) / "offsets.csv");
    writeOffsetsCsv(os, trace);
  }
  const std::string report = formatReport(summarize(trace));
  {
    auto os = openOut(fs::path(outDir) / "report.txt");
    os << report;
  }
  std::cout << report;
  return 0;
}

int plan(const std::string & configPath, const std::string & outPath, int cycles, double rate)
{
  const Scenario s = loadScenario(configPath);
  const TaskSpacePlan p = buildPlan(s.gait, s.geometry, s.firstSwing);
  const int n = cycles > 0 ? cycles : s.nCycles;
  const double hz = rate > 0.0 ? rate : 1.0 / s.tick;
  if(outPath.empty() || outPath == "-")
  {
    writePlanCsv(std::cout, p, n, hz);
  }
  else
  {
    auto os = openOut(outPath);
    writePlanCsv(os, p, n, hz);
  }
  return 0;
}

int check(const std::string & configPath)
{
  const Scenario s = loadScenario(configPath);
  try
  {
    const Report r = summarize(run(s));
    const bool ok = r.minZmpMargin > 0.0;
    std::cout << "reach: ok\n";
    std::cout << "zmp: " << (ok ? "ok" : "VIOLATION") << " (min margin " << formatDouble(r.minZmpMargin)
              << " m at t = " << formatDouble(r.minZmpMarginTime) << " s)\n";
    std::cout << "max_mu_req: " << formatDouble(r.maxMuReq) << "\n";
    return ok ? 0 : 1;
  }
  catch(const Error & e)
  {
    switch(e.code())
    {
      case ErrorCode::KinematicallyUnreachable:
      case ErrorCode::Unreachable:
      case ErrorCode::SingularPosture:
        std::cout << "reach: VIOLATION (" << e.what() << ")\n";
        return 1;
      default: throw;
    }
  }
}

} // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Gait planning, online landing adaptation and ZMP checks for a 12-DOF biped"};
  app.require_subcommand(1);

  std::string scenario, outDir, config, planOut;
  int cycles = 0;
  double rate = 0.0;

  auto * sim = app.add_subcommand("simulate", "run a scenario and write trace.csv, zmp.csv, offsets.csv, report.txt");
  sim->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", outDir, "output directory")->required();

  auto * pl = app.add_subcommand("plan", "write the preplanned task-space trajectories as CSV");
  pl->add_option("config", config, "configuration file")->required()->check(CLI::ExistingFile);
  pl->add_option("--out", planOut, "output file (default stdout)");
  pl->add_option("--cycles", cycles, "number of cycles (default n_cycles)");
  pl->add_option("--rate", rate, "sample rate in Hz (default 1/tick)");

  auto * ck = app.add_subcommand("check", "check ZMP containment and leg reach; exit 1 on violation");
  ck->add_option("config", config, "configuration file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if(*sim) return simulate(scenario, outDir);
    if(*pl) return plan(config, planOut, cycles, rate);
    if(*ck) return check(config);
  }
  catch(const Error & e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::IoError ? 2 : 1;
  }
  catch(const std::exception & e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
