// ihl: generate scenarios, evaluate the semigroup, run the theorem harness.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "ihl/generators.hpp"
#include "ihl/scenario_io.hpp"
#include "ihl/theorems.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string family;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::optional<double> param;
  std::size_t kappa = 2;

  std::vector<std::string> scenarios;
  std::string out;
  double eps = 0.0;
  std::optional<double> delta;
  std::string checks = "all";
  unsigned threads = 1;
  std::size_t refine = 1;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("ihl");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("IHL_LOG")) {
    const std::string level(env);
    if (level == "error") spdlog::set_level(spdlog::level::err);
    else if (level == "warn") spdlog::set_level(spdlog::level::warn);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ignoring IHL_LOG={}", level);
  }
}

/// Writes to --out, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ihl::Error(ihl::ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text;
  spdlog::info("wrote {}", path);
}

std::vector<ihl::TheoremId> parse_checks(const std::string& list) {
  if (list == "all") return {ihl::kAllTheorems.begin(), ihl::kAllTheorems.end()};
  std::vector<ihl::TheoremId> ids;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto id = ihl::parse_theorem_id(name);
    if (!id) throw ihl::Error(ihl::ErrorCode::kInvalidArgument, "unknown check '" + name + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) throw ihl::Error(ihl::ErrorCode::kInvalidArgument, "empty check list");
  return ids;
}

int cmd_gen(const Options& o) {
  const auto family = ihl::parse_family(o.family);
  if (!family) throw ihl::Error(ihl::ErrorCode::kInvalidArgument, "unknown family '" + o.family + "'");
  ihl::GeneratorSpec spec{*family, o.size, o.seed, o.param.value_or(ihl::default_param(*family)),
                          o.kappa};
  const auto scenario = ihl::generate(spec);
  spdlog::info("generated {} ({} points)", scenario.id, scenario.quotient.sample().size());
  emit(o.out, ihl::dump_scenario(scenario));
  return kOk;
}

int cmd_eval(const Options& o) {
  const auto scenario = ihl::load_scenario(o.scenarios.front());
  const ihl::HopfLax hopf_lax(scenario.quotient, scenario.section, o.threads);
  const auto cells = hopf_lax.sweep(scenario.tgrid, o.eps, o.threads);
  std::ostringstream os;
  ihl::write_sweep_csv(os, cells);
  emit(o.out, os.str());
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto ids = parse_checks(o.checks);
  ihl::HarnessOptions options;
  options.delta = o.delta;
  options.threads = o.threads;
  options.refine = o.refine;
  std::vector<ihl::TheoremReport> reports;
  for (const auto& path : o.scenarios) {
    const auto scenario = ihl::load_scenario(path);
    const ihl::Harness harness(scenario, options);
    for (auto& report : harness.run(ids)) {
      spdlog::debug("{} {} worst margin {}", scenario.id, ihl::to_string(report.theorem_id),
                    report.worst_margin);
      for (const auto& w : report.warnings) spdlog::info("{}: {}", scenario.id, w);
      reports.push_back(std::move(report));
    }
  }
  emit(o.out, ihl::theorem_reports_json(reports));
  std::cout << ihl::summary_table(reports);
  return ihl::all_hard_checks_passed(reports) ? kOk : kVerificationFailed;
}

int cmd_slope(const Options& o) {
  const auto scenario = ihl::load_scenario(o.scenarios.front());
  const auto report =
      ihl::slope_report(scenario.quotient, scenario.section, scenario.radius_schedule(), o.threads);
  if (o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0) {
    std::ostringstream os;
    ihl::write_slope_csv(os, report);
    emit(o.out, os.str());
  } else {
    emit(o.out, ihl::slope_report_json(report));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Options o;
  CLI::App app{"Intrinsic Hopf-Lax semigroup on sampled quotient maps"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a generated scenario");
  gen->add_option("family", o.family, "zero_graph|affine_graph|quadratic_graph|random_lipschitz_graph|finite_partition")
      ->required();
  gen->add_option("size", o.size, "Sample size")->required()->check(CLI::PositiveNumber);
  gen->add_option("seed", o.seed, "64-bit seed")->required();
  gen->add_option("--param", o.param, "Family parameter");
  gen->add_option("--kappa", o.kappa, "Ambient dimension")->check(CLI::Range(2, 64));
  gen->add_option("--out", o.out, "Output path (stdout if omitted)");

  auto add_common = [&](CLI::App* cmd, bool many) {
    auto* opt = cmd->add_option("--scenario", o.scenarios, "Scenario JSON")->required();
    if (!many) opt->expected(1);
    cmd->add_option("--out", o.out, "Output path (stdout if omitted)");
    cmd->add_option("--threads", o.threads, "Worker cap")->check(CLI::Range(1u, 1024u));
  };

  auto* eval = app.add_subcommand("eval", "Sweep the time grid, write CSV");
  add_common(eval, false);
  eval->add_option("--eps", o.eps, "Argmin slack")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run theorem checks, write JSON");
  add_common(verify, true);
  verify->add_option("--checks", o.checks, "Comma-separated check ids or 'all'");
  verify->add_option("--delta", o.delta, "Time cutoff for P_TLIP")->check(CLI::PositiveNumber);
  verify->add_option("--refine", o.refine, "Duality refinement levels")->check(CLI::IsMember({1, 2, 4}));

  auto* slope = app.add_subcommand("slope", "Intrinsic slopes, JSON (or CSV for *.csv)");
  add_common(slope, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*eval) return cmd_eval(o);
    if (*verify) return cmd_verify(o);
    return cmd_slope(o);
  } catch (const ihl::Error& e) {
    spdlog::error("{}: {}", ihl::to_string(e.code()), e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  }
}
