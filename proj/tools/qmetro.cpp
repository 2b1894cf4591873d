// qmetro: precision, scans, optimisation, figure data, bounds and oracle checks.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "qmetro/errors.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kDegenerate = 3, kVerification = 4, kInternal = 1 };

const std::map<std::string, std::string> kFlagHelp{
    {"gamma", "noise rate gamma (1/s)"},
    {"alpha", "noise weights ax,ay,az"},
    {"t1", "relaxation time T1 (s), with --t2"},
    {"t2", "coherence time T2 (s), with --t1"},
    {"epsilon", "parallel fraction of mixed dephasing"},
    {"omega", "field frequency omega (1/s)"},
    {"n", "particle numbers: value, list a,b,c or log range lo:hi:count"},
    {"geometry", "scenario-a | scenario-b | css-x | css-y | ghz"},
    {"mu", "twisting strength(s); excludes --db"},
    {"db", "squeezing in dB (<= 0); list or linear range lo:hi:count"},
    {"t", "interrogation time(s) (s)"},
    {"schedule", "b | a:<s>; replaces --t and --mu/--db"},
    {"t0", "schedule a time prefactor (default 10/gamma)"},
    {"mu0", "schedule a twisting prefactor (default 1)"},
    {"format", "csv | json"},
    {"out", "output path (default stdout)"},
    {"seed", "random seed for oracle draws"},
    {"depth", "check depth: fast | full"},
    {"convention", "squeezing dB convention: wineland | variance-only"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace qmetro;
  using namespace qmetro::cli;

  CLI::App app{"Noisy frequency estimation with squeezed, coherent and GHZ probes"};
  app.footer(columns_help());
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file; flags override it");
    for (const auto& key : config_keys()) sub->add_option("--" + key, flags[key], kFlagHelp.at(key));
  };

  auto* precision = app.add_subcommand("precision", "msqe times T and gain over the coherent state");
  auto* scan = app.add_subcommand("scan", "msqe over every N x t x (mu or dB) combination");
  auto* optimize = app.add_subcommand("optimize", "numerical optimum over t and mu");
  auto* figure = app.add_subcommand("figure", "regenerate figure data");
  auto* bounds = app.add_subcommand("bounds", "bound coefficients and asymptotes");
  auto* check = app.add_subcommand("check", "closed forms against the dense-state oracle");
  std::string figure_name;
  figure->add_option("name", figure_name, "fig2-squeezing | fig2-time | fig3 | fig4")->required();
  for (auto* sub : {precision, scan, optimize, figure, bounds, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& key : config_keys()) {
      const CLI::App* sub = app.get_subcommands().front();
      if (sub->count("--" + key) > 0) apply_setting(cfg, key, flags[key]);
    }
    cfg.resolve();

    if (precision->parsed()) {
      emit(cmd_precision(cfg), cfg);
    } else if (scan->parsed()) {
      emit(cmd_scan(cfg), cfg);
    } else if (optimize->parsed()) {
      emit(cmd_optimize(cfg), cfg);
    } else if (figure->parsed()) {
      emit(cmd_figure(figure_name, cfg), cfg);
    } else if (bounds->parsed()) {
      emit(cmd_bounds(cfg), cfg);
    } else if (check->parsed()) {
      const auto rep = cmd_check(cfg);
      emit(rep.table, cfg);
      if (!rep.passed) {
        std::cerr << "verification failed\n";
        return kVerification;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const UnachievableTarget& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DegenerateSignal& e) {
    std::cerr << "degenerate signal: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
