#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "botminer/error.hpp"
#include "botminer/pipeline.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  botminer::ConfigOverrides overrides;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment config (JSON)");
  cmd->add_option("--dataset", f.overrides.dataset, "Dataset manifest (JSON)");
  cmd->add_option("--seed", f.overrides.seed, "Random seed");
  cmd->add_option("--method", f.overrides.method,
                  "Ranking method: chi2, mutual_info, fisher, rf_importance");
  cmd->add_option("--models", f.overrides.models, "Comma-separated model ids");
  cmd->add_option("--k-max", f.overrides.k_max, "Largest feature count tried by select");
  cmd->add_option("--out", f.overrides.out, "Output directory");
  cmd->add_option("--threads", f.overrides.threads, "Worker thread cap")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"botminer: social bot detection features and classifiers"};
  app.require_subcommand(1);

  Flags flags;
  std::string report_dir;
  struct Stage {
    const char* name;
    const char* help;
    void (*run)(const botminer::ExperimentConfig&);
  };
  const Stage stages[] = {
      {"extract", "Ingest a dataset and write the feature matrix", botminer::cmd_extract},
      {"rank", "Rank features with all four methods", botminer::cmd_rank},
      {"select", "Top-k selection curve for the configured method", botminer::cmd_select},
      {"train", "Cross-validate every configured model", botminer::cmd_train},
      {"ablate", "Account-only, content-only and combined runs", botminer::cmd_ablate},
      {"run", "extract, rank, select, train, ablate and report", botminer::cmd_run},
  };
  std::vector<std::pair<CLI::App*, const Stage*>> commands;
  for (const Stage& s : stages) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, flags);
    commands.emplace_back(cmd, &s);
  }
  CLI::App* report = app.add_subcommand("report", "Merge stage results into report files");
  report->add_option("--out", report_dir, "Output directory holding stage results")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (report->parsed()) {
      botminer::cmd_report(report_dir);
      return 0;
    }
    for (const auto& [cmd, stage] : commands) {
      if (!cmd->parsed()) continue;
      std::optional<std::filesystem::path> config;
      if (flags.config) config = *flags.config;
      const auto cfg = botminer::resolve_config(config, flags.overrides);
      stage->run(cfg);
    }
  } catch (const botminer::Error& e) {
    std::fprintf(stderr, "botminer: %s\n", e.what());
    return botminer::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "botminer: %s\n", e.what());
    return 3;
  }
  return 0;
}
