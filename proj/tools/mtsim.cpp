// mtsim: maker-taker fee market simulator.
//
//   mtsim run      --rebate 0.05% --seed 7 --out run.csv
//   mtsim sweep    --seeds 1-10 --t-end 200000 --jobs 4 --out sweep.csv
//   mtsim validate --seeds 1-5

#include "mtsim/config.hpp"
#include "mtsim/csv.hpp"
#include "mtsim/experiment.hpp"
#include "mtsim/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

namespace {

constexpr int kExitConfigError = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::int64_t> t_end;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key=value parameter file");
  cmd->add_option("--set", opts.overrides, "Override one parameter, key=value (repeatable)");
  cmd->add_option("--t-end", opts.t_end, "Number of steps to simulate");
}

mtsim::SimConfig load(const CommonOptions& opts) {
  mtsim::SimConfig cfg;
  if (!opts.config_path.empty()) cfg = mtsim::load_config_file(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw mtsim::ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
  }
  if (opts.t_end) cfg.t_end = *opts.t_end;
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mtsim::ConfigError("cannot open '" + path + "' for writing");
  return out;
}

mtsim::FeeSchedule schedule_for(const mtsim::SimConfig& cfg, const std::string& rebate, bool no_fees) {
  if (no_fees) return mtsim::no_fee_schedule(cfg.re_m);
  mtsim::Rate r_m;
  if (!rebate.empty()) {
    try {
      r_m = mtsim::Rate::parse(rebate);
    } catch (const std::invalid_argument& e) {
      throw mtsim::ConfigError(std::string("--rebate: ") + e.what());
    }
  }
  return mtsim::fee_schedule_from_rebate(r_m, cfg.re_m, cfg.r_ex);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based market simulator with maker-taker fees"};
  app.require_subcommand(1);

  // run
  CommonOptions run_common;
  std::optional<std::uint64_t> run_seed;
  std::string run_rebate;
  bool run_no_fees = false;
  std::string run_out, run_events, run_trades, run_prices;
  auto* run_cmd = app.add_subcommand("run", "Simulate one market and write its metrics row");
  add_common(run_cmd, run_common);
  run_cmd->add_option("--seed", run_seed, "RNG seed");
  auto* rebate_opt = run_cmd->add_option("--rebate", run_rebate, "Maker rebate R_M, e.g. 0.05% or 0.0005");
  run_cmd->add_flag("--no-fees", run_no_fees, "Market without maker-taker fees")->excludes(rebate_opt);
  run_cmd->add_option("--out", run_out, "Metrics CSV (default: stdout)");
  run_cmd->add_option("--log-events", run_events, "Order book event log CSV");
  run_cmd->add_option("--trades", run_trades, "Trade log CSV");
  run_cmd->add_option("--prices", run_prices, "Price series CSV");

  // sweep
  CommonOptions sweep_common;
  std::string sweep_seeds = "1-30";
  std::string sweep_rebates;
  bool sweep_no_baseline = false;
  unsigned sweep_jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string sweep_out;
  bool sweep_quiet = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the rebate grid over many seeds");
  add_common(sweep_cmd, sweep_common);
  sweep_cmd->add_option("--seeds", sweep_seeds, "Seed list, e.g. 1-30 or 1,2,5")->capture_default_str();
  sweep_cmd->add_option("--rebates", sweep_rebates, "Comma-separated rebates (default: standard 12-row grid)");
  sweep_cmd->add_flag("--no-baseline", sweep_no_baseline, "Omit the market without maker-taker fees");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Sweep CSV (default: stdout)");
  sweep_cmd->add_flag("--quiet", sweep_quiet, "No progress output");

  // validate
  CommonOptions val_common;
  std::string val_seeds;
  bool val_gaussian = false;
  auto* val_cmd = app.add_subcommand("validate", "Check fat tails and volatility clustering at zero rebate");
  add_common(val_cmd, val_common);
  val_cmd->add_option("--seeds,--seed", val_seeds, "Seed list (default: config seed)");
  val_cmd->add_flag("--synthetic-gaussian", val_gaussian, "Negative control: i.i.d. Gaussian returns");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      mtsim::SimConfig cfg = load(run_common);
      if (run_seed) cfg.seed = *run_seed;
      const mtsim::FeeSchedule fee = schedule_for(cfg, run_rebate, run_no_fees);

      mtsim::SimOptions options;
      options.record_trades = !run_trades.empty();
      std::ofstream events;
      std::unique_ptr<mtsim::csv::EventLogWriter> event_writer;
      if (!run_events.empty()) {
        events = open_out(run_events);
        event_writer = std::make_unique<mtsim::csv::EventLogWriter>(events, cfg.delta_p);
        options.event_sink = [w = event_writer.get()](const mtsim::BookEvent& e) { (*w)(e); };
      }
      const mtsim::RunResult result = mtsim::run(cfg, fee, options);

      if (!run_trades.empty()) {
        std::ofstream out = open_out(run_trades);
        mtsim::csv::write_trade_log(out, result.trades, result.fee, cfg.p_f, cfg.delta_p);
      }
      if (!run_prices.empty()) {
        std::ofstream out = open_out(run_prices);
        mtsim::csv::write_price_series(out, result.prices);
      }
      const mtsim::MetricsRow row = mtsim::make_row(result);
      if (run_out.empty()) {
        mtsim::write_csv_header(std::cout);
        mtsim::write_csv_row(std::cout, row);
      } else {
        std::ofstream out = open_out(run_out);
        mtsim::write_csv_header(out);
        mtsim::write_csv_row(out, row);
      }
      return 0;
    }

    if (*sweep_cmd) {
      mtsim::SweepSpec spec;
      spec.config = load(sweep_common);
      spec.seeds = mtsim::parse_seed_list(sweep_seeds);
      if (!sweep_rebates.empty()) {
        spec.grid.clear();
        for (mtsim::Rate r : mtsim::parse_rate_list(sweep_rebates)) spec.grid.push_back(mtsim::GridPoint::with_rebate(r));
        if (!sweep_no_baseline) spec.grid.push_back(mtsim::GridPoint::baseline());
      } else if (sweep_no_baseline) {
        spec.grid.pop_back();
      }
      mtsim::SweepProgress progress;
      if (!sweep_quiet) {
        progress = [](std::size_t done, std::size_t total) {
          std::cerr << "\r" << done << "/" << total << " runs" << (done == total ? "\n" : "") << std::flush;
        };
      }
      const mtsim::SweepResult result = mtsim::run_sweep(spec, sweep_jobs, progress);
      if (sweep_out.empty()) {
        result.write_csv(std::cout);
      } else {
        std::ofstream out = open_out(sweep_out);
        result.write_csv(out);
      }
      return 0;
    }

    if (*val_cmd) {
      const mtsim::SimConfig cfg = load(val_common);
      mtsim::ValidationOptions options;
      options.seeds = val_seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : mtsim::parse_seed_list(val_seeds);
      options.synthetic_gaussian = val_gaussian;
      const mtsim::ValidationReport report = mtsim::validate_stylized_facts(cfg, options);
      mtsim::print_validation_report(std::cout, report);
      return report.pass ? 0 : 1;
    }
  } catch (const mtsim::ConfigError& e) {
    std::cerr << "mtsim: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "mtsim: " << e.what() << '\n';
    return kExitConfigError;
  }
  return 0;
}
