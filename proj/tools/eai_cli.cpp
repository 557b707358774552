// eai: command-line driver for remove-and-retrain / permute-and-retrain
// campaigns with expected accuracy intervals.
//
// Exit codes: 0 success, 1 usage error, 2 data or model error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eai/eai.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  // File source.
  std::string data_path;
  std::string target;
  std::string task;
  std::vector<std::string> features;
  std::size_t per_class = 0;
  // Synthetic source.
  std::size_t samples = 0;
  std::size_t informative = 0;
  std::size_t redundant = 0;
  std::size_t noise = 0;
  double separation = 1.0;

  std::string method = "shap";
  std::size_t repeats = 5;
  std::uint64_t seed = 42;
  std::string mode;
  bool clamp_band = false;
  double holdout = 0.0;
  std::string out;

  bool synthetic() const { return samples > 0 || informative > 0; }

  // Canonical flag list; re-running it reproduces the outputs.
  std::string echo() const {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << command;
    if (!data_path.empty()) {
      s << " --data " << data_path << " --target " << target << " --task " << task;
      if (!features.empty()) {
        s << " --features ";
        for (std::size_t i = 0; i < features.size(); ++i) s << (i ? "," : "") << features[i];
      }
      if (per_class) s << " --per-class " << per_class;
    } else {
      s << " --samples " << samples << " --informative " << informative << " --redundant "
        << redundant << " --noise " << noise << " --separation " << separation;
    }
    if (command == "roar" || command == "permute" || command == "fcp")
      s << " --method " << method << " --repeats " << repeats;
    s << " --seed " << seed;
    if (holdout > 0.0) s << " --holdout " << holdout;
    if (clamp_band) s << " --clamp-band";
    if (!out.empty() && command != "fcp") s << " --out " << out;
    return s.str();
  }
};

eai::Dataset load_dataset(const RunConfig& cfg) {
  if (!cfg.data_path.empty() && cfg.synthetic())
    throw UsageError("give either --data or the synthetic flags (--samples/--informative), not both");
  if (cfg.data_path.empty() && !cfg.synthetic())
    throw UsageError("no data source: pass --data <csv> --target <column> --task <kind>, or --samples/--informative");

  if (cfg.synthetic()) {
    if (cfg.samples == 0 || cfg.informative == 0)
      throw UsageError("synthetic data needs both --samples and --informative (>= 1)");
    eai::SyntheticSpec spec{cfg.samples, cfg.informative, cfg.redundant, cfg.noise, cfg.separation, cfg.seed};
    return eai::generate_synthetic(spec).data;
  }

  if (cfg.target.empty()) throw UsageError("--data requires --target");
  if (cfg.task.empty()) throw UsageError("--data requires --task classification|regression");
  const auto task = cfg.task == "classification" ? eai::Task::Classification : eai::Task::Regression;
  std::optional<std::vector<std::string>> whitelist;
  if (!cfg.features.empty()) whitelist = cfg.features;
  eai::Dataset d = eai::load_csv(cfg.data_path, cfg.target, task, whitelist);
  if (cfg.per_class > 0) d = eai::balanced_subsample(d, cfg.per_class, cfg.seed);
  return d;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw eai::DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw eai::DataError("failed writing '" + path + "'");
}

eai::AttributionMethod parse_method(const std::string& m) {
  return m == "perm" ? eai::AttributionMethod::PermutationImportance : eai::AttributionMethod::LinearShap;
}

int cmd_campaign(const RunConfig& cfg) {
  const eai::Mode mode = cfg.command == "roar" ? eai::Mode::Roar : eai::Mode::Permute;
  if (!cfg.mode.empty() && cfg.mode != cfg.command)
    throw UsageError("--mode " + cfg.mode + " conflicts with subcommand '" + cfg.command + "'");
  const eai::Dataset d = load_dataset(cfg);

  eai::CampaignOptions opts;
  opts.mode = mode;
  opts.method = parse_method(cfg.method);
  opts.seed = cfg.seed;
  opts.repeats = cfg.repeats;
  opts.holdout_fraction = cfg.holdout;
  eai::CampaignReport report = eai::run_campaign(d, opts);
  if (cfg.clamp_band) report = eai::clamp_bands(report);

  for (const auto& rec : report.records)
    if (!rec.diagnostic.empty())
      std::cerr << "eai: iteration " << rec.iteration << ": " << rec.diagnostic << '\n';

  std::ostringstream txt;
  txt << "# command: " << cfg.echo() << '\n'
      << "# mode: " << eai::to_string(report.mode) << '\n'
      << "# method: " << eai::to_string(report.method) << '\n'
      << "# task: " << eai::to_string(report.task) << '\n'
      << "# seed: " << report.seed << '\n'
      << "# dataset: " << report.dataset_digest << " (" << d.rows() << " rows, " << d.cols()
      << " features)\n"
      << "# model: C=" << report.model_defaults.inverse_regularization
      << " threshold=" << report.model_defaults.threshold
      << " max_iterations=" << report.model_defaults.max_iterations << '\n'
      << eai::render_campaign_table(report);
  if (report.truncated) txt << "# truncated: " << report.records.back().diagnostic << '\n';

  write_file(cfg.out + "_campaign.csv", eai::to_csv(report));
  write_file(cfg.out + "_campaign.txt", txt.str());
  const std::string title = eai::to_string(report.mode) + " / " + eai::to_string(report.method);
  write_file(cfg.out + "_trajectory.svg", eai::render_trajectory_svg(eai::trajectory_plot(report, title)));

  const auto& first = report.records.front();
  std::cout << cfg.command << ": records=" << report.records.size() << " MSF[1]=" << first.msf
            << " acc[1]=" << eai::detail::fixed4(first.accuracy);
  if (first.band)
    std::cout << " band[1]=[" << eai::detail::fixed4(first.band->lower) << ", "
              << eai::detail::fixed4(first.band->upper) << "]";
  if (report.records.size() >= 2 && !report.truncated)
    std::cout << " hit_rate=" << eai::detail::fixed4(eai::band_hit_rate(report));
  std::cout << " seed=" << report.seed << " digest=" << report.dataset_digest << '\n';
  return report.truncated ? kDataError : 0;
}

int cmd_corr(const RunConfig& cfg) {
  const eai::Dataset d = load_dataset(cfg);
  auto names = d.feature_names();
  names.push_back(cfg.target.empty() ? std::string("target") : cfg.target);
  const std::string path = cfg.out + "_corr.csv";
  write_file(path, eai::render_corr_csv(eai::pearson_matrix(d, true), names));
  std::cout << "corr: " << names.size() << "x" << names.size() << " matrix written to " << path
            << " seed=" << cfg.seed << '\n';
  return 0;
}

int cmd_gen_sim(const RunConfig& cfg) {
  if (!cfg.data_path.empty()) throw UsageError("gen-sim does not read --data");
  if (!cfg.synthetic()) throw UsageError("gen-sim needs --samples and --informative");
  const eai::Dataset d = load_dataset(cfg);
  std::ostringstream csv;
  eai::write_csv(d, csv);
  write_file(cfg.out, csv.str());
  std::size_t ones = 0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) ones += d.target()(i) == 1.0;
  std::cout << "gen-sim: " << d.rows() << " rows, " << d.cols() << " features, class0="
            << d.rows() - static_cast<Eigen::Index>(ones) << " class1=" << ones << " -> " << cfg.out
            << " seed=" << cfg.seed << '\n';
  return 0;
}

int cmd_fcp(const RunConfig& cfg) {
  const eai::Dataset d = load_dataset(cfg);
  const eai::FittedModel m = eai::fit(d);
  const double acc = eai::score(m, d);
  const eai::AttributionResult a = parse_method(cfg.method) == eai::AttributionMethod::LinearShap
                                       ? eai::linear_shap(m, d)
                                       : eai::permutation_importance(m, d, cfg.repeats, cfg.seed);
  const auto [msf, smsf] = eai::most_significant(a);
  const double fcp = eai::compute_fcp(smsf, a.global_scores);
  eai::EaiBand band = eai::compute_band(acc, fcp);
  if (cfg.clamp_band) band = eai::clamp_band(band, d.task() == eai::Task::Classification ? 0.0 : -HUGE_VAL, 1.0);
  std::cout << "acc=" << eai::detail::fixed4(acc) << " msf=" << msf << " fcp=" << eai::detail::fixed4(fcp)
            << " band=[" << eai::detail::fixed4(band.lower) << ", " << eai::detail::fixed4(band.upper)
            << "] seed=" << cfg.seed << '\n';
  return 0;
}

void add_source_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--data", cfg.data_path, "CSV file (comma or semicolon delimited)");
  app->add_option("--target", cfg.target, "Target column name");
  app->add_option("--task", cfg.task, "classification|regression")
      ->check(CLI::IsMember({"classification", "regression"}));
  app->add_option("--features", cfg.features, "Comma-separated feature whitelist")->delimiter(',');
  app->add_option("--per-class", cfg.per_class, "Balanced subsample size per class")
      ->check(CLI::PositiveNumber);
  app->add_option("--samples", cfg.samples, "Synthetic: number of samples")->check(CLI::PositiveNumber);
  app->add_option("--informative", cfg.informative, "Synthetic: informative features")
      ->check(CLI::PositiveNumber);
  app->add_option("--redundant", cfg.redundant, "Synthetic: redundant features")->check(CLI::NonNegativeNumber);
  app->add_option("--noise", cfg.noise, "Synthetic: noise features")->check(CLI::NonNegativeNumber);
  app->add_option("--separation", cfg.separation, "Synthetic: class mean separation")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", cfg.seed, "Random seed (default 42)");
}

void add_model_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--method", cfg.method, "Attribution: shap|perm")->check(CLI::IsMember({"shap", "perm"}));
  app->add_option("--repeats", cfg.repeats, "Permutation repeats")->check(CLI::PositiveNumber);
  app->add_flag("--clamp-band", cfg.clamp_band, "Clamp bands to the metric's range in outputs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected accuracy intervals for remove-and-retrain and permutation campaigns"};
  app.require_subcommand(1);
  RunConfig cfg;

  for (const char* name : {"roar", "permute"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == std::string("roar")
                                             ? "Remove the top feature and retrain, n times"
                                             : "Permute the top feature and retrain, n times");
    add_source_flags(sub, cfg);
    add_model_flags(sub, cfg);
    sub->add_option("--mode", cfg.mode, "roar|permute (must match the subcommand)")
        ->check(CLI::IsMember({"roar", "permute"}));
    sub->add_option("--holdout", cfg.holdout, "Fraction of rows held out for scoring (default 0)")
        ->check(CLI::Range(0.0, 0.9));
    sub->add_option("--out", cfg.out, "Output prefix")->default_val("eai");
  }
  auto* corr = app.add_subcommand("corr", "Write the Pearson correlation matrix (features + target)");
  add_source_flags(corr, cfg);
  corr->add_option("--out", cfg.out, "Output prefix")->default_val("eai");

  auto* gen = app.add_subcommand("gen-sim", "Generate a synthetic classification CSV");
  add_source_flags(gen, cfg);
  gen->add_option("--out", cfg.out, "Output CSV path")->required();

  auto* fcp = app.add_subcommand("fcp", "Fit once and print accuracy, MSF, FCP and the band");
  add_source_flags(fcp, cfg);
  add_model_flags(fcp, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    std::cerr << "eai: config: " << cfg.echo() << '\n';
    if (cfg.command == "roar" || cfg.command == "permute") return cmd_campaign(cfg);
    if (cfg.command == "corr") return cmd_corr(cfg);
    if (cfg.command == "gen-sim") return cmd_gen_sim(cfg);
    return cmd_fcp(cfg);
  } catch (const UsageError& e) {
    std::cerr << "eai: usage error: " << e.what() << "\n       run 'eai " << cfg.command
              << " --help' for the flag list\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "eai: error: " << e.what() << '\n';
    return kDataError;
  }
}
