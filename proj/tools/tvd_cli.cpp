#include "tvd/error.hpp"
#include "tvd/experiments.hpp"
#include "tvd/io.hpp"
#include "tvd/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void log(const std::string& msg) { std::cerr << "tvd: " << msg << '\n'; }

int exit_code_for(tvd::ErrorCode code)
{
  using tvd::ErrorCode;
  switch (code) {
    case ErrorCode::config:
    case ErrorCode::file_format:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::domain_violation:
    case ErrorCode::out_of_support:
    case ErrorCode::covariances_differ:
    case ErrorCode::too_few_samples:
    case ErrorCode::k_too_large:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

struct EstimateArgs
{
  std::string real, synth, method = "dise";
  std::optional<std::string> features, classifier, save_classifier;
  std::uint64_t seed = 42;
  std::optional<std::size_t> n_mc, k;
  std::optional<double> lambda, lambda_c;
};

int cmd_estimate(const EstimateArgs& a)
{
  const tvd::Method method = tvd::parse_method(a.method);
  const tvd::EmbeddingSet real = tvd::read_csv(a.real);
  const tvd::EmbeddingSet synth = tvd::read_csv(a.synth);
  if (real.x.cols() != synth.x.cols())
    throw tvd::Error(tvd::ErrorCode::dimension_mismatch, "real and synthetic files have different column counts");

  tvd::MethodSettings settings;
  if (a.features)
    settings.dise.features = tvd::FeatureMapSpec::parse(*a.features);
  settings.dise.lambda = a.lambda;
  if (a.lambda_c)
    settings.dise.lambda_c = *a.lambda_c;
  if (a.n_mc) {
    settings.n_mc = *a.n_mc;
    settings.kde_n_mc = *a.n_mc;
  }
  settings.knn.k = a.k;
  if ((a.classifier || a.save_classifier) && method != tvd::Method::dise)
    throw tvd::Error(tvd::ErrorCode::config, "--classifier and --save-classifier require --method dise");

  tvd::TvEstimate est;
  if (a.classifier) {
    const tvd::FittedClassifier clf = tvd::classifier_from_json(tvd::read_json_file(*a.classifier));
    est = tvd::tv_from_classifier(clf, tvd::stack_labeled(real.x, synth.x), true);
  } else if (a.save_classifier) {
    const tvd::HeldOutSplit split = tvd::holdout_split(settings.dise, real.x, synth.x, a.seed);
    tvd::DiseConfig cfg = settings.dise;
    const tvd::FittedClassifier clf = tvd::fit(cfg, split.train);
    est = tvd::tv_from_classifier(clf, split.eval, false);
    std::ofstream out(*a.save_classifier);
    if (!out)
      throw tvd::Error(tvd::ErrorCode::file_format, "cannot write " + *a.save_classifier);
    out << tvd::classifier_to_json(clf).dump(2) << '\n';
    log("classifier written to " + *a.save_classifier);
  } else {
    est = tvd::run_method(method, tvd::stack_labeled(real.x, synth.x), nullptr, settings, a.seed);
  }
  nlohmann::json j = tvd::to_json(est);
  j["seed"] = a.seed;
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_simulate(const std::string& config, const std::string& out_dir, std::optional<std::size_t> threads,
                 std::optional<std::uint64_t> seed, bool timing)
{
  tvd::SimulationConfig cfg = tvd::simulation_config_from_json(tvd::read_json_file(config));
  if (threads)
    cfg.threads = *threads;
  if (seed)
    cfg.base_seed = *seed;
  if (timing)
    cfg.timing = true;
  log("simulating p=" + std::to_string(cfg.p) + ", " + std::to_string(cfg.n_replications) + " replications");
  const tvd::SimulationResult res = tvd::run_simulation(cfg);
  for (const auto& f : res.failures)
    log("failure: " + f);
  tvd::write_simulation_outputs(cfg, res, out_dir);
  log("outputs written to " + out_dir);
  std::cout << tvd::summary_csv(res.summary);
  return 0;
}

int cmd_rank(const std::string& config, const std::optional<std::string>& out, std::optional<std::size_t> threads,
             std::optional<std::uint64_t> seed)
{
  const std::string base = std::filesystem::path(config).parent_path().string();
  tvd::RankingTask task = tvd::ranking_task_from_json(tvd::read_json_file(config), base);
  if (threads)
    task.threads = *threads;
  if (seed)
    task.seed = *seed;
  nlohmann::json report = tvd::run_ranking(task).to_json();
  report["seed"] = task.seed;
  if (out) {
    std::ofstream f(*out);
    if (!f)
      throw tvd::Error(tvd::ErrorCode::file_format, "cannot write " + *out);
    f << report.dump(2) << '\n';
  }
  std::cout << report.dump() << '\n';
  return 0;
}

int cmd_oracle(const std::string& spec, const std::string& method, std::size_t n_mc, std::uint64_t seed, double tol)
{
  const tvd::MixturePair pair = tvd::pair_from_json(tvd::read_json_file(spec));
  nlohmann::json j;
  j["method"] = method;
  if (method == "mc") {
    const tvd::TvEstimate est = tvd::mc_true_tv(pair, n_mc, seed);
    j["tv"] = est.tv;
    j["error_estimate"] = est.diag("se");
    j["n_mc"] = n_mc;
    j["seed"] = seed;
  } else if (method == "quad") {
    j["tv"] = tvd::quadrature_tv_1d(pair.p, pair.q, tol);
    j["error_estimate"] = tol;
  } else if (method == "closed") {
    const tvd::GaussianParams* gp = pair.p.as_gaussian();
    const tvd::GaussianParams* gq = pair.q.as_gaussian();
    if (!gp || !gq)
      throw tvd::Error(tvd::ErrorCode::config, "closed form needs two Gaussian distributions");
    j["tv"] = tvd::closed_form_tv_equal_cov(*gp, *gq);
    j["error_estimate"] = 0.0;
  } else {
    throw tvd::Error(tvd::ErrorCode::config, "oracle method must be mc, quad or closed");
  }
  std::cout << j.dump() << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Total variation distance estimation from samples"};
  app.set_version_flag("--version", std::string(tvd::kLibraryVersion));
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run the replicated Gaussian simulation study");
  std::string sim_config, sim_out = "results";
  std::optional<std::size_t> sim_threads;
  std::optional<std::uint64_t> sim_seed;
  bool sim_timing = false;
  sim->add_option("--config", sim_config, "JSON simulation config")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", sim_out, "Output directory for records.csv, summary.csv, manifest.json");
  sim->add_option("--threads", sim_threads, "Worker threads (default: logical cores)");
  sim->add_option("--seed", sim_seed, "Override the config base_seed");
  sim->add_flag("--timing", sim_timing, "Record wall-clock times per method");

  auto* est = app.add_subcommand("estimate", "Estimate TV between two CSV sample files");
  EstimateArgs ea;
  est->add_option("--real", ea.real, "Real samples (headerless CSV)")->required();
  est->add_option("--synth", ea.synth, "Synthetic samples (headerless CSV)")->required();
  est->add_option("--method", ea.method, "dise|pe|kde|nnre|ee")->capture_default_str();
  est->add_option("--features", ea.features, "Feature map tag, e.g. gq:p=3 or t1:exp-gamma");
  est->add_option("--seed", ea.seed, "Seed for splits and Monte Carlo draws")->capture_default_str();
  est->add_option("--n-mc", ea.n_mc, "Monte Carlo draws for pe/kde");
  est->add_option("--k", ea.k, "Neighbour count for nnre/ee");
  est->add_option("--lambda", ea.lambda, "Fixed ridge penalty for dise");
  est->add_option("--lambda-c", ea.lambda_c, "Constant in the automatic dise penalty");
  est->add_option("--classifier", ea.classifier, "Evaluate a saved dise classifier on all rows");
  est->add_option("--save-classifier", ea.save_classifier, "Write the fitted dise classifier as JSON");

  auto* rank = app.add_subcommand("rank", "Rank candidate embedding sets by TV to a real set");
  std::string rank_config;
  std::optional<std::string> rank_out;
  std::optional<std::size_t> rank_threads;
  std::optional<std::uint64_t> rank_seed;
  rank->add_option("--config", rank_config, "JSON ranking task")->required()->check(CLI::ExistingFile);
  rank->add_option("--out", rank_out, "Also write the report to this file");
  rank->add_option("--threads", rank_threads, "Worker threads (default: logical cores)");
  rank->add_option("--seed", rank_seed, "Override the task seed");

  auto* orc = app.add_subcommand("oracle", "Ground-truth TV for a distribution pair");
  std::string orc_spec, orc_method = "mc";
  std::size_t orc_n_mc = 1000000;
  std::uint64_t orc_seed = 42;
  double orc_tol = 1e-8;
  orc->add_option("--spec", orc_spec, "JSON pair {\"p\": ..., \"q\": ...}")->required()->check(CLI::ExistingFile);
  orc->add_option("--method", orc_method, "mc|quad|closed")->capture_default_str();
  orc->add_option("--n-mc", orc_n_mc, "Monte Carlo draws")->capture_default_str();
  orc->add_option("--seed", orc_seed, "Monte Carlo seed")->capture_default_str();
  orc->add_option("--tol", orc_tol, "Quadrature tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim)
      return cmd_simulate(sim_config, sim_out, sim_threads, sim_seed, sim_timing);
    if (*est)
      return cmd_estimate(ea);
    if (*rank)
      return cmd_rank(rank_config, rank_out, rank_threads, rank_seed);
    if (*orc)
      return cmd_oracle(orc_spec, orc_method, orc_n_mc, orc_seed, orc_tol);
  } catch (const tvd::Error& e) {
    log(std::string("error [") + tvd::to_string(e.code()) + "]: " + e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log(std::string("error: ") + e.what());
    return kExitNumeric;
  }
  return kExitConfig;
}
