#pragma once

#include "tvd/baselines.hpp"
#include "tvd/dise.hpp"
#include "tvd/distributions.hpp"
#include "tvd/estimate.hpp"
#include "tvd/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tvd {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class Method
{
  dise,
  pe,
  kde,
  nnre,
  ee
};

const char* method_name(Method m);
Method parse_method(const std::string& name);
std::vector<Method> all_methods();

//! Tuning shared by every estimator in a run.
struct MethodSettings
{
  DiseConfig dise;
  //! Monte Carlo draws for PE.
  std::size_t n_mc = kDefaultMcDraws;
  //! Monte Carlo draws for KDE; each draw costs a pass over both samples.
  std::size_t kde_n_mc = 10000;
  KnnConfig knn;
};

//! Runs one estimator. `train` is labeled (real = 1); DisE evaluates on `test`
//! when given, otherwise on a held-out split. Baselines use `train` split by
//! label.
TvEstimate run_method(Method m,
                      const Dataset& train,
                      const Dataset* test,
                      const MethodSettings& settings,
                      std::uint64_t seed);

struct NoiseMatrix
{
  DenseMatrix e;
  //! Diagonal shift applied so that I + E factorizes (0 when none was needed).
  double shift = 0.0;
};

//! E = (A + A^T) / 2 with A_ij ~ N(0, s^2). If I + E does not factorize, E is
//! shifted by (|g| + 1e-6) I where g is the most negative Gershgorin lower
//! bound of I + E.
NoiseMatrix make_noise_matrix(std::size_t p, double s, std::uint64_t seed);

enum class NoiseTarget
{
  covariance,
  samples
};

struct SimulationConfig
{
  std::size_t p = 2;
  std::size_t n_train = 10000;
  std::size_t n_test = 50000;
  std::size_t n_replications = 20;
  //! Scale of E (covariance target) or sd of the noise added to synthetic
  //! rows (samples target).
  double noise_scale = 0.1;
  NoiseTarget noise_target = NoiseTarget::covariance;
  //! Scale of E when noise_target is samples.
  double cov_noise_scale = 0.1;
  std::vector<Method> methods = all_methods();
  std::uint64_t base_seed = 42;
  //! mu2 = t * u with u ~ U[0,1]^p; t = 1 unless mu2_mode is "scaled(t)".
  double mu2_scale = 1.0;
  bool mu2_scaled = false;
  //! PE draws; defaults to n_test.
  std::optional<std::size_t> n_mc;
  std::size_t kde_n_mc = 10000;
  double lambda_c = kDefaultLambdaC;
  std::optional<std::size_t> k;
  std::size_t threads = 0;
  //! Wall-clock timings make records.csv differ between runs.
  bool timing = false;

  void validate() const;
  std::string mu2_mode() const;
};

SimulationConfig simulation_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimulationConfig& cfg);

struct ReplicationRecord
{
  std::size_t replication_id = 0;
  Method method = Method::dise;
  double tv_est = 0.0;
  double tv_true = 0.0;
  double abs_error = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
};

struct SummaryRow
{
  Method method = Method::dise;
  double mean_abs_error = 0.0;
  double sd_abs_error = 0.0;
  std::size_t n_replications = 0;
};

struct SimulationResult
{
  std::vector<ReplicationRecord> records;
  std::vector<SummaryRow> summary;
  std::vector<double> noise_shifts;
  std::vector<std::string> failures;
};

//! Replication study over an arbitrary pair generator: for replication r with
//! seed_r = base_seed ^ r, draw the pair, a train mixture and a test mixture,
//! compute the Monte Carlo truth with n_test draws and run every method.
struct PairStudy
{
  std::size_t n_train = 10000;
  std::size_t n_test = 50000;
  std::size_t n_replications = 20;
  std::vector<Method> methods{Method::dise};
  std::uint64_t base_seed = 42;
  //! sd of Gaussian noise added to synthetic train and test rows after
  //! sampling; the truth stays that of the clean pair.
  double sample_noise = 0.0;
  MethodSettings settings;
  std::size_t threads = 0;
  bool timing = false;
};

using PairFactory = std::function<MixturePair(std::uint64_t replication_seed)>;

SimulationResult run_pair_study(const PairFactory& make_pair, const PairStudy& study);

//! The Gaussian setting P = N(0, I), Q = N(mu2, I + E).
SimulationResult run_simulation(const SimulationConfig& cfg);

//! mean and sample sd of abs_error per method, NaN rows skipped.
std::vector<SummaryRow> summarize(const std::vector<ReplicationRecord>& records,
                                  const std::vector<Method>& methods);

std::string records_csv(const std::vector<ReplicationRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& summary);
//! Writes records.csv, summary.csv and manifest.json into `dir`.
void write_simulation_outputs(const SimulationConfig& cfg, const SimulationResult& result, const std::string& dir);

// Fidelity ranking ----------------------------------------------------------

enum class RankOrder
{
  best_to_worst,
  worst_to_best
};

struct CandidateSet
{
  std::string name;
  std::string path;
};

struct RankingTask
{
  std::string real_embeddings;
  std::vector<CandidateSet> candidate_sets;
  bool per_class = false;
  std::vector<Method> methods{Method::dise};
  //! Declared fidelity order of candidate_sets.
  RankOrder order = RankOrder::best_to_worst;
  std::uint64_t seed = 42;
  MethodSettings settings;
  std::size_t threads = 0;
};

//! Relative paths resolve against base_dir.
RankingTask ranking_task_from_json(const nlohmann::json& j, const std::string& base_dir = "");

struct CandidateScore
{
  std::string name;
  double tv_mean = 0.0;
  //! Spread across classes (0 for a single group).
  double tv_sd = 0.0;
  //! Standard error of tv_mean, used for tie detection.
  double noise = 0.0;
  std::size_t n_groups = 0;
};

struct MethodRanking
{
  Method method = Method::dise;
  std::vector<CandidateScore> scores;
  //! Candidate names from smallest to largest TV (highest fidelity first).
  std::vector<std::string> ordering;
  bool ties = false;
  bool correct_ranking = false;
};

struct RankingReport
{
  std::vector<MethodRanking> methods;
  nlohmann::json to_json() const;
};

//! Adjacent candidates (in declared order) tie when their TVs differ by at
//! most 2 * sqrt(noise_a^2 + noise_b^2). A ranking is correct only when the
//! TVs follow the declared order strictly and no adjacent pair ties.
RankingReport rank_candidates(const EmbeddingSet& real,
                              const std::vector<std::pair<std::string, EmbeddingSet>>& candidates,
                              const RankingTask& task);

RankingReport run_ranking(const RankingTask& task);

} // namespace tvd
