#include "tvd/experiments.hpp"

#include "tvd/error.hpp"
#include "tvd/oracle.hpp"
#include "tvd/parallel.hpp"
#include "tvd/rng.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tvd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sub-stream tags under a replication seed.
enum StreamTag : std::uint64_t
{
  kStreamMean = 1,
  kStreamNoiseMatrix = 2,
  kStreamTrain = 3,
  kStreamTest = 4,
  kStreamTruth = 5,
  kStreamSampleNoise = 6,
  kStreamMethodBase = 16
};

void add_synthetic_noise(Dataset& data, double sd, Rng& rng)
{
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data.labels[i] == kSynthLabel)
      for (double& v : data.x.row(i))
        v += sd * rng.normal();
}

template <class T>
T get_field(const nlohmann::json& j, const char* key)
{
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("field '") + key + "': " + e.what());
  }
}

double mean_of(const std::vector<double>& v)
{
  double s = 0.0;
  for (double x : v)
    s += x;
  return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

double sample_sd_of(const std::vector<double>& v)
{
  if (v.size() < 2)
    return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

const char* method_name(Method m)
{
  switch (m) {
    case Method::dise: return "dise";
    case Method::pe: return "pe";
    case Method::kde: return "kde";
    case Method::nnre: return "nnre";
    case Method::ee: return "ee";
  }
  return "?";
}

Method parse_method(const std::string& name)
{
  for (Method m : all_methods())
    if (name == method_name(m))
      return m;
  throw Error(ErrorCode::config, "unknown method '" + name + "' (expected dise, pe, kde, nnre or ee)");
}

std::vector<Method> all_methods() { return {Method::dise, Method::pe, Method::kde, Method::nnre, Method::ee}; }

TvEstimate run_method(Method m,
                      const Dataset& train,
                      const Dataset* test,
                      const MethodSettings& settings,
                      std::uint64_t seed)
{
  if (m == Method::dise) {
    if (test)
      return estimate_tv(settings.dise, train, *test);
    const auto [real, synth] = split_by_label(train);
    return estimate_tv(settings.dise, real, synth, seed);
  }
  const auto [real, synth] = split_by_label(train);
  switch (m) {
    case Method::pe: return pe_estimate(real, synth, settings.n_mc, seed);
    case Method::kde: return kde_estimate(real, synth, settings.kde_n_mc, seed);
    case Method::nnre: return nnre_estimate(real, synth, settings.knn);
    case Method::ee: return ee_estimate(real, synth, settings.knn, seed);
    case Method::dise: break;
  }
  throw Error(ErrorCode::config, "unreachable method");
}

NoiseMatrix make_noise_matrix(std::size_t p, double s, std::uint64_t seed)
{
  if (!(s >= 0.0))
    throw Error(ErrorCode::config, "noise scale must be >= 0");
  Rng rng(seed);
  DenseMatrix a(p, p);
  for (double& v : a.data())
    v = s * rng.normal();
  NoiseMatrix out;
  out.e = DenseMatrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out.e(i, j) = 0.5 * (a(i, j) + a(j, i));

  try {
    (void)cholesky(DenseMatrix::identity(p) + out.e);
    return out;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_positive_definite)
      throw;
  }
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i)
        radius += std::abs(out.e(i, j));
    lowest = std::min(lowest, 1.0 + out.e(i, i) - radius);
  }
  out.shift = std::abs(lowest) + 1e-6;
  for (std::size_t i = 0; i < p; ++i)
    out.e(i, i) += out.shift;
  return out;
}

// Configuration ---------------------------------------------------------------

void SimulationConfig::validate() const
{
  if (p == 0 || p > kMaxDim)
    throw Error(ErrorCode::config, "p must be in [1, 64]");
  if (n_train < 8)
    throw Error(ErrorCode::config, "n_train must be >= 8");
  if (n_test < 1)
    throw Error(ErrorCode::config, "n_test must be >= 1");
  if (n_replications < 1)
    throw Error(ErrorCode::config, "n_replications must be >= 1");
  if (!(noise_scale >= 0.0) || !(cov_noise_scale >= 0.0))
    throw Error(ErrorCode::config, "noise scales must be >= 0");
  if (!(mu2_scale >= 0.0))
    throw Error(ErrorCode::config, "mu2 scale must be >= 0");
  if (methods.empty())
    throw Error(ErrorCode::config, "methods must not be empty");
  if (!(lambda_c > 0.0))
    throw Error(ErrorCode::config, "lambda_c must be > 0");
}

std::string SimulationConfig::mu2_mode() const
{
  if (!mu2_scaled)
    return "uniform01";
  return "scaled(" + format_double(mu2_scale) + ")";
}

SimulationConfig simulation_config_from_json(const nlohmann::json& j)
{
  if (!j.is_object())
    throw Error(ErrorCode::config, "simulation config must be a JSON object");
  static const std::set<std::string> known{"p",         "n_train",     "n_test",   "n_replications",
                                           "noise_scale", "noise_target", "cov_noise_scale", "methods",
                                           "base_seed", "mu2_mode",    "n_mc",     "kde_n_mc",
                                           "lambda_c",  "k",           "threads",  "timing"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw Error(ErrorCode::config, "unknown config key '" + key + "'");

  SimulationConfig c;
  if (j.contains("p")) c.p = get_field<std::size_t>(j, "p");
  if (j.contains("n_train")) c.n_train = get_field<std::size_t>(j, "n_train");
  if (j.contains("n_test")) c.n_test = get_field<std::size_t>(j, "n_test");
  if (j.contains("n_replications")) c.n_replications = get_field<std::size_t>(j, "n_replications");
  if (j.contains("noise_scale")) c.noise_scale = get_field<double>(j, "noise_scale");
  if (j.contains("cov_noise_scale")) c.cov_noise_scale = get_field<double>(j, "cov_noise_scale");
  if (j.contains("noise_target")) {
    const auto t = get_field<std::string>(j, "noise_target");
    if (t == "covariance")
      c.noise_target = NoiseTarget::covariance;
    else if (t == "samples")
      c.noise_target = NoiseTarget::samples;
    else
      throw Error(ErrorCode::config, "noise_target must be 'covariance' or 'samples'");
  }
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& name : get_field<std::vector<std::string>>(j, "methods"))
      c.methods.push_back(parse_method(name));
  }
  if (j.contains("base_seed")) c.base_seed = get_field<std::uint64_t>(j, "base_seed");
  if (j.contains("mu2_mode")) {
    const auto mode = get_field<std::string>(j, "mu2_mode");
    if (mode == "uniform01") {
      c.mu2_scaled = false;
      c.mu2_scale = 1.0;
    } else if (mode.rfind("scaled(", 0) == 0 && mode.back() == ')') {
      const std::string num = mode.substr(7, mode.size() - 8);
      double t = 0.0;
      const auto res = std::from_chars(num.data(), num.data() + num.size(), t);
      if (num.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size())
        throw Error(ErrorCode::config, "bad mu2_mode '" + mode + "'");
      c.mu2_scaled = true;
      c.mu2_scale = t;
    } else {
      throw Error(ErrorCode::config, "mu2_mode must be 'uniform01' or 'scaled(t)'");
    }
  }
  if (j.contains("n_mc")) c.n_mc = get_field<std::size_t>(j, "n_mc");
  if (j.contains("kde_n_mc")) c.kde_n_mc = get_field<std::size_t>(j, "kde_n_mc");
  if (j.contains("lambda_c")) c.lambda_c = get_field<double>(j, "lambda_c");
  if (j.contains("k")) c.k = get_field<std::size_t>(j, "k");
  if (j.contains("threads")) c.threads = get_field<std::size_t>(j, "threads");
  if (j.contains("timing")) c.timing = get_field<bool>(j, "timing");
  c.validate();
  return c;
}

nlohmann::json to_json(const SimulationConfig& c)
{
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : c.methods)
    methods.push_back(method_name(m));
  nlohmann::json j{{"p", c.p},
                   {"n_train", c.n_train},
                   {"n_test", c.n_test},
                   {"n_replications", c.n_replications},
                   {"noise_scale", c.noise_scale},
                   {"noise_target", c.noise_target == NoiseTarget::covariance ? "covariance" : "samples"},
                   {"cov_noise_scale", c.cov_noise_scale},
                   {"methods", methods},
                   {"base_seed", c.base_seed},
                   {"mu2_mode", c.mu2_mode()},
                   {"n_mc", c.n_mc.value_or(c.n_test)},
                   {"kde_n_mc", c.kde_n_mc},
                   {"lambda_c", c.lambda_c},
                   {"timing", c.timing}};
  if (c.k)
    j["k"] = *c.k;
  return j;
}

// Replication studies -------------------------------------------------------

SimulationResult run_pair_study(const PairFactory& make_pair, const PairStudy& study)
{
  const std::size_t reps = study.n_replications;
  std::vector<std::vector<ReplicationRecord>> per_rep(reps);
  std::vector<std::vector<std::string>> per_rep_failures(reps);

  parallel_for(reps, study.threads, [&](std::size_t r) {
    const std::uint64_t seed = study.base_seed ^ static_cast<std::uint64_t>(r);
    const MixturePair pair = make_pair(seed);
    Dataset train = sample_mixture(pair, study.n_train, derive_seed(seed, kStreamTrain));
    Dataset test = sample_mixture(pair, study.n_test, derive_seed(seed, kStreamTest));
    if (study.sample_noise > 0.0) {
      Rng noise(derive_seed(seed, kStreamSampleNoise));
      add_synthetic_noise(train, study.sample_noise, noise);
      add_synthetic_noise(test, study.sample_noise, noise);
    }
    const double truth = mc_true_tv(pair, study.n_test, derive_seed(seed, kStreamTruth)).tv;

    MethodSettings settings = study.settings;
    if (!settings.dise.features)
      settings.dise.features = FeatureMapSpec::for_pair(pair);

    for (Method m : study.methods) {
      ReplicationRecord rec;
      rec.replication_id = r;
      rec.method = m;
      rec.seed = seed;
      rec.tv_true = truth;
      const auto start = std::chrono::steady_clock::now();
      try {
        const TvEstimate est = run_method(
            m, train, &test, settings, derive_seed(seed, kStreamMethodBase + static_cast<std::uint64_t>(m)));
        rec.tv_est = est.tv;
        rec.abs_error = std::abs(rec.tv_est - rec.tv_true);
      } catch (const Error& e) {
        rec.tv_est = kNaN;
        rec.abs_error = kNaN;
        per_rep_failures[r].push_back("replication " + std::to_string(r) + " " + method_name(m) + ": " + e.what());
      }
      if (study.timing)
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      per_rep[r].push_back(rec);
    }
  });

  SimulationResult out;
  for (std::size_t r = 0; r < reps; ++r) {
    out.records.insert(out.records.end(), per_rep[r].begin(), per_rep[r].end());
    out.failures.insert(out.failures.end(), per_rep_failures[r].begin(), per_rep_failures[r].end());
  }
  out.summary = summarize(out.records, study.methods);
  return out;
}

SimulationResult run_simulation(const SimulationConfig& cfg)
{
  cfg.validate();
  PairStudy study;
  study.n_train = cfg.n_train;
  study.n_test = cfg.n_test;
  study.n_replications = cfg.n_replications;
  study.methods = cfg.methods;
  study.base_seed = cfg.base_seed;
  study.sample_noise = cfg.noise_target == NoiseTarget::samples ? cfg.noise_scale : 0.0;
  study.settings.dise.lambda_c = cfg.lambda_c;
  study.settings.n_mc = cfg.n_mc.value_or(cfg.n_test);
  study.settings.kde_n_mc = cfg.kde_n_mc;
  study.settings.knn.k = cfg.k;
  study.threads = cfg.threads;
  study.timing = cfg.timing;

  const double cov_scale = cfg.noise_target == NoiseTarget::covariance ? cfg.noise_scale : cfg.cov_noise_scale;
  std::vector<double> shifts(cfg.n_replications, 0.0);
  const auto factory = [&](std::uint64_t seed) {
    const std::size_t p = cfg.p;
    Rng rng(derive_seed(seed, kStreamMean));
    std::vector<double> mu2(p);
    for (double& v : mu2)
      v = cfg.mu2_scale * rng.uniform();
    NoiseMatrix noise = make_noise_matrix(p, cov_scale, derive_seed(seed, kStreamNoiseMatrix));
    shifts[static_cast<std::size_t>(seed ^ cfg.base_seed)] = noise.shift;
    return MixturePair(Distribution::gaussian(GaussianParams(std::vector<double>(p, 0.0), DenseMatrix::identity(p))),
                       Distribution::gaussian(GaussianParams(std::move(mu2), DenseMatrix::identity(p) + noise.e)));
  };
  SimulationResult res = run_pair_study(factory, study);
  res.noise_shifts = std::move(shifts);
  return res;
}

std::vector<SummaryRow> summarize(const std::vector<ReplicationRecord>& records,
                                  const std::vector<Method>& methods)
{
  std::vector<SummaryRow> out;
  for (Method m : methods) {
    std::vector<double> errs;
    for (const auto& r : records)
      if (r.method == m && !std::isnan(r.abs_error))
        errs.push_back(r.abs_error);
    SummaryRow row;
    row.method = m;
    row.mean_abs_error = mean_of(errs);
    row.sd_abs_error = errs.empty() ? kNaN : sample_sd_of(errs);
    row.n_replications = errs.size();
    out.push_back(row);
  }
  return out;
}

std::string records_csv(const std::vector<ReplicationRecord>& records)
{
  std::ostringstream os;
  os << "replication_id,method,tv_est,tv_true,abs_error,wall_time_ms,seed\n";
  for (const auto& r : records)
    os << r.replication_id << ',' << method_name(r.method) << ',' << format_double(r.tv_est) << ','
       << format_double(r.tv_true) << ',' << format_double(r.abs_error) << ',' << format_double(r.wall_time_ms)
       << ',' << r.seed << '\n';
  return os.str();
}

std::string summary_csv(const std::vector<SummaryRow>& summary)
{
  std::ostringstream os;
  os << "method,mean_abs_error,sd_abs_error,n_replications\n";
  for (const auto& s : summary)
    os << method_name(s.method) << ',' << format_double(s.mean_abs_error) << ',' << format_double(s.sd_abs_error)
       << ',' << s.n_replications << '\n';
  return os.str();
}

void write_simulation_outputs(const SimulationConfig& cfg, const SimulationResult& result, const std::string& dir)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::file_format, "cannot create " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out)
      throw Error(ErrorCode::file_format, "cannot write " + (fs::path(dir) / name).string());
    out << text;
  };
  write("records.csv", records_csv(result.records));
  write("summary.csv", summary_csv(result.summary));

  nlohmann::json seeds = nlohmann::json::array();
  for (std::size_t r = 0; r < cfg.n_replications; ++r)
    seeds.push_back(cfg.base_seed ^ static_cast<std::uint64_t>(r));
  nlohmann::json manifest{{"library", "tvd"},
                          {"version", kLibraryVersion},
                          {"config", to_json(cfg)},
                          {"replication_seeds", seeds},
                          {"noise_shifts", result.noise_shifts},
                          {"failures", result.failures}};
  write("manifest.json", manifest.dump(2) + "\n");
}

// Ranking -------------------------------------------------------------------

RankingTask ranking_task_from_json(const nlohmann::json& j, const std::string& base_dir)
{
  if (!j.is_object())
    throw Error(ErrorCode::config, "ranking task must be a JSON object");
  static const std::set<std::string> known{"real_embeddings", "candidate_sets", "per_class", "methods",
                                           "order",           "seed",           "features",  "n_mc",
                                           "kde_n_mc",        "lambda_c",       "k",         "threads"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw Error(ErrorCode::config, "unknown ranking key '" + key + "'");

  namespace fs = std::filesystem;
  auto resolve = [&](const std::string& p) {
    if (base_dir.empty() || fs::path(p).is_absolute())
      return p;
    return (fs::path(base_dir) / p).string();
  };

  RankingTask t;
  t.real_embeddings = resolve(get_field<std::string>(j, "real_embeddings"));
  if (!j.contains("candidate_sets") || !j.at("candidate_sets").is_array())
    throw Error(ErrorCode::config, "candidate_sets must be a list");
  for (const auto& c : j.at("candidate_sets"))
    t.candidate_sets.push_back({get_field<std::string>(c, "name"), resolve(get_field<std::string>(c, "path"))});
  if (t.candidate_sets.size() < 2)
    throw Error(ErrorCode::config, "ranking needs at least two candidate sets");
  if (j.contains("per_class")) t.per_class = get_field<bool>(j, "per_class");
  if (j.contains("methods")) {
    t.methods.clear();
    for (const auto& name : get_field<std::vector<std::string>>(j, "methods"))
      t.methods.push_back(parse_method(name));
    if (t.methods.empty())
      throw Error(ErrorCode::config, "methods must not be empty");
  }
  if (j.contains("order")) {
    const auto o = get_field<std::string>(j, "order");
    if (o == "best_to_worst")
      t.order = RankOrder::best_to_worst;
    else if (o == "worst_to_best")
      t.order = RankOrder::worst_to_best;
    else
      throw Error(ErrorCode::config, "order must be 'best_to_worst' or 'worst_to_best'");
  }
  if (j.contains("seed")) t.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("features")) t.settings.dise.features = FeatureMapSpec::parse(get_field<std::string>(j, "features"));
  if (j.contains("n_mc")) t.settings.n_mc = get_field<std::size_t>(j, "n_mc");
  if (j.contains("kde_n_mc")) t.settings.kde_n_mc = get_field<std::size_t>(j, "kde_n_mc");
  if (j.contains("lambda_c")) t.settings.dise.lambda_c = get_field<double>(j, "lambda_c");
  if (j.contains("k")) t.settings.knn.k = get_field<std::size_t>(j, "k");
  if (j.contains("threads")) t.threads = get_field<std::size_t>(j, "threads");
  return t;
}

RankingReport rank_candidates(const EmbeddingSet& real,
                              const std::vector<std::pair<std::string, EmbeddingSet>>& candidates,
                              const RankingTask& task)
{
  if (candidates.size() < 2)
    throw Error(ErrorCode::config, "ranking needs at least two candidate sets");
  for (const auto& [name, c] : candidates)
    if (c.x.cols() != real.x.cols())
      throw Error(ErrorCode::dimension_mismatch, "candidate '" + name + "' has a different column count");

  // Groups: one per class present in both sets, or the whole set.
  struct Group
  {
    std::size_t candidate;
    long cls;
    DenseMatrix real;
    DenseMatrix synth;
  };
  std::vector<Group> groups;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const EmbeddingSet& cand = candidates[ci].second;
    if (!task.per_class) {
      groups.push_back({ci, 0, real.x, cand.x});
      continue;
    }
    std::map<long, std::vector<std::size_t>> real_rows, cand_rows;
    for (std::size_t i = 0; i < real.classes.size(); ++i)
      real_rows[real.classes[i]].push_back(i);
    for (std::size_t i = 0; i < cand.classes.size(); ++i)
      cand_rows[cand.classes[i]].push_back(i);
    for (const auto& [cls, rows] : real_rows) {
      auto it = cand_rows.find(cls);
      if (it == cand_rows.end())
        continue;
      groups.push_back({ci, cls, select_rows(real.x, rows), select_rows(cand.x, it->second)});
    }
  }

  const std::size_t n_methods = task.methods.size();
  std::vector<TvEstimate> results(n_methods * groups.size());
  parallel_for(results.size(), task.threads, [&](std::size_t idx) {
    const Method m = task.methods[idx / groups.size()];
    const Group& g = groups[idx % groups.size()];
    const std::uint64_t seed =
        derive_seed(task.seed, (static_cast<std::uint64_t>(g.candidate) << 32) ^ static_cast<std::uint64_t>(g.cls));
    results[idx] = run_method(m, stack_labeled(g.real, g.synth), nullptr, task.settings, seed);
  });

  RankingReport report;
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    MethodRanking mr;
    mr.method = task.methods[mi];
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      std::vector<double> tvs;
      double se = 0.0;
      for (std::size_t gi = 0; gi < groups.size(); ++gi)
        if (groups[gi].candidate == ci) {
          const TvEstimate& est = results[mi * groups.size() + gi];
          tvs.push_back(est.tv);
          se = est.diag("se", 0.0);
        }
      if (tvs.empty())
        throw Error(ErrorCode::file_format, "candidate '" + candidates[ci].first + "' shares no class with the real set");
      CandidateScore s;
      s.name = candidates[ci].first;
      s.tv_mean = mean_of(tvs);
      s.tv_sd = sample_sd_of(tvs);
      s.n_groups = tvs.size();
      s.noise = tvs.size() > 1 ? s.tv_sd / std::sqrt(static_cast<double>(tvs.size())) : se;
      mr.scores.push_back(s);
    }

    std::vector<std::size_t> idx(mr.scores.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return mr.scores[a].tv_mean < mr.scores[b].tv_mean; });
    for (std::size_t i : idx)
      mr.ordering.push_back(mr.scores[i].name);

    bool ordered = true;
    for (std::size_t i = 0; i + 1 < mr.scores.size(); ++i) {
      const CandidateScore& a = mr.scores[i];
      const CandidateScore& b = mr.scores[i + 1];
      const double step = task.order == RankOrder::best_to_worst ? b.tv_mean - a.tv_mean : a.tv_mean - b.tv_mean;
      const double threshold = 2.0 * std::sqrt(a.noise * a.noise + b.noise * b.noise);
      if (std::abs(step) <= threshold)
        mr.ties = true;
      if (!(step > 0.0))
        ordered = false;
    }
    mr.correct_ranking = ordered && !mr.ties;
    report.methods.push_back(std::move(mr));
  }
  return report;
}

RankingReport run_ranking(const RankingTask& task)
{
  const EmbeddingSet real = read_csv(task.real_embeddings, task.per_class);
  std::vector<std::pair<std::string, EmbeddingSet>> candidates;
  for (const auto& c : task.candidate_sets)
    candidates.emplace_back(c.name, read_csv(c.path, task.per_class));
  return rank_candidates(real, candidates, task);
}

nlohmann::json RankingReport::to_json() const
{
  nlohmann::json out = nlohmann::json::array();
  for (const auto& mr : methods) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& s : mr.scores)
      cands.push_back({{"name", s.name},
                       {"tv_mean", s.tv_mean},
                       {"tv_sd", s.tv_sd},
                       {"noise", s.noise},
                       {"n_groups", s.n_groups}});
    out.push_back({{"method", method_name(mr.method)},
                   {"candidates", cands},
                   {"ordering", mr.ordering},
                   {"ties", mr.ties},
                   {"correct_ranking", mr.correct_ranking}});
  }
  return {{"methods", out}};
}

} // namespace tvd
