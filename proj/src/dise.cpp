#include "tvd/dise.hpp"

#include "tvd/error.hpp"
#include "tvd/optimize.hpp"
#include "tvd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvd {

void DiseConfig::validate() const
{
  if (lambda && !(*lambda >= 0.0))
    throw Error(ErrorCode::config, "lambda must be >= 0");
  if (!(lambda_c > 0.0))
    throw Error(ErrorCode::config, "lambda_c must be > 0");
  if (!(grad_tol > 0.0))
    throw Error(ErrorCode::config, "grad_tol must be > 0");
  if (!(eval_fraction > 0.0 && eval_fraction < 1.0))
    throw Error(ErrorCode::config, "eval_fraction must lie in (0, 1)");
  if (lbfgs_memory == 0)
    throw Error(ErrorCode::config, "lbfgs_memory must be >= 1");
}

double resolve_lambda(const DiseConfig& cfg, std::size_t d, std::size_t n_train)
{
  if (cfg.lambda)
    return *cfg.lambda;
  if (n_train < 2)
    return 0.0;
  const double n = static_cast<double>(n_train);
  return cfg.lambda_c * static_cast<double>(d) * std::log(n) / n;
}

LossAndGradient objective_and_gradient(std::span<const double> beta,
                                       const DenseMatrix& features,
                                       std::span<const std::uint8_t> labels,
                                       double lambda,
                                       std::span<const double> weights)
{
  const std::size_t n = features.rows();
  const std::size_t d = beta.size();
  if (n > 0 && features.cols() != d)
    throw Error(ErrorCode::dimension_mismatch, "beta and feature columns differ");
  if (labels.size() != n || (!weights.empty() && weights.size() != n))
    throw Error(ErrorCode::dimension_mismatch, "labels or weights length");

  LossAndGradient out;
  out.grad.assign(d, 0.0);
  double data_loss = 0.0;
  double* grad = out.grad.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* psi = features.row(i).data();
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      z += beta[j] * psi[j];
    const double s = sigmoid(z);
    const double w = weights.empty() ? 1.0 : weights[i];
    const double r = s - static_cast<double>(labels[i]);
    data_loss += w * r * r;
    const double c = w * r * s * (1.0 - s);
    if (c != 0.0)
      for (std::size_t j = 0; j < d; ++j)
        grad[j] += c * psi[j];
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    penalty += beta[j] * beta[j];
  const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  out.loss = inv_n * data_loss + lambda * penalty;
  for (std::size_t j = 0; j < d; ++j)
    grad[j] = 2.0 * inv_n * grad[j] + 2.0 * lambda * beta[j];
  if (!std::isfinite(out.loss))
    throw Error(ErrorCode::non_finite_loss, "objective is not finite");
  return out;
}

FittedClassifier::FittedClassifier(FeatureMapSpec features, std::vector<double> beta)
  : features_(std::move(features)), beta_(std::move(beta))
{
  if (beta_.size() != features_.out_dim())
    throw Error(ErrorCode::dimension_mismatch, "beta length does not match the feature map");
}

double FittedClassifier::decision(std::span<const double> x) const
{
  double psi[(kMaxDim + 2) * (kMaxDim + 1) / 2];
  const std::size_t d = features_.out_dim();
  features_.apply(x, {psi, d});
  double h = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    h += beta_[j] * psi[j];
  return h;
}

namespace {

FeatureMapSpec resolve_features(const DiseConfig& cfg, std::size_t dim)
{
  if (cfg.features) {
    if (cfg.features->input_dim() != dim)
      throw Error(ErrorCode::dimension_mismatch,
                  "feature map " + cfg.features->tag() + " does not match data dimension");
    return *cfg.features;
  }
  return FeatureMapSpec::gaussian_quadratic(dim);
}

} // namespace

FittedClassifier fit(const DiseConfig& cfg, const Dataset& train)
{
  cfg.validate();
  if (!train.labeled())
    throw Error(ErrorCode::degenerate_labels, "training data carries no labels");
  std::size_t n_real = 0;
  for (auto l : train.labels)
    n_real += (l == kRealLabel);
  const std::size_t n = train.size();
  const std::size_t n_synth = n - n_real;
  if (n_real == 0 || n_synth == 0)
    throw Error(ErrorCode::degenerate_labels, "both classes must be present in the training data");

  const FeatureMapSpec spec = resolve_features(cfg, train.dim());
  DenseMatrix psi = apply_dataset(spec, train.x);
  Standardization st;
  if (cfg.standardize)
    st = standardize_columns(psi);

  std::vector<double> weights;
  if (cfg.balance_classes && n_real != n_synth) {
    const double w_real = static_cast<double>(n) / (2.0 * static_cast<double>(n_real));
    const double w_synth = static_cast<double>(n) / (2.0 * static_cast<double>(n_synth));
    weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      weights[i] = train.labels[i] == kRealLabel ? w_real : w_synth;
  }

  const std::size_t d = spec.out_dim();
  const double lambda = resolve_lambda(cfg, d, n);
  auto objective = [&](std::span<const double> beta, std::span<double> grad) {
    auto lg = objective_and_gradient(beta, psi, train.labels, lambda, weights);
    std::copy(lg.grad.begin(), lg.grad.end(), grad.begin());
    return lg.loss;
  };

  LbfgsOptions opt;
  opt.memory = cfg.lbfgs_memory;
  opt.max_iters = cfg.max_iters;
  opt.grad_tol = cfg.grad_tol;
  opt.record_trace = cfg.record_trace;
  LbfgsResult res = minimize_lbfgs(objective, std::vector<double>(d, 0.0), opt);

  std::vector<double> beta = cfg.standardize ? st.to_raw(res.x) : res.x;
  FittedClassifier clf(spec, std::move(beta));
  clf.train_loss = res.f;
  clf.iterations = res.iterations;
  clf.converged = res.converged;
  clf.grad_norm = res.grad_norm;
  clf.lambda = lambda;
  clf.n_train = n;
  clf.loss_trace = std::move(res.trace);
  return clf;
}

double ClassifierRisk::error_real() const
{
  return n_real ? static_cast<double>(errors_real) / static_cast<double>(n_real) : 0.0;
}

double ClassifierRisk::error_synth() const
{
  return n_synth ? static_cast<double>(errors_synth) / static_cast<double>(n_synth) : 0.0;
}

double ClassifierRisk::risk() const { return 0.5 * (error_real() + error_synth()); }

double ClassifierRisk::tv_se() const
{
  double v = 0.0;
  if (n_real) {
    const double e = error_real();
    v += e * (1.0 - e) / static_cast<double>(n_real);
  }
  if (n_synth) {
    const double e = error_synth();
    v += e * (1.0 - e) / static_cast<double>(n_synth);
  }
  return std::sqrt(v);
}

ClassifierRisk evaluate(const FittedClassifier& clf, const Dataset& eval)
{
  if (!eval.labeled())
    throw Error(ErrorCode::degenerate_labels, "evaluation data carries no labels");
  ClassifierRisk r;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const int pred = clf.classify(eval.x.row(i));
    if (eval.labels[i] == kRealLabel) {
      ++r.n_real;
      r.errors_real += (pred != 1);
    } else {
      ++r.n_synth;
      r.errors_synth += (pred != 0);
    }
  }
  if (r.n_real == 0 || r.n_synth == 0)
    throw Error(ErrorCode::degenerate_labels, "both classes must be present in the evaluation data");
  return r;
}

TvEstimate tv_from_classifier(const FittedClassifier& clf, const Dataset& eval, bool external_eval)
{
  const ClassifierRisk r = evaluate(clf, eval);
  TvEstimate est;
  est.method = "dise";
  est.risk = r.risk();
  const double raw = 1.0 - 2.0 * est.risk;
  est.tv = clamp_unit(raw);
  est.n_eval = eval.size();
  auto& dg = est.diagnostics;
  dg["raw_tv"] = raw;
  dg["se"] = r.tv_se();
  dg["error_real"] = r.error_real();
  dg["error_synth"] = r.error_synth();
  dg["eval_external"] = external_eval ? 1.0 : 0.0;
  dg["lambda"] = clf.lambda;
  dg["iterations"] = static_cast<double>(clf.iterations);
  dg["converged"] = clf.converged ? 1.0 : 0.0;
  dg["grad_norm"] = clf.grad_norm;
  dg["train_loss"] = clf.train_loss;
  dg["n_train"] = static_cast<double>(clf.n_train);
  dg["d"] = static_cast<double>(clf.features().out_dim());
  return est;
}

TvEstimate estimate_tv(const DiseConfig& cfg, const Dataset& train, const Dataset& eval)
{
  const FittedClassifier clf = fit(cfg, train);
  return tv_from_classifier(clf, eval, true);
}

HeldOutSplit holdout_split(const DiseConfig& cfg, const DenseMatrix& real, const DenseMatrix& synth, std::uint64_t seed)
{
  cfg.validate();
  if (real.rows() < 2 || synth.rows() < 2)
    throw Error(ErrorCode::too_few_samples, "each set needs at least two rows for a held-out split");
  if (real.cols() != synth.cols())
    throw Error(ErrorCode::dimension_mismatch, "real and synthetic dimensions differ");

  auto split = [&](const DenseMatrix& m) {
    const std::size_t rows = m.rows();
    Rng rng(derive_seed(seed, rows));
    const auto perm = random_permutation(rows, rng);
    auto n_eval = static_cast<std::size_t>(std::llround(cfg.eval_fraction * static_cast<double>(rows)));
    n_eval = std::clamp<std::size_t>(n_eval, 1, rows - 1);
    std::span<const std::size_t> all(perm);
    return std::pair{select_rows(m, all.subspan(n_eval)), select_rows(m, all.first(n_eval))};
  };
  const auto [real_train, real_eval] = split(real);
  const auto [synth_train, synth_eval] = split(synth);
  return {stack_labeled(real_train, synth_train), stack_labeled(real_eval, synth_eval)};
}

TvEstimate estimate_tv(const DiseConfig& cfg,
                       const DenseMatrix& real,
                       const DenseMatrix& synth,
                       std::uint64_t seed)
{
  const HeldOutSplit s = holdout_split(cfg, real, synth, seed);
  const FittedClassifier clf = fit(cfg, s.train);
  return tv_from_classifier(clf, s.eval, false);
}

} // namespace tvd
