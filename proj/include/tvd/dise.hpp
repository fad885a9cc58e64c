#pragma once

#include "tvd/dataset.hpp"
#include "tvd/estimate.hpp"
#include "tvd/features.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tvd {

//! Discriminative TV estimation: fit h(x) = beta^T psi(x) by minimizing
//!
//!   (1/2n) sum_i w_i (sigmoid(h(x_i)) - y_i)^2 + lambda ||beta||^2
//!
//! over the 2n rows of the labeled mixture (real = 1, synthetic = 0), classify by h > 0 and
//! report tv = 1 - 2 * risk on held-out data.
inline constexpr double kDefaultLambdaC = 0.01;

struct DiseConfig
{
  //! Fixed penalty; empty selects lambda = c * d * ln(N) / N with N training
  //! rows.
  std::optional<double> lambda;
  double lambda_c = kDefaultLambdaC;
  std::size_t max_iters = 1000;
  double grad_tol = 1e-7;
  std::size_t lbfgs_memory = 10;
  //! Share of each input set held out when no evaluation set is supplied.
  double eval_fraction = 1.0 / 3.0;
  //! Defaults to the quadratic map of the data dimension.
  std::optional<FeatureMapSpec> features;
  //! Optimize over standardized feature columns; beta is mapped back.
  bool standardize = true;
  //! Per-class weights N / (2 N_c), identically 1 when classes are balanced.
  bool balance_classes = true;
  bool record_trace = false;

  void validate() const;
};

double resolve_lambda(const DiseConfig& cfg, std::size_t d, std::size_t n_train);

struct LossAndGradient
{
  double loss = 0.0;
  std::vector<double> grad;
};

//! Loss and gradient over a feature matrix. Empty weights mean all ones.
LossAndGradient objective_and_gradient(std::span<const double> beta,
                                       const DenseMatrix& features,
                                       std::span<const std::uint8_t> labels,
                                       double lambda,
                                       std::span<const double> weights = {});

class FittedClassifier
{
public:
  FittedClassifier(FeatureMapSpec features, std::vector<double> beta);

  const FeatureMapSpec& features() const { return features_; }
  const std::vector<double>& beta() const { return beta_; }

  //! h(x) = beta^T psi(x)
  double decision(std::span<const double> x) const;
  //! 1 (real) when h(x) > 0.
  int classify(std::span<const double> x) const { return decision(x) > 0.0 ? 1 : 0; }

  double train_loss = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  double lambda = 0.0;
  std::size_t n_train = 0;
  std::vector<double> loss_trace;

private:
  FeatureMapSpec features_;
  std::vector<double> beta_;
};

//! Throws DegenerateLabels when a class is missing. Non-convergence is
//! reported through FittedClassifier::converged.
FittedClassifier fit(const DiseConfig& cfg, const Dataset& train);

struct ClassifierRisk
{
  std::size_t n_real = 0;
  std::size_t n_synth = 0;
  std::size_t errors_real = 0;
  std::size_t errors_synth = 0;

  double error_real() const;
  double error_synth() const;
  //! Class-balanced misclassification rate; the plain error rate when the
  //! classes are the same size.
  double risk() const;
  //! Standard error of 1 - 2 * risk.
  double tv_se() const;
};

ClassifierRisk evaluate(const FittedClassifier& clf, const Dataset& eval);

//! tv = clamp(1 - 2 * risk, 0, 1); the raw value is kept as "raw_tv".
TvEstimate tv_from_classifier(const FittedClassifier& clf, const Dataset& eval, bool external_eval);

//! Fits on `train` and evaluates on an independent labeled `eval` set.
TvEstimate estimate_tv(const DiseConfig& cfg, const Dataset& train, const Dataset& eval);

struct HeldOutSplit
{
  Dataset train;
  Dataset eval;
};

//! Stratified hold-out used by the two-set estimate_tv overload.
HeldOutSplit holdout_split(const DiseConfig& cfg, const DenseMatrix& real, const DenseMatrix& synth, std::uint64_t seed);

//! Holds out `eval_fraction` of each input set (stratified) and fits on the
//! rest. The held-out rows of a set depend only on (seed, set size), so
//! swapping real and synthetic mirrors the split.
TvEstimate estimate_tv(const DiseConfig& cfg,
                       const DenseMatrix& real,
                       const DenseMatrix& synth,
                       std::uint64_t seed);

} // namespace tvd
