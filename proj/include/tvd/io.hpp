#pragma once

#include "tvd/dise.hpp"
#include "tvd/distributions.hpp"
#include "tvd/estimate.hpp"
#include "tvd/linalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tvd {

//! Samples read from a headerless CSV; `classes` is filled when the last
//! column carries an integer class label.
struct EmbeddingSet
{
  DenseMatrix x;
  std::vector<long> classes;
};

//! Headerless, comma-separated, dot-decimal text. Throws FileFormat on ragged
//! rows or unparsable fields, naming line and column.
EmbeddingSet read_csv(const std::string& path, bool last_column_is_class = false);
EmbeddingSet parse_csv(const std::string& text, bool last_column_is_class = false, const std::string& source = "<text>");

void write_csv(const std::string& path, const DenseMatrix& m, const std::vector<long>* classes = nullptr);

//! Shortest round-trip decimal form; locale-independent.
std::string format_double(double v);

nlohmann::json to_json(const TvEstimate& est);

inline constexpr int kClassifierFormatVersion = 1;
nlohmann::json classifier_to_json(const FittedClassifier& clf);
FittedClassifier classifier_from_json(const nlohmann::json& j);

//! {"family": "gaussian", "mean": [...], "cov": [[...]]} or
//! {"family": "gaussian", "mean": m, "variance": v} (1-D), or
//! {"family": "exponential", "rate": r}, {"family": "gamma", "shape": k, "rate": r},
//! {"family": "beta", "a": a, "b": b}
Distribution distribution_from_json(const nlohmann::json& j);
//! {"p": <distribution>, "q": <distribution>}
MixturePair pair_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

} // namespace tvd
