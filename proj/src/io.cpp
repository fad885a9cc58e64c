#include "tvd/io.hpp"

#include "tvd/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tvd {

namespace {

[[noreturn]] void format_error(const std::string& source, std::size_t line, const std::string& what)
{
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(ErrorCode::file_format, msg.str());
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double to_number(const nlohmann::json& j, const char* key)
{
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorCode::config, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

} // namespace

std::string read_text_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::file_format, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EmbeddingSet parse_csv(const std::string& text, bool last_column_is_class, const std::string& source)
{
  EmbeddingSet out;
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos)
      end = text.size();
    std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty())
      continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      std::string_view field = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
        format_error(source, line_no, "unparsable field '" + std::string(field) + "' in column " + std::to_string(row.size() + 1));
      if (!std::isfinite(v))
        format_error(source, line_no, "non-finite value in column " + std::to_string(row.size() + 1));
      row.push_back(v);
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (rows == 0)
      cols = row.size();
    else if (row.size() != cols)
      format_error(source, line_no, "expected " + std::to_string(cols) + " columns, found " + std::to_string(row.size()));
    if (last_column_is_class) {
      const double c = row.back();
      if (c != std::floor(c))
        format_error(source, line_no, "class column is not an integer");
      out.classes.push_back(static_cast<long>(c));
      row.pop_back();
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0)
    format_error(source, line_no, "no data rows");
  const std::size_t p = last_column_is_class ? cols - 1 : cols;
  if (p == 0)
    format_error(source, 1, "no feature columns");
  out.x = DenseMatrix(rows, p, std::move(values));
  return out;
}

EmbeddingSet read_csv(const std::string& path, bool last_column_is_class)
{
  return parse_csv(read_text_file(path), last_column_is_class, path);
}

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const DenseMatrix& m, const std::vector<long>* classes)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::file_format, "cannot write " + path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j)
        out << ',';
      out << format_double(m(i, j));
    }
    if (classes)
      out << ',' << (*classes)[i];
    out << '\n';
  }
}

nlohmann::json to_json(const TvEstimate& est)
{
  nlohmann::json j;
  j["method"] = est.method;
  j["tv"] = est.tv;
  j["risk"] = std::isnan(est.risk) ? nlohmann::json(nullptr) : nlohmann::json(est.risk);
  j["n_eval"] = est.n_eval;
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [k, v] : est.diagnostics)
    diag[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  j["diagnostics"] = diag;
  return j;
}

nlohmann::json classifier_to_json(const FittedClassifier& clf)
{
  return {{"format", "tvd-classifier"},
          {"version", kClassifierFormatVersion},
          {"features", clf.features().tag()},
          {"beta", clf.beta()},
          {"train_loss", clf.train_loss},
          {"iterations", clf.iterations},
          {"converged", clf.converged},
          {"grad_norm", clf.grad_norm},
          {"lambda", clf.lambda},
          {"n_train", clf.n_train}};
}

FittedClassifier classifier_from_json(const nlohmann::json& j)
{
  try {
    if (j.at("format").get<std::string>() != "tvd-classifier")
      throw Error(ErrorCode::file_format, "not a classifier document");
    const int version = j.at("version").get<int>();
    if (version != kClassifierFormatVersion)
      throw Error(ErrorCode::file_format, "unsupported classifier version " + std::to_string(version));
    FittedClassifier clf(FeatureMapSpec::parse(j.at("features").get<std::string>()),
                         j.at("beta").get<std::vector<double>>());
    clf.train_loss = j.value("train_loss", 0.0);
    clf.iterations = j.value("iterations", std::size_t{0});
    clf.converged = j.value("converged", false);
    clf.grad_norm = j.value("grad_norm", 0.0);
    clf.lambda = j.value("lambda", 0.0);
    clf.n_train = j.value("n_train", std::size_t{0});
    return clf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::file_format, std::string("classifier document: ") + e.what());
  }
}

Distribution distribution_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("family"))
    throw Error(ErrorCode::config, "distribution needs a 'family'");
  const auto fam = parse_family(j.at("family").get<std::string>());
  if (!fam)
    throw Error(ErrorCode::config, "unknown family '" + j.at("family").get<std::string>() + "'");
  try {
    switch (*fam) {
      case Family::gaussian: {
        if (j.at("mean").is_number())
          return Distribution::normal(j.at("mean").get<double>(), to_number(j, "variance"));
        auto mean = j.at("mean").get<std::vector<double>>();
        DenseMatrix cov = j.contains("cov")
                              ? DenseMatrix::from_rows(j.at("cov").get<std::vector<std::vector<double>>>())
                              : DenseMatrix::identity(mean.size());
        return Distribution::gaussian(GaussianParams(std::move(mean), std::move(cov)));
      }
      case Family::exponential: return Distribution::exponential(to_number(j, "rate"));
      case Family::gamma: return Distribution::gamma(to_number(j, "shape"), to_number(j, "rate"));
      case Family::beta: return Distribution::beta(to_number(j, "a"), to_number(j, "b"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("distribution: ") + e.what());
  }
  throw Error(ErrorCode::config, "unreachable family");
}

MixturePair pair_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("p") || !j.contains("q"))
    throw Error(ErrorCode::config, "pair spec needs 'p' and 'q'");
  return MixturePair(distribution_from_json(j.at("p")), distribution_from_json(j.at("q")));
}

nlohmann::json read_json_file(const std::string& path)
{
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::config, path + ": " + e.what());
  }
}

} // namespace tvd
