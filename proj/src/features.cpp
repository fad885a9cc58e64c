#include "tvd/features.hpp"

#include "tvd/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvd {

namespace {

using Term = FeatureMapSpec::Term;

int family_rank(Family f) { return static_cast<int>(f); }

const char* short_name(Family f)
{
  switch (f) {
    case Family::gaussian: return "gauss";
    case Family::exponential: return "exp";
    case Family::gamma: return "gamma";
    case Family::beta: return "beta";
  }
  return "?";
}

// Upper triangle of the map table, rows and columns in the order
// gaussian, exponential, gamma, beta.
std::vector<Term> table_terms(Family a, Family b)
{
  if (family_rank(a) > family_rank(b))
    std::swap(a, b);
  using F = Family;
  if (a == F::gaussian) {
    switch (b) {
      case F::gaussian:
      case F::exponential: return {Term::one, Term::x, Term::x_sq};
      case F::gamma: return {Term::one, Term::x, Term::x_sq, Term::log_x};
      case F::beta: return {Term::one, Term::x, Term::x_sq, Term::log_x, Term::log_one_minus_x};
    }
  }
  if (a == F::exponential) {
    switch (b) {
      case F::exponential: return {Term::one, Term::x};
      case F::gamma: return {Term::one, Term::x, Term::log_x};
      case F::beta: return {Term::one, Term::x, Term::log_x, Term::log_one_minus_x};
      default: break;
    }
  }
  if (a == F::gamma) {
    switch (b) {
      case F::gamma: return {Term::one, Term::x, Term::log_x};
      case F::beta: return {Term::one, Term::x, Term::log_x, Term::log_one_minus_x};
      default: break;
    }
  }
  return {Term::one, Term::log_x, Term::log_one_minus_x};
}

[[noreturn]] void bad_tag(const std::string& tag)
{
  throw Error(ErrorCode::config, "unrecognized feature tag '" + tag + "'");
}

} // namespace

FeatureMapSpec FeatureMapSpec::gaussian_quadratic(std::size_t p)
{
  if (p == 0 || p > kMaxDim)
    throw Error(ErrorCode::config, "quadratic map dimension must be in [1, 64]");
  FeatureMapSpec s;
  s.quadratic_ = true;
  s.input_dim_ = p;
  return s;
}

FeatureMapSpec FeatureMapSpec::table(Family a, Family b)
{
  FeatureMapSpec s;
  s.quadratic_ = false;
  s.input_dim_ = 1;
  if (family_rank(a) > family_rank(b))
    std::swap(a, b);
  s.first_ = a;
  s.second_ = b;
  s.terms_ = table_terms(a, b);
  return s;
}

FeatureMapSpec FeatureMapSpec::parse(const std::string& tag)
{
  if (tag.rfind("gq:p=", 0) == 0) {
    const std::string num = tag.substr(5);
    if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
      bad_tag(tag);
    return gaussian_quadratic(std::stoul(num));
  }
  if (tag.rfind("t1:", 0) == 0) {
    const std::string body = tag.substr(3);
    const auto dash = body.find('-');
    if (dash == std::string::npos)
      bad_tag(tag);
    const auto a = parse_family(body.substr(0, dash));
    const auto b = parse_family(body.substr(dash + 1));
    if (!a || !b)
      bad_tag(tag);
    return table(*a, *b);
  }
  bad_tag(tag);
}

FeatureMapSpec FeatureMapSpec::for_pair(const MixturePair& m)
{
  if (m.p.family() == Family::gaussian && m.q.family() == Family::gaussian)
    return gaussian_quadratic(m.dim());
  return table(m.p.family(), m.q.family());
}

std::string FeatureMapSpec::tag() const
{
  std::ostringstream os;
  if (quadratic_)
    os << "gq:p=" << input_dim_;
  else
    os << "t1:" << short_name(first_) << '-' << short_name(second_);
  return os.str();
}

std::size_t FeatureMapSpec::out_dim() const
{
  if (quadratic_)
    return (input_dim_ + 2) * (input_dim_ + 1) / 2;
  return terms_.size();
}

void FeatureMapSpec::apply(std::span<const double> x, std::span<double> out) const
{
  if (x.size() != input_dim_ || out.size() != out_dim())
    throw Error(ErrorCode::dimension_mismatch, "feature map input or output size");
  if (quadratic_) {
    const std::size_t p = input_dim_;
    std::size_t k = 0;
    out[k++] = 1.0;
    for (std::size_t i = 0; i < p; ++i)
      out[k++] = x[i];
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j)
        out[k++] = x[i] * x[j];
    return;
  }
  const double v = x[0];
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    switch (terms_[k]) {
      case Term::one: out[k] = 1.0; break;
      case Term::x: out[k] = v; break;
      case Term::x_sq: out[k] = v * v; break;
      case Term::log_x:
        if (!(v > 0.0))
          throw Error(ErrorCode::domain_violation, "log x needs x > 0");
        out[k] = std::log(v);
        break;
      case Term::log_one_minus_x:
        if (!(v < 1.0))
          throw Error(ErrorCode::domain_violation, "log(1 - x) needs x < 1");
        out[k] = std::log1p(-v);
        break;
    }
  }
}

std::vector<double> FeatureMapSpec::apply(std::span<const double> x) const
{
  std::vector<double> out(out_dim());
  apply(x, out);
  return out;
}

DenseMatrix apply_dataset(const FeatureMapSpec& spec, const DenseMatrix& data)
{
  if (data.rows() == 0)
    return DenseMatrix(0, spec.out_dim());
  if (data.cols() != spec.input_dim())
    throw Error(ErrorCode::dimension_mismatch, "data columns do not match feature map " + spec.tag());
  DenseMatrix out(data.rows(), spec.out_dim());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    try {
      spec.apply(data.row(i), out.row(i));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::domain_violation)
        throw;
      std::ostringstream msg;
      msg << "row " << i << ": " << e.what();
      throw Error(ErrorCode::domain_violation, msg.str());
    }
  }
  return out;
}

Standardization standardize_columns(DenseMatrix& features)
{
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  Standardization st;
  st.mean.assign(d, 0.0);
  st.scale.assign(d, 1.0);
  if (n == 0)
    return st;
  for (std::size_t j = 1; j < d; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      m += features(i, j);
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = features(i, j) - m;
      ss += c * c;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (!(sd > 0.0))
      continue;
    st.mean[j] = m;
    st.scale[j] = sd;
    for (std::size_t i = 0; i < n; ++i)
      features(i, j) = (features(i, j) - m) / sd;
  }
  return st;
}

std::vector<double> Standardization::to_raw(std::span<const double> beta_std) const
{
  std::vector<double> raw(beta_std.begin(), beta_std.end());
  if (raw.empty())
    return raw;
  double shift = 0.0;
  for (std::size_t j = 1; j < raw.size(); ++j) {
    raw[j] = beta_std[j] / scale[j];
    shift += raw[j] * mean[j];
  }
  raw[0] = beta_std[0] - shift;
  return raw;
}

} // namespace tvd
