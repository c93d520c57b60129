#include "cvwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace cvw {

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> sample) {
  if (sample.empty()) {
    throw std::invalid_argument("ks_statistic: empty sample");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = standard_normal_cdf(sorted[i]);
    const auto di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - cdf, cdf - di / n});
  }
  return d;
}

std::size_t independence_dof(const CountTable& table) {
  const auto rows = table.marginal(0).size();
  const auto cols = table.marginal(1).size();
  return (rows - 1) * (cols - 1);
}

double chi_square_independence(const CountTable& table) {
  if (table.total() == 0) {
    throw std::invalid_argument("chi_square_independence: empty table");
  }
  for (const auto& [key, count] : table.entries()) {
    if (key.size() != 2) {
      throw std::invalid_argument("chi_square_independence: keys must be pairs");
    }
  }
  const auto rows = table.marginal(0);
  const auto cols = table.marginal(1);
  for (const auto* m : {&rows, &cols}) {
    for (const auto& [value, count] : *m) {
      if (count == 0) {
        throw std::invalid_argument("chi_square_independence: zero marginal");
      }
    }
  }
  const auto total = static_cast<double>(table.total());
  double stat = 0.0;
  for (const auto& [r, rc] : rows) {
    for (const auto& [c, cc] : cols) {
      const double expected = static_cast<double>(rc) * static_cast<double>(cc) / total;
      const double diff = static_cast<double>(table.count({r, c})) - expected;
      stat += diff * diff / expected;
    }
  }
  return stat;
}

double chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.empty()) {
    throw std::invalid_argument("chi_square_uniform: no cells");
  }
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (total == 0.0) {
    throw std::invalid_argument("chi_square_uniform: no observations");
  }
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double chi_square_p_value(double statistic, std::size_t dof) {
  if (dof == 0) {
    throw std::invalid_argument("chi_square_p_value: zero degrees of freedom");
  }
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, std::max(statistic, 0.0)));
}

double chi_square_critical(double alpha, std::size_t dof) {
  if (dof == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("chi_square_critical: bad arguments");
  }
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation: need two equal samples of size ≥ 2");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("correlation: zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

MeanEstimate mean_estimate(std::span<const double> values) {
  MeanEstimate est;
  est.count = values.size();
  if (values.empty()) {
    return est;
  }
  const auto n = static_cast<double>(values.size());
  est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.std_dev = std::sqrt(ss / (n - 1.0));
    est.std_error = est.std_dev / std::sqrt(n);
  }
  return est;
}

double median(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median: empty input");
  }
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) {
    return upper;
  }
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace cvw
