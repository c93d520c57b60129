#pragma once

#include <cstddef>
#include <span>

#include "cvwalk/count_table.hpp"

namespace cvw {

double standard_normal_cdf(double x);

/// sup_x |F_n(x) - Φ(x)| for the empirical CDF F_n of `sample`.
/// Throws std::invalid_argument on an empty sample.
double ks_statistic(std::span<const double> sample);

/// Pearson statistic of a two-way table against the product of its
/// marginals. Keys must be pairs. Throws std::invalid_argument if the table
/// is empty, has a key that is not a pair, or a zero marginal.
double chi_square_independence(const CountTable& table);

/// Pearson statistic of observed counts against equal expected counts.
double chi_square_uniform(std::span<const std::uint64_t> counts);

/// Degrees of freedom (rows - 1)(cols - 1) of a two-way table.
std::size_t independence_dof(const CountTable& table);

/// P(X ≥ statistic) for X ~ chi-square(dof).
double chi_square_p_value(double statistic, std::size_t dof);

/// Value c with P(X ≥ c) = alpha for X ~ chi-square(dof).
double chi_square_critical(double alpha, std::size_t dof);

/// Pearson sample correlation. Throws on size mismatch, fewer than 2 points
/// or zero variance.
double correlation(std::span<const double> x, std::span<const double> y);

struct MeanEstimate {
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

MeanEstimate mean_estimate(std::span<const double> values);

double median(std::span<const double> values);

}  // namespace cvw
