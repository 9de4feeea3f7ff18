#ifndef TRAJANON_STATS_HPP
#define TRAJANON_STATS_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace trajanon {

/// Empirical CDF over a non-empty sample.
class Ecdf {
  public:
    explicit Ecdf(std::vector<double> values);

    const std::vector<double>& sorted_values() const { return values_; }
    std::size_t n() const { return values_.size(); }

    /// Lower empirical quantile: smallest stored v with rank(v)/n >= p,
    /// for p in (0, 1].
    double inverse(double p) const;

  private:
    std::vector<double> values_;  // ascending
};

/// Population Gini coefficient of a non-negative multiset with at least
/// one positive value. Equals the mean-absolute-difference form
/// sum |s_i - s_j| / (2 N^2 mean); throws on all-zero or empty input.
double gini(const std::vector<double>& values);

/// Standard normal quantile, |error| <= 1e-9.
double inverse_normal_cdf(double p);

struct TailWeight {
    double value = 0.0;
    bool small_sample = false;  // n < 100: the 0.99 quantile is unreliable
};

/// Tail weight index: the (0.99-0.5)/(0.75-0.5) quantile-gap ratio of the
/// ECDF, normalized by the same ratio for a standard normal (~0.289954).
/// Throws when the median equals the 75th percentile.
TailWeight tail_weight(const Ecdf& e);

/// Evenly rank-spaced (value, cumulative probability) pairs for plotting;
/// the last pair sits at the maximum with p = 1.
std::vector<std::pair<double, double>> cdf_table(const std::vector<double>& values,
                                                 std::size_t points);

}  // namespace trajanon

#endif
