#include "trajanon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajanon {

Ecdf::Ecdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("empty ECDF sample");
    std::sort(values_.begin(), values_.end());
}

double Ecdf::inverse(double p) const {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("quantile probability must be in (0, 1]");
    const std::size_t n = values_.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return values_[rank - 1];
}

double gini(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("undefined Gini: empty input");
    std::vector<double> s(values);
    std::sort(s.begin(), s.end(), std::greater<double>());
    double total = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0.0) throw std::invalid_argument("undefined Gini: negative value");
        total += s[i];
        weighted += static_cast<double>(i) * s[i];
    }
    if (total <= 0.0) throw std::invalid_argument("undefined Gini: all values zero");
    const double n = static_cast<double>(s.size());
    return 1.0 - (2.0 * weighted + total) / (n * total);
}

namespace {

// Acklam's rational approximation to the standard normal quantile.
double acklam(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

}  // namespace

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("probability must be in (0, 1)");
    double x = acklam(p);
    // One Newton step against the erf-based CDF tightens Acklam's ~1e-9
    // relative error well past the promised bound.
    x -= (normal_cdf(x) - p) / normal_pdf(x);
    return x;
}

TailWeight tail_weight(const Ecdf& e) {
    const double q50 = e.inverse(0.5);
    const double q75 = e.inverse(0.75);
    const double q99 = e.inverse(0.99);
    if (q75 == q50)
        throw std::invalid_argument("degenerate interquartile tail");
    const double normal_ratio =
        inverse_normal_cdf(0.75) / inverse_normal_cdf(0.99);  // Phi^-1(0.5) = 0
    TailWeight tw;
    tw.value = (q99 - q50) / (q75 - q50) * normal_ratio;
    tw.small_sample = e.n() < 100;
    return tw;
}

std::vector<std::pair<double, double>> cdf_table(const std::vector<double>& values,
                                                 std::size_t points) {
    if (values.empty()) throw std::invalid_argument("empty CDF sample");
    if (points < 2) throw std::invalid_argument("need at least 2 CDF points");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (std::size_t j = 1; j <= points; ++j) {
        std::size_t rank = (j * n + points - 1) / points;  // ceil(j n / points)
        if (rank < 1) rank = 1;
        out.emplace_back(sorted[rank - 1],
                         static_cast<double>(rank) / static_cast<double>(n));
    }
    return out;
}

}  // namespace trajanon
