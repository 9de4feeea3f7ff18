#ifndef TRAJANON_AGGREGATE_HPP
#define TRAJANON_AGGREGATE_HPP

#include <cstdint>
#include <vector>

#include "trajanon/anonymity.hpp"
#include "trajanon/types.hpp"

namespace trajanon {

/// Coarsens a dataset onto a nested grid: cells of side `cell_side` and
/// time bins of `bin_width` minutes. Samples move to cell centers and bin
/// midpoints (floored to the minute); duplicate triples within one
/// fingerprint collapse. Both targets must be integer multiples of the
/// current granularities.
Dataset aggregate(const Dataset& d, double cell_side, std::int64_t bin_width);

struct AggregationLevel {
    double cell_side = 100.0;
    std::int64_t bin_width = 1;
};

struct LevelSummary {
    AggregationLevel level;
    std::vector<std::pair<double, double>> delta_cdf;  // (delta, cumulative p)
    double median_delta = 0.0;
    KAnonymityCount k_anonymous;
    std::vector<double> deltas;  // per-user, ordered by pseudo_id
};

/// Evaluates each level independently from the base dataset (never
/// cumulatively) and summarizes the anonymizability it yields.
std::vector<LevelSummary> aggregation_sweep(const Dataset& d,
                                            const std::vector<AggregationLevel>& levels,
                                            int k, const DistanceParams& p,
                                            std::size_t cdf_points = 100);

}  // namespace trajanon

#endif
