#include "trajanon/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trajanon/projection.hpp"
#include "trajanon/stats.hpp"

namespace trajanon {

namespace {

bool is_integer_multiple(double coarse, double fine) {
    const double ratio = coarse / fine;
    return std::abs(ratio - std::round(ratio)) < 1e-9 && ratio >= 1.0 - 1e-9;
}

}  // namespace

Dataset aggregate(const Dataset& d, double cell_side, std::int64_t bin_width) {
    if (!is_integer_multiple(cell_side, d.spatial_granularity_m))
        throw std::invalid_argument(
            "cell_side must be an integer multiple of the current spatial granularity");
    if (bin_width < d.temporal_granularity_min ||
        bin_width % d.temporal_granularity_min != 0)
        throw std::invalid_argument(
            "bin_width must be an integer multiple of the current temporal granularity");

    Dataset out;
    out.epoch_min = d.epoch_min;
    out.spatial_granularity_m = cell_side;
    out.temporal_granularity_min = bin_width;
    out.users.reserve(d.users.size());
    for (const auto& fp : d.users) {
        Fingerprint agg;
        agg.pseudo_id = fp.pseudo_id;
        agg.samples.reserve(fp.samples.size());
        for (const auto& s : fp.samples) {
            auto [x, y] = snap_to_grid(s.x, s.y, cell_side);
            // Bin midpoint, floored to the minute.
            const std::int64_t t = (s.t / bin_width) * bin_width + bin_width / 2;
            agg.samples.push_back({x, y, t});
        }
        std::sort(agg.samples.begin(), agg.samples.end(), sample_less);
        agg.samples.erase(std::unique(agg.samples.begin(), agg.samples.end()),
                          agg.samples.end());
        out.users.push_back(std::move(agg));
    }
    return out;
}

std::vector<LevelSummary> aggregation_sweep(const Dataset& d,
                                            const std::vector<AggregationLevel>& levels,
                                            int k, const DistanceParams& p,
                                            std::size_t cdf_points) {
    std::vector<LevelSummary> out;
    out.reserve(levels.size());
    for (const auto& level : levels) {
        Dataset coarse = aggregate(d, level.cell_side, level.bin_width);
        AnonymizabilityReport report = anonymizability(coarse, k, p);

        LevelSummary summary;
        summary.level = level;
        summary.deltas.reserve(report.per_user.size());
        for (const auto& [id, ua] : report.per_user) summary.deltas.push_back(ua.delta_k);
        summary.delta_cdf = cdf_table(summary.deltas, cdf_points);
        summary.median_delta = Ecdf(summary.deltas).inverse(0.5);
        summary.k_anonymous = count_k_anonymous(coarse, k);
        out.push_back(std::move(summary));
    }
    return out;
}

}  // namespace trajanon
