#ifndef TRAJANON_TYPES_HPP
#define TRAJANON_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace trajanon {

/// One spatiotemporal event: planar position in meters, time in whole
/// minutes since the dataset epoch.
struct Sample {
    double x = 0.0;
    double y = 0.0;
    std::int64_t t = 0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Canonical sample order: ascending t, ties broken by x then y.
inline bool sample_less(const Sample& a, const Sample& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

/// Time-ordered event sequence of one pseudonymous user. May contain
/// duplicate samples; deduplication happens only during aggregation.
struct Fingerprint {
    std::string pseudo_id;
    std::vector<Sample> samples;
};

/// A set of fingerprints together with the grid/epoch metadata they are
/// expressed in. Immutable by convention after construction.
struct Dataset {
    std::vector<Fingerprint> users;  // sorted ascending by pseudo_id
    std::int64_t epoch_min = 0;      // minutes since Unix epoch for t = 0
    double spatial_granularity_m = 100.0;
    std::int64_t temporal_granularity_min = 1;

    const Fingerprint* find(const std::string& pseudo_id) const;
};

/// Weights and saturation thresholds of the sample distance.
struct DistanceParams {
    double w_s = 0.5;
    double w_t = 0.5;
    double delta_max_s = 20000.0;  // meters
    double delta_max_t = 480.0;    // minutes
};

struct Violation {
    std::string pseudo_id;  // empty for dataset-level breaches
    std::string rule;
};

/// Checks every structural invariant; returns one record per breach.
/// Pure, empty result means the dataset is well-formed.
std::vector<Violation> validate_dataset(const Dataset& d);

}  // namespace trajanon

#endif
