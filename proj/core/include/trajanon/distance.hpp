#ifndef TRAJANON_DISTANCE_HPP
#define TRAJANON_DISTANCE_HPP

#include <optional>
#include <vector>

#include "trajanon/types.hpp"

namespace trajanon {

/// Weighted spatial/temporal terms of one sample distance.
/// total == spatial + temporal always.
struct SampleDistanceBreakdown {
    double spatial = 0.0;   // w_s * delta_s, in [0, w_s]
    double temporal = 0.0;  // w_t * delta_t, in [0, w_t]
    double total = 0.0;
};

/// Taxicab distance normalized by delta_max_s, clamped to 1.
double spatial_delta(const Sample& a, const Sample& b, const DistanceParams& p);

/// Absolute time gap normalized by delta_max_t, clamped to 1.
double temporal_delta(const Sample& a, const Sample& b, const DistanceParams& p);

SampleDistanceBreakdown sample_distance(const Sample& a, const Sample& b,
                                        const DistanceParams& p);

struct FingerprintDistance {
    double delta = 0.0;
    /// Winning breakdowns, one per sample of the longer fingerprint, in
    /// that fingerprint's order. delta is the mean of their totals.
    std::vector<SampleDistanceBreakdown> matched;
};

/// Fingerprint distance: for each sample of the longer fingerprint (ties:
/// the first argument) take the minimum sample distance into the shorter
/// one, and average. Symmetric in its arguments. Equidistant matches
/// resolve to the smallest index in the shorter fingerprint.
FingerprintDistance fingerprint_distance(const Fingerprint& a, const Fingerprint& b,
                                         const DistanceParams& p);

/// Same delta as fingerprint_distance but without breakdown bookkeeping,
/// and with an optional early exit: returns nullopt as soon as the partial
/// mean of minima provably exceeds `abort_above`. A returned value is
/// bit-identical to the exhaustive computation.
std::optional<double> fingerprint_delta(const Fingerprint& a, const Fingerprint& b,
                                        const DistanceParams& p,
                                        double abort_above);

}  // namespace trajanon

#endif
