#ifndef TRAJANON_SYNTH_HPP
#define TRAJANON_SYNTH_HPP

#include <cstdint>

#include "trajanon/types.hpp"

namespace trajanon {

/// Knobs for the synthetic trajectory generator. The generator targets the
/// regime where users share much of their spatial routine (anchor sites
/// drawn from a common pool) while their event times carry heavy-tailed
/// offsets, so the temporal dimension dominates dissimilarity.
struct PopulationSpec {
    std::size_t n_users = 100;
    std::size_t days = 14;
    double region_extent_m = 20000.0;  // square side
    std::size_t anchors_per_user = 3;
    double events_per_day = 6.0;       // mean
    double temporal_jitter_min = 30.0; // per-event Gaussian time noise scale
    double temporal_tail_shape = 1.0;  // Pareto shape of the heavy tail
    double tail_fraction = 0.2;        // fraction of events with tail offsets
    std::uint64_t seed = 1;
};

/// Deterministic for a fixed spec (mt19937_64 core, per-user substreams,
/// inverse-transform sampling only). The output validates cleanly and
/// every user survives filter_daily_activity(days).
Dataset generate(const PopulationSpec& spec);

/// Overwrites chosen users' fingerprints with copies of group leaders',
/// planting `groups` cliques of identical fingerprints of size group_size.
Dataset plant_duplicates(const Dataset& d, std::size_t group_size,
                         std::size_t groups, std::uint64_t seed);

}  // namespace trajanon

#endif
