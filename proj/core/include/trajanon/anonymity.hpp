#ifndef TRAJANON_ANONYMITY_HPP
#define TRAJANON_ANONYMITY_HPP

#include <map>
#include <string>
#include <vector>

#include "trajanon/distance.hpp"
#include "trajanon/types.hpp"

namespace trajanon {

/// One selected neighbor with the full matched breakdown against the owner.
struct NeighborMatch {
    std::string pseudo_id;
    double delta = 0.0;
    std::vector<SampleDistanceBreakdown> matched;
};

struct UserAnonymizability {
    double delta_k = 0.0;  // mean neighbor delta
    std::vector<NeighborMatch> neighbors;  // ascending (delta, pseudo_id)

    /// Pooled weighted spatial components over all neighbor matchings.
    std::vector<double> spatial_components() const;
    /// Pooled weighted temporal components over all neighbor matchings.
    std::vector<double> temporal_components() const;
};

struct AnonymizabilityReport {
    int k = 2;
    DistanceParams params;
    std::map<std::string, UserAnonymizability> per_user;
};

/// Per-user mean fingerprint distance to the k-1 nearest other users,
/// with the matched spatial/temporal components of every neighbor pairing.
/// Neighbor ties at the boundary break by lexicographic pseudo_id.
/// Pruning (on by default) never changes any output bit.
AnonymizabilityReport anonymizability(const Dataset& d, int k,
                                      const DistanceParams& p,
                                      bool enable_pruning = true);

/// Exact k-anonymity after generalization: the user's distinct-sample set
/// equals that of at least k-1 other users.
bool is_k_anonymous(const Dataset& d, const std::string& pseudo_id, int k);

struct KAnonymityCount {
    std::size_t count = 0;
    double fraction = 0.0;
};

KAnonymityCount count_k_anonymous(const Dataset& d, int k);

/// Sum of temporal components over sum of spatial components for one user.
/// +infinity when only the spatial sum is zero; 0 when both are zero.
double temporal_spatial_ratio(const AnonymizabilityReport& r,
                              const std::string& pseudo_id);

}  // namespace trajanon

#endif
