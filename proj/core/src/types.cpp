#include "trajanon/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace trajanon {

const Fingerprint* Dataset::find(const std::string& pseudo_id) const {
    auto it = std::lower_bound(users.begin(), users.end(), pseudo_id,
                               [](const Fingerprint& f, const std::string& id) {
                                   return f.pseudo_id < id;
                               });
    if (it != users.end() && it->pseudo_id == pseudo_id) return &*it;
    return nullptr;
}

std::vector<Violation> validate_dataset(const Dataset& d) {
    std::vector<Violation> out;
    if (d.spatial_granularity_m < 100.0)
        out.push_back({"", "spatial granularity below 100 m"});
    if (d.temporal_granularity_min < 1)
        out.push_back({"", "temporal granularity below 1 min"});

    std::unordered_set<std::string> seen;
    for (const auto& fp : d.users) {
        if (!seen.insert(fp.pseudo_id).second)
            out.push_back({fp.pseudo_id, "duplicate pseudo_id"});
        if (fp.samples.empty()) {
            out.push_back({fp.pseudo_id, "empty fingerprint"});
            continue;
        }
        bool finite = true, nonneg = true, sorted = true;
        const Sample* prev = nullptr;
        for (const auto& s : fp.samples) {
            if (!std::isfinite(s.x) || !std::isfinite(s.y)) finite = false;
            if (s.t < 0) nonneg = false;
            if (prev && sample_less(s, *prev)) sorted = false;
            prev = &s;
        }
        if (!finite) out.push_back({fp.pseudo_id, "non-finite coordinates"});
        if (!nonneg) out.push_back({fp.pseudo_id, "negative timestamp"});
        if (!sorted) out.push_back({fp.pseudo_id, "unsorted samples"});
    }
    return out;
}

}  // namespace trajanon
