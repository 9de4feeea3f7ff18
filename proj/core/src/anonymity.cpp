#include "trajanon/anonymity.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace trajanon {

std::vector<double> UserAnonymizability::spatial_components() const {
    std::vector<double> out;
    for (const auto& nb : neighbors)
        for (const auto& m : nb.matched) out.push_back(m.spatial);
    return out;
}

std::vector<double> UserAnonymizability::temporal_components() const {
    std::vector<double> out;
    for (const auto& nb : neighbors)
        for (const auto& m : nb.matched) out.push_back(m.temporal);
    return out;
}

namespace {

struct Candidate {
    double delta;
    std::size_t idx;  // index into d.users, which is sorted by pseudo_id
};

// Ascending (delta, pseudo_id); user order doubles as id order.
bool cand_less(const Candidate& a, const Candidate& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.idx < b.idx;
}

}  // namespace

AnonymizabilityReport anonymizability(const Dataset& d, int k,
                                      const DistanceParams& p,
                                      bool enable_pruning) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const std::size_t n = d.users.size();
    if (n < static_cast<std::size_t>(k))
        throw std::invalid_argument("population too small for k");
    const std::size_t need = static_cast<std::size_t>(k) - 1;

    AnonymizabilityReport report;
    report.k = k;
    report.params = p;

    for (std::size_t ia = 0; ia < n; ++ia) {
        const Fingerprint& a = d.users[ia];

        // Running list of the need best candidates, sorted ascending.
        std::vector<Candidate> best;
        best.reserve(need + 1);
        for (std::size_t ib = 0; ib < n; ++ib) {
            if (ib == ia) continue;
            double abort_above = std::numeric_limits<double>::infinity();
            if (enable_pruning && best.size() == need) abort_above = best.back().delta;
            auto delta = fingerprint_delta(a, d.users[ib], p, abort_above);
            if (!delta) continue;  // provably worse than the current k-th best
            Candidate c{*delta, ib};
            if (best.size() == need && !cand_less(c, best.back())) continue;
            best.insert(std::upper_bound(best.begin(), best.end(), c, cand_less), c);
            if (best.size() > need) best.pop_back();
        }

        UserAnonymizability ua;
        double sum = 0.0;
        for (const Candidate& c : best) {
            NeighborMatch nm;
            nm.pseudo_id = d.users[c.idx].pseudo_id;
            FingerprintDistance fd = fingerprint_distance(a, d.users[c.idx], p);
            nm.delta = fd.delta;
            nm.matched = std::move(fd.matched);
            sum += nm.delta;
            ua.neighbors.push_back(std::move(nm));
        }
        ua.delta_k = sum / static_cast<double>(need);
        report.per_user.emplace(a.pseudo_id, std::move(ua));
    }
    return report;
}

namespace {

std::set<std::tuple<double, double, std::int64_t>> distinct_samples(const Fingerprint& f) {
    std::set<std::tuple<double, double, std::int64_t>> s;
    for (const auto& smp : f.samples) s.emplace(smp.x, smp.y, smp.t);
    return s;
}

// Canonical key of a fingerprint's distinct-sample set, for grouping.
std::string sample_set_key(const Fingerprint& f) {
    std::string key;
    for (const auto& [x, y, t] : distinct_samples(f)) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld;", x, y,
                      static_cast<long long>(t));
        key += buf;
    }
    return key;
}

}  // namespace

bool is_k_anonymous(const Dataset& d, const std::string& pseudo_id, int k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const Fingerprint* me = d.find(pseudo_id);
    if (!me) throw std::invalid_argument("unknown pseudo_id: " + pseudo_id);
    const auto mine = distinct_samples(*me);
    int twins = 0;
    for (const auto& other : d.users) {
        if (other.pseudo_id == pseudo_id) continue;
        if (distinct_samples(other) == mine && ++twins >= k - 1) return true;
    }
    return false;
}

KAnonymityCount count_k_anonymous(const Dataset& d, int k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    std::unordered_map<std::string, std::size_t> groups;
    for (const auto& fp : d.users) ++groups[sample_set_key(fp)];
    std::size_t count = 0;
    for (const auto& fp : d.users)
        if (groups[sample_set_key(fp)] >= static_cast<std::size_t>(k)) ++count;
    KAnonymityCount out;
    out.count = count;
    out.fraction = d.users.empty() ? 0.0 : static_cast<double>(count) / d.users.size();
    return out;
}

double temporal_spatial_ratio(const AnonymizabilityReport& r,
                              const std::string& pseudo_id) {
    auto it = r.per_user.find(pseudo_id);
    if (it == r.per_user.end())
        throw std::invalid_argument("pseudo_id not in report: " + pseudo_id);
    double s = 0.0, t = 0.0;
    for (const auto& nb : it->second.neighbors)
        for (const auto& m : nb.matched) {
            s += m.spatial;
            t += m.temporal;
        }
    if (s == 0.0) return t == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return t / s;
}

}  // namespace trajanon
