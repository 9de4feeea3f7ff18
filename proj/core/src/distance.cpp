#include "trajanon/distance.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace trajanon {

double spatial_delta(const Sample& a, const Sample& b, const DistanceParams& p) {
    const double taxicab = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    return taxicab >= p.delta_max_s ? 1.0 : taxicab / p.delta_max_s;
}

double temporal_delta(const Sample& a, const Sample& b, const DistanceParams& p) {
    const double gap = static_cast<double>(a.t >= b.t ? a.t - b.t : b.t - a.t);
    return gap >= p.delta_max_t ? 1.0 : gap / p.delta_max_t;
}

SampleDistanceBreakdown sample_distance(const Sample& a, const Sample& b,
                                        const DistanceParams& p) {
    SampleDistanceBreakdown r;
    r.spatial = p.w_s * spatial_delta(a, b, p);
    r.temporal = p.w_t * temporal_delta(a, b, p);
    r.total = r.spatial + r.temporal;
    return r;
}

namespace {

void check_nonempty(const Fingerprint& f) {
    if (f.samples.empty())
        throw std::invalid_argument("empty fingerprint: " + f.pseudo_id);
}

bool samples_lex_less(const Fingerprint& a, const Fingerprint& b) {
    return std::lexicographical_compare(
        a.samples.begin(), a.samples.end(), b.samples.begin(), b.samples.end(),
        sample_less);
}

// Longer fingerprint first. Equal lengths take a canonical orientation
// (pseudo_id, then sample content) so the result cannot depend on
// argument order.
void order_long_short(const Fingerprint& a, const Fingerprint& b,
                      const Fingerprint*& longer, const Fingerprint*& shorter) {
    bool a_first;
    if (a.samples.size() != b.samples.size()) {
        a_first = a.samples.size() > b.samples.size();
    } else if (a.pseudo_id != b.pseudo_id) {
        a_first = a.pseudo_id < b.pseudo_id;
    } else {
        a_first = !samples_lex_less(b, a);
    }
    longer = a_first ? &a : &b;
    shorter = a_first ? &b : &a;
}

}  // namespace

FingerprintDistance fingerprint_distance(const Fingerprint& a, const Fingerprint& b,
                                         const DistanceParams& p) {
    check_nonempty(a);
    check_nonempty(b);
    const Fingerprint *longer, *shorter;
    order_long_short(a, b, longer, shorter);

    FingerprintDistance out;
    out.matched.reserve(longer->samples.size());
    double sum = 0.0;
    for (const Sample& h : longer->samples) {
        SampleDistanceBreakdown best = sample_distance(h, shorter->samples[0], p);
        for (std::size_t k = 1; k < shorter->samples.size(); ++k) {
            // The temporal term alone lower-bounds the total.
            const double temporal = p.w_t * temporal_delta(h, shorter->samples[k], p);
            if (temporal >= best.total) continue;
            SampleDistanceBreakdown cand = sample_distance(h, shorter->samples[k], p);
            if (cand.total < best.total) best = cand;
        }
        sum += best.total;
        out.matched.push_back(best);
    }
    out.delta = sum / static_cast<double>(longer->samples.size());
    return out;
}

std::optional<double> fingerprint_delta(const Fingerprint& a, const Fingerprint& b,
                                        const DistanceParams& p,
                                        double abort_above) {
    check_nonempty(a);
    check_nonempty(b);
    const Fingerprint *longer, *shorter;
    order_long_short(a, b, longer, shorter);
    const double n = static_cast<double>(longer->samples.size());

    double sum = 0.0;
    for (const Sample& h : longer->samples) {
        double best = sample_distance(h, shorter->samples[0], p).total;
        for (std::size_t k = 1; k < shorter->samples.size(); ++k) {
            const double temporal = p.w_t * temporal_delta(h, shorter->samples[k], p);
            if (temporal >= best) continue;
            const double cand = sample_distance(h, shorter->samples[k], p).total;
            if (cand < best) best = cand;
        }
        sum += best;
        // Remaining minima are non-negative, so sum/n already bounds delta
        // from below; fl() monotonicity keeps the final delta strictly above
        // abort_above whenever we bail here.
        if (sum / n > abort_above) return std::nullopt;
    }
    return sum / n;
}

}  // namespace trajanon
