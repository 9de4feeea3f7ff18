#include "trajanon/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "trajanon/projection.hpp"
#include "trajanon/stats.hpp"

namespace trajanon {

namespace {

constexpr double kBaseCellM = 100.0;
constexpr std::int64_t kMinutesPerDay = 1440;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform double strictly inside (0, 1); platform-stable given the
// standardized mt19937_64 output sequence.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

double normal(std::mt19937_64& rng, double sigma) {
    return sigma * inverse_normal_cdf(uniform01(rng));
}

void check_spec(const PopulationSpec& s) {
    if (s.n_users == 0 || s.days == 0 || s.anchors_per_user == 0 ||
        s.events_per_day <= 0.0)
        throw std::invalid_argument("population spec counts must be positive");
    if (s.tail_fraction < 0.0 || s.tail_fraction > 1.0)
        throw std::invalid_argument("tail_fraction must be in [0, 1]");
    if (s.region_extent_m < kBaseCellM)
        throw std::invalid_argument("region_extent_m must be at least 100 m");
    if (s.temporal_tail_shape <= 0.0)
        throw std::invalid_argument("temporal_tail_shape must be positive");
    if (s.temporal_jitter_min < 0.0)
        throw std::invalid_argument("temporal_jitter_min must be non-negative");
}

std::string make_id(std::size_t idx, std::size_t n_users) {
    std::size_t width = 1;
    for (std::size_t v = n_users; v >= 10; v /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof buf, "u%0*llu", static_cast<int>(width),
                  static_cast<unsigned long long>(idx));
    return buf;
}

}  // namespace

Dataset generate(const PopulationSpec& spec) {
    check_spec(spec);

    // Small shared pool of anchor sites: users draw their routine places
    // from it, which keeps spatial fingerprints similar across the
    // population (and identical when all noise knobs are zero).
    // Sites sit on a ring around the region center so every pair is far
    // apart: a cross-anchor spatial jump then always costs more than a
    // within-day temporal mismatch, keeping the two components decoupled.
    std::mt19937_64 pool_rng(splitmix64(spec.seed ^ 0xA17C0C5Eull));
    const std::size_t pool_size = std::max<std::size_t>(3, spec.anchors_per_user);
    const double cx = 0.5 * spec.region_extent_m;
    const double radius = 0.45 * spec.region_extent_m;
    const double dither = 0.02 * spec.region_extent_m;
    std::vector<std::pair<double, double>> sites(pool_size);
    for (std::size_t j = 0; j < pool_size; ++j) {
        const double ang = 2.0 * std::acos(-1.0) *
                           (static_cast<double>(j) + 0.25) /
                           static_cast<double>(pool_size);
        double sx = cx + radius * std::cos(ang) + (uniform01(pool_rng) - 0.5) * dither;
        double sy = cx + radius * std::sin(ang) + (uniform01(pool_rng) - 0.5) * dither;
        sx = std::clamp(sx, 0.0, spec.region_extent_m - 1.0);
        sy = std::clamp(sy, 0.0, spec.region_extent_m - 1.0);
        sites[j] = snap_to_grid(sx, sy, kBaseCellM);
    }

    const std::size_t events = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(spec.events_per_day)));
    const double spatial_sigma = 5.0 * spec.temporal_jitter_min;

    Dataset d;
    d.spatial_granularity_m = kBaseCellM;
    d.temporal_granularity_min = 1;
    d.users.reserve(spec.n_users);

    for (std::size_t u = 0; u < spec.n_users; ++u) {
        std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(u + 1)));
        Fingerprint fp;
        fp.pseudo_id = make_id(u, spec.n_users);

        std::vector<std::size_t> anchors(spec.anchors_per_user);
        for (auto& a : anchors)
            a = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pool_size));

        for (std::size_t day = 0; day < spec.days; ++day) {
            for (std::size_t e = 0; e < events; ++e) {
                // Routine slots spread over 08:00-22:00.
                const std::int64_t slot =
                    480 + static_cast<std::int64_t>(std::llround(
                              (static_cast<double>(e) + 0.5) * 840.0 /
                              static_cast<double>(events)));
                double offset = normal(rng, spec.temporal_jitter_min);
                const bool tailed = uniform01(rng) < spec.tail_fraction;
                if (tailed) {
                    const double pareto =
                        std::pow(uniform01(rng), -1.0 / spec.temporal_tail_shape);
                    const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
                    offset += sign * std::max(30.0, spec.temporal_jitter_min) * pareto;
                }
                std::int64_t t = static_cast<std::int64_t>(day) * kMinutesPerDay + slot +
                                 static_cast<std::int64_t>(std::llround(offset));
                // Clamp inside the day so the activity filter always passes.
                const std::int64_t lo = static_cast<std::int64_t>(day) * kMinutesPerDay;
                t = std::clamp(t, lo, lo + kMinutesPerDay - 1);

                const auto& site = sites[anchors[e % anchors.size()]];
                double x = site.first, y = site.second;
                if (spatial_sigma > 0.0) {
                    x += normal(rng, spatial_sigma);
                    y += normal(rng, spatial_sigma);
                }
                auto [gx, gy] = snap_to_grid(x, y, kBaseCellM);
                fp.samples.push_back({gx, gy, t});
            }
        }
        std::sort(fp.samples.begin(), fp.samples.end(), sample_less);
        d.users.push_back(std::move(fp));
    }
    return d;
}

Dataset plant_duplicates(const Dataset& d, std::size_t group_size,
                         std::size_t groups, std::uint64_t seed) {
    Dataset out = d;
    if (groups == 0) return out;
    if (group_size < 1 || groups * group_size > d.users.size())
        throw std::invalid_argument("not enough users to plant duplicate groups");

    std::vector<std::size_t> order(d.users.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(splitmix64(seed));
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng() % (i + 1)]);

    std::size_t pos = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t leader = order[pos++];
        for (std::size_t m = 1; m < group_size; ++m)
            out.users[order[pos++]].samples = d.users[leader].samples;
    }
    return out;
}

}  // namespace trajanon
