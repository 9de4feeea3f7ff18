// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>
#include <unistd.h>

#include "test_util.hpp"
#include "trajanon/aggregate.hpp"
#include "trajanon/anonymity.hpp"
#include "trajanon/dataset_io.hpp"
#include "trajanon/distance.hpp"
#include "trajanon/stats.hpp"
#include "trajanon/synth.hpp"

using namespace trajanon;
using namespace trajanon::testutil;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    FAILED: " << what << "\n";
        }
    }
};

double median_of(std::vector<double> v) { return Ecdf(std::move(v)).inverse(0.5); }

double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// --- criterion 1: tail-weight calibration -------------------------------

void criterion_tail_weight(Check& c) {
    std::mt19937_64 rng(2024);
    std::vector<double> expo(1000000), pareto(1000000);
    for (auto& x : expo) x = -std::log(uniform01(rng));
    for (auto& x : pareto) x = 1.0 / uniform01(rng);

    const double tw_expo = tail_weight(Ecdf(std::move(expo))).value;
    const double tw_pareto = tail_weight(Ecdf(std::move(pareto))).value;
    c.detail << "    exponential: " << tw_expo << ", pareto(1): " << tw_pareto << "\n";
    c.expect(tw_expo >= 1.55 && tw_expo <= 1.72, "exponential tail weight in [1.55, 1.72]");
    c.expect(tw_pareto >= 12.0 && tw_pareto <= 16.5, "pareto tail weight in [12, 16.5]");
}

// --- criterion 2: measure arithmetic cross-check ------------------------

void criterion_measure_arithmetic(Check& c) {
    Fingerprint a{"a", {{0, 0, 0}}};
    Fingerprint b{"b", {{1000, 700, 41}}};  // taxicab 1700 m, 41 min

    DistanceParams unit{1.0, 1.0, 20000.0, 480.0};
    const double d_unit = fingerprint_distance(a, b, unit).delta;
    c.detail << "    unit weights: " << d_unit << "\n";
    c.expect(std::abs(d_unit - 0.1704) <= 0.0005, "unit-weight measure 0.1704 +/- 0.0005");

    DistanceParams half{0.5, 0.5, 20000.0, 480.0};
    const double d_half = fingerprint_distance(a, b, half).delta;
    c.detail << "    half weights: " << d_half << "\n";
    c.expect(std::abs(d_half - 0.0852) <= 0.0005, "half-weight measure 0.0852 +/- 0.0005");
}

// --- criterion 3: metric-layer property suite ---------------------------

void criterion_metric_properties(Check& c) {
    const DistanceParams p{};
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000 && c.ok; ++i) {
        auto a = random_fingerprint(rng, "a");
        auto b = random_fingerprint(rng, "b");
        const double ab = fingerprint_distance(a, b, p).delta;
        const double ba = fingerprint_distance(b, a, p).delta;
        c.expect(ab == ba, "symmetry (exact)");
        c.expect(ab >= 0.0 && ab <= p.w_s + p.w_t, "range containment");
    }
    for (int i = 0; i < 500 && c.ok; ++i) {
        auto a = random_fingerprint(rng, "a", 8);
        auto b = random_fingerprint(rng, "b", 8);
        c.expect(fingerprint_distance(a, b, p).delta == brute_force_delta(a, b, p),
                 "brute-force oracle equivalence (exact)");
    }

    PopulationSpec spec;
    spec.n_users = 200;
    spec.days = 14;
    spec.seed = 5;
    Dataset d = generate(spec);
    std::map<std::string, double> prev;
    for (int k = 2; k <= 10; ++k) {
        auto r = anonymizability(d, k, p);
        for (const auto& [id, ua] : r.per_user) {
            if (k > 2 && ua.delta_k < prev[id]) {
                c.expect(false, "k-monotonicity for " + id + " at k=" + std::to_string(k));
                return;
            }
            prev[id] = ua.delta_k;
        }
    }
}

// --- criterion 4: Gini oracle equivalence -------------------------------

void criterion_gini(Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len(1, 1000);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = val(rng);
        const double diff = std::abs(gini(v) - mad_gini(v));
        if (diff >= 1e-9) {
            c.expect(false, "gini vs MAD oracle diff " + std::to_string(diff));
            return;
        }
    }
}

// --- criterion 5: planted anonymity ground truth ------------------------

void criterion_planted(Check& c) {
    PopulationSpec spec;
    spec.n_users = 500;
    spec.days = 14;
    spec.seed = 17;
    Dataset d = plant_duplicates(generate(spec), 3, 10, 17);

    const auto k2 = count_k_anonymous(d, 2);
    const auto k3 = count_k_anonymous(d, 3);
    c.detail << "    k2 count: " << k2.count << ", k3 count: " << k3.count << "\n";
    c.expect(k2.count == 30, "exactly 30 users 2-anonymous");
    c.expect(k3.count == 30, "exactly 30 users 3-anonymous");

    auto report = anonymizability(d, 2, DistanceParams{});
    std::size_t zero = 0;
    for (const auto& fp : d.users)
        if (is_k_anonymous(d, fp.pseudo_id, 2)) {
            if (report.per_user.at(fp.pseudo_id).delta_k == 0.0) ++zero;
        }
    c.expect(zero == 30, "every planted user has delta2 = 0");
}

// --- criterion 6: qualitative replication on heavy-tail data ------------

void criterion_qualitative(Check& c) {
    const DistanceParams p{};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PopulationSpec spec;
        spec.n_users = 1000;
        spec.days = 14;
        spec.seed = seed;
        Dataset d = generate(spec);

        const auto base = count_k_anonymous(d, 2);
        c.expect(base.count == 0,
                 "seed " + std::to_string(seed) + ": no user 2-anonymous at base");

        auto report = anonymizability(d, 2, p);
        std::vector<double> ratios, tw_s, tw_t;
        std::size_t above4 = 0;
        for (const auto& [id, ua] : report.per_user) {
            const double r = temporal_spatial_ratio(report, id);
            ratios.push_back(r);
            if (r > 4.0) ++above4;
            try {
                tw_s.push_back(tail_weight(Ecdf(ua.spatial_components())).value);
            } catch (const std::invalid_argument&) {}
            try {
                tw_t.push_back(tail_weight(Ecdf(ua.temporal_components())).value);
            } catch (const std::invalid_argument&) {}
        }
        const double med_ratio = median_of(ratios);
        const double frac4 = double(above4) / double(ratios.size());
        c.detail << "    seed " << seed << ": median ratio " << med_ratio
                 << ", frac>4 " << frac4;
        c.expect(med_ratio > 1.0, "seed " + std::to_string(seed) + ": median ratio > 1");
        c.expect(frac4 >= 0.5,
                 "seed " + std::to_string(seed) + ": >=50% of users above ratio 4");

        c.expect(!tw_s.empty() && !tw_t.empty(), "tail weights defined");
        if (!tw_s.empty() && !tw_t.empty()) {
            const double ms = median_of(tw_s), mt = median_of(tw_t);
            c.detail << ", median tw spatial " << ms << " temporal " << mt;
            c.expect(mt > ms,
                     "seed " + std::to_string(seed) + ": temporal tail heavier");
        }

        const auto coarse = count_k_anonymous(aggregate(d, 20000, 480), 2);
        c.detail << ", frac 2-anon @(20km,8h) " << coarse.fraction << "\n";
        c.expect(coarse.fraction < 1.0,
                 "seed " + std::to_string(seed) + ": coarse aggregation below 1.0");
    }
}

// --- criterion 7: pruned vs exhaustive k-NN -----------------------------

void criterion_pruning(Check& c) {
    const DistanceParams p{};
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        PopulationSpec spec;
        spec.n_users = 200;
        spec.days = 14;
        spec.seed = seed;
        Dataset d = generate(spec);
        auto pruned = anonymizability(d, 2, p, true);
        auto exhaustive = anonymizability(d, 2, p, false);
        for (const auto& [id, ua] : pruned.per_user) {
            const auto& ex = exhaustive.per_user.at(id);
            if (ua.delta_k != ex.delta_k ||
                ua.neighbors[0].pseudo_id != ex.neighbors[0].pseudo_id) {
                c.expect(false, "seed " + std::to_string(seed) + ": mismatch at " + id);
                return;
            }
        }
    }
}

// --- criterion 8: pipeline determinism ----------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) return "<missing:" + p.string() + ">";
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

void criterion_pipeline_determinism(Check& c) {
    const char* bin = std::getenv("TRAJANON_BIN");
    if (!bin) {
        c.expect(false, "TRAJANON_BIN not set");
        return;
    }
    fs::path tmp = fs::temp_directory_path() /
                   ("trajanon_acc_" + std::to_string(::getpid()));
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    auto run_pipeline = [&](const std::string& tag) {
        const fs::path dir = tmp / tag;
        fs::create_directories(dir);
        const std::string raw = (dir / "raw.csv").string();
        const std::string data = (dir / "data.csv").string();
        std::string cmd = std::string(bin) + " generate --output " + raw +
                          " --users 50 --days 5 --seed 9 >/dev/null && " + bin +
                          " ingest --epoch-minutes --input " + raw + " --output " +
                          data + " >/dev/null && " + bin + " analyze --input " + data +
                          " --k 2 --output " + (dir / "report").string() +
                          " >/dev/null && " + bin + " decompose --input " + data +
                          " --k 2 --output " + (dir / "dec").string() + " >/dev/null";
        return std::system(cmd.c_str()) == 0 ? dir : fs::path{};
    };

    const fs::path run1 = run_pipeline("one");
    const fs::path run2 = run_pipeline("two");
    c.expect(!run1.empty() && !run2.empty(), "pipeline commands succeed");
    if (!run1.empty() && !run2.empty()) {
        for (const char* rel :
             {"raw.csv", "data.csv", "data.csv.meta.json", "report/delta_k2.csv",
              "report/delta_cdf_k2.csv", "report/summary.json",
              "dec/decompose_k2.csv"}) {
            c.expect(slurp(run1 / rel) == slurp(run2 / rel),
                     std::string("byte-identical ") + rel);
        }
    }
    fs::remove_all(tmp);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> fn;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {"1 tail-weight calibration (exponential ~1.6, pareto ~14)",
         criterion_tail_weight, 5.0},
        {"2 measure arithmetic cross-check (1.7 km / 41 min)",
         criterion_measure_arithmetic, 5.0},
        {"3 metric-layer property suite", criterion_metric_properties, 30.0},
        {"4 Gini oracle equivalence", criterion_gini, 10.0},
        {"5 planted anonymity ground truth", criterion_planted, 60.0},
        {"6 qualitative replication on heavy-tail data", criterion_qualitative, 600.0},
        {"7 pruned vs exhaustive k-NN bit-exactness", criterion_pruning, 120.0},
        {"8 pipeline determinism", criterion_pipeline_determinism, 120.0},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = Clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(Clock::now() - t0).count();
        if (elapsed > cr.budget_s)
            c.expect(false, "runtime " + std::to_string(elapsed) + "s over budget");
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << cr.name << "  ("
                  << elapsed << "s)\n" << c.detail.str();
        if (!c.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
