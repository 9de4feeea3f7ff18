// trajanon: ingest, generalize and score trajectory datasets for
// k-anonymizability. Exit codes: 0 ok, 1 I/O, 2 parse, 3 bad arguments.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trajanon/aggregate.hpp"
#include "trajanon/anonymity.hpp"
#include "trajanon/civil_time.hpp"
#include "trajanon/dataset_io.hpp"
#include "trajanon/ingest.hpp"
#include "trajanon/stats.hpp"
#include "trajanon/synth.hpp"

namespace fs = std::filesystem;
using namespace trajanon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitArgs = 3;

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct DistanceFlags {
    double ws = 0.5, wt = 0.5, dmax_s = 20000.0, dmax_t = 480.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ws", ws, "spatial weight");
        cmd->add_option("--wt", wt, "temporal weight");
        cmd->add_option("--delta-max-s", dmax_s, "spatial saturation threshold, meters");
        cmd->add_option("--delta-max-t", dmax_t, "temporal saturation threshold, minutes");
    }

    DistanceParams params() const {
        if (ws < 0 || wt < 0 || ws + wt <= 0 || dmax_s <= 0 || dmax_t <= 0)
            throw CLI::ValidationError("invalid distance parameters");
        return {ws, wt, dmax_s, dmax_t};
    }
};

std::vector<AggregationLevel> parse_levels(const std::vector<std::string>& specs) {
    std::vector<AggregationLevel> out;
    for (const auto& s : specs) {
        double cell;
        long long bin;
        char sep;
        if (std::sscanf(s.c_str(), "%lf%c%lld", &cell, &sep, &bin) != 3 ||
            (sep != 'x' && sep != 'X') || cell <= 0 || bin <= 0)
            throw std::invalid_argument("bad level '" + s + "', expected CELLxBIN");
        out.push_back({cell, bin});
    }
    return out;
}

void write_cdf_csv(const std::string& path,
                   const std::vector<std::pair<double, double>>& cdf,
                   const char* value_name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << value_name << ",cumulative_probability\n";
    for (const auto& [v, p] : cdf) out << fmt(v) << "," << fmt(p) << "\n";
}

nlohmann::json delta_summary(const std::vector<double>& deltas) {
    Ecdf e(deltas);
    std::size_t zeros = 0, ones = 0;
    for (double v : e.sorted_values()) {
        if (v == 0.0) ++zeros;
        if (v == 1.0) ++ones;
    }
    nlohmann::json j;
    j["median"] = e.inverse(0.5);
    j["p25"] = e.inverse(0.25);
    j["p75"] = e.inverse(0.75);
    j["p90"] = e.inverse(0.9);
    j["p99"] = e.inverse(0.99);
    j["fraction_at_zero"] = static_cast<double>(zeros) / static_cast<double>(e.n());
    j["fraction_at_one"] = static_cast<double>(ones) / static_cast<double>(e.n());
    return j;
}

int run_ingest(const std::string& input, const std::string& output,
               const std::string& epoch_str, bool epoch_minutes,
               std::optional<double> center_lat, std::optional<double> center_lon,
               std::size_t filter_days) {
    if (!fs::exists(input)) {
        std::cerr << "error: no such file: " << input << "\n";
        return kExitIo;
    }
    std::ifstream in(input);
    if (!in) {
        std::cerr << "error: cannot open: " << input << "\n";
        return kExitIo;
    }
    RawRecords raw = parse_trajectory_csv(in, epoch_minutes);

    std::optional<ProjectionSpec> projection;
    if (center_lat || center_lon) {
        if (!center_lat || !center_lon)
            throw CLI::ValidationError("--center-lat and --center-lon go together");
        projection = ProjectionSpec{*center_lat, *center_lon};
    }
    std::optional<std::int64_t> epoch;
    if (!epoch_str.empty()) epoch = parse_iso_minute(epoch_str);

    IngestResult res = ingest(raw, projection, epoch);
    Dataset d = std::move(res.dataset);
    if (filter_days > 0) d = filter_daily_activity(d, filter_days);
    if (d.users.empty()) {
        std::cerr << "error: no users left after filtering\n";
        return kExitArgs;
    }
    write_canonical(d, output, res.projection);

    std::size_t samples = 0;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = xhi;
    std::int64_t tlo = std::numeric_limits<std::int64_t>::max(), thi = 0;
    for (const auto& fp : d.users)
        for (const auto& s : fp.samples) {
            ++samples;
            xlo = std::min(xlo, s.x); xhi = std::max(xhi, s.x);
            ylo = std::min(ylo, s.y); yhi = std::max(yhi, s.y);
            tlo = std::min(tlo, s.t); thi = std::max(thi, s.t);
        }
    std::cout << "users: " << d.users.size() << "\n"
              << "samples: " << samples << "\n"
              << "time span: [" << tlo << ", " << thi << "] min since "
              << format_iso_minute(d.epoch_min) << "\n"
              << "bounding box: x [" << fmt(xlo) << ", " << fmt(xhi) << "] m, y ["
              << fmt(ylo) << ", " << fmt(yhi) << "] m\n";
    return kExitOk;
}

int run_analyze(const std::string& input, std::vector<int> ks,
                const DistanceFlags& dist, const std::string& outdir) {
    CanonicalDataset cd = read_canonical(input);
    const DistanceParams p = dist.params();
    fs::create_directories(outdir);

    nlohmann::json summary;
    summary["params"] = {{"w_s", p.w_s},
                         {"w_t", p.w_t},
                         {"delta_max_s_m", p.delta_max_s},
                         {"delta_max_t_min", p.delta_max_t}};
    for (int k : ks) {
        if (k < 2 || cd.dataset.users.size() < static_cast<std::size_t>(k)) {
            std::cerr << "error: population too small for k=" << k << "\n";
            return kExitArgs;
        }
        AnonymizabilityReport report = anonymizability(cd.dataset, k, p);

        std::ofstream per_user(outdir + "/delta_k" + std::to_string(k) + ".csv");
        if (!per_user)
            throw std::runtime_error("cannot open output dir: " + outdir);
        per_user << "pseudo_id,delta\n";
        std::vector<double> deltas;
        deltas.reserve(report.per_user.size());
        for (const auto& [id, ua] : report.per_user) {
            per_user << id << "," << fmt(ua.delta_k) << "\n";
            deltas.push_back(ua.delta_k);
        }
        write_cdf_csv(outdir + "/delta_cdf_k" + std::to_string(k) + ".csv",
                      cdf_table(deltas, std::min<std::size_t>(100, deltas.size() < 2 ? 2 : deltas.size())),
                      "delta");
        summary["k" + std::to_string(k)] = delta_summary(deltas);
    }
    std::ofstream out(outdir + "/summary.json");
    out << summary.dump(2) << "\n";
    std::cout << "analyzed " << cd.dataset.users.size() << " users, reports in "
              << outdir << "\n";
    return kExitOk;
}

int run_sweep(const std::string& input, const std::vector<std::string>& level_specs,
              int k, const DistanceFlags& dist, const std::string& outdir) {
    if (level_specs.empty()) {
        std::cerr << "error: at least one --level required\n";
        return kExitArgs;
    }
    std::vector<AggregationLevel> levels;
    try {
        levels = parse_levels(level_specs);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    }
    CanonicalDataset cd = read_canonical(input);
    const DistanceParams p = dist.params();
    fs::create_directories(outdir);

    std::vector<LevelSummary> summaries;
    try {
        summaries = aggregation_sweep(cd.dataset, levels, k, p);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    }

    std::ofstream table(outdir + "/sweep_summary.csv");
    table << "cell_side_m,bin_width_min,fraction_k_anonymous,median_delta\n";
    for (const auto& s : summaries) {
        const std::string tag =
            fmt(s.level.cell_side) + "x" + std::to_string(s.level.bin_width);
        write_cdf_csv(outdir + "/sweep_cdf_" + tag + ".csv", s.delta_cdf, "delta");
        table << fmt(s.level.cell_side) << "," << s.level.bin_width << ","
              << fmt(s.k_anonymous.fraction) << "," << fmt(s.median_delta) << "\n";
    }
    std::cout << "swept " << summaries.size() << " levels, reports in " << outdir << "\n";
    return kExitOk;
}

int run_decompose(const std::string& input, int k, const DistanceFlags& dist,
                  const std::string& outdir) {
    CanonicalDataset cd = read_canonical(input);
    if (k < 2 || cd.dataset.users.size() < static_cast<std::size_t>(k)) {
        std::cerr << "error: population too small for k=" << k << "\n";
        return kExitArgs;
    }
    const DistanceParams p = dist.params();
    fs::create_directories(outdir);
    AnonymizabilityReport report = anonymizability(cd.dataset, k, p);

    struct Stat {
        std::vector<double> values;
        const char* name;
    };
    std::vector<double> ratios, gini_s, gini_t, gini_d, tw_s, tw_t, tw_d;

    std::ofstream out(outdir + "/decompose_k" + std::to_string(k) + ".csv");
    out << "pseudo_id,delta_k,temporal_spatial_ratio,"
           "gini_spatial,gini_temporal,gini_total,"
           "tail_weight_spatial,tail_weight_spatial_flag,"
           "tail_weight_temporal,tail_weight_temporal_flag,"
           "tail_weight_total,tail_weight_total_flag\n";

    auto gini_cell = [](const std::vector<double>& v, std::vector<double>& pool) {
        try {
            double g = gini(v);
            pool.push_back(g);
            return fmt(g);
        } catch (const std::invalid_argument&) {
            return std::string("undefined");
        }
    };
    auto tw_cell = [](const std::vector<double>& v, std::vector<double>& pool,
                      std::string& flag) {
        try {
            TailWeight tw = tail_weight(Ecdf(v));
            pool.push_back(tw.value);
            flag = tw.small_sample ? "small_sample" : "";
            return fmt(tw.value);
        } catch (const std::invalid_argument&) {
            flag = "degenerate";
            return std::string("undefined");
        }
    };

    for (const auto& [id, ua] : report.per_user) {
        const std::vector<double> s = ua.spatial_components();
        const std::vector<double> t = ua.temporal_components();
        std::vector<double> totals(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) totals[i] = s[i] + t[i];

        const double ratio = temporal_spatial_ratio(report, id);
        ratios.push_back(ratio);

        std::string fs_flag, ft_flag, fd_flag;
        const std::string g_s = gini_cell(s, gini_s);
        const std::string g_t = gini_cell(t, gini_t);
        const std::string g_d = gini_cell(totals, gini_d);
        const std::string w_s = tw_cell(s, tw_s, fs_flag);
        const std::string w_t = tw_cell(t, tw_t, ft_flag);
        const std::string w_d = tw_cell(totals, tw_d, fd_flag);

        out << id << "," << fmt(ua.delta_k) << "," << fmt(ratio) << "," << g_s << ","
            << g_t << "," << g_d << "," << w_s << "," << fs_flag << "," << w_t << ","
            << ft_flag << "," << w_d << "," << fd_flag << "\n";
    }

    auto emit_cdf = [&](const std::vector<double>& v, const std::string& name) {
        if (v.empty()) return;
        write_cdf_csv(outdir + "/" + name + "_cdf.csv",
                      cdf_table(v, std::min<std::size_t>(100, v.size() < 2 ? 2 : v.size())),
                      name.c_str());
    };
    emit_cdf(ratios, "temporal_spatial_ratio");
    emit_cdf(gini_s, "gini_spatial");
    emit_cdf(gini_t, "gini_temporal");
    emit_cdf(gini_d, "gini_total");
    emit_cdf(tw_s, "tail_weight_spatial");
    emit_cdf(tw_t, "tail_weight_temporal");
    emit_cdf(tw_d, "tail_weight_total");

    std::cout << "decomposed " << report.per_user.size() << " users, reports in "
              << outdir << "\n";
    return kExitOk;
}

int run_generate(const PopulationSpec& spec, const std::string& output) {
    Dataset d = generate(spec);
    write_planar_csv(d, output);
    std::cout << "users: " << spec.n_users << "\ndays: " << spec.days
              << "\nregion_extent_m: " << fmt(spec.region_extent_m)
              << "\nanchors_per_user: " << spec.anchors_per_user
              << "\nevents_per_day: " << fmt(spec.events_per_day)
              << "\ntemporal_jitter_min: " << fmt(spec.temporal_jitter_min)
              << "\ntemporal_tail_shape: " << fmt(spec.temporal_tail_shape)
              << "\ntail_fraction: " << fmt(spec.tail_fraction)
              << "\nseed: " << spec.seed << "\nrng: mt19937_64+splitmix64 substreams\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-anonymizability analytics for trajectory datasets"};
    app.require_subcommand(1);

    // ingest
    auto* ing = app.add_subcommand("ingest", "project, snap and canonicalize a CSV");
    std::string ing_in, ing_out, ing_epoch;
    bool ing_epoch_minutes = false;
    std::optional<double> center_lat, center_lon;
    std::size_t ing_filter_days = 0;
    ing->add_option("--input", ing_in)->required();
    ing->add_option("--output", ing_out)->required();
    ing->add_option("--epoch", ing_epoch, "ISO minute, default: earliest timestamp");
    ing->add_flag("--epoch-minutes", ing_epoch_minutes,
                  "timestamps are integer minutes since epoch");
    ing->add_option("--center-lat", center_lat);
    ing->add_option("--center-lon", center_lon);
    ing->add_option("--filter-days", ing_filter_days,
                    "drop users without daily activity over this many days");

    // analyze
    auto* ana = app.add_subcommand("analyze", "per-user anonymizability and CDFs");
    std::string ana_in, ana_out = "report";
    std::vector<int> ana_ks{2};
    DistanceFlags ana_dist;
    ana->add_option("--input", ana_in)->required();
    ana->add_option("--output", ana_out, "output directory");
    ana->add_option("--k", ana_ks, "anonymity parameter (repeatable)");
    ana_dist.attach(ana);

    // sweep
    auto* swp = app.add_subcommand("sweep", "aggregation sweep over levels");
    std::string swp_in, swp_out = "sweep";
    std::vector<std::string> swp_levels;
    int swp_k = 2;
    DistanceFlags swp_dist;
    swp->add_option("--input", swp_in)->required();
    swp->add_option("--output", swp_out, "output directory");
    swp->add_option("--level", swp_levels, "CELLxBIN, e.g. 1000x60 (repeatable)");
    swp->add_option("--k", swp_k);
    swp_dist.attach(swp);

    // decompose
    auto* dec = app.add_subcommand("decompose", "spatial/temporal component diagnostics");
    std::string dec_in, dec_out = "decompose";
    int dec_k = 2;
    DistanceFlags dec_dist;
    dec->add_option("--input", dec_in)->required();
    dec->add_option("--output", dec_out, "output directory");
    dec->add_option("--k", dec_k);
    dec_dist.attach(dec);

    // generate
    auto* gen = app.add_subcommand("generate", "synthetic trajectory dataset");
    std::string gen_out;
    PopulationSpec spec;
    gen->add_option("--output", gen_out)->required();
    gen->add_option("--users", spec.n_users);
    gen->add_option("--days", spec.days);
    gen->add_option("--region", spec.region_extent_m, "square side, meters");
    gen->add_option("--anchors", spec.anchors_per_user);
    gen->add_option("--events-per-day", spec.events_per_day);
    gen->add_option("--jitter", spec.temporal_jitter_min, "minutes");
    gen->add_option("--tail-shape", spec.temporal_tail_shape);
    gen->add_option("--tail-fraction", spec.tail_fraction);
    gen->add_option("--seed", spec.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitArgs;
    }

    try {
        if (ing->parsed())
            return run_ingest(ing_in, ing_out, ing_epoch, ing_epoch_minutes,
                              center_lat, center_lon, ing_filter_days);
        if (ana->parsed()) return run_analyze(ana_in, ana_ks, ana_dist, ana_out);
        if (swp->parsed()) return run_sweep(swp_in, swp_levels, swp_k, swp_dist, swp_out);
        if (dec->parsed()) return run_decompose(dec_in, dec_k, dec_dist, dec_out);
        if (gen->parsed()) return run_generate(spec, gen_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
