#include "trajanon/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "trajanon/civil_time.hpp"

namespace trajanon {

namespace {

void write_rows(const Dataset& d, std::ostream& out) {
    out << "pseudo_id,timestamp,x,y\n";
    char buf[128];
    for (const auto& fp : d.users) {
        for (const auto& s : fp.samples) {
            std::snprintf(buf, sizeof buf, "%s,%lld,%.12g,%.12g\n",
                          fp.pseudo_id.c_str(), static_cast<long long>(s.t), s.x, s.y);
            out << buf;
        }
    }
}

}  // namespace

void write_planar_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_rows(d, out);
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

void write_canonical(const Dataset& d, const std::string& path,
                     const std::optional<ProjectionSpec>& projection) {
    write_planar_csv(d, path);

    nlohmann::json meta;
    meta["epoch"] = format_iso_minute(d.epoch_min);
    meta["spatial_granularity_m"] = d.spatial_granularity_m;
    meta["temporal_granularity_min"] = d.temporal_granularity_min;
    if (projection) {
        meta["projection"] = {{"center_lat", projection->center_lat},
                              {"center_lon", projection->center_lon},
                              {"earth_radius_m", projection->earth_radius_m}};
    }
    std::ofstream out(path + ".meta.json");
    if (!out) throw std::runtime_error("cannot open for writing: " + path + ".meta.json");
    out << meta.dump(2) << "\n";
    if (!out.flush()) throw std::runtime_error("write failed: " + path + ".meta.json");
}

CanonicalDataset read_canonical(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    RawRecords raw = parse_trajectory_csv(in, /*epoch_minutes=*/true);

    if (raw.geographic) throw std::runtime_error("canonical datasets are planar");
    if (raw.records.empty()) throw std::runtime_error("empty dataset: " + path);

    // Coordinates are taken verbatim: the file may carry an aggregated
    // grid whose cell centers do not lie on the 100-m base grid.
    CanonicalDataset out;
    std::map<std::string, std::vector<Sample>> grouped;
    for (const auto& r : raw.records) {
        if (r.timestamp_min < 0)
            throw std::runtime_error("negative timestamp for user " + r.pseudo_id);
        grouped[r.pseudo_id].push_back({r.a, r.b, r.timestamp_min});
    }
    for (auto& [id, samples] : grouped) {
        std::sort(samples.begin(), samples.end(), sample_less);
        out.dataset.users.push_back({id, std::move(samples)});
    }

    std::ifstream meta_in(path + ".meta.json");
    if (meta_in) {
        nlohmann::json meta = nlohmann::json::parse(meta_in);
        out.dataset.epoch_min = parse_iso_minute(meta.at("epoch").get<std::string>());
        out.dataset.spatial_granularity_m = meta.at("spatial_granularity_m").get<double>();
        out.dataset.temporal_granularity_min =
            meta.at("temporal_granularity_min").get<std::int64_t>();
        if (meta.contains("projection")) {
            const auto& pj = meta["projection"];
            out.projection = ProjectionSpec{pj.at("center_lat").get<double>(),
                                            pj.at("center_lon").get<double>(),
                                            pj.at("earth_radius_m").get<double>()};
        }
    }
    return out;
}

}  // namespace trajanon
