#include "trajanon/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>

#include "trajanon/civil_time.hpp"

namespace trajanon {

namespace {

constexpr double kBaseCellM = 100.0;
constexpr std::int64_t kMinutesPerDay = 1440;

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line, const char* what) {
    double v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError(line, std::string("bad ") + what + ": '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s, std::size_t line, const char* what) {
    std::int64_t v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, std::string("bad ") + what + ": '" + s + "'");
    return v;
}

}  // namespace

RawRecords parse_trajectory_csv(std::istream& in, bool epoch_minutes) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    RawRecords out;
    out.relative_time = epoch_minutes;
    if (line == "pseudo_id,timestamp,lat,lon") {
        out.geographic = true;
    } else if (line == "pseudo_id,timestamp,x,y") {
        out.geographic = false;
    } else {
        throw ParseError(1, "unrecognized header: '" + line + "'");
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 4) throw ParseError(lineno, "expected 4 fields");
        RawRecord rec;
        rec.pseudo_id = fields[0];
        if (rec.pseudo_id.empty()) throw ParseError(lineno, "empty pseudo_id");
        if (epoch_minutes) {
            rec.timestamp_min = parse_int(fields[1], lineno, "minutes timestamp");
        } else {
            try {
                rec.timestamp_min = parse_iso_minute(fields[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
        }
        rec.a = parse_double(fields[2], lineno, out.geographic ? "lat" : "x");
        rec.b = parse_double(fields[3], lineno, out.geographic ? "lon" : "y");
        if (out.geographic) {
            if (rec.a < -90.0 || rec.a > 90.0)
                throw ParseError(lineno, "latitude out of range");
            if (rec.b < -180.0 || rec.b > 180.0)
                throw ParseError(lineno, "longitude out of range");
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

IngestResult ingest(const RawRecords& raw,
                    std::optional<ProjectionSpec> projection,
                    std::optional<std::int64_t> epoch_min) {
    if (raw.records.empty()) throw std::invalid_argument("empty dataset");

    IngestResult result;
    if (raw.geographic && !projection) {
        double lat_lo = 90, lat_hi = -90, lon_lo = 180, lon_hi = -180;
        for (const auto& r : raw.records) {
            lat_lo = std::min(lat_lo, r.a);
            lat_hi = std::max(lat_hi, r.a);
            lon_lo = std::min(lon_lo, r.b);
            lon_hi = std::max(lon_hi, r.b);
        }
        projection = ProjectionSpec{(lat_lo + lat_hi) / 2.0, (lon_lo + lon_hi) / 2.0};
    }

    // In relative mode the values already are minutes since the dataset
    // epoch; an explicit epoch only fixes the absolute meaning of t = 0.
    std::int64_t epoch = 0;
    if (epoch_min) {
        epoch = *epoch_min;
    } else if (!raw.relative_time) {
        epoch = std::numeric_limits<std::int64_t>::max();
        for (const auto& r : raw.records) epoch = std::min(epoch, r.timestamp_min);
    }

    std::map<std::string, std::vector<Sample>> grouped;
    for (const auto& r : raw.records) {
        double x = r.a, y = r.b;
        if (raw.geographic) std::tie(x, y) = laea_forward(r.a, r.b, *projection);
        auto [gx, gy] = snap_to_grid(x, y, kBaseCellM);
        std::int64_t t = raw.relative_time ? r.timestamp_min : r.timestamp_min - epoch;
        if (t < 0)
            throw std::invalid_argument("timestamp before epoch for user " + r.pseudo_id);
        grouped[r.pseudo_id].push_back({gx, gy, t});
    }

    Dataset d;
    d.epoch_min = epoch;
    d.spatial_granularity_m = kBaseCellM;
    d.temporal_granularity_min = 1;
    for (auto& [id, samples] : grouped) {
        std::sort(samples.begin(), samples.end(), sample_less);
        d.users.push_back({id, std::move(samples)});
    }
    result.dataset = std::move(d);
    if (raw.geographic) result.projection = projection;
    return result;
}

Dataset filter_daily_activity(const Dataset& d, std::size_t window_days) {
    if (window_days < 1) throw std::invalid_argument("window_days must be >= 1");
    Dataset out;
    out.epoch_min = d.epoch_min;
    out.spatial_granularity_m = d.spatial_granularity_m;
    out.temporal_granularity_min = d.temporal_granularity_min;
    for (const auto& fp : d.users) {
        std::vector<bool> seen(window_days, false);
        for (const auto& s : fp.samples) {
            const std::int64_t day = s.t / kMinutesPerDay;
            if (day >= 0 && static_cast<std::size_t>(day) < window_days)
                seen[static_cast<std::size_t>(day)] = true;
        }
        if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
            out.users.push_back(fp);
    }
    return out;
}

}  // namespace trajanon
