#ifndef TRAJANON_INGEST_HPP
#define TRAJANON_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trajanon/projection.hpp"
#include "trajanon/types.hpp"

namespace trajanon {

/// Malformed input; line is 1-based (header = line 1).
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct RawRecord {
    std::string pseudo_id;
    std::int64_t timestamp_min = 0;  // absolute minutes since Unix epoch, or
                                     // minutes since dataset epoch in relative mode
    double a = 0.0;  // lat (deg) or x (m)
    double b = 0.0;  // lon (deg) or y (m)
};

struct RawRecords {
    bool geographic = false;  // lat/lon columns vs planar x/y
    bool relative_time = false;
    std::vector<RawRecord> records;
};

/// Reads `pseudo_id,timestamp,lat,lon` or `pseudo_id,timestamp,x,y` CSV.
/// Timestamps are ISO-8601 minute precision, or plain integer minutes
/// when epoch_minutes is set.
RawRecords parse_trajectory_csv(std::istream& in, bool epoch_minutes);

struct IngestResult {
    Dataset dataset;
    std::optional<ProjectionSpec> projection;  // set iff input was geographic
};

/// Projects (geographic input only), snaps to the 100-m grid, rebases
/// timestamps onto the epoch, groups and sorts per user. A missing
/// projection defaults to the centroid of the input bounding box; a
/// missing epoch defaults to the earliest timestamp seen.
IngestResult ingest(const RawRecords& raw,
                    std::optional<ProjectionSpec> projection = std::nullopt,
                    std::optional<std::int64_t> epoch_min = std::nullopt);

/// Keeps exactly the users with at least one sample in every epoch-aligned
/// day of the first window_days days.
Dataset filter_daily_activity(const Dataset& d, std::size_t window_days);

}  // namespace trajanon

#endif
