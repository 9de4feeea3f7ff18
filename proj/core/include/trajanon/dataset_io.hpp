#ifndef TRAJANON_DATASET_IO_HPP
#define TRAJANON_DATASET_IO_HPP

#include <optional>
#include <string>

#include "trajanon/ingest.hpp"
#include "trajanon/projection.hpp"
#include "trajanon/types.hpp"

namespace trajanon {

/// Canonical on-disk form: planar CSV (`pseudo_id,timestamp,x,y`, timestamp
/// in integer minutes since the dataset epoch, coordinates at 12 significant
/// digits, rows ordered by pseudo_id then sample order) plus a JSON sidecar
/// `<path>.meta.json` carrying epoch, granularities and projection.
void write_canonical(const Dataset& d, const std::string& path,
                     const std::optional<ProjectionSpec>& projection = std::nullopt);

struct CanonicalDataset {
    Dataset dataset;
    std::optional<ProjectionSpec> projection;
};

CanonicalDataset read_canonical(const std::string& path);

/// Serializes a Dataset to the ingestable planar CSV alone (what
/// cmd_generate emits).
void write_planar_csv(const Dataset& d, const std::string& path);

}  // namespace trajanon

#endif
