#ifndef TRAJANON_CIVIL_TIME_HPP
#define TRAJANON_CIVIL_TIME_HPP

#include <cstdint>
#include <string>

namespace trajanon {

/// Parses "YYYY-MM-DDTHH:MM" (UTC, minute precision) into minutes since
/// the Unix epoch. Throws std::invalid_argument on malformed input.
std::int64_t parse_iso_minute(const std::string& s);

/// Inverse of parse_iso_minute.
std::string format_iso_minute(std::int64_t minutes_since_epoch);

}  // namespace trajanon

#endif
