#pragma once

#include <string>
#include <vector>

#include "seldkit/types.hpp"

namespace seld {

/// Event metadata CSV: UTF-8, no header row, LF line endings, one event
/// per row in the column order
///
///     frame,class,track,azimuth,elevation
///
/// All fields are integers; angles are integer degrees. Azimuths are wrapped
/// into [-180, 180) on read, elevations outside [-45, 45] are rejected.
/// Rows come back sorted by (frame, class, track).
std::vector<EventAnnotation> read_metadata_csv(const std::string& path);

// Parses CSV text directly; line numbers in errors are 1-based.
std::vector<EventAnnotation> parse_metadata_csv(const std::string& text);

/// Writes events in the same schema, rounding angles to integer degrees.
/// Round-trips exactly with read_metadata_csv for integer-valued angles.
void write_metadata_csv(const std::vector<EventAnnotation>& events,
                        const std::string& path);

std::string format_metadata_csv(const std::vector<EventAnnotation>& events);

}  // namespace seld
