#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sfcw/measurement.hpp"

namespace sfcw {

/// "RVC1" measurement container.
///
/// Layout: the ASCII line "RVC1", then "key = value" header lines (radar config fields,
/// L, K, M, the comma-separated slow_time vector, optional truth.count / truth.<i> =
/// d,theta,breath_freq entries, payload_bytes), terminated by the line "END". The payload
/// follows immediately: little-endian IEEE-754 float64, real/imag interleaved, row-major
/// [l][k][m]. Numbers in the header use shortest round-trip formatting, so a write/read
/// cycle is lossless.
void write_container(const MeasurementCube& cube, std::ostream& out);
void write_container(const MeasurementCube& cube, const std::filesystem::path& path);

/// Strict reader; throws FormatError (with byte offset) on a bad magic, malformed header,
/// inconsistent dimensions or a truncated/oversized payload.
MeasurementCube read_container(std::istream& in);
MeasurementCube read_container(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace sfcw
