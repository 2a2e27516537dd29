#pragma once

// Binary snapshots, CSV time series and PGM heatmaps.
//
// Snapshot layout (little-endian): "NSCH1", u16 version = 1, u32 N, f64 t,
// then theta, u1, u2 as N*N f64 physical values each, row-major with the
// x2 index outer.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsch/diagnostics.hpp"

namespace nsch {

inline constexpr std::uint16_t kSnapshotVersion = 1;

/// Physical-space contents of a snapshot file.
struct Snapshot {
  std::uint32_t n = 0;
  double t = 0.0;
  GridArray<double> theta;
  GridArray<double> u1;
  GridArray<double> u2;
};

Snapshot snapshot_of(const SimState& s);
SimState state_from_snapshot(const Snapshot& snap);

void write_snapshot(std::ostream& out, const Snapshot& snap);
void write_snapshot(const std::string& path, const Snapshot& snap);
/// FormatError on bad magic, unsupported version or truncation.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::string& path);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& r);
void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_csv(std::istream& in);

/// floor((s + 1)/2 * 255 + 0.5) clamped to [0, 255].
std::uint8_t heatmap_pixel(double s);
/// Binary P5 image of theta's grid values; row 0 is x2 = 0.
void write_heatmap(std::ostream& out, const ScalarField& theta);
void write_heatmap(const std::string& path, const ScalarField& theta);

}  // namespace nsch
