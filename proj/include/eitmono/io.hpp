#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eitmono/measurements.hpp"
#include "eitmono/monotonicity.hpp"
#include "eitmono/scan.hpp"

namespace eitmono {

/// Ordered "# key: value" comment lines placed at the top of every output
/// file; carries the provenance needed to reproduce it.
using HeaderFields = std::vector<std::pair<std::string, std::string>>;

/// 17-significant-digit decimal rendering (round-trip exact for doubles).
std::string format_g17(double v);

/// FNV-1a 64-bit hash; used to tie outputs to the config file bytes.
std::uint64_t fnv1a(std::string_view bytes);
std::string format_hash(std::uint64_t h);

/// One-line textual form of a region ("disk <cx> <cy> <r>" or
/// "polygon <x1> <y1> ...").
std::string region_to_string(const RegionSpec& region);

/// Node / triangle / labelled-boundary-edge tables as structured text.
std::string render_mesh_dump(const Mesh& mesh, const HeaderFields& extra);

/// Complex matrix as CSV with separate real and imaginary blocks plus
/// provenance headers. parse_matrix_csv inverts it.
std::string render_matrix_csv(const MeasurementMatrix& matrix, const HeaderFields& extra);
MeasurementMatrix parse_matrix_csv(const std::string& text);

/// Per-region definiteness reports, one CSV row each: region name, verdict,
/// margin, min eigenvalue, then the full ascending spectrum.
std::string render_report_csv(const std::vector<std::string>& region_names,
                              const std::vector<DefinitenessReport>& reports,
                              const HeaderFields& extra);

/// Scan results as CSV rows ordered by grid index. Runtime measurements are
/// deliberately excluded so reruns are byte-identical.
std::string render_scan_csv(const ScanResult& result, const HeaderFields& extra);

/// Portable graymap of the scan lattice. Pixel values: 0 = no ball,
/// 128 = ball unmarked, 192 = ball failed, 255 = ball marked. Rows run from
/// the largest y (top) down; the header comments record origin and spacing.
std::string render_scan_pgm(const ScanResult& result, double spacing, Point2 domain_center,
                            const HeaderFields& extra);

/// Writes via a temporary file + rename so failures never leave partial
/// output. Creates parent directories.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace eitmono
