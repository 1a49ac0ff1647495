#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "rbl/global_basin.hpp"
#include "rbl/orbit.hpp"

namespace rbl {

// Ordered JSON keeps emission order identical to insertion order, which keeps
// reports byte-identical for identical config + seed.
using json = nlohmann::ordered_json;

// Version tag embedded in every emitted report (git-describe style, pinned at
// release so identical runs emit identical bytes).
inline constexpr const char* kVersionString = "v1.0.0-g65df82a";

// FNV-1a over the canonical config text; reports carry it in hex.
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t h);

// Shortest exact decimal formatting for doubles in CSV output ("%.17g" keeps
// a double -> text -> double round trip exact, so reruns emit equal bytes).
std::string fmt17(double v);

// Writers. Both throw Error("io-error") when the target cannot be written;
// parent directories are created on demand.
void write_text_file(const std::string& path, const std::string& content);
void write_binary_file(const std::string& path, const std::string& bytes);

// Portable graymap ("P5") serialization of a classification grid, one byte
// per cell: 0 = not_in_basin, 128 = undetermined, 255 = in_basin. Rows run
// top to bottom in increasing second grid index.
std::string pgm_bytes(const ClassificationGrid& grid);

// CSV bodies (header row + data rows, '\n' line endings, fixed column order).
std::string orbit_csv(const OrbitTrace& trace);
std::string rates_csv(const std::vector<std::pair<long, double>>& rows);
std::string grid_stats_csv(const ClassificationGrid& grid);
std::string points_csv(const std::vector<ComplexPoint>& pts);

}  // namespace rbl
