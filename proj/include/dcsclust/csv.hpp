#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dcsclust/types.hpp"

namespace dcsclust {

/// Reads a panel from a comma-separated file: one named column per series,
/// optional leading date column (detected by a non-numeric first body cell
/// and skipped). Missing cells (empty, na, nan, null) drop only that
/// column's point; anything else non-numeric is an error. Decimal points
/// are locale-independent dots.
std::vector<ReturnSeries> ingest_csv(const std::filesystem::path& path);

/// Fixed 4-decimal representation used by the human-readable tables.
std::string format_fixed(double x, int precision = 4);

/// Shortest round-trip representation used by the raw companions.
std::string format_full(double x);

}  // namespace dcsclust
