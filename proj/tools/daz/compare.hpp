#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace daz::app {

struct ComparisonRow {
  std::uint64_t iteration = 0;
  double tv_a = 0.0;
  double tv_b = 0.0;
  double ratio = 1.0;  // tv_a / tv_b, 1 when both vanish
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  nlohmann::json summary;
};

inline const std::vector<double> kCrossingThresholds{0.5, 0.2, 0.1, 0.05, 0.02};

/// Joins the metrics of two run directories on iteration. Throws when a file
/// is missing or the runs target different models or references.
Comparison compare_runs(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b);

/// Writes comparison.csv and summary.json into `out_dir`.
void write_comparison(const Comparison& cmp, const std::filesystem::path& out_dir);

}  // namespace daz::app
