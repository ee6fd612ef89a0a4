#pragma once

#include <filesystem>

#include "qsched/sweep.hpp"

namespace qsched {

enum class HeatmapMetric { unserved1, unserved2, max_unserved };

HeatmapMetric heatmap_metric_from_name(const std::string& name);  // throws SpecError

/// Renders the sweep grid as a binary PPM raster: one tile per grid point,
/// viridis-style monotone color scale from 0 (dark blue) to 1 (yellow),
/// beta1 on the horizontal axis, beta2 growing upward. When diagonal_sum is
/// positive, the optimal (a,0)-(0,a) bound beta1 + beta2 = diagonal_sum is
/// drawn as a white line.
void render_heatmap(const SweepResult& result, const std::filesystem::path& path,
                    HeatmapMetric metric, double diagonal_sum = 0.0);

}  // namespace qsched
