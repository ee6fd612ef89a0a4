#include "qsched/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qsched/errors.hpp"

namespace qsched {

HeatmapMetric heatmap_metric_from_name(const std::string& name) {
  if (name == "unserved1") return HeatmapMetric::unserved1;
  if (name == "unserved2") return HeatmapMetric::unserved2;
  if (name == "max") return HeatmapMetric::max_unserved;
  throw SpecError("unknown heatmap metric: " + name + " (expected unserved1, unserved2 or max)");
}

namespace {

struct Rgb {
  unsigned char r, g, b;
};

// Piecewise-linear approximation of the viridis scale; monotone lightness.
Rgb colormap(double x) {
  static constexpr double anchors[6][3] = {
      {68, 1, 84}, {65, 68, 135}, {42, 120, 142},
      {34, 168, 132}, {122, 209, 81}, {253, 231, 37}};
  x = std::clamp(x, 0.0, 1.0) * 5.0;
  const int lo = std::min(4, static_cast<int>(x));
  const double f = x - lo;
  auto mix = [&](int c) {
    return static_cast<unsigned char>(
        std::lround(anchors[lo][c] + f * (anchors[lo + 1][c] - anchors[lo][c])));
  };
  return {mix(0), mix(1), mix(2)};
}

}  // namespace

void render_heatmap(const SweepResult& result, const std::filesystem::path& path,
                    HeatmapMetric metric, double diagonal_sum) {
  const int n1 = result.spec.axis1.count;
  const int n2 = result.spec.axis2.count;
  if (n1 < 1 || n2 < 1 || result.points.empty())
    throw SpecError("render_heatmap: empty sweep result");

  auto value = [&](int i1, int i2) {
    switch (metric) {
      case HeatmapMetric::unserved1: return result.unserved(i1, i2, 0);
      case HeatmapMetric::unserved2: return result.unserved(i1, i2, 1);
      case HeatmapMetric::max_unserved:
        return std::max(result.unserved(i1, i2, 0), result.unserved(i1, i2, 1));
    }
    return 0.0;
  };

  constexpr int kCell = 32;
  const int width = n1 * kCell;
  const int height = n2 * kCell;
  std::vector<Rgb> pixels(static_cast<size_t>(width) * height);

  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      const Rgb c = colormap(value(i1, i2));
      // Row 0 is the top of the image; beta2 grows upward.
      const int y0 = (n2 - 1 - i2) * kCell;
      for (int dy = 0; dy < kCell; ++dy)
        for (int dx = 0; dx < kCell; ++dx)
          pixels[static_cast<size_t>(y0 + dy) * width + i1 * kCell + dx] = c;
    }

  if (diagonal_sum > 0) {
    // Cell centers sit at the axis values; extend half a cell on each side.
    const auto& a1 = result.spec.axis1;
    const auto& a2 = result.spec.axis2;
    const double d1 = n1 > 1 ? (a1.max - a1.min) / (n1 - 1) : 1.0;
    const double d2 = n2 > 1 ? (a2.max - a2.min) / (n2 - 1) : 1.0;
    const double lo1 = a1.min - 0.5 * d1, hi1 = a1.max + 0.5 * d1;
    const double lo2 = a2.min - 0.5 * d2, hi2 = a2.max + 0.5 * d2;
    for (int x = 0; x < width; ++x) {
      const double beta1 = lo1 + (hi1 - lo1) * (x + 0.5) / width;
      const double beta2 = diagonal_sum - beta1;
      if (beta2 < lo2 || beta2 > hi2) continue;
      const int y = static_cast<int>((hi2 - beta2) / (hi2 - lo2) * height);
      for (int dy = -1; dy <= 0; ++dy) {
        const int yy = y + dy;
        if (yy >= 0 && yy < height)
          pixels[static_cast<size_t>(yy) * width + x] = {255, 255, 255};
      }
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "P6\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size() * sizeof(Rgb)));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace qsched
