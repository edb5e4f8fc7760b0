#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "finsler/geometry/tensor.hpp"
#include "finsler/metrics/metric_spec.hpp"

namespace finsler::geodesics {

using geometry::Vector;
using metrics::LineElement;
using metrics::MetricSpec;

struct TraceSample {
  double t = 0.0;  // arc length from the start
  Vector x;
  Vector y;                   // velocity
  std::vector<Vector> frame;  // parallel vectors
};

struct GeodesicTrace {
  std::shared_ptr<const MetricSpec> metric;
  std::vector<TraceSample> samples;
  double step = 0.0;
  /// Set when the trajectory left the chart or entered a pole band before
  /// reaching the requested length; samples stop at the last valid point.
  bool truncated = false;
  std::string truncation_reason;

  double length() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Rescales y so that F(x, y) = 1.
LineElement unit_line_element(const MetricSpec& spec, LineElement el);

/// Classical RK4 for x'' + 2 G(x, x') = 0 together with parallel transport
/// V' = -N(x, x') V of the given frame vectors. The step is shrunk to
/// length / ceil(length / step) so the samples are uniform and end exactly at
/// `length`; trace.step records the step used. Requires F(start) = 1 within
/// 1e-8 and length, step > 0.
GeodesicTrace integrate_geodesic(const MetricSpec& spec, const LineElement& start, double length, double step,
                                 const std::vector<Vector>& frame = {});

/// CSV with header t,x1..xn,y1..yn,v1_1..v1_n,v2_1..: one row per sample,
/// frame vector k contributing columns vk_1..vk_n.
void write_trace_csv(const GeodesicTrace& trace, std::ostream& out);
void write_trace_csv(const GeodesicTrace& trace, const std::filesystem::path& path);

}  // namespace finsler::geodesics
