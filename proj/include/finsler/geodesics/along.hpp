#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "finsler/geodesics/geodesic.hpp"
#include "finsler/metrics/special_solution.hpp"

namespace finsler::geodesics {

/// Second derivative on a uniform grid by the five-point central stencil
/// (-f[i-2] + 16 f[i-1] - 30 f[i] + 16 f[i+1] - f[i+2]) / (12 h^2).
/// Entry j corresponds to sample j + 2; two samples at each end are excluded.
/// Throws InvalidArgument for fewer than 5 samples or h <= 0.
std::vector<double> second_differences(std::span<const double> f, double h);

/// |f'' + K f| at the interior samples.
std::vector<double> ode_residual(std::span<const double> f, double h, double K);

/// Least-squares fit f(t) ~ a cos(w t) + b sin(w t) at fixed w.
struct SinusoidFit {
  double a = 0.0;
  double b = 0.0;
  double max_error = 0.0;
};
SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> f, double w);

struct RhoSeries {
  std::vector<double> t;    // arc length
  std::vector<double> rho;  // rho(x^1(t))
  std::vector<double> residual;  // |rho'' + K rho - B| at interior samples
  double max_residual = 0.0;
  /// sqrt(-sum rho'' (rho - B/K) / sum (rho - B/K)^2); K > 0 only.
  std::optional<double> fitted_frequency;
  /// Zero crossings of rho - B/K (linear interpolation), and pi over their
  /// mean spacing when there are at least two.
  std::vector<double> zero_crossings;
  std::optional<double> crossing_frequency;
};

/// Throws InvalidArgument when the trace has fewer than 5 samples.
RhoSeries rho_along_geodesic(const GeodesicTrace& trace, const metrics::SpecialSolution& sol);

struct TorsionSeries {
  std::vector<double> t;
  std::vector<double> A;         // F C_ijk X^i Y^j Z^k
  std::vector<double> residual;  // |A'' + K A| at interior samples
  double max_abs = 0.0;
  double max_residual = 0.0;
};

/// A(t) = A(X(t), Y(t), Z(t)) for the frame vectors `which` of the trace.
TorsionSeries cartan_torsion_along_geodesic(const MetricSpec& spec, const GeodesicTrace& trace, double K,
                                            std::array<int, 3> which = {0, 1, 2});
/// Integrates the trace with frame {X, Y, Z} first.
TorsionSeries cartan_torsion_along_geodesic(const MetricSpec& spec, const LineElement& start, double length,
                                            double step, const Vector& X, const Vector& Y, const Vector& Z,
                                            double K);

struct FocusingReport {
  double C = 0.0;
  double pole_offset = 0.0;  // in t
  int count = 0;
  double length = 0.0;       // pi / C - 2 pole_offset
  std::vector<double> arrival;  // endpoint t of each geodesic
  double arrival_spread = 0.0;  // max - min of arrival
  double arrival_error = 0.0;   // max |arrival - (pi / C - pole_offset)|
  double focal_length = 0.0;    // mean arrival + pole_offset, the pole-to-pole distance
  double start_spread = 0.0;    // max pairwise chart distance of the starts
  double end_spread = 0.0;      // max pairwise chart distance of the endpoints
  bool truncated = false;
};

/// Radial geodesics from `count` distinct fiber points on the t = pole_offset
/// level, each integrated for pi / C - 2 pole_offset. Requires a warped spec
/// and C pole_offset >= the pole margin; throws DomainError for chart exits.
FocusingReport antipodal_focusing(const MetricSpec& spec, double pole_offset, int count, double step);

/// Max pairwise chart distance between endpoints of rays of each length
/// launched from `origin` in the given (unit-normalized) directions.
std::vector<double> ray_spread(const MetricSpec& spec, const Vector& origin, const std::vector<Vector>& directions,
                               const std::vector<double>& lengths, double step);

}  // namespace finsler::geodesics
