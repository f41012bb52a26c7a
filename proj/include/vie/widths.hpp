#pragma once

#include <span>
#include <vector>

#include "vie/funclass.hpp"
#include "vie/mesh.hpp"
#include "vie/spline.hpp"

namespace vie {

/// Bump on one covering cell:
///   A prod_i ((t_i - lo_i)(hi_i - t_i))^s / (h^{s(2l-1)} ((k+1)/N)^{v gamma}),
/// zero outside the cell. h is the longest cell edge.
struct BumpSpec {
    Cell cell;
    ClassParams params;
    int N = 1;
    double v = 1.0;
    double A = 1.0;
};

double bump_eval(const BumpSpec& b, std::span<const double> t);

/// Every factor (t_i - lo_i)(hi_i - t_i) peaks at the midpoint, so the maximum
/// is the value at the cell centre for any box.
double bump_sup(const BumpSpec& b);

/// Corner cube [a_k, a_{k+1}]^l of layer k of a boundary-layer covering, with
/// a_k = (k/N)^v T.
Cell layer_corner_cube(int N, double T, int l, double v, int k);

/// Number of cells of the covering built with these arguments.
std::size_t covering_count(int N, int l, double v, CoveringStyle style, double T = 1.0);

/// Largest A for which all finite-difference partial derivatives of order
/// <= r of the bump stay below the class bound at `samples` pseudo-random
/// interior points of the cell (fixed seed).
double admissible_scale(const BumpSpec& b, int samples = 50, unsigned seed = 12345);

struct WidthEstimate {
    std::size_t n = 0;  ///< functional count of the approximating spline
    double sup_error = 0.0;
};

/// Class-appropriate spline of f at level N: power mesh / boundary covering
/// with Legendre nodes for Q classes, geometric mesh / covering with closed
/// Chebyshev nodes for B classes.
WidthEstimate width_upper_estimate(const ClassParams& params, const ClassMember& f, int N,
                                   SampleGrid grid = {});

/// Least-squares slope of log y against log x. With at least four points the
/// first and last are dropped.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y against x (no transform, no dropping).
double linear_slope(std::span<const double> x, std::span<const double> y);

} // namespace vie
