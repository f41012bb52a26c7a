#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace vie {

/// Quadrature rule on [-1, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule, 1 <= n <= 64.
QuadRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta,
/// alpha, beta > -1 (Golub-Welsch).
QuadRule gauss_jacobi(int n, double alpha, double beta);

/// Tensor-product Gauss rule with n points per axis over the box [lo, hi].
double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lo, std::span<const double> hi, int n);

/// int_0^t (t - tau)^a tau^b dtau = B(a + 1, b + 1) t^{a + b + 1}.
/// Requires a > -1, b > -1, t >= 0.
double power_moment(double a, double b, double t);

/// Nodes and weights approximating int_lo^hi (xi - tau)^p g(tau) dtau for
/// smooth g, lo < hi <= xi. Weights already contain the factor (xi - tau)^p.
struct WeightedPoints {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Caches Gauss rules by size (and Jacobi exponent). Not thread-safe; use
/// one instance per thread.
class RuleCache {
public:
    const QuadRule& legendre(int n);
    const QuadRule& jacobi(int n, double alpha);

private:
    std::map<int, QuadRule> legendre_;
    std::map<std::pair<int, double>, QuadRule> jacobi_;
};

enum class TouchingRule { GaussJacobi, GaussLegendre };

/// Rule for int_lo^hi (xi - tau)^p g(tau) dtau with n points per piece.
/// If hi == xi the interval touches the singular point: plain Gauss-Legendre
/// by default, or a Gauss-Jacobi rule that absorbs (xi - tau)^p exactly. For
/// p < 0 the Jacobi rule is used regardless of `touching`. If
/// hi < xi the interval is split geometrically toward hi so that every
/// piece is no longer than its distance to xi.
WeightedPoints volterra_rule(double xi, double p, double lo, double hi, int n, RuleCache& cache,
                             TouchingRule touching = TouchingRule::GaussLegendre);

} // namespace vie
