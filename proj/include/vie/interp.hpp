#pragma once

#include <span>
#include <string>
#include <vector>

namespace vie {

enum class NodeFamily { LegendreClosed, Chebyshev1Closed, Chebyshev1Open };

std::string to_string(NodeFamily family);
NodeFamily node_family_from_string(const std::string& name);

inline bool is_closed(NodeFamily f) { return f != NodeFamily::Chebyshev1Open; }

/// Interpolation nodes on one segment together with their barycentric weights.
struct NodeSet {
    double a = 0.0;
    double b = 1.0;
    NodeFamily family = NodeFamily::LegendreClosed;
    std::vector<double> nodes;
    std::vector<double> weights; ///< barycentric weights, scale-free

    std::size_t size() const { return nodes.size(); }

    /// Values of all Lagrange fundamental polynomials at t. At a node this is
    /// the exact unit vector.
    void basis(double t, std::span<double> out) const;
    std::vector<double> basis(double t) const;

    /// Barycentric interpolant of the given nodal values at t.
    double interpolate(std::span<const double> values, double t) const;
};

/// Roots of the Legendre polynomial P_m on (-1, 1), ascending. Newton's method
/// from Chebyshev initial guesses; throws std::runtime_error if an iteration
/// does not converge.
std::vector<double> legendre_roots(int m);

/// P_m(x) and P_m'(x) by the three-term recurrence.
std::pair<double, double> legendre_value(int m, double x);

/// cos((2j-1) pi / (2m)), j = 1..m, ascending.
std::vector<double> chebyshev1_roots(int m);

/// Closed families use the endpoints plus m - 2 interior roots; the open
/// family uses m Chebyshev roots. The affine image of a reference root y is
/// (a + b)/2 + (b - a)/2 * y. Throws std::invalid_argument if a >= b or m is
/// too small for the family.
NodeSet build_nodes(double a, double b, NodeFamily family, int m);

/// Nodes given explicitly (any distinct reals). Throws on duplicates.
NodeSet make_nodes(std::vector<double> nodes);

/// Polynomial interpolant of degree m-1 in barycentric form.
class Interpolant {
public:
    Interpolant(NodeSet nodes, std::vector<double> values);

    double operator()(double t) const { return nodes_.interpolate(values_, t); }
    const NodeSet& nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }

private:
    NodeSet nodes_;
    std::vector<double> values_;
};

Interpolant interpolate(const NodeSet& nodes, std::vector<double> values);

/// max over `resolution` uniformly spaced points of [a, b] (endpoints
/// included) of sum_i |l_i(t)|. A lower estimate of the Lebesgue constant.
double lebesgue_constant(const NodeSet& nodes, int resolution);

} // namespace vie
