#include "vie/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vie {

std::string to_string(NodeFamily family) {
    switch (family) {
    case NodeFamily::LegendreClosed: return "legendre_closed";
    case NodeFamily::Chebyshev1Closed: return "chebyshev1_closed";
    case NodeFamily::Chebyshev1Open: return "chebyshev1_open";
    }
    return "unknown";
}

NodeFamily node_family_from_string(const std::string& name) {
    if (name == "legendre_closed") return NodeFamily::LegendreClosed;
    if (name == "chebyshev1_closed") return NodeFamily::Chebyshev1Closed;
    if (name == "chebyshev1_open") return NodeFamily::Chebyshev1Open;
    throw std::invalid_argument("unknown node family '" + name + "'");
}

std::pair<double, double> legendre_value(int m, double x) {
    if (m == 0) return {1.0, 0.0};
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    // derivative from P_m and P_{m-1}; valid away from x = +-1
    const double dp = m * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

std::vector<double> legendre_roots(int m) {
    if (m < 1) throw std::invalid_argument("legendre_roots needs m >= 1");
    std::vector<double> roots(m);
    const int half = m / 2;
    for (int j = 0; j < half; ++j) {
        // j-th largest root
        double x = std::cos(std::numbers::pi * (j + 0.75) / (m + 0.5));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_value(m, x);
            double step = p / dp;
            // damping keeps the iterate inside (-1, 1)
            while (std::abs(x - step) >= 1.0) step *= 0.5;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            const auto [p, dp] = legendre_value(m, x);
            if (std::abs(p / dp) > 1e-14)
                throw std::runtime_error("Newton iteration for Legendre root did not converge");
        }
        roots[m - 1 - j] = x;
        roots[j] = -x;
    }
    if (m % 2 == 1) roots[half] = 0.0;
    return roots;
}

std::vector<double> chebyshev1_roots(int m) {
    if (m < 1) throw std::invalid_argument("chebyshev1_roots needs m >= 1");
    std::vector<double> roots(m);
    // j = m..1 gives ascending order; symmetric pairs are set exactly
    for (int j = 1; j <= m; ++j)
        roots[m - j] = std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * m));
    for (int j = 0; j < m / 2; ++j) roots[j] = -roots[m - 1 - j];
    if (m % 2 == 1) roots[m / 2] = 0.0;
    return roots;
}

namespace {

std::vector<double> reference_nodes(NodeFamily family, int m) {
    std::vector<double> y;
    if (family == NodeFamily::Chebyshev1Open) {
        if (m < 1) throw std::invalid_argument("open Chebyshev nodes need m >= 1");
        return chebyshev1_roots(m);
    }
    if (m < 2) throw std::invalid_argument("closed node families need m >= 2");
    y.push_back(-1.0);
    if (m > 2) {
        const auto interior = family == NodeFamily::LegendreClosed ? legendre_roots(m - 2)
                                                                   : chebyshev1_roots(m - 2);
        y.insert(y.end(), interior.begin(), interior.end());
    }
    y.push_back(1.0);
    return y;
}

std::vector<double> barycentric_weights(std::span<const double> y) {
    const std::size_t m = y.size();
    std::vector<double> w(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k)
            if (k != j) w[j] /= (y[j] - y[k]);
    }
    double scale = 0.0;
    for (double x : w) scale = std::max(scale, std::abs(x));
    for (double& x : w) x /= scale;
    return w;
}

} // namespace

NodeSet build_nodes(double a, double b, NodeFamily family, int m) {
    if (!(a < b)) throw std::invalid_argument("segment must satisfy a < b");
    const auto y = reference_nodes(family, m);
    NodeSet ns;
    ns.a = a;
    ns.b = b;
    ns.family = family;
    ns.weights = barycentric_weights(y);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    ns.nodes.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) ns.nodes[j] = mid + half * y[j];
    if (is_closed(family)) {
        ns.nodes.front() = a;
        ns.nodes.back() = b;
    }
    return ns;
}

NodeSet make_nodes(std::vector<double> nodes) {
    if (nodes.empty()) throw std::invalid_argument("empty node set");
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
        throw std::invalid_argument("duplicate interpolation nodes");
    NodeSet ns;
    ns.a = nodes.front();
    ns.b = nodes.back();
    ns.family = NodeFamily::LegendreClosed;
    // weights from nodes rescaled to [-1, 1] to avoid under/overflow
    std::vector<double> y(nodes.size(), 0.0);
    const double mid = 0.5 * (ns.a + ns.b);
    const double half = nodes.size() > 1 ? 0.5 * (ns.b - ns.a) : 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) y[j] = (nodes[j] - mid) / half;
    ns.weights = barycentric_weights(y);
    ns.nodes = std::move(nodes);
    return ns;
}

void NodeSet::basis(double t, std::span<double> out) const {
    const std::size_t m = nodes.size();
    for (std::size_t j = 0; j < m; ++j) {
        if (t == nodes[j]) {
            std::fill(out.begin(), out.begin() + m, 0.0);
            out[j] = 1.0;
            return;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = weights[j] / (t - nodes[j]);
        denom += out[j];
    }
    for (std::size_t j = 0; j < m; ++j) out[j] /= denom;
}

std::vector<double> NodeSet::basis(double t) const {
    std::vector<double> out(nodes.size());
    basis(t, out);
    return out;
}

double NodeSet::interpolate(std::span<const double> values, double t) const {
    const std::size_t m = nodes.size();
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = t - nodes[j];
        if (d == 0.0) return values[j];
        const double c = weights[j] / d;
        num += c * values[j];
        den += c;
    }
    return num / den;
}

Interpolant::Interpolant(NodeSet nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (values_.size() != nodes_.size())
        throw std::invalid_argument("value count does not match node count");
}

Interpolant interpolate(const NodeSet& nodes, std::vector<double> values) {
    return Interpolant(nodes, std::move(values));
}

double lebesgue_constant(const NodeSet& nodes, int resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    std::vector<double> l(nodes.size());
    double best = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double t = i + 1 == resolution
                             ? nodes.b
                             : nodes.a + (nodes.b - nodes.a) * static_cast<double>(i) / (resolution - 1);
        nodes.basis(t, l);
        double sum = 0.0;
        for (double x : l) sum += std::abs(x);
        best = std::max(best, sum);
    }
    return best;
}

} // namespace vie
