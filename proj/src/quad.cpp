#include "vie/quad.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "vie/interp.hpp"

namespace vie {

QuadRule gauss_legendre(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("Gauss-Legendre size must be in [1, 64]");
    QuadRule rule;
    rule.nodes = legendre_roots(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = rule.nodes[i];
        const double dp = legendre_value(n, x).second;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

QuadRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("Gauss-Jacobi size must be >= 1");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::invalid_argument("Jacobi exponents must exceed -1");
    const double ab = alpha + beta;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double d = 2.0 * k + ab;
        J(k, k) = k == 0 ? (beta - alpha) / (ab + 2.0)
                         : (beta * beta - alpha * alpha) / (d * (d + 2.0));
        if (k + 1 < n) {
            const double j = k + 1;
            const double dj = 2.0 * j + ab;
            const double b2 = 4.0 * j * (j + alpha) * (j + beta) * (j + ab) /
                              (dj * dj * (dj + 1.0) * (dj - 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(b2);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    if (eig.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigensolve failed");
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = eig.eigenvalues()(i);
        const double v0 = eig.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lo, std::span<const double> hi, int n) {
    const std::size_t l = lo.size();
    const QuadRule rule = gauss_legendre(n);
    std::vector<std::size_t> idx(l, 0);
    std::vector<double> t(l);
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t a = 0; a < l; ++a) {
            const double half = 0.5 * (hi[a] - lo[a]);
            t[a] = lo[a] + half * (1.0 + rule.nodes[idx[a]]);
            w *= half * rule.weights[idx[a]];
        }
        total += w * f(t);
        std::size_t d = l;
        while (d > 0 && ++idx[d - 1] == static_cast<std::size_t>(n)) idx[--d] = 0;
        if (d == 0) break;
    }
    return total;
}

double power_moment(double a, double b, double t) {
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("power_moment needs a, b > -1");
    if (t < 0.0) throw std::invalid_argument("power_moment needs t >= 0");
    if (t == 0.0) return 0.0;
    const double log_beta = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
    return std::exp(log_beta + (a + b + 1.0) * std::log(t));
}

const QuadRule& RuleCache::legendre(int n) {
    auto it = legendre_.find(n);
    if (it == legendre_.end()) it = legendre_.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

const QuadRule& RuleCache::jacobi(int n, double alpha) {
    const auto key = std::make_pair(n, alpha);
    auto it = jacobi_.find(key);
    if (it == jacobi_.end()) it = jacobi_.emplace(key, gauss_jacobi(n, alpha, 0.0)).first;
    return it->second;
}

namespace {

void append_legendre(WeightedPoints& out, const QuadRule& rule, double xi, double p, double a,
                     double b) {
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double tau = a + half * (1.0 + rule.nodes[i]);
        const double dist = xi - tau;
        out.points.push_back(tau);
        out.weights.push_back(half * rule.weights[i] * (p == 0.0 ? 1.0 : std::pow(dist, p)));
    }
}

} // namespace

WeightedPoints volterra_rule(double xi, double p, double lo, double hi, int n, RuleCache& cache,
                             TouchingRule touching) {
    WeightedPoints out;
    if (!(hi > lo)) return out;
    if (hi > xi) throw std::invalid_argument("volterra_rule needs hi <= xi");
    if (hi == xi) {
        // an unbounded integrand (p < 0) always takes the Jacobi rule
        if (touching == TouchingRule::GaussJacobi || p <= 0.0) {
            // tau = lo + (xi - lo)(1 + x)/2, xi - tau = (xi - lo)(1 - x)/2
            const QuadRule& rule = cache.jacobi(n, p);
            const double half = 0.5 * (xi - lo);
            const double scale = half * std::pow(half, p);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                out.points.push_back(lo + half * (1.0 + rule.nodes[i]));
                out.weights.push_back(scale * rule.weights[i]);
            }
        } else {
            append_legendre(out, cache.legendre(n), xi, p, lo, hi);
        }
        return out;
    }
    const QuadRule& rule = cache.legendre(n);
    const double gap = xi - hi;
    double b = hi;
    double len = gap;
    while (b > lo) {
        const double a = std::max(lo, b - len);
        append_legendre(out, rule, xi, p, a, b);
        b = a;
        len *= 2.0;
    }
    return out;
}

} // namespace vie
