#include "vie/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <Eigen/Dense>

namespace vie {

double KernelSpec::axis_factor(std::size_t axis, double t, double tau) const {
    if (axis < axis_factors.size() && axis_factors[axis]) return axis_factors[axis](t, tau);
    return 1.0;
}

double KernelSpec::operator()(std::span<const double> t, std::span<const double> tau) const {
    double v = scale;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = t[i] - tau[i];
        if (d < 0.0) return 0.0;
        v *= axis_factor(i, t[i], tau[i]) * std::pow(d, exponents[i]);
    }
    if (smooth) v *= smooth(t, tau);
    return v;
}

void KernelSpec::validate(int l) const {
    if (static_cast<int>(exponents.size()) != l)
        throw std::invalid_argument("kernel needs one exponent per axis");
    for (double p : exponents)
        if (!(p > -1.0)) throw std::invalid_argument("kernel exponents must exceed -1");
    if (axis_factors.size() > static_cast<std::size_t>(l))
        throw std::invalid_argument("too many axis factors");
}

namespace {

void check_problem(const VieProblem& p, int l) {
    if (p.l != l) throw std::invalid_argument("problem dimension does not match the solver");
    if (!(p.T > 0.0)) throw std::invalid_argument("T must be positive");
    if (!p.rhs) throw std::invalid_argument("problem has no right-hand side");
    p.kernel.validate(l);
}

WeightedPoints clipped_rule(double xi, double p, double lo, double hi, int n, RuleCache& cache,
                            TouchingRule touching) {
    if (xi <= lo) return {};
    return volterra_rule(xi, p, lo, std::min(hi, xi), n, cache, touching);
}

int auto_quad(int requested, int max_nodes) {
    if (requested > 0) return std::min(requested, 64);
    return std::min(max_nodes + 4, 64);
}

/// Solves the rows/columns flagged unknown of A x = b, with known columns moved
/// to the right-hand side. Returns the max defect of the solved system.
double solve_local(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, std::vector<double>& x,
                   const std::vector<char>& known, std::size_t where) {
    std::vector<int> unk;
    for (std::size_t i = 0; i < known.size(); ++i)
        if (!known[i]) unk.push_back(static_cast<int>(i));
    const int u = static_cast<int>(unk.size());
    if (u == 0) return 0.0;
    Eigen::MatrixXd Au(u, u);
    Eigen::VectorXd bu(u);
    for (int r = 0; r < u; ++r) {
        double rhs = b(unk[r]);
        for (std::size_t c = 0; c < known.size(); ++c)
            if (known[c]) rhs -= A(unk[r], static_cast<int>(c)) * x[c];
        bu(r) = rhs;
        for (int c = 0; c < u; ++c) Au(r, c) = A(unk[r], unk[c]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Au);
    const double rc = lu.rcond();
    if (!(rc > 1e-13))
        throw SingularSystemError(where, "singular local system at index " + std::to_string(where));
    Eigen::VectorXd sol = lu.solve(bu);
    if (!sol.allFinite())
        throw SingularSystemError(where, "non-finite local solution at index " + std::to_string(where));
    for (int r = 0; r < u; ++r) x[unk[r]] = sol(r);
    return (Au * sol - bu).lpNorm<Eigen::Infinity>();
}

double kernel_1d(const KernelSpec& k, double t, double tau) {
    double v = k.scale * k.axis_factor(0, t, tau);
    if (k.smooth) v *= k.smooth(std::span<const double>(&t, 1), std::span<const double>(&tau, 1));
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// 1D collocation

Solution1D solve_1d(const VieProblem& problem, const GradedMesh& mesh, const Schedule& schedule,
                    NodeFamily family, SolverOptions options) {
    check_problem(problem, 1);
    if (schedule.size() != mesh.segments())
        throw std::invalid_argument("schedule length does not match the mesh");
    const KernelSpec& ker = problem.kernel;
    const double p = ker.exponents[0];
    const int n = auto_quad(options.quad_n, *std::max_element(schedule.begin(), schedule.end()));

    Solution1D out;
    out.quad_n = n;
    out.spline.mesh = mesh;
    RuleCache cache;
    std::vector<double> basis;
    const bool closed = is_closed(family);

    for (std::size_t k = 0; k < mesh.segments(); ++k) {
        NodeSet ns = build_nodes(mesh.lo(k), mesh.hi(k), family, schedule[k]);
        const int m = static_cast<int>(ns.size());
        std::vector<double> vals(m, 0.0);
        std::vector<char> known(m, 0);
        if (k > 0 && closed) {
            vals[0] = out.spline.values[k - 1].back();
            known[0] = 1;
        }
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd b(m);
        basis.resize(m);
        for (int i = 0; i < m; ++i) {
            const double xi = ns.nodes[i];
            if (known[i]) {
                b(i) = vals[i];
                continue;
            }
            double hist = 0.0;
            if (ker.scale != 0.0) {
                for (std::size_t j = 0; j < k; ++j) {
                    auto rule = volterra_rule(xi, p, mesh.lo(j), mesh.hi(j), n, cache, options.touching);
                    const NodeSet& nj = out.spline.nodes[j];
                    for (std::size_t q = 0; q < rule.points.size(); ++q)
                        hist += rule.weights[q] * kernel_1d(ker, xi, rule.points[q]) *
                                nj.interpolate(out.spline.values[j], rule.points[q]);
                }
                auto rule = clipped_rule(xi, p, ns.a, ns.b, n, cache, options.touching);
                for (std::size_t q = 0; q < rule.points.size(); ++q) {
                    ns.basis(rule.points[q], basis);
                    const double w = rule.weights[q] * kernel_1d(ker, xi, rule.points[q]);
                    for (int a = 0; a < m; ++a) A(i, a) -= w * basis[a];
                }
            }
            b(i) = problem.rhs(std::span<const double>(&xi, 1)) + hist;
        }
        out.max_local_residual = std::max(out.max_local_residual, solve_local(A, b, vals, known, k));
        for (char c : known) out.unknowns += c ? 0 : 1;
        out.spline.nodes.push_back(std::move(ns));
        out.spline.values.push_back(std::move(vals));
    }
    return out;
}

double collocation_defect(const VieProblem& problem, const Solution1D& sol, SolverOptions options) {
    const KernelSpec& ker = problem.kernel;
    const double p = ker.exponents[0];
    const int n = options.quad_n > 0 ? options.quad_n : sol.quad_n;
    const LocalSpline& s = sol.spline;
    const bool closed = !s.nodes.empty() && is_closed(s.nodes[0].family);
    RuleCache cache;
    double worst = 0.0;
    for (std::size_t k = 0; k < s.mesh.segments(); ++k) {
        const NodeSet& ns = s.nodes[k];
        for (std::size_t i = (k > 0 && closed) ? 1 : 0; i < ns.size(); ++i) {
            const double xi = ns.nodes[i];
            double kx = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                auto rule = clipped_rule(xi, p, s.mesh.lo(j), s.mesh.hi(j), n, cache, options.touching);
                for (std::size_t q = 0; q < rule.points.size(); ++q)
                    kx += rule.weights[q] * kernel_1d(ker, xi, rule.points[q]) *
                          s.nodes[j].interpolate(s.values[j], rule.points[q]);
            }
            const double d = s.values[k][i] - kx - problem.rhs(std::span<const double>(&xi, 1));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// 2D collocation

namespace {

/// Clipped moments M(i, a) = int_{lo}^{min(hi, xi_i)} (xi_i - tau)^p h(xi_i, tau) L_a(tau) dtau,
/// cached per (axis, target node set, source node set).
class MomentCache {
public:
    MomentCache(const KernelSpec& k, int n, TouchingRule touching)
        : kernel_(k), n_(n), touching_(touching) {}

    const Eigen::MatrixXd& get(int axis, const NodeSet& target, const NodeSet& source) {
        Key key{axis, target.a, target.b, static_cast<int>(target.size()),
                source.a, source.b, static_cast<int>(source.size())};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const int mt = static_cast<int>(target.size());
        const int ms = static_cast<int>(source.size());
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(mt, ms);
        std::vector<double> basis(ms);
        const double p = kernel_.exponents[axis];
        for (int i = 0; i < mt; ++i) {
            const double xi = target.nodes[i];
            auto rule = clipped_rule(xi, p, source.a, source.b, n_, rules_, touching_);
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                source.basis(rule.points[q], basis);
                const double w = rule.weights[q] * kernel_.axis_factor(axis, xi, rule.points[q]);
                for (int a = 0; a < ms; ++a) M(i, a) += w * basis[a];
            }
        }
        return cache_.emplace(key, std::move(M)).first->second;
    }

    RuleCache& rules() { return rules_; }

private:
    using Key = std::tuple<int, double, double, int, double, double, int>;
    const KernelSpec& kernel_;
    int n_;
    TouchingRule touching_;
    RuleCache rules_;
    std::map<Key, Eigen::MatrixXd> cache_;
};

Eigen::MatrixXd value_matrix(const CellPolynomial& poly) {
    const int m0 = static_cast<int>(poly.axes[0].size());
    const int m1 = static_cast<int>(poly.axes[1].size());
    Eigen::MatrixXd V(m0, m1);
    for (int i = 0; i < m0; ++i)
        for (int j = 0; j < m1; ++j) V(i, j) = poly.values[static_cast<std::size_t>(i) * m1 + j];
    return V;
}

/// int over the part of `source` below xi of H(xi, tau) P(tau) for the generic kernel.
double generic_integral(const KernelSpec& ker, std::span<const double> xi, const CellPolynomial& src,
                        int n, RuleCache& cache, TouchingRule touching) {
    auto r0 = clipped_rule(xi[0], ker.exponents[0], src.axes[0].a, src.axes[0].b, n, cache, touching);
    auto r1 = clipped_rule(xi[1], ker.exponents[1], src.axes[1].a, src.axes[1].b, n, cache, touching);
    double sum = 0.0;
    double tau[2];
    for (std::size_t a = 0; a < r0.points.size(); ++a) {
        tau[0] = r0.points[a];
        for (std::size_t b = 0; b < r1.points.size(); ++b) {
            tau[1] = r1.points[b];
            const double w = r0.weights[a] * r1.weights[b] * ker.scale *
                             ker.axis_factor(0, xi[0], tau[0]) * ker.axis_factor(1, xi[1], tau[1]) *
                             ker.smooth(xi, tau);
            sum += w * src(tau);
        }
    }
    return sum;
}

} // namespace

Solution2D solve_2d(const VieProblem& problem, std::shared_ptr<const Covering> covering,
                    const Degrees& degrees, NodeFamily family, SolverOptions options,
                    std::span<const std::size_t> order) {
    check_problem(problem, 2);
    const Covering& cov = *covering;
    if (cov.l != 2) throw std::invalid_argument("solve_2d needs a planar covering");
    if (std::abs(cov.T - problem.T) > 1e-12 * problem.T)
        throw std::invalid_argument("covering and problem disagree on T");
    std::vector<std::size_t> own;
    if (order.empty()) {
        own = causal_order(cov);
        order = own;
    } else if (!respects_shadow(cov, order)) {
        throw std::invalid_argument("cell order violates the causal constraint");
    }
    int max_nodes = 2;
    for (const auto& d : degrees)
        for (int m : d) max_nodes = std::max(max_nodes, m);
    const int n = auto_quad(options.quad_n, max_nodes);
    const KernelSpec& ker = problem.kernel;

    Solution2D out;
    out.quad_n = n;
    out.order.assign(order.begin(), order.end());
    out.known.resize(cov.cells.size());
    std::vector<std::size_t> processed;
    processed.reserve(cov.cells.size());
    MomentCache moments(ker, n, options.touching);
    std::vector<double> pt(2);
    double worst = 0.0;
    std::size_t unknowns = 0;

    auto fill = [&](std::size_t ci, CellPolynomial& poly, const std::vector<char>& known,
                    const TensorSpline& spline) {
        const Cell& C = cov.cells[ci];
        const int m0 = static_cast<int>(poly.axes[0].size());
        const int m1 = static_cast<int>(poly.axes[1].size());
        const int m = m0 * m1;
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd b(m);
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m0, m1);

        if (ker.scale != 0.0) {
            if (ker.separable()) {
                for (std::size_t d : processed) {
                    if (!in_shadow(cov.cells[d], C)) continue;
                    const CellPolynomial& src = spline.cells()[d];
                    const Eigen::MatrixXd& M0 = moments.get(0, poly.axes[0], src.axes[0]);
                    const Eigen::MatrixXd& M1 = moments.get(1, poly.axes[1], src.axes[1]);
                    G.noalias() += M0 * value_matrix(src) * M1.transpose();
                }
                G *= ker.scale;
                const Eigen::MatrixXd& S0 = moments.get(0, poly.axes[0], poly.axes[0]);
                const Eigen::MatrixXd& S1 = moments.get(1, poly.axes[1], poly.axes[1]);
                for (int i = 0; i < m0; ++i)
                    for (int j = 0; j < m1; ++j)
                        for (int a = 0; a < m0; ++a)
                            for (int c = 0; c < m1; ++c)
                                A(i * m1 + j, a * m1 + c) -= ker.scale * S0(i, a) * S1(j, c);
            } else {
                CellPolynomial unit = poly;
                for (int f = 0; f < m; ++f) {
                    if (known[f]) continue;
                    poly.node(f, pt);
                    double g = 0.0;
                    for (std::size_t d : processed)
                        if (in_shadow(cov.cells[d], C))
                            g += generic_integral(ker, pt, spline.cells()[d], n, moments.rules(),
                                                  options.touching);
                    G(f / m1, f % m1) = g;
                    for (int a = 0; a < m; ++a) {
                        std::fill(unit.values.begin(), unit.values.end(), 0.0);
                        unit.values[a] = 1.0;
                        A(f, a) -= generic_integral(ker, pt, unit, n, moments.rules(), options.touching);
                    }
                }
            }
        }
        for (int f = 0; f < m; ++f) {
            if (known[f]) {
                b(f) = poly.values[f];
                continue;
            }
            poly.node(f, pt);
            b(f) = problem.rhs(pt) + G(f / m1, f % m1);
            ++unknowns;
        }
        worst = std::max(worst, solve_local(A, b, poly.values, known, ci));
        out.known[ci] = known;
        processed.push_back(ci);
    };

    out.spline = build_stitched(covering, degrees, family, order, fill);
    out.unknowns = unknowns;
    out.max_local_residual = worst;
    return out;
}

double collocation_defect(const VieProblem& problem, const Solution2D& sol, SolverOptions options) {
    const KernelSpec& ker = problem.kernel;
    const int n = options.quad_n > 0 ? options.quad_n : sol.quad_n;
    const TensorSpline& s = sol.spline;
    const Covering& cov = s.covering();
    RuleCache cache;
    std::vector<double> pt(2);
    double worst = 0.0;
    for (std::size_t ci = 0; ci < cov.cells.size(); ++ci) {
        const CellPolynomial& poly = s.cells()[ci];
        const Cell& C = cov.cells[ci];
        for (std::size_t f = 0; f < poly.size(); ++f) {
            if (sol.known[ci][f]) continue;
            poly.node(f, pt);
            double kx = 0.0;
            if (ker.scale != 0.0) {
                for (std::size_t d = 0; d < cov.cells.size(); ++d) {
                    if (d != ci && !in_shadow(cov.cells[d], C)) continue;
                    const CellPolynomial& src = s.cells()[d];
                    auto r0 = clipped_rule(pt[0], ker.exponents[0], src.axes[0].a, src.axes[0].b, n,
                                           cache, options.touching);
                    auto r1 = clipped_rule(pt[1], ker.exponents[1], src.axes[1].a, src.axes[1].b, n,
                                           cache, options.touching);
                    double tau[2];
                    for (std::size_t a = 0; a < r0.points.size(); ++a) {
                        tau[0] = r0.points[a];
                        for (std::size_t b = 0; b < r1.points.size(); ++b) {
                            tau[1] = r1.points[b];
                            double w = r0.weights[a] * r1.weights[b] * ker.scale *
                                       ker.axis_factor(0, pt[0], tau[0]) *
                                       ker.axis_factor(1, pt[1], tau[1]);
                            if (ker.smooth) w *= ker.smooth(pt, tau);
                            kx += w * src(tau);
                        }
                    }
                }
            }
            worst = std::max(worst, std::abs(poly.values[f] - kx - problem.rhs(pt)));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Product-integration oracle

namespace {

/// Weights w(i, j) with int_0^{t_i} (t_i - tau)^p x(tau) dtau ~ sum_j w(i, j) x_j on the
/// uniform grid of step dt, for x piecewise linear (hats) or piecewise constant
/// (value at the right end of each cell).
std::vector<std::vector<double>> oracle_weights(int n, double dt, double p, OracleVariant v) {
    std::vector<std::vector<double>> w(n + 1);
    const double scale = std::pow(dt, p + 1.0);
    auto J = [&](double c, double u0, double u1) {
        return (std::pow(u1, c + 1.0) - std::pow(u0, c + 1.0)) / (c + 1.0);
    };
    for (int i = 0; i <= n; ++i) {
        w[i].assign(i + 1, 0.0);
        for (int a = 0; a < i; ++a) {
            // cell [t_a, t_{a+1}] in units of dt: u = i - tau in [u0, u1]
            const double u0 = i - a - 1;
            const double u1 = i - a;
            if (v == OracleVariant::PiecewiseConstant) {
                w[i][a + 1] += scale * J(p, u0, u1);
            } else {
                const double jp = J(p, u0, u1);
                const double jp1 = J(p + 1.0, u0, u1);
                w[i][a] += scale * (jp1 - u0 * jp);
                w[i][a + 1] += scale * (u1 * jp - jp1);
            }
        }
    }
    return w;
}

} // namespace

OracleSolution oracle_solve(const VieProblem& problem, int n, OracleVariant variant) {
    if (n < 1) throw std::invalid_argument("oracle needs n >= 1");
    if (problem.l != 1 && problem.l != 2) throw std::invalid_argument("oracle supports l = 1, 2");
    check_problem(problem, problem.l);
    const KernelSpec& ker = problem.kernel;
    OracleSolution out;
    out.l = problem.l;
    out.n = n;
    out.T = problem.T;
    const double dt = problem.T / n;
    auto grid = [&](int i) { return out.grid(i); };

    if (problem.l == 1) {
        auto w = oracle_weights(n, dt, ker.exponents[0], variant);
        out.values.assign(n + 1, 0.0);
        for (int i = 0; i <= n; ++i) {
            const double t = grid(i);
            double rhs = problem.rhs(std::span<const double>(&t, 1));
            for (int j = 0; j < i; ++j) rhs += w[i][j] * kernel_1d(ker, t, grid(j)) * out.values[j];
            const double diag = 1.0 - w[i][i] * kernel_1d(ker, t, t);
            out.values[i] = rhs / diag;
        }
        return out;
    }

    auto w0 = oracle_weights(n, dt, ker.exponents[0], variant);
    auto w1 = oracle_weights(n, dt, ker.exponents[1], variant);
    const std::size_t stride = n + 1;
    out.values.assign(stride * stride, 0.0);
    double t[2], tau[2];
    auto smooth = [&]() {
        double v = ker.scale * ker.axis_factor(0, t[0], tau[0]) * ker.axis_factor(1, t[1], tau[1]);
        if (ker.smooth) v *= ker.smooth(t, tau);
        return v;
    };
    for (int i = 0; i <= n; ++i) {
        t[0] = grid(i);
        for (int j = 0; j <= n; ++j) {
            t[1] = grid(j);
            double rhs = problem.rhs(t);
            double diag = 1.0;
            for (int a = 0; a <= i; ++a) {
                tau[0] = grid(a);
                const double wa = w0[i][a];
                if (wa == 0.0) continue;
                for (int c = 0; c <= j; ++c) {
                    const double wc = w1[j][c];
                    if (wc == 0.0) continue;
                    tau[1] = grid(c);
                    const double coef = wa * wc * smooth();
                    if (a == i && c == j)
                        diag -= coef;
                    else
                        rhs += coef * out.values[a * stride + c];
                }
            }
            out.values[i * stride + j] = rhs / diag;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residual with an independent quadrature

namespace {

constexpr int kResidualPoints = 8;
constexpr int kResidualLevels = 24;

/// int_lo^hi (t - tau)^p g(tau) dtau by Gauss-Legendre pieces graded toward t. When the
/// interval reaches t, the last tiny piece is integrated with g frozen at its midpoint.
WeightedPoints reference_rule(double t, double p, double lo, double hi, RuleCache& cache) {
    WeightedPoints out;
    if (t <= lo) return out;
    hi = std::min(hi, t);
    if (hi < t) return volterra_rule(t, p, lo, hi, kResidualPoints, cache, TouchingRule::GaussLegendre);
    const QuadRule& rule = cache.legendre(kResidualPoints);
    double d = t - lo;
    for (int level = 0; level < kResidualLevels; ++level) {
        const double a = t - d;
        const double b = t - 0.5 * d;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double tau = mid + half * rule.nodes[q];
            out.points.push_back(tau);
            out.weights.push_back(half * rule.weights[q] * std::pow(t - tau, p));
        }
        d *= 0.5;
    }
    out.points.push_back(t - 0.5 * d);
    out.weights.push_back(std::pow(d, p + 1.0) / (p + 1.0));
    return out;
}

template <class CellEval>
double residual_2d(const VieProblem& problem, const PointFunction& x, const Covering& partition,
                   std::span<const std::vector<double>> samples, CellEval&& eval_cell) {
    check_problem(problem, 2);
    const KernelSpec& ker = problem.kernel;
    RuleCache cache;
    double worst = 0.0;
    double tau[2];
    for (const auto& t : samples) {
        double kx = 0.0;
        if (ker.scale != 0.0) {
            for (std::size_t d = 0; d < partition.cells.size(); ++d) {
                const Cell& D = partition.cells[d];
                if (!(D.lo[0] < t[0] && D.lo[1] < t[1])) continue;
                auto r0 = reference_rule(t[0], ker.exponents[0], D.lo[0], D.hi[0], cache);
                auto r1 = reference_rule(t[1], ker.exponents[1], D.lo[1], D.hi[1], cache);
                for (std::size_t a = 0; a < r0.points.size(); ++a) {
                    tau[0] = r0.points[a];
                    const double wa = r0.weights[a] * ker.axis_factor(0, t[0], tau[0]);
                    for (std::size_t b = 0; b < r1.points.size(); ++b) {
                        tau[1] = r1.points[b];
                        double w = wa * r1.weights[b] * ker.axis_factor(1, t[1], tau[1]);
                        if (ker.smooth) w *= ker.smooth(t, tau);
                        kx += w * eval_cell(d, std::span<const double>(tau, 2));
                    }
                }
            }
            kx *= ker.scale;
        }
        worst = std::max(worst, std::abs(x(t) - kx - problem.rhs(t)));
    }
    return worst;
}

template <class SegEval>
double residual_1d(const VieProblem& problem, const std::function<double(double)>& x,
                   const GradedMesh& partition, std::span<const double> samples, SegEval&& eval_seg) {
    check_problem(problem, 1);
    const KernelSpec& ker = problem.kernel;
    RuleCache cache;
    double worst = 0.0;
    for (double t : samples) {
        double kx = 0.0;
        if (ker.scale != 0.0) {
            for (std::size_t j = 0; j < partition.segments() && partition.lo(j) < t; ++j) {
                auto rule = reference_rule(t, ker.exponents[0], partition.lo(j), partition.hi(j), cache);
                for (std::size_t q = 0; q < rule.points.size(); ++q)
                    kx += rule.weights[q] * kernel_1d(ker, t, rule.points[q]) * eval_seg(j, rule.points[q]);
            }
        }
        worst = std::max(worst, std::abs(x(t) - kx - problem.rhs(std::span<const double>(&t, 1))));
    }
    return worst;
}

} // namespace

double residual(const VieProblem& problem, const std::function<double(double)>& x,
                const GradedMesh& partition, std::span<const double> samples) {
    return residual_1d(problem, x, partition, samples,
                       [&](std::size_t, double tau) { return x(tau); });
}

double residual(const VieProblem& problem, const LocalSpline& x, std::span<const double> samples) {
    std::function<double(double)> fx = [&](double t) { return x(t); };
    return residual_1d(problem, fx, x.mesh, samples, [&](std::size_t j, double tau) {
        return x.nodes[j].interpolate(x.values[j], tau);
    });
}

double residual(const VieProblem& problem, const PointFunction& x, const Covering& partition,
                std::span<const std::vector<double>> samples) {
    return residual_2d(problem, x, partition, samples,
                       [&](std::size_t, std::span<const double> tau) { return x(tau); });
}

double residual(const VieProblem& problem, const TensorSpline& x,
                std::span<const std::vector<double>> samples) {
    PointFunction fx = [&](std::span<const double> t) { return x(t); };
    return residual_2d(problem, fx, x.covering(), samples,
                       [&](std::size_t d, std::span<const double> tau) { return x.cells()[d](tau); });
}

std::string to_string(Preset p) { return p == Preset::QStar ? "Q_star" : "B_star"; }

Preset preset_from_string(const std::string& s) {
    if (s == "Q_star") return Preset::QStar;
    if (s == "B_star") return Preset::BStar;
    throw std::invalid_argument("unknown preset '" + s + "'");
}

NodeFamily default_family(Preset p) {
    return p == Preset::QStar ? NodeFamily::LegendreClosed : NodeFamily::Chebyshev1Closed;
}

Discretization1D preset_1d(Preset preset, const ClassParams& params, int N, NodeFamily family) {
    Discretization1D d{preset == Preset::QStar ? power_graded_mesh(N, params.T, params.grading_exponent)
                                               : geometric_mesh(N, params.T),
                       {}, family};
    d.schedule = preset == Preset::QStar ? power_schedule(d.mesh, params)
                                         : geometric_schedule(d.mesh, params, family);
    return d;
}

Discretization2D preset_2d(Preset preset, const ClassParams& params, int N, NodeFamily family) {
    Discretization2D d;
    d.family = family;
    if (preset == Preset::QStar) {
        auto cov = std::make_shared<Covering>(
            boundary_layer_covering(N, params.T, 2, params.grading_exponent));
        d.degrees = uniform_degrees(*cov, std::max(params.s, 2));
        d.covering = std::move(cov);
    } else {
        auto cov = std::make_shared<Covering>(geometric_covering(N, params.T, 2));
        d.degrees = uniform_degrees(*cov, global_degree(params, N, family));
        d.covering = std::move(cov);
    }
    return d;
}

PointFunction manufactured_rhs(const MonomialSum& exact, const KernelSpec& kernel) {
    if (kernel.smooth) throw std::invalid_argument("closed form needs a separable power kernel");
    for (const auto& f : kernel.axis_factors)
        if (f) throw std::invalid_argument("closed form needs unit axis factors");
    for (const auto& term : exact)
        if (term.exponents.size() != kernel.exponents.size())
            throw std::invalid_argument("monomial dimension does not match the kernel");
    return [exact, kernel](std::span<const double> t) {
        double kx = 0.0;
        for (const auto& term : exact) {
            double v = term.coef;
            for (std::size_t i = 0; i < t.size(); ++i)
                v *= power_moment(kernel.exponents[i], term.exponents[i], t[i]);
            kx += v;
        }
        return evaluate(exact, t) - kernel.scale * kx;
    };
}

} // namespace vie
