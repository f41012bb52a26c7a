#include "vie/widths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace vie {

double bump_eval(const BumpSpec& b, std::span<const double> t) {
    const Cell& c = b.cell;
    const int l = static_cast<int>(c.lo.size());
    double prod = 1.0;
    double h = 0.0;
    for (int i = 0; i < l; ++i) {
        if (t[i] <= c.lo[i] || t[i] >= c.hi[i]) return 0.0;
        prod *= (t[i] - c.lo[i]) * (c.hi[i] - t[i]);
        h = std::max(h, c.hi[i] - c.lo[i]);
    }
    const int s = b.params.s;
    const double denom = std::pow(h, s * (2.0 * l - 1.0)) *
                         std::pow((c.k + 1.0) / b.N, b.v * b.params.gamma);
    return b.A * std::pow(prod, s) / denom;
}

double bump_sup(const BumpSpec& b) {
    std::vector<double> mid(b.cell.lo.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (b.cell.lo[i] + b.cell.hi[i]);
    return bump_eval(b, mid);
}

Cell layer_corner_cube(int N, double T, int l, double v, int k) {
    if (k < 0 || k >= N) throw std::out_of_range("layer index out of range");
    auto a = [&](int j) { return j == N ? T : T * std::pow(static_cast<double>(j) / N, v); };
    Cell c;
    c.k = k;
    c.lo.assign(l, a(k));
    c.hi.assign(l, a(k + 1));
    c.index.assign(l, k);
    return c;
}

std::size_t covering_count(int N, int l, double v, CoveringStyle style, double T) {
    switch (style) {
    case CoveringStyle::BoundaryLayer: return boundary_layer_covering(N, T, l, v).cells.size();
    case CoveringStyle::CornerLayer: return corner_layer_covering(N, T, l, v).cells.size();
    case CoveringStyle::Geometric: return geometric_covering(N, T, l).cells.size();
    }
    throw std::invalid_argument("unknown covering style");
}

namespace {

/// Mixed central difference of multi-order `order` with step h.
double mixed_difference(const BumpSpec& b, std::vector<double> t, const std::vector<int>& order,
                        std::size_t axis, double h) {
    if (axis == order.size()) return bump_eval(b, t);
    const int k = order[axis];
    if (k == 0) return mixed_difference(b, t, order, axis + 1, h);
    // k-th central difference: sum_j (-1)^j C(k, j) g(t + (k/2 - j) h)
    double sum = 0.0;
    double binom = 1.0;
    const double base = t[axis];
    for (int j = 0; j <= k; ++j) {
        t[axis] = base + (0.5 * k - j) * h;
        sum += ((j % 2) ? -binom : binom) * mixed_difference(b, t, order, axis + 1, h);
        binom = binom * (k - j) / (j + 1);
    }
    return sum / std::pow(h, k);
}

void multi_orders(int l, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == l) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int c : cur) used += c;
    for (int k = 0; k + used <= max_total; ++k) {
        cur.push_back(k);
        multi_orders(l, max_total, cur, out);
        cur.pop_back();
    }
}

} // namespace

double admissible_scale(const BumpSpec& b, int samples, unsigned seed) {
    const int l = static_cast<int>(b.cell.lo.size());
    BumpSpec unit = b;
    unit.A = 1.0;
    std::vector<std::vector<int>> orders;
    std::vector<int> cur;
    multi_orders(l, b.params.r, cur, orders);
    double edge = std::numeric_limits<double>::infinity();
    for (int i = 0; i < l; ++i) edge = std::min(edge, b.cell.hi[i] - b.cell.lo[i]);
    const double h = 1e-3 * edge;
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    double worst = 0.0;
    std::vector<double> t(l);
    for (int sample = 0; sample < samples; ++sample) {
        for (int i = 0; i < l; ++i) t[i] = b.cell.lo[i] + u(gen) * (b.cell.hi[i] - b.cell.lo[i]);
        for (const auto& ord : orders)
            worst = std::max(worst, std::abs(mixed_difference(unit, t, ord, 0, h)));
    }
    if (worst == 0.0) return std::numeric_limits<double>::infinity();
    return b.params.bound / worst;
}

WidthEstimate width_upper_estimate(const ClassParams& params, const ClassMember& f, int N,
                                   SampleGrid grid) {
    WidthEstimate out;
    const bool b_class = is_b_class(params.kind);
    if (params.l == 1) {
        std::function<double(double)> g = [&](double t) { return f.f(std::span<const double>(&t, 1)); };
        LocalSpline sp;
        if (b_class) {
            const NodeFamily fam = NodeFamily::Chebyshev1Closed;
            GradedMesh mesh = geometric_mesh(N, params.T);
            sp = build_spline_1d(g, mesh, geometric_schedule(mesh, params, fam), fam);
        } else {
            GradedMesh mesh = power_graded_mesh(N, params.T, params.grading_exponent);
            sp = build_spline_1d(g, mesh, power_schedule(mesh, params), NodeFamily::LegendreClosed);
        }
        out.n = sp.functional_count();
        out.sup_error = sup_error(sp, g, grid);
        return out;
    }
    std::shared_ptr<const Covering> cov;
    NodeFamily fam;
    int m;
    if (b_class) {
        fam = NodeFamily::Chebyshev1Closed;
        cov = std::make_shared<Covering>(geometric_covering(N, params.T, params.l));
        m = global_degree(params, N, fam);
    } else {
        fam = NodeFamily::LegendreClosed;
        cov = std::make_shared<Covering>(
            boundary_layer_covering(N, params.T, params.l, params.grading_exponent));
        m = std::max(params.s, 2);
    }
    auto order = outer_first_order(*cov);
    TensorSpline sp = build_tensor_spline(f.f, cov, uniform_degrees(*cov, m), fam, order);
    out.n = sp.node_count();
    out.sup_error = sup_error(sp, f.f, grid);
    return out;
}

double linear_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("slope of constant abscissae");
    return (n * sxy - sx * sy) / den;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("slope inputs differ in length");
    std::size_t first = 0, last = x.size();
    if (x.size() >= 4) {
        ++first;
        --last;
    }
    std::vector<double> lx, ly;
    for (std::size_t i = first; i < last; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log of non-positive value");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return linear_slope(lx, ly);
}

} // namespace vie
