#include "vie/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vie {

Schedule power_schedule(const GradedMesh& mesh, const ClassParams& params) {
    Schedule s(mesh.segments(), std::max(params.s, 2));
    s.front() = std::max(params.r, 2);
    return s;
}

Schedule geometric_schedule(const GradedMesh& mesh, const ClassParams& params, NodeFamily family,
                            int m_max) {
    const double c = is_closed(family) ? 10.0 / 9.0 : 1.0;
    const double rate = params.r + 1.0 - params.gamma;
    Schedule s(mesh.segments());
    s.front() = std::max(params.r, 2);
    for (std::size_t k = 1; k < s.size(); ++k) {
        const int m = static_cast<int>(std::floor(c * k * rate * params.bound * params.T)) + 1;
        s[k] = std::clamp(m, 2, m_max);
    }
    return s;
}

int global_degree(const ClassParams& params, int N, NodeFamily family, int m_max) {
    const double c = is_closed(family) ? 10.0 / 9.0 : 1.0;
    const double rate = params.r + 1.0 - params.gamma;
    const int m = static_cast<int>(std::floor(c * N * rate * params.bound * params.T)) + 1;
    return std::clamp(m, 2, m_max);
}

double LocalSpline::operator()(double t) const {
    const std::size_t k = mesh.locate(t);
    return nodes[k].interpolate(values[k], t);
}

std::size_t LocalSpline::functional_count() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        n += nodes[k].size();
        if (k > 0 && is_closed(nodes[k].family) && is_closed(nodes[k - 1].family)) --n;
    }
    return n;
}

LocalSpline build_spline_1d(const std::function<double(double)>& f, const GradedMesh& mesh,
                            const Schedule& schedule, NodeFamily family, bool require_continuity) {
    if (schedule.size() != mesh.segments())
        throw std::invalid_argument("schedule length does not match mesh segment count");
    if (require_continuity && !is_closed(family))
        throw std::invalid_argument("open node family cannot produce a continuous spline");
    LocalSpline sp;
    sp.mesh = mesh;
    for (std::size_t k = 0; k < mesh.segments(); ++k) {
        NodeSet ns = build_nodes(mesh.lo(k), mesh.hi(k), family, schedule[k]);
        std::vector<double> v(ns.size());
        for (std::size_t i = 0; i < ns.size(); ++i) v[i] = f(ns.nodes[i]);
        sp.nodes.push_back(std::move(ns));
        sp.values.push_back(std::move(v));
    }
    return sp;
}

double CellPolynomial::operator()(std::span<const double> t) const {
    const std::size_t l = axes.size();
    if (l == 1) return axes[0].interpolate(values, t[0]);
    if (l == 2) {
        const std::size_t m0 = axes[0].size(), m1 = axes[1].size();
        double b0[64], b1[64];
        std::vector<double> h0, h1;
        double* p0 = b0;
        double* p1 = b1;
        if (m0 > 64) { h0.resize(m0); p0 = h0.data(); }
        if (m1 > 64) { h1.resize(m1); p1 = h1.data(); }
        axes[0].basis(t[0], {p0, m0});
        axes[1].basis(t[1], {p1, m1});
        double sum = 0.0;
        for (std::size_t a = 0; a < m0; ++a) {
            if (p0[a] == 0.0) continue;
            double row = 0.0;
            const double* v = values.data() + a * m1;
            for (std::size_t b = 0; b < m1; ++b) row += v[b] * p1[b];
            sum += p0[a] * row;
        }
        return sum;
    }
    // general l: contract the last axis repeatedly
    std::vector<double> cur = values;
    for (std::size_t ax = l; ax-- > 0;) {
        const std::size_t m = axes[ax].size();
        const auto basis = axes[ax].basis(t[ax]);
        std::vector<double> next(cur.size() / m, 0.0);
        for (std::size_t i = 0; i < next.size(); ++i)
            for (std::size_t j = 0; j < m; ++j) next[i] += cur[i * m + j] * basis[j];
        cur.swap(next);
    }
    return cur[0];
}

void CellPolynomial::node(std::size_t flat, std::span<double> out) const {
    for (std::size_t ax = axes.size(); ax-- > 0;) {
        const std::size_t m = axes[ax].size();
        out[ax] = axes[ax].nodes[flat % m];
        flat /= m;
    }
}

Degrees uniform_degrees(const Covering& c, int m) {
    return Degrees(c.cells.size(), std::vector<int>(c.l, m));
}

TensorSpline::TensorSpline(std::shared_ptr<const Covering> covering)
    : covering_(std::move(covering)),
      locator_(std::make_shared<CellLocator>(*covering_)),
      cells_(covering_->cells.size()) {}

double TensorSpline::operator()(std::span<const double> t) const {
    return cells_[locator_->locate(t)](t);
}

std::size_t TensorSpline::node_count() const {
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.size();
    return n;
}

TensorSpline build_stitched(std::shared_ptr<const Covering> covering, const Degrees& degrees,
                            NodeFamily family, std::span<const std::size_t> order,
                            const CellFill& fill) {
    const Covering& cov = *covering;
    if (degrees.size() != cov.cells.size())
        throw std::invalid_argument("degree table does not match cell count");
    if (order.size() != cov.cells.size())
        throw std::invalid_argument("order is not a permutation of the cells");
    TensorSpline spline(covering);
    const std::size_t n = cov.cells.size();
    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || position[order[i]] != n)
            throw std::invalid_argument("order is not a permutation of the cells");
        position[order[i]] = i;
    }

    std::vector<double> pt(cov.l);
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t ci = order[step];
        const Cell& cell = cov.cells[ci];
        CellPolynomial& poly = spline.cells()[ci];
        std::size_t total = 1;
        for (int ax = 0; ax < cov.l; ++ax) {
            poly.axes.push_back(build_nodes(cell.lo[ax], cell.hi[ax], family, degrees[ci][ax]));
            total *= poly.axes.back().size();
        }
        poly.values.assign(total, 0.0);
        std::vector<char> known(total, 0);
        for (std::size_t f = 0; f < total; ++f) {
            poly.node(f, pt);
            std::size_t best = n;
            for (std::size_t d : spline.locator().containing(pt))
                if (position[d] < step && (best == n || position[d] < position[best])) best = d;
            if (best != n) {
                known[f] = 1;
                poly.values[f] = spline.cells()[best](pt);
            }
        }
        fill(ci, poly, known, spline);
    }
    return spline;
}

TensorSpline build_tensor_spline(const PointFunction& f, std::shared_ptr<const Covering> covering,
                                 const Degrees& degrees, NodeFamily family,
                                 std::span<const std::size_t> order) {
    std::vector<double> pt(covering->l);
    return build_stitched(std::move(covering), degrees, family, order,
                          [&](std::size_t, CellPolynomial& poly, const std::vector<char>& known,
                              const TensorSpline&) {
                              for (std::size_t i = 0; i < poly.size(); ++i) {
                                  if (known[i]) continue;
                                  poly.node(i, pt);
                                  poly.values[i] = f(pt);
                              }
                          });
}

namespace {

double grid_point(double a, double b, int i, int count) {
    if (i + 1 == count) return b;
    return a + (b - a) * static_cast<double>(i) / (count - 1);
}

} // namespace

double sup_error(const LocalSpline& spline, const std::function<double(double)>& f,
                 SampleGrid grid) {
    double err = 0.0;
    const double T = spline.mesh.T;
    for (int i = 0; i < grid.samples_per_axis; ++i) {
        const double t = grid_point(0.0, T, i, grid.samples_per_axis);
        err = std::max(err, std::abs(f(t) - spline(t)));
    }
    if (grid.per_cell >= 2) {
        for (std::size_t k = 0; k < spline.mesh.segments(); ++k) {
            for (int i = 0; i < grid.per_cell; ++i) {
                const double t = grid_point(spline.mesh.lo(k), spline.mesh.hi(k), i, grid.per_cell);
                err = std::max(err, std::abs(f(t) - spline.nodes[k].interpolate(spline.values[k], t)));
            }
        }
    }
    return err;
}

double sup_error(const TensorSpline& spline, const PointFunction& f, SampleGrid grid) {
    const Covering& cov = spline.covering();
    const int l = cov.l;
    double err = 0.0;
    std::vector<double> pt(l);

    auto sweep = [&](const std::vector<double>& lo, const std::vector<double>& hi, int count,
                     const CellPolynomial* poly) {
        std::vector<int> idx(l, 0);
        while (true) {
            for (int a = 0; a < l; ++a) pt[a] = grid_point(lo[a], hi[a], idx[a], count);
            const double approx = poly ? (*poly)(pt) : spline(pt);
            err = std::max(err, std::abs(f(pt) - approx));
            int d = l - 1;
            while (d >= 0 && ++idx[d] == count) idx[d--] = 0;
            if (d < 0) break;
        }
    };

    sweep(std::vector<double>(l, 0.0), std::vector<double>(l, cov.T), grid.samples_per_axis,
          nullptr);
    if (grid.per_cell >= 2) {
        for (std::size_t c = 0; c < cov.cells.size(); ++c)
            sweep(cov.cells[c].lo, cov.cells[c].hi, grid.per_cell, &spline.cells()[c]);
    }
    return err;
}

nlohmann::json to_json(const TensorSpline& s) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : s.cells()) {
        nlohmann::json axes = nlohmann::json::array();
        for (const auto& ax : c.axes) axes.push_back(ax.nodes);
        cells.push_back({{"nodes", axes}, {"values", c.values}});
    }
    const std::string family = s.cells().empty() || s.cells().front().axes.empty()
                                   ? std::string("legendre_closed")
                                   : to_string(s.cells().front().axes.front().family);
    return {{"covering", to_json(s.covering())}, {"family", family}, {"cells", cells}};
}

TensorSpline tensor_spline_from_json(const nlohmann::json& j) {
    auto cov = std::make_shared<const Covering>(covering_from_json(j.at("covering")));
    const NodeFamily family = node_family_from_string(j.value("family", "legendre_closed"));
    TensorSpline s(cov);
    const auto& jcells = j.at("cells");
    if (jcells.size() != cov->cells.size())
        throw std::invalid_argument("spline cell count does not match covering");
    for (std::size_t c = 0; c < jcells.size(); ++c) {
        CellPolynomial& poly = s.cells()[c];
        int ax = 0;
        for (const auto& jn : jcells[c].at("nodes")) {
            NodeSet ns = make_nodes(jn.get<std::vector<double>>());
            ns.a = cov->cells[c].lo[ax];
            ns.b = cov->cells[c].hi[ax];
            ns.family = family;
            poly.axes.push_back(std::move(ns));
            ++ax;
        }
        poly.values = jcells[c].at("values").get<std::vector<double>>();
    }
    return s;
}

} // namespace vie
