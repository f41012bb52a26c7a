#include "vie/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace vie {

std::size_t GradedMesh::locate(double t) const {
    if (t < breakpoints.front() || t > breakpoints.back())
        throw std::out_of_range("point outside mesh domain");
    // first breakpoint >= t; a breakpoint belongs to the segment below it
    auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), t);
    return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

GradedMesh power_graded_mesh(int N, double T, double q) {
    if (N < 1) throw std::invalid_argument("power mesh needs N >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("grading exponent q must be >= 1");
    GradedMesh m;
    m.T = T;
    m.N = N;
    m.grading = Grading::Power;
    m.q = q;
    m.breakpoints.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        m.breakpoints[k] = T * std::pow(static_cast<double>(k) / N, q);
    m.breakpoints.front() = 0.0;
    m.breakpoints.back() = T;
    return m;
}

GradedMesh geometric_mesh(int N, double T) {
    if (N < 0) throw std::invalid_argument("geometric mesh needs N >= 0");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    GradedMesh m;
    m.T = T;
    m.N = N;
    m.grading = Grading::Geometric;
    m.breakpoints.push_back(0.0);
    for (int k = 1; k <= N + 1; ++k) m.breakpoints.push_back(std::ldexp(T, k - 1 - N));
    return m;
}

std::string to_string(CoveringStyle style) {
    switch (style) {
    case CoveringStyle::BoundaryLayer: return "boundary_layer";
    case CoveringStyle::CornerLayer: return "corner_layer";
    case CoveringStyle::Geometric: return "geometric";
    }
    return "unknown";
}

double Cell::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

bool Cell::contains(std::span<const double> t) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (t[i] < lo[i] || t[i] > hi[i]) return false;
    return true;
}

double Covering::total_volume() const {
    double v = 0.0;
    for (const auto& c : cells) v += c.volume();
    return v;
}

namespace {

using Partition = std::vector<double>;

enum class Split { AtMost, AtLeast };

// Splits every interval into equal parts: lengths <= h (AtMost) or in
// [h, 2h) (AtLeast, intervals are assumed >= h).
Partition refine(const Partition& p, double h, Split mode) {
    Partition out{p.front()};
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double a = p[i], b = p[i + 1];
        const double ratio = (b - a) / h;
        long n = mode == Split::AtMost ? static_cast<long>(std::ceil(ratio - 1e-9))
                                       : static_cast<long>(std::floor(ratio + 1e-9));
        n = std::max(n, 1L);
        for (long j = 1; j < n; ++j) out.push_back(a + (b - a) * static_cast<double>(j) / n);
        out.push_back(b);
    }
    return out;
}

Partition restrict_to(const Partition& p, double a, double b) {
    Partition out;
    for (double x : p)
        if (x >= a && x <= b) out.push_back(x);
    return out;
}

Partition with_points(Partition p, std::initializer_list<double> extra) {
    for (double x : extra) p.push_back(x);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

struct AxisRanges {
    double before_lo, before_hi; // axes j < i
    double own_lo, own_hi;       // axis i
    double after_lo, after_hi;   // axes j > i
};

// Tiles the union over i of boxes (before^i x own x after^{l-1-i}) using the
// layer's breakpoints restricted to each range.
void tile_shell(Covering& cov, int k, const Partition& part, const AxisRanges& r) {
    const int l = cov.l;
    const Partition before = restrict_to(part, r.before_lo, r.before_hi);
    const Partition own = restrict_to(part, r.own_lo, r.own_hi);
    const Partition after = restrict_to(part, r.after_lo, r.after_hi);
    for (int i = 0; i < l; ++i) {
        std::vector<const Partition*> axes(l);
        bool empty = false;
        for (int j = 0; j < l; ++j) {
            axes[j] = j < i ? &before : (j == i ? &own : &after);
            if (axes[j]->size() < 2) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> idx(l, 0);
        while (true) {
            Cell c;
            c.k = k;
            c.lo.resize(l);
            c.hi.resize(l);
            for (int j = 0; j < l; ++j) {
                c.lo[j] = (*axes[j])[idx[j]];
                c.hi[j] = (*axes[j])[idx[j] + 1];
            }
            cov.cells.push_back(std::move(c));
            int d = l - 1;
            while (d >= 0 && ++idx[d] + 1 >= axes[d]->size()) idx[d--] = 0;
            if (d < 0) break;
        }
    }
}

void assign_indices(Covering& cov) {
    for (int axis = 0; axis < cov.l; ++axis) {
        std::vector<double> pts;
        for (const auto& c : cov.cells) {
            pts.push_back(c.lo[axis]);
            pts.push_back(c.hi[axis]);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (auto& c : cov.cells) {
            c.index.resize(cov.l);
            c.index[axis] = static_cast<int>(
                std::lower_bound(pts.begin(), pts.end(), c.lo[axis]) - pts.begin());
        }
    }
}

void check_common(int N, double T, int l, double v) {
    if (N < 1) throw std::invalid_argument("covering needs N >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (l < 2) throw std::invalid_argument("coverings are defined for l >= 2");
    if (!(v >= 1.0)) throw std::invalid_argument("grading exponent v must be >= 1");
}

std::vector<double> power_radii(int N, double T, double v) {
    std::vector<double> a(N + 1);
    for (int k = 0; k <= N; ++k) a[k] = T * std::pow(static_cast<double>(k) / N, v);
    a.front() = 0.0;
    a.back() = T;
    return a;
}

} // namespace

Covering boundary_layer_covering(int N, double T, int l, double v) {
    check_common(N, T, l, v);
    Covering cov;
    cov.l = l;
    cov.T = T;
    cov.N = N;
    cov.v = v;
    cov.style = CoveringStyle::BoundaryLayer;
    const auto a = power_radii(N, T, v);

    std::vector<Partition> parts(N);
    parts[N - 1] = {a[N - 1], T};
    for (int k = N - 2; k >= 0; --k)
        parts[k] = with_points(refine(parts[k + 1], a[k + 1] - a[k], Split::AtMost), {a[k]});

    for (int k = N - 1; k >= 0; --k) {
        cov.layers.push_back({k, a[k], a[k + 1], a[k + 1] - a[k]});
        tile_shell(cov, k, parts[k], {a[k + 1], T, a[k], a[k + 1], a[k], T});
    }
    std::reverse(cov.layers.begin(), cov.layers.end());
    assign_indices(cov);
    return cov;
}

Covering corner_layer_covering(int N, double T, int l, double v) {
    check_common(N, T, l, v);
    Covering cov;
    cov.l = l;
    cov.T = T;
    cov.N = N;
    cov.v = v;
    cov.style = CoveringStyle::CornerLayer;
    const auto a = power_radii(N, T, v);

    // parts[k] partitions [0, a_k] for layer k = 1..N
    std::vector<Partition> parts(N + 1);
    for (int k = N; k >= 1; --k) {
        Partition base = k == N ? Partition{0.0, a[N]} : restrict_to(parts[k + 1], 0.0, a[k]);
        base = with_points(base, {0.0, a[k - 1], a[k]});
        parts[k] = refine(base, a[k] - a[k - 1], Split::AtMost);
    }
    for (int k = N; k >= 1; --k) {
        cov.layers.push_back({k, a[k - 1], a[k], a[k] - a[k - 1]});
        tile_shell(cov, k, parts[k], {0.0, a[k - 1], a[k - 1], a[k], 0.0, a[k]});
    }
    std::reverse(cov.layers.begin(), cov.layers.end());
    assign_indices(cov);
    return cov;
}

Covering geometric_covering(int N, double T, int l) {
    check_common(N, T, l, 1.0);
    Covering cov;
    cov.l = l;
    cov.T = T;
    cov.N = N;
    cov.v = 2.0;
    cov.style = CoveringStyle::Geometric;

    std::vector<double> b(N + 2);
    b[0] = 0.0;
    for (int k = 1; k <= N + 1; ++k) b[k] = std::ldexp(T, k - 1 - N);
    auto h = [&](int k) { return std::ldexp(T, k - 1 - N); };

    std::vector<Partition> parts(N + 1);
    parts[N] = {b[N], T};
    for (int k = N - 1; k >= 0; --k)
        parts[k] = with_points(refine(parts[k + 1], h(k), Split::AtLeast), {b[k]});

    for (int k = N; k >= 0; --k) {
        cov.layers.push_back({k, b[k], b[k + 1], h(k)});
        tile_shell(cov, k, parts[k], {b[k + 1], T, b[k], b[k + 1], b[k], T});
    }
    std::reverse(cov.layers.begin(), cov.layers.end());
    assign_indices(cov);
    return cov;
}

nlohmann::json to_json(const Covering& c) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : c.cells)
        cells.push_back({{"k", cell.k}, {"lo", cell.lo}, {"hi", cell.hi}});
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& ly : c.layers)
        layers.push_back({{"k", ly.k}, {"inner", ly.inner}, {"outer", ly.outer}, {"h", ly.h}});
    return {{"l", c.l}, {"T", c.T}, {"N", c.N}, {"v", c.v},
            {"style", to_string(c.style)}, {"layers", layers}, {"cells", cells}};
}

Covering covering_from_json(const nlohmann::json& j) {
    Covering c;
    c.l = j.at("l").get<int>();
    c.T = j.at("T").get<double>();
    c.N = j.at("N").get<int>();
    c.v = j.value("v", 1.0);
    const std::string style = j.value("style", std::string("boundary_layer"));
    if (style == "corner_layer") c.style = CoveringStyle::CornerLayer;
    else if (style == "geometric") c.style = CoveringStyle::Geometric;
    else c.style = CoveringStyle::BoundaryLayer;
    if (j.contains("layers"))
        for (const auto& jl : j.at("layers"))
            c.layers.push_back({jl.at("k").get<int>(), jl.at("inner").get<double>(),
                                jl.at("outer").get<double>(), jl.at("h").get<double>()});
    for (const auto& jc : j.at("cells")) {
        Cell cell;
        cell.k = jc.at("k").get<int>();
        cell.lo = jc.at("lo").get<std::vector<double>>();
        cell.hi = jc.at("hi").get<std::vector<double>>();
        if (static_cast<int>(cell.lo.size()) != c.l || static_cast<int>(cell.hi.size()) != c.l)
            throw std::invalid_argument("cell corner dimension does not match l");
        c.cells.push_back(std::move(cell));
    }
    assign_indices(c);
    return c;
}

CellLocator::CellLocator(const Covering& c) : covering_(&c) {
    order_.resize(c.cells.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!order_.empty()) build(0, order_.size());
}

int CellLocator::build(std::size_t begin, std::size_t end) {
    const auto& cells = covering_->cells;
    const int l = covering_->l;
    Node node;
    node.lo.assign(l, std::numeric_limits<double>::infinity());
    node.hi.assign(l, -std::numeric_limits<double>::infinity());
    for (std::size_t i = begin; i < end; ++i) {
        const auto& c = cells[order_[i]];
        for (int a = 0; a < l; ++a) {
            node.lo[a] = std::min(node.lo[a], c.lo[a]);
            node.hi[a] = std::max(node.hi[a], c.hi[a]);
        }
    }
    node.begin = begin;
    node.end = end;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= 8) return id;

    int axis = 0;
    for (int a = 1; a < l; ++a)
        if (node.hi[a] - node.lo[a] > node.hi[axis] - node.lo[axis]) axis = a;
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::size_t x, std::size_t y) {
                         return cells[x].lo[axis] + cells[x].hi[axis] <
                                cells[y].lo[axis] + cells[y].hi[axis];
                     });
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

std::vector<std::size_t> CellLocator::containing(std::span<const double> t) const {
    std::vector<std::size_t> out;
    if (nodes_.empty()) return out;
    std::vector<int> stack{0};
    const int l = covering_->l;
    while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        stack.pop_back();
        bool inside = true;
        for (int a = 0; a < l && inside; ++a) inside = t[a] >= n.lo[a] && t[a] <= n.hi[a];
        if (!inside) continue;
        if (n.left < 0) {
            for (std::size_t i = n.begin; i < n.end; ++i)
                if (covering_->cells[order_[i]].contains(t)) out.push_back(order_[i]);
        } else {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t CellLocator::locate(std::span<const double> t) const {
    const auto hits = containing(t);
    if (hits.empty()) throw std::out_of_range("point outside covering domain");
    return hits.front();
}

bool in_shadow(const Cell& d, const Cell& c) {
    if (&d == &c) return false;
    for (std::size_t i = 0; i < d.lo.size(); ++i)
        if (!(d.lo[i] < c.hi[i])) return false;
    return d.lo != c.lo || d.hi != c.hi;
}

std::vector<std::size_t> causal_order(const Covering& cov, TieBreak tie) {
    const std::size_t n = cov.cells.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
            if (d != c && in_shadow(cov.cells[d], cov.cells[c])) {
                succ[d].push_back(c);
                ++indegree[c];
            }

    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i)
        key[i] = std::accumulate(cov.cells[i].lo.begin(), cov.cells[i].lo.end(), 0.0);
    auto later = [&](std::size_t x, std::size_t y) {
        if (key[x] != key[y]) return key[x] > key[y];
        const auto& a = cov.cells[x].lo;
        const auto& b = cov.cells[y].lo;
        return tie == TieBreak::Lexicographic ? a > b : a < b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);

    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t c = ready.top();
        ready.pop();
        order.push_back(c);
        for (std::size_t s : succ[c])
            if (--indegree[s] == 0) ready.push(s);
    }
    if (order.size() != n) throw std::runtime_error("shadow relation between cells is cyclic");
    return order;
}

std::vector<std::size_t> outer_first_order(const Covering& cov) {
    std::vector<std::size_t> order(cov.cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = cov.cells[x];
        const auto& b = cov.cells[y];
        if (a.k != b.k) return a.k > b.k;
        return a.lo < b.lo;
    });
    return order;
}

bool respects_shadow(const Covering& cov, std::span<const std::size_t> order) {
    const std::size_t n = cov.cells.size();
    if (order.size() != n) return false;
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || pos[order[i]] != n) return false;
        pos[order[i]] = i;
    }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
            if (d != c && in_shadow(cov.cells[d], cov.cells[c]) && pos[d] > pos[c]) return false;
    return true;
}

} // namespace vie
