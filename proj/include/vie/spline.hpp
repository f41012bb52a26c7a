#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "vie/funclass.hpp"
#include "vie/interp.hpp"
#include "vie/mesh.hpp"

namespace vie {

/// Node counts per mesh segment.
using Schedule = std::vector<int>;

/// First segment max(r, 2) nodes, every other segment s nodes.
Schedule power_schedule(const GradedMesh& mesh, const ClassParams& params);

/// Segment 0 gets max(r, 2) nodes; segment k >= 1 gets
/// floor(c k (r + 1 - gamma) A T) + 1 nodes, c = 10/9 for closed families and
/// c = 1 for the open family, clamped to [2, m_max].
Schedule geometric_schedule(const GradedMesh& mesh, const ClassParams& params, NodeFamily family,
                            int m_max = 40);

/// Degree used on every cell of a multi-dimensional B-class spline:
/// floor(c N (r + 1 - gamma) A T) + 1 nodes per axis, c as above, clamped to
/// [2, m_max].
int global_degree(const ClassParams& params, int N, NodeFamily family, int m_max = 40);

/// Piecewise polynomial over a graded mesh in nodal-value form.
struct LocalSpline {
    GradedMesh mesh;
    std::vector<NodeSet> nodes;
    std::vector<std::vector<double>> values;

    double operator()(double t) const;
    /// Number of distinct nodal values (shared breakpoints counted once).
    std::size_t functional_count() const;
};

/// Samples f at the nodes of every segment. Open node families are rejected
/// unless require_continuity is false.
LocalSpline build_spline_1d(const std::function<double(double)>& f, const GradedMesh& mesh,
                            const Schedule& schedule, NodeFamily family,
                            bool require_continuity = true);

/// Tensor-product interpolant on one cell; values are row-major with the last
/// axis varying fastest.
struct CellPolynomial {
    std::vector<NodeSet> axes;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator()(std::span<const double> t) const;
    /// Coordinates of the flat node index.
    void node(std::size_t flat, std::span<double> out) const;
};

using Degrees = std::vector<std::vector<int>>; ///< per cell, per axis node counts

Degrees uniform_degrees(const Covering& c, int m);

class TensorSpline {
public:
    TensorSpline() = default;
    explicit TensorSpline(std::shared_ptr<const Covering> covering);

    const Covering& covering() const { return *covering_; }
    std::shared_ptr<const Covering> covering_ptr() const { return covering_; }
    const CellLocator& locator() const { return *locator_; }

    std::vector<CellPolynomial>& cells() { return cells_; }
    const std::vector<CellPolynomial>& cells() const { return cells_; }

    /// Evaluates in the lowest-index cell containing t; throws
    /// std::out_of_range outside [0, T]^l.
    double operator()(std::span<const double> t) const;

    std::size_t node_count() const;

private:
    std::shared_ptr<const Covering> covering_;
    std::shared_ptr<const CellLocator> locator_;
    std::vector<CellPolynomial> cells_;
};

/// Called once per cell in build order. `known[i]` marks nodes whose value
/// was inherited from an already-built cell; the callback sets the rest.
/// `spline` holds every cell built so far (later cells are still empty).
using CellFill = std::function<void(std::size_t cell, CellPolynomial& poly,
                                    const std::vector<char>& known, const TensorSpline& spline)>;

/// Shared construction loop of approximation and collocation: for each cell
/// in `order`, nodes lying on the closure of an already-built cell take that
/// cell's value (the earliest such cell in the order), the others are filled
/// by `fill`.
TensorSpline build_stitched(std::shared_ptr<const Covering> covering, const Degrees& degrees,
                            NodeFamily family, std::span<const std::size_t> order,
                            const CellFill& fill);

/// Tensor spline interpolating f with node-level continuity stitching.
TensorSpline build_tensor_spline(const PointFunction& f, std::shared_ptr<const Covering> covering,
                                 const Degrees& degrees, NodeFamily family,
                                 std::span<const std::size_t> order);

struct SampleGrid {
    int samples_per_axis = 201; ///< uniform grid over the whole domain
    int per_cell = 8;           ///< extra uniform samples per segment/cell axis
};

/// max |f - spline| over a uniform grid plus a local grid in every cell.
double sup_error(const LocalSpline& spline, const std::function<double(double)>& f,
                 SampleGrid grid = {});
double sup_error(const TensorSpline& spline, const PointFunction& f, SampleGrid grid = {});

nlohmann::json to_json(const TensorSpline& s);
TensorSpline tensor_spline_from_json(const nlohmann::json& j);

} // namespace vie
