#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace vie {

enum class Grading { Power, Geometric };

/// Breakpoints of a 1D partition of [0, T] refined toward t = 0.
struct GradedMesh {
    double T = 1.0;
    int N = 1;
    Grading grading = Grading::Power;
    double q = 1.0; ///< power exponent; unused for geometric meshes
    std::vector<double> breakpoints;

    std::size_t segments() const { return breakpoints.size() - 1; }
    double lo(std::size_t k) const { return breakpoints[k]; }
    double hi(std::size_t k) const { return breakpoints[k + 1]; }

    /// Segment containing t; breakpoints resolve to the lower segment.
    std::size_t locate(double t) const;
};

/// v_k = T (k/N)^q, k = 0..N. Requires N >= 1, T > 0, q >= 1.
GradedMesh power_graded_mesh(int N, double T, double q);

/// v_0 = 0, v_k = 2^{k-1-N} T for k = 1..N+1. Requires N >= 0, T > 0.
GradedMesh geometric_mesh(int N, double T);

enum class CoveringStyle { BoundaryLayer, CornerLayer, Geometric };

std::string to_string(CoveringStyle style);

struct Layer {
    int k = 0;
    double inner = 0.0; ///< lower bound of the layer's distance coordinate
    double outer = 0.0;
    double h = 0.0;     ///< edge bound of the layer's cells
};

struct Cell {
    int k = 0;
    std::vector<int> index; ///< per-axis position of lo within all breakpoints of that axis
    std::vector<double> lo;
    std::vector<double> hi;

    double volume() const;
    bool contains(std::span<const double> t) const; ///< closed box
};

/// Tiling of [0, T]^l by axis-aligned boxes grouped into layers.
///
/// Layer tilings are nested: along every axis the breakpoints of a layer
/// refine those of the next coarser layer, so each face of a fine cell lies
/// inside a single face of any coarser neighbour.
struct Covering {
    int l = 2;
    double T = 1.0;
    int N = 1;
    double v = 1.0;
    CoveringStyle style = CoveringStyle::BoundaryLayer;
    std::vector<Layer> layers;
    std::vector<Cell> cells;

    double total_volume() const;
};

/// Layers (k/N)^v T <= min_i t_i <= ((k+1)/N)^v T, k = 0..N-1, cells with
/// edges <= h_k = ((k+1)/N)^v T - (k/N)^v T.
Covering boundary_layer_covering(int N, double T, int l, double v);

/// Layer 1 is the cube [0, (1/N)^v T]^l; layer k = 2..N is the cube shell
/// between max_i t_i = ((k-1)/N)^v T and (k/N)^v T with edges <= h_{k-1}.
Covering corner_layer_covering(int N, double T, int l, double v);

/// Layer 0 is 0 <= min_i t_i <= 2^{-N} T, layer k = 1..N is
/// 2^{k-1-N} T <= min_i t_i <= 2^{k-N} T; edges in [h_k, 2 h_k],
/// h_k = 2^{k-1-N} T.
Covering geometric_covering(int N, double T, int l);

/// {l, T, N, v, style, layers:[{k, inner, outer, h}], cells:[{k, lo, hi}]};
/// "layers", "v" and "style" are optional on input.
nlohmann::json to_json(const Covering& c);
Covering covering_from_json(const nlohmann::json& j);

/// Bounding-volume hierarchy over the cells of a covering; answers which
/// closed cells contain a point.
class CellLocator {
public:
    CellLocator() = default;
    explicit CellLocator(const Covering& c);

    /// Indices of all cells whose closure contains t, ascending.
    std::vector<std::size_t> containing(std::span<const double> t) const;

    /// Lowest-index cell containing t; throws std::out_of_range if none.
    std::size_t locate(std::span<const double> t) const;

private:
    struct Node {
        std::vector<double> lo, hi;
        int left = -1, right = -1;
        std::size_t begin = 0, end = 0;
    };
    int build(std::size_t begin, std::size_t end);

    const Covering* covering_ = nullptr;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

enum class TieBreak { Lexicographic, ReverseLexicographic };

/// True if cell d must be processed before cell c: d != c and the interior
/// of d meets the box [0, hi(c)].
bool in_shadow(const Cell& d, const Cell& c);

/// Total order on cells compatible with the Volterra integration domain:
/// every cell in the shadow of C precedes C. Topological sort keyed by the
/// sum of lower-corner coordinates with lexicographic tie-break.
/// Throws std::runtime_error if the shadow relation is cyclic.
std::vector<std::size_t> causal_order(const Covering& c,
                                      TieBreak tie = TieBreak::Lexicographic);

/// Coarse-to-fine order (descending layer distance from the singular set),
/// used to build continuous approximating splines.
std::vector<std::size_t> outer_first_order(const Covering& c);

/// Verifies that an order is a permutation respecting in_shadow.
bool respects_shadow(const Covering& c, std::span<const std::size_t> order);

} // namespace vie
