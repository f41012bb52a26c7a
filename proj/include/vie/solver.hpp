#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vie/funclass.hpp"
#include "vie/interp.hpp"
#include "vie/mesh.hpp"
#include "vie/quad.hpp"
#include "vie/spline.hpp"

namespace vie {

/// H(t, tau) = scale * prod_i h_i(t_i, tau_i) * h(t, tau) * prod_i (t_i - tau_i)^{p_i}.
struct KernelSpec {
    std::vector<double> exponents; ///< p_i > -1, one per axis
    double scale = 1.0;            ///< 0 turns the integral operator off
    /// Optional per-axis smooth factors h_i(t_i, tau_i).
    std::vector<std::function<double(double, double)>> axis_factors;
    /// Optional non-separable smooth factor; disables the separable fast path.
    std::function<double(std::span<const double>, std::span<const double>)> smooth;

    bool separable() const { return !smooth; }
    double axis_factor(std::size_t axis, double t, double tau) const;
    double operator()(std::span<const double> t, std::span<const double> tau) const;
    void validate(int l) const;
};

/// x(t) - int_0^{t_l} ... int_0^{t_1} H(t, tau) x(tau) dtau = f(t) on [0, T]^l.
struct VieProblem {
    std::string name;
    int l = 1;
    double T = 1.0;
    KernelSpec kernel;
    PointFunction rhs;
    std::optional<PointFunction> exact;
};

/// Raised when a local collocation system cannot be solved.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(std::size_t where, const std::string& what)
        : std::runtime_error(what), where_(where) {}
    std::size_t where() const { return where_; } ///< segment or cell index

private:
    std::size_t where_;
};

struct SolverOptions {
    int quad_n = 0; ///< Gauss points per piece; 0 selects (max nodes per axis) + 4
    TouchingRule touching = TouchingRule::GaussLegendre;
};

struct Solution1D {
    LocalSpline spline;
    std::size_t unknowns = 0;
    double max_local_residual = 0.0;
    int quad_n = 0;
};

/// Segment-by-segment collocation at the spline nodes. With closed node
/// families the node at each interior breakpoint is inherited from the
/// previous segment; every other node is an unknown of a dense local system.
Solution1D solve_1d(const VieProblem& problem, const GradedMesh& mesh, const Schedule& schedule,
                    NodeFamily family, SolverOptions options = {});

struct Solution2D {
    TensorSpline spline;
    std::vector<std::size_t> order;
    std::vector<std::vector<char>> known; ///< per cell: node inherited from a neighbour
    std::size_t unknowns = 0;
    double max_local_residual = 0.0;
    int quad_n = 0;
};

/// Cell-by-cell collocation in a causal order (causal_order(covering) when
/// `order` is empty). The integral over [0, xi] splits into clipped
/// sub-boxes of processed cells, evaluated with their known polynomials, and
/// the part inside the current cell, expressed in its tensor Lagrange basis.
Solution2D solve_2d(const VieProblem& problem, std::shared_ptr<const Covering> covering,
                    const Degrees& degrees, NodeFamily family, SolverOptions options = {},
                    std::span<const std::size_t> order = {});

/// Re-evaluates the discrete collocation equations at every unknown node
/// with the solver's quadrature; returns the largest absolute defect.
double collocation_defect(const VieProblem& problem, const Solution1D& sol,
                          SolverOptions options = {});
double collocation_defect(const VieProblem& problem, const Solution2D& sol,
                          SolverOptions options = {});

enum class OracleVariant { PiecewiseConstant, PiecewiseLinear };

/// Product-integration solution on the uniform grid t_i = i T / n.
struct OracleSolution {
    int l = 1;
    int n = 0;
    double T = 1.0;
    std::vector<double> values; ///< (n+1)^l grid values, last axis fastest

    double grid(int i) const { return T * i / n; }
    double at(int i) const { return values[i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * (n + 1) + j]; }
};

/// The singular factor (t - tau)^p is integrated exactly against hat (or box)
/// functions; smooth kernel factors are taken at the grid nodes. The
/// piecewise-constant variant is first order in 1/n, the piecewise-linear
/// one second order for smooth solutions.
OracleSolution oracle_solve(const VieProblem& problem, int n,
                            OracleVariant variant = OracleVariant::PiecewiseLinear);

/// max over samples of |x(t) - (K x)(t) - f(t)|, with K x computed by graded
/// composite Gauss-Legendre over the cells of the given partition.
double residual(const VieProblem& problem, const std::function<double(double)>& x,
                const GradedMesh& partition, std::span<const double> samples);
double residual(const VieProblem& problem, const LocalSpline& x, std::span<const double> samples);
double residual(const VieProblem& problem, const PointFunction& x, const Covering& partition,
                std::span<const std::vector<double>> samples);
double residual(const VieProblem& problem, const TensorSpline& x,
                std::span<const std::vector<double>> samples);

/// Standard discretisations. Q_star: power-graded mesh (1D) or boundary-layer
/// covering (2D) graded with the class grading exponent, s Legendre nodes per
/// axis (max(r, 2) on the first 1D segment). B_star:
/// geometric mesh with the linearly growing schedule (1D) or geometric
/// covering with the global degree on every cell (2D), closed Chebyshev nodes.
enum class Preset { QStar, BStar };

std::string to_string(Preset p);
Preset preset_from_string(const std::string& s);
NodeFamily default_family(Preset p);

struct Discretization1D {
    GradedMesh mesh;
    Schedule schedule;
    NodeFamily family;
};

struct Discretization2D {
    std::shared_ptr<const Covering> covering;
    Degrees degrees;
    NodeFamily family;
};

Discretization1D preset_1d(Preset preset, const ClassParams& params, int N, NodeFamily family);
Discretization2D preset_2d(Preset preset, const ClassParams& params, int N, NodeFamily family);

/// f = x - K x for x given as a monomial sum and a kernel with unit smooth
/// factors, using the closed-form power moments.
PointFunction manufactured_rhs(const MonomialSum& exact, const KernelSpec& kernel);

} // namespace vie
