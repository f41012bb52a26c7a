#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vie {

/// Scalar function on [0,T]^l. The span length is the dimension l.
using PointFunction = std::function<double(std::span<const double>)>;

/// The four smoothness classes of functions with boundary singularities.
/// The starred classes measure the singular distance to the coordinate
/// planes; the double-starred ones measure it to the origin.
enum class ClassKind { QStar, QDoubleStar, BStar, BDoubleStar };

std::string to_string(ClassKind kind);
ClassKind class_kind_from_string(const std::string& name);

inline bool is_b_class(ClassKind kind) {
    return kind == ClassKind::BStar || kind == ClassKind::BDoubleStar;
}

struct ClassParams {
    int r = 0;                ///< order of uniformly bounded derivatives
    double gamma = 0.0;       ///< singular-scale exponent
    ClassKind kind = ClassKind::QStar;
    int s = 0;                ///< top derivative order
    double zeta = 0.0;        ///< 0 for integer gamma, 1 - mu otherwise
    std::optional<double> mu; ///< fractional part of gamma (non-integer gamma only)
    double grading_exponent = 1.0;
    int l = 1;
    double T = 1.0;
    double bound = 1.0;       ///< M for Q-classes, A for B-classes

    bool gamma_is_integer() const { return !mu.has_value(); }
};

/// Derives s, zeta, mu and the grading exponent from (r, gamma).
///
/// Integer gamma: s = r + gamma, zeta = 0, grading s/(s - gamma).
/// Non-integer gamma: s = r + floor(gamma) + 1, mu = gamma - floor(gamma),
/// zeta = 1 - mu, grading s/(s - floor(gamma) - 1).
///
/// Both branches reduce to grading = s/r, so r = 0 has no finite grading
/// and is rejected for every class. Throws std::invalid_argument.
ClassParams derive_class_params(int r, double gamma, ClassKind kind, int l, double T,
                                double bound);

/// sum_k coef_k * prod_i t_i^{exponent_{k,i}}; carried by catalogue members
/// whose Volterra image has a closed form.
struct MonomialTerm {
    double coef = 1.0;
    std::vector<double> exponents;
};
using MonomialSum = std::vector<MonomialTerm>;

double evaluate(const MonomialSum& sum, std::span<const double> t);

struct ClassMember {
    std::string name;
    std::string membership; ///< which classes the entry belongs to
    PointFunction f;
    std::optional<MonomialSum> monomials;
};

/// Catalogue of representative members used as fixtures:
///   0  prod_i t_i^{r+gamma}
///   1  1 + sum_i t_i^r                       (polynomial of degree r)
///   2  prod_i t_i^{r+gamma} * (1 + sin(sum_i t_i) / 2)
///   3  constant 1
/// Throws std::out_of_range for an unknown index.
ClassMember sample_member(const ClassParams& params, int index);

int catalogue_size();

/// Least-squares slope of log|D^k f(delta)| against log(delta), with the k-th
/// derivative estimated by a central difference of step delta/(k+1).
double derivative_growth_slope(const std::function<double(double)>& f, int k,
                               std::span<const double> deltas);

} // namespace vie
