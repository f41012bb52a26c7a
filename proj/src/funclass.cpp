#include "vie/funclass.hpp"

#include <cmath>
#include <stdexcept>

namespace vie {

std::string to_string(ClassKind kind) {
    switch (kind) {
    case ClassKind::QStar: return "Q_star";
    case ClassKind::QDoubleStar: return "Q_double_star";
    case ClassKind::BStar: return "B_star";
    case ClassKind::BDoubleStar: return "B_double_star";
    }
    return "unknown";
}

ClassKind class_kind_from_string(const std::string& name) {
    if (name == "Q_star") return ClassKind::QStar;
    if (name == "Q_double_star") return ClassKind::QDoubleStar;
    if (name == "B_star") return ClassKind::BStar;
    if (name == "B_double_star") return ClassKind::BDoubleStar;
    throw std::invalid_argument("unknown class kind '" + name + "'");
}

ClassParams derive_class_params(int r, double gamma, ClassKind kind, int l, double T,
                                double bound) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    if (is_b_class(kind)) {
        if (gamma > 1.0) throw std::invalid_argument("B-classes require 0 < gamma <= 1");
        if (r < 1) throw std::invalid_argument("B-classes require r >= 1");
    }
    if (r == 0) throw std::invalid_argument("r = 0 gives an unbounded grading exponent");
    if (l < 1) throw std::invalid_argument("dimension l must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (!(bound > 0.0)) throw std::invalid_argument("bound constant must be positive");

    ClassParams p;
    p.r = r;
    p.gamma = gamma;
    p.kind = kind;
    p.l = l;
    p.T = T;
    p.bound = bound;

    const double whole = std::floor(gamma);
    if (gamma == whole) {
        p.s = r + static_cast<int>(whole);
        p.zeta = 0.0;
        p.grading_exponent = p.s / (p.s - gamma);
    } else {
        p.s = r + static_cast<int>(whole) + 1;
        p.mu = gamma - whole;
        p.zeta = 1.0 - *p.mu;
        p.grading_exponent = p.s / (p.s - whole - 1.0);
    }
    return p;
}

double evaluate(const MonomialSum& sum, std::span<const double> t) {
    double total = 0.0;
    for (const auto& term : sum) {
        double v = term.coef;
        for (std::size_t i = 0; i < term.exponents.size(); ++i) {
            const double e = term.exponents[i];
            if (e != 0.0) v *= std::pow(t[i], e);
        }
        total += v;
    }
    return total;
}

int catalogue_size() { return 4; }

ClassMember sample_member(const ClassParams& params, int index) {
    const int l = params.l;
    const double beta = params.r + params.gamma;
    ClassMember m;
    switch (index) {
    case 0: {
        m.name = "power";
        m.membership = "Q*, Q** for the given (r, gamma); B* when gamma <= 1";
        m.monomials = MonomialSum{{1.0, std::vector<double>(l, beta)}};
        m.f = [beta](std::span<const double> t) {
            double v = 1.0;
            for (double ti : t) v *= std::pow(ti, beta);
            return v;
        };
        break;
    }
    case 1: {
        m.name = "polynomial";
        m.membership = "every class (smooth)";
        MonomialSum sum{{1.0, std::vector<double>(l, 0.0)}};
        for (int i = 0; i < l; ++i) {
            MonomialTerm term{1.0, std::vector<double>(l, 0.0)};
            term.exponents[i] = params.r;
            sum.push_back(term);
        }
        m.monomials = sum;
        m.f = [sum](std::span<const double> t) { return evaluate(sum, t); };
        break;
    }
    case 2: {
        m.name = "power-sin";
        m.membership = "Q*, Q** for the given (r, gamma)";
        m.f = [beta](std::span<const double> t) {
            double v = 1.0;
            double sum = 0.0;
            for (double ti : t) {
                v *= std::pow(ti, beta);
                sum += ti;
            }
            return v * (1.0 + 0.5 * std::sin(sum));
        };
        break;
    }
    case 3: {
        m.name = "constant";
        m.membership = "every class";
        m.monomials = MonomialSum{{1.0, std::vector<double>(l, 0.0)}};
        m.f = [](std::span<const double>) { return 1.0; };
        break;
    }
    default:
        throw std::out_of_range("unknown catalogue index " + std::to_string(index));
    }
    return m;
}

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

} // namespace

double derivative_growth_slope(const std::function<double(double)>& f, int k,
                               std::span<const double> deltas) {
    if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
    if (deltas.size() < 2) throw std::invalid_argument("need at least two deltas");
    std::vector<double> xs, ys;
    for (double delta : deltas) {
        const double h = delta / (k + 1);
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) {
            const double x = delta + (0.5 * k - i) * h;
            acc += ((i % 2) ? -1.0 : 1.0) * binomial(k, i) * f(x);
        }
        xs.push_back(std::log(delta));
        ys.push_back(std::log(std::abs(acc / std::pow(h, k))));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace vie
