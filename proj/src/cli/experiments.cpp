#include "cli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "vie/widths.hpp"

namespace vie::cli {

namespace {

KernelSpec power_kernel(int l, double p) {
    KernelSpec k;
    k.exponents.assign(l, p);
    return k;
}

/// int_0^t (t - s)^2.5 s^2.5 ds = B(3.5, 3.5) t^6 = (5 pi / 1024) t^6.
constexpr double kBeta = 5.0 * std::numbers::pi / 1024.0;

ClassParams params_for(const ExperimentConfig& c) { return c.class_params(); }

struct Run {
    std::size_t unknowns = 0;
    std::vector<std::pair<std::vector<double>, double>> nodes; ///< point, value
    std::function<double(std::span<const double>)> eval;
    std::function<double(std::span<const std::vector<double>>)> residual;
    std::function<double(const PointFunction&)> sup_error;
    std::shared_ptr<void> keep;
};

Run solve(const ExperimentConfig& c, const VieProblem& prob, int N) {
    const ClassParams params = params_for(c);
    SolverOptions opt;
    opt.quad_n = c.quad_n;
    opt.touching = c.touching;
    const SampleGrid grid{c.samples_per_axis, c.per_cell};
    Run run;
    if (c.l == 1) {
        Discretization1D d = preset_1d(c.preset, params, N, c.node_family());
        auto sol = std::make_shared<Solution1D>(solve_1d(prob, d.mesh, d.schedule, d.family, opt));
        run.unknowns = sol->unknowns;
        for (std::size_t k = 0; k < sol->spline.nodes.size(); ++k)
            for (std::size_t i = 0; i < sol->spline.nodes[k].size(); ++i)
                run.nodes.push_back({{sol->spline.nodes[k].nodes[i]}, sol->spline.values[k][i]});
        const LocalSpline* sp = &sol->spline;
        run.eval = [sp](std::span<const double> t) { return (*sp)(t[0]); };
        run.residual = [sp, &prob](std::span<const std::vector<double>> pts) {
            std::vector<double> ts;
            for (const auto& p : pts) ts.push_back(p[0]);
            return residual(prob, *sp, ts);
        };
        run.sup_error = [sp, grid](const PointFunction& f) {
            return sup_error(*sp, [&](double t) { return f(std::span<const double>(&t, 1)); }, grid);
        };
        run.keep = sol;
        return run;
    }
    Discretization2D d = preset_2d(c.preset, params, N, c.node_family());
    auto order = causal_order(*d.covering, c.order);
    auto sol = std::make_shared<Solution2D>(solve_2d(prob, d.covering, d.degrees, d.family, opt, order));
    run.unknowns = sol->unknowns;
    std::vector<double> pt(2);
    for (std::size_t ci : sol->order) {
        const CellPolynomial& poly = sol->spline.cells()[ci];
        for (std::size_t f = 0; f < poly.size(); ++f) {
            if (sol->known[ci][f]) continue;
            poly.node(f, pt);
            run.nodes.push_back({pt, poly.values[f]});
        }
    }
    const TensorSpline* sp = &sol->spline;
    run.eval = [sp](std::span<const double> t) { return (*sp)(t); };
    run.residual = [sp, &prob](std::span<const std::vector<double>> pts) {
        return residual(prob, *sp, pts);
    };
    run.sup_error = [sp, grid](const PointFunction& f) { return sup_error(*sp, f, grid); };
    run.keep = sol;
    return run;
}

std::vector<std::vector<double>> residual_points(const ExperimentConfig& c) {
    std::vector<std::vector<double>> pts;
    const int n = c.l == 1 ? 201 : 11;
    for (int i = 0; i < n; ++i) {
        const double a = c.T * i / (n - 1);
        if (c.l == 1) {
            pts.push_back({a});
            continue;
        }
        for (int j = 0; j < n; ++j) pts.push_back({a, c.T * j / (n - 1)});
    }
    return pts;
}

nlohmann::json metadata(const ExperimentConfig& c, const VieProblem& prob) {
    const ClassParams p = params_for(c);
    return {{"problem", c.problem},
            {"l", c.l},
            {"preset", to_string(c.preset)},
            {"class", {{"kind", to_string(p.kind)}, {"r", p.r}, {"gamma", p.gamma}, {"s", p.s},
                       {"grading_exponent", p.grading_exponent}, {"bound", p.bound}, {"T", p.T}}},
            {"family", to_string(c.node_family())},
            {"quad_n", c.quad_n},
            {"touching", c.touching == TouchingRule::GaussJacobi ? "gauss_jacobi" : "gauss_legendre"},
            {"metric", prob.exact ? "exact" : "residual"},
            {"eps1_grid", "collocation nodes"},
            {"samples_per_axis", c.samples_per_axis},
            {"per_cell", c.per_cell},
            {"deterministic", true}};
}

} // namespace

VieProblem make_problem(const ExperimentConfig& c) {
    VieProblem p;
    p.name = c.problem;
    p.l = c.l;
    p.T = c.T;
    if (c.problem == "beta-2d") {
        p.kernel = power_kernel(2, 2.5);
        p.rhs = [](std::span<const double> t) {
            const double u = t[0] * t[1];
            return std::pow(u, 2.5) - kBeta * kBeta * std::pow(u, 6.0);
        };
        p.exact = [](std::span<const double> t) { return std::pow(t[0] * t[1], 2.5); };
    } else if (c.problem == "beta-1d") {
        p.kernel = power_kernel(1, 2.5);
        p.rhs = [](std::span<const double> t) {
            return std::pow(t[0], 2.5) - kBeta * std::pow(t[0], 6.0);
        };
        p.exact = [](std::span<const double> t) { return std::pow(t[0], 2.5); };
    } else if (c.problem == "cos-1d") {
        p.kernel = power_kernel(1, 2.5);
        p.rhs = [](std::span<const double> t) { return std::cos(t[0]); };
    } else if (c.problem == "zero-kernel") {
        p.kernel = power_kernel(c.l, c.p);
        p.kernel.scale = 0.0;
        const int r = c.r;
        p.rhs = [r](std::span<const double> t) {
            double v = 1.0;
            for (double x : t) v += std::pow(x, r);
            return v;
        };
        p.exact = p.rhs;
    } else if (c.problem == "homogeneous") {
        p.kernel = power_kernel(c.l, c.p);
        p.rhs = [](std::span<const double>) { return 0.0; };
        p.exact = p.rhs;
    } else if (c.problem == "manufactured") {
        p.kernel = power_kernel(c.l, c.p);
        ClassMember m = sample_member(params_for(c), c.member);
        if (!m.monomials) throw ConfigError("member", 0, "catalogue member has no closed form");
        p.rhs = manufactured_rhs(*m.monomials, p.kernel);
        p.exact = m.f;
    } else {
        throw ConfigError("problem", 0, "unknown problem '" + c.problem + "'");
    }
    return p;
}

ConvergenceReport run_convergence(const ExperimentConfig& c) {
    const VieProblem prob = make_problem(c);
    ConvergenceReport rep;
    rep.metadata = metadata(c, prob);
    for (int N : c.N) {
        ReportRow row;
        row.N = N;
        const auto start = std::chrono::steady_clock::now();
        try {
            Run run = solve(c, prob, N);
            row.n = static_cast<long long>(run.unknowns);
            if (prob.exact) {
                double e1 = 0.0;
                for (const auto& [pt, v] : run.nodes) e1 = std::max(e1, std::abs(v - (*prob.exact)(pt)));
                row.eps1 = e1;
                row.eps2 = std::max(e1, run.sup_error(*prob.exact));
            } else {
                std::vector<std::vector<double>> nodes;
                for (const auto& [pt, v] : run.nodes) nodes.push_back(pt);
                if (nodes.size() > 400) {
                    std::vector<std::vector<double>> sub;
                    const std::size_t stride = nodes.size() / 400 + 1;
                    for (std::size_t i = 0; i < nodes.size(); i += stride) sub.push_back(nodes[i]);
                    nodes.swap(sub);
                }
                row.eps1 = run.residual(nodes);
                row.eps2 = std::max(row.eps1, run.residual(residual_points(c)));
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        row.wall_time_ms =
            c.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count() : 0;
        rep.rows.push_back(std::move(row));
    }
    rep.fill_eoc();
    return rep;
}

Table run_solve(const ExperimentConfig& c) {
    const VieProblem prob = make_problem(c);
    Table t;
    t.metadata = metadata(c, prob);
    if (c.l == 1) t.columns = {"N", "t", "x", "exact", "error"};
    else t.columns = {"N", "t1", "t2", "x", "exact", "error"};
    for (int N : c.N) {
        Run run = solve(c, prob, N);
        for (const auto& [pt, v] : run.nodes) {
            std::vector<Table::Cell> row{static_cast<long long>(N)};
            for (double x : pt) row.emplace_back(x);
            row.emplace_back(v);
            if (prob.exact) {
                const double e = (*prob.exact)(pt);
                row.emplace_back(e);
                row.emplace_back(std::abs(v - e));
            } else {
                row.emplace_back(std::string());
                row.emplace_back(std::string());
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table run_widths(const ExperimentConfig& c) {
    const ClassParams params = params_for(c);
    Table t;
    t.columns = {"quantity", "N", "v", "k", "n", "value"};
    t.metadata = {{"class", to_string(params.kind)}, {"r", params.r}, {"gamma", params.gamma},
                  {"s", params.s}, {"l", params.l}, {"member", c.widths.member}};
    const ClassMember m = sample_member(params, c.widths.member);
    for (int N : c.N) {
        const WidthEstimate w = width_upper_estimate(params, m, N, {c.samples_per_axis, c.per_cell});
        const Table::Cell v = is_b_class(params.kind) ? Table::Cell(std::string())
                                                      : Table::Cell(params.grading_exponent);
        t.rows.push_back({std::string("spline_error"), static_cast<long long>(N), v, std::string(),
                          static_cast<long long>(w.n), w.sup_error});
    }
    for (double v : c.widths.v)
        for (int N : c.widths.count_N)
            t.rows.push_back({std::string("covering_count"), static_cast<long long>(N), v, std::string(),
                              std::string(),
                              static_cast<long long>(covering_count(N, 2, v, c.widths.style, c.T))});
    // Bumps on the corner cube of every boundary layer, graded so that the
    // suprema do not depend on the layer.
    const double vb = static_cast<double>(params.s) / (params.s - params.gamma);
    for (int N : c.widths.count_N) {
        for (int k = 0; k < N; ++k) {
            BumpSpec b{layer_corner_cube(N, c.T, 2, vb, k), params, N, vb, 1.0};
            t.rows.push_back({std::string("bump_sup_scaled"), static_cast<long long>(N), vb,
                              static_cast<long long>(k), std::string(),
                              bump_sup(b) * std::pow(static_cast<double>(N), params.s)});
        }
    }
    return t;
}

Table run_lebesgue(const ExperimentConfig& c) {
    Table t;
    t.columns = {"m", "lambda", "lambda_over_m2_log_m"};
    t.metadata = {{"family", to_string(c.lebesgue.family)}, {"resolution", c.lebesgue.resolution}};
    for (int m : c.lebesgue.m) {
        const double lam = lebesgue_constant(build_nodes(-1.0, 1.0, c.lebesgue.family, m),
                                             c.lebesgue.resolution);
        t.rows.push_back({static_cast<long long>(m), lam, lam / (m * m * std::log(static_cast<double>(m)))});
    }
    return t;
}

Table run_oracle_check(const ExperimentConfig& c) {
    const VieProblem prob = make_problem(c);
    Table t;
    t.columns = {"N", "uniform_n", "max_diff", "oracle_error"};
    t.metadata = metadata(c, prob);
    const OracleSolution oracle = oracle_solve(prob, c.uniform_n);
    double oracle_err = -1.0;
    if (prob.exact) {
        oracle_err = 0.0;
        const int n = oracle.n;
        for (int i = 0; i <= n; ++i) {
            if (c.l == 1) {
                const double x = oracle.grid(i);
                oracle_err = std::max(oracle_err,
                                      std::abs(oracle.at(i) - (*prob.exact)(std::span<const double>(&x, 1))));
                continue;
            }
            for (int j = 0; j <= n; ++j) {
                const double x[2] = {oracle.grid(i), oracle.grid(j)};
                oracle_err = std::max(oracle_err, std::abs(oracle.at(i, j) - (*prob.exact)(x)));
            }
        }
    }
    for (int N : c.N) {
        Run run = solve(c, prob, N);
        double diff = 0.0;
        const int n = oracle.n;
        for (int i = 0; i <= n; ++i) {
            if (c.l == 1) {
                const double x = oracle.grid(i);
                diff = std::max(diff, std::abs(run.eval(std::span<const double>(&x, 1)) - oracle.at(i)));
                continue;
            }
            for (int j = 0; j <= n; ++j) {
                const double x[2] = {oracle.grid(i), oracle.grid(j)};
                diff = std::max(diff, std::abs(run.eval(x) - oracle.at(i, j)));
            }
        }
        std::vector<Table::Cell> row{static_cast<long long>(N), static_cast<long long>(c.uniform_n), diff};
        if (oracle_err >= 0.0) row.emplace_back(oracle_err);
        else row.emplace_back(std::string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace vie::cli
