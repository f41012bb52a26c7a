#pragma once

#include "cli/config.hpp"
#include "cli/report.hpp"
#include "vie/solver.hpp"

namespace vie::cli {

/// Built-in problems:
///   beta-2d      kernel (t1-s1)^2.5 (t2-s2)^2.5, exact (t1 t2)^2.5
///   beta-1d      kernel (t-s)^2.5, exact t^2.5
///   cos-1d        kernel (t-s)^2.5, f = cos t, no closed-form solution
///   zero-kernel   K = 0, f = 1 + sum t_i^r, exact f
///   homogeneous   kernel with exponent p, f = 0, exact 0
///   manufactured  kernel with exponent p, exact = catalogue member `member`
///                 (must carry a monomial form), rhs in closed form
VieProblem make_problem(const ExperimentConfig& c);

ConvergenceReport run_convergence(const ExperimentConfig& c);
/// Nodal values of the collocation solution for every N.
Table run_solve(const ExperimentConfig& c);
Table run_widths(const ExperimentConfig& c);
Table run_lebesgue(const ExperimentConfig& c);
/// Solver versus product-integration oracle on the oracle grid.
Table run_oracle_check(const ExperimentConfig& c);

} // namespace vie::cli
