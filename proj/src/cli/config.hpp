#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vie/funclass.hpp"
#include "vie/interp.hpp"
#include "vie/mesh.hpp"
#include "vie/quad.hpp"
#include "vie/solver.hpp"

namespace vie::cli {

/// Config problem with the line of the offending text (0 when unknown).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& msg);
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

struct LebesgueConfig {
    NodeFamily family = NodeFamily::Chebyshev1Closed;
    std::vector<int> m{8, 16, 32, 64};
    int resolution = 4001;
};

struct WidthsConfig {
    std::vector<double> v{1.5, 3.0};
    CoveringStyle style = CoveringStyle::BoundaryLayer;
    std::vector<int> count_N{8, 16, 32};
    int member = 0;
};

struct ExperimentConfig {
    std::string problem = "beta-2d";
    int l = 2;                 ///< from the problem unless the problem is dimension-free
    Preset preset = Preset::QStar;
    int r = 2;
    double gamma = 2.5;
    double bound = 1.0;
    double T = 1.0;
    double p = 2.5;            ///< kernel exponent per axis for generated problems
    int member = 0;            ///< catalogue member for generated problems
    std::vector<int> N{1, 2, 3, 4, 5};
    int quad_n = 0;
    bool family_set = false;
    NodeFamily family = NodeFamily::LegendreClosed;
    TouchingRule touching = TouchingRule::GaussLegendre;
    TieBreak order = TieBreak::Lexicographic;
    int samples_per_axis = 201;
    int per_cell = 8;
    int uniform_n = 0;         ///< oracle grid; 0 selects 200 (1D) or 60 (2D)
    bool timing = true;        ///< false writes wall_time_ms = 0
    LebesgueConfig lebesgue;
    WidthsConfig widths;

    ClassParams class_params() const;
    NodeFamily node_family() const; ///< explicit family or the preset default
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

} // namespace vie::cli
