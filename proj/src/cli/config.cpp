#include "cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vie::cli {

ConfigError::ConfigError(std::string field, int line, const std::string& msg)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? "" : "field '" + field + "': ") + msg),
      field_(std::move(field)), line_(line) {}

ClassParams ExperimentConfig::class_params() const {
    const ClassKind kind = preset == Preset::QStar ? ClassKind::QStar : ClassKind::BStar;
    return derive_class_params(r, gamma, kind, l, T, bound);
}

NodeFamily ExperimentConfig::node_family() const {
    return family_set ? family : default_family(preset);
}

namespace {

int line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

/// Line of the first occurrence of "name" as a key; 0 if absent.
int line_of_key(const std::string& text, const std::string& name) {
    const std::string needle = "\"" + name + "\"";
    const auto pos = text.find(needle);
    return pos == std::string::npos ? 0 : line_at(text, pos);
}

class Reader {
public:
    Reader(const std::string& text, const nlohmann::json& obj, std::string prefix)
        : text_(text), obj_(obj), prefix_(std::move(prefix)) {
        if (!obj_.is_object()) fail("", "expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.contains(key);
    }

    template <class T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            fail(key, "wrong type");
        }
    }

    const nlohmann::json& raw(const std::string& key) {
        seen_.insert(key);
        return obj_.at(key);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const std::string name = prefix_.empty() ? key : (key.empty() ? prefix_ : prefix_ + "." + key);
        throw ConfigError(name, key.empty() ? line_of_key(text_, prefix_) : line_of_key(text_, key), msg);
    }

    void reject_unknown() const {
        for (const auto& [k, v] : obj_.items())
            if (!seen_.count(k)) fail(k, "unknown field");
    }

private:
    const std::string& text_;
    const nlohmann::json& obj_;
    std::string prefix_;
    std::set<std::string> seen_;
};

template <class F>
auto convert(Reader& rd, const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        rd.fail(key, e.what());
    }
}

const std::set<std::string> kProblems = {"beta-2d", "beta-1d", "cos-1d", "zero-kernel",
                                         "homogeneous", "manufactured"};

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", line_at(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
    }
    ExperimentConfig c;
    Reader rd(text, j, "");

    rd.get("problem", c.problem);
    if (!kProblems.count(c.problem)) rd.fail("problem", "unknown problem '" + c.problem + "'");
    if (c.problem == "beta-2d") c.l = 2;
    else if (c.problem == "beta-1d" || c.problem == "cos-1d") c.l = 1;
    else c.l = 1;
    if (rd.has("l")) {
        int l = 0;
        rd.get("l", l);
        if (l != 1 && l != 2) rd.fail("l", "must be 1 or 2");
        if ((c.problem == "beta-2d" && l != 2) ||
            ((c.problem == "beta-1d" || c.problem == "cos-1d") && l != 1))
            rd.fail("l", "conflicts with the problem dimension");
        c.l = l;
    }
    if (rd.has("preset")) {
        std::string p;
        rd.get("preset", p);
        if (p == "Q_star") c.preset = Preset::QStar;
        else if (p == "B_star") c.preset = Preset::BStar;
        else rd.fail("preset", "expected Q_star or B_star");
    }
    if (c.preset == Preset::BStar) c.gamma = 0.5;
    rd.get("r", c.r);
    rd.get("gamma", c.gamma);
    rd.get("bound", c.bound);
    rd.get("T", c.T);
    rd.get("p", c.p);
    rd.get("member", c.member);
    rd.get("N", c.N);
    rd.get("quad_n", c.quad_n);
    if (rd.has("family")) {
        std::string f;
        rd.get("family", f);
        c.family = convert(rd, "family", [&] { return node_family_from_string(f); });
        c.family_set = true;
    }
    if (rd.has("touching")) {
        std::string t;
        rd.get("touching", t);
        if (t == "gauss_jacobi") c.touching = TouchingRule::GaussJacobi;
        else if (t == "gauss_legendre") c.touching = TouchingRule::GaussLegendre;
        else rd.fail("touching", "expected gauss_jacobi or gauss_legendre");
    }
    if (rd.has("order")) {
        std::string o;
        rd.get("order", o);
        if (o == "lexicographic") c.order = TieBreak::Lexicographic;
        else if (o == "reverse_lexicographic") c.order = TieBreak::ReverseLexicographic;
        else rd.fail("order", "expected lexicographic or reverse_lexicographic");
    }
    rd.get("samples_per_axis", c.samples_per_axis);
    rd.get("per_cell", c.per_cell);
    rd.get("uniform_n", c.uniform_n);
    rd.get("timing", c.timing);

    if (rd.has("lebesgue")) {
        Reader lr(text, rd.raw("lebesgue"), "lebesgue");
        if (lr.has("family")) {
            std::string f;
            lr.get("family", f);
            c.lebesgue.family = convert(lr, "family", [&] { return node_family_from_string(f); });
        }
        lr.get("m", c.lebesgue.m);
        lr.get("resolution", c.lebesgue.resolution);
        for (int m : c.lebesgue.m)
            if (m < 2 || m > 64) lr.fail("m", "node counts must lie in [2, 64]");
        if (c.lebesgue.resolution < 2) lr.fail("resolution", "must be at least 2");
        lr.reject_unknown();
    }
    if (rd.has("widths")) {
        Reader wr(text, rd.raw("widths"), "widths");
        wr.get("v", c.widths.v);
        wr.get("count_N", c.widths.count_N);
        wr.get("member", c.widths.member);
        if (wr.has("style")) {
            std::string s;
            wr.get("style", s);
            if (s == "boundary_layer") c.widths.style = CoveringStyle::BoundaryLayer;
            else if (s == "corner_layer") c.widths.style = CoveringStyle::CornerLayer;
            else if (s == "geometric") c.widths.style = CoveringStyle::Geometric;
            else wr.fail("style", "expected boundary_layer, corner_layer or geometric");
        }
        for (double v : c.widths.v)
            if (!(v >= 1.0)) wr.fail("v", "grading exponents must be >= 1");
        for (int n : c.widths.count_N)
            if (n < 1) wr.fail("count_N", "entries must be >= 1");
        wr.reject_unknown();
    }
    rd.reject_unknown();

    if (c.N.empty()) rd.fail("N", "needs at least one entry");
    for (int n : c.N)
        if (n < 1 || n > 512) rd.fail("N", "entries must lie in [1, 512]");
    if (c.quad_n < 0 || c.quad_n > 64) rd.fail("quad_n", "must lie in [0, 64]");
    if (!(c.T > 0.0)) rd.fail("T", "must be positive");
    if (!(c.p > -1.0)) rd.fail("p", "must exceed -1");
    if (c.samples_per_axis < 50) rd.fail("samples_per_axis", "must be at least 50");
    if (c.per_cell < 0) rd.fail("per_cell", "must be non-negative");
    if (c.uniform_n == 0) c.uniform_n = c.l == 1 ? 200 : 60;
    if (c.uniform_n < 1 || c.uniform_n > (c.l == 1 ? 400 : 100))
        rd.fail("uniform_n", c.l == 1 ? "must lie in [1, 400]" : "must lie in [1, 100]");
    if (c.member < 0 || c.member >= catalogue_size()) rd.fail("member", "unknown catalogue member");
    if (c.widths.member < 0 || c.widths.member >= catalogue_size())
        throw ConfigError("widths.member", line_of_key(text, "member"), "unknown catalogue member");
    convert(rd, "gamma", [&] { return c.class_params(); });
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace vie::cli
