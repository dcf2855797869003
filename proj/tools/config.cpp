#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace mfp::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"run", {"problem", "layout", "N", "nodes_per_axis", "condition"}},
        {"rbf", {"q", "p", "n"}},
        {"time", {"M"}},
        {"solver", {"tol", "restart", "max_iterations", "warm_start", "threads"}},
        {"layout", {"H", "a", "b", "P", "Q", "G", "X1", "X2"}},
        {"basket", {"r", "sigma1", "sigma2", "rho", "K", "T"}},
        {"heston", {"r", "kappa", "eta", "sigma", "rho", "K", "T", "v_max"}},
        {"oracle", {"coarse_intervals", "fine_intervals", "coarse_steps", "fine_steps", "omega", "tol"}},
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> text(const std::string& section, const std::string& key) const {
        const auto s = tree_.get_child_optional(section);
        if (!s) return std::nullopt;
        const auto v = s->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return *v;
    }

    template <class T>
    void read(const std::string& section, const std::string& key, T& target) const {
        const auto v = text(section, key);
        if (!v) return;
        std::istringstream is(*v);
        T parsed{};
        if (!(is >> parsed) || !(is >> std::ws).eof()) {
            throw ConfigError("config: bad value for " + section + "." + key + ": '" + *v + "'");
        }
        target = parsed;
    }

    void read_bool(const std::string& section, const std::string& key, bool& target) const {
        const auto v = text(section, key);
        if (!v) return;
        if (*v == "true" || *v == "1" || *v == "yes") {
            target = true;
        } else if (*v == "false" || *v == "0" || *v == "no") {
            target = false;
        } else {
            throw ConfigError("config: bad boolean for " + section + "." + key + ": '" + *v + "'");
        }
    }

private:
    const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = allowed_keys().find(section);
        if (it == allowed_keys().end()) throw ConfigError("config: unknown section [" + section + "]");
        if (!body.data().empty()) throw ConfigError("config: key outside a section: " + section);
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key)) throw ConfigError("config: unknown key " + section + "." + key);
        }
    }
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::vector<std::size_t> out;
    long long v = 0;
    while (is >> v) {
        if (v <= 0) throw ConfigError("config: run.N entries must be positive");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (!(is >> std::ws).eof()) throw ConfigError("config: bad run.N list: '" + text + "'");
    if (out.empty()) throw ConfigError("config: run.N is empty");
    return out;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    check_keys(tree);
    const Reader rd(tree);

    RunConfig cfg;
    const auto problem = rd.text("run", "problem");
    if (!problem) throw ConfigError("config: missing run.problem");
    ProblemKind kind{};
    try {
        kind = parse_problem_kind(*problem);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    BasketParams bp;
    double rho = bp.rho[0][1];
    rd.read("basket", "r", bp.r);
    rd.read("basket", "sigma1", bp.sigma[0]);
    rd.read("basket", "sigma2", bp.sigma[1]);
    rd.read("basket", "rho", rho);
    rd.read("basket", "K", bp.K);
    rd.read("basket", "T", bp.T);
    bp.rho = {{{1.0, rho}, {rho, 1.0}}};

    HestonParams hp;
    double v_max = 0.5;
    rd.read("heston", "r", hp.r);
    rd.read("heston", "kappa", hp.kappa);
    rd.read("heston", "eta", hp.eta);
    rd.read("heston", "sigma", hp.sigma);
    rd.read("heston", "rho", hp.rho);
    rd.read("heston", "K", hp.K);
    rd.read("heston", "T", hp.T);
    rd.read("heston", "v_max", v_max);

    try {
        switch (kind) {
            case ProblemKind::basket_european_call: cfg.problem = ProblemSpec::basket_call(bp); break;
            case ProblemKind::basket_american_put: cfg.problem = ProblemSpec::basket_put(bp); break;
            case ProblemKind::heston_european_call: cfg.problem = ProblemSpec::heston_call(hp, v_max); break;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (const auto layout = rd.text("run", "layout")) {
        try {
            cfg.layout.kind = parse_layout_kind(*layout);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    if (const auto n = rd.text("run", "N")) cfg.N = parse_list(*n);
    std::size_t per_axis = 0;
    rd.read("run", "nodes_per_axis", per_axis);
    if (rd.text("run", "nodes_per_axis")) {
        if (cfg.layout.kind == LayoutKind::smooth) {
            throw ConfigError("config: run.nodes_per_axis applies to cartesian and adapted layouts only");
        }
        cfg.layout.nodes_per_axis = per_axis;
    }
    rd.read_bool("run", "condition", cfg.estimate_condition);

    int q = cfg.pricing.phs.q, p = cfg.pricing.poly.p;
    rd.read("rbf", "q", q);
    rd.read("rbf", "p", p);
    rd.read("rbf", "n", cfg.pricing.stencil_size);
    try {
        cfg.pricing.phs = PhsBasis(q);
        cfg.pricing.poly = PolySpace(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    rd.read("time", "M", cfg.pricing.steps);
    rd.read("solver", "tol", cfg.pricing.gmres.tolerance);
    rd.read("solver", "restart", cfg.pricing.gmres.restart);
    rd.read("solver", "max_iterations", cfg.pricing.gmres.max_iterations);
    rd.read_bool("solver", "warm_start", cfg.pricing.warm_start);
    rd.read("solver", "threads", cfg.pricing.threads);

    rd.read("layout", "H", cfg.layout.H);
    rd.read("layout", "a", cfg.layout.repel_iterations);
    rd.read("layout", "b", cfg.layout.repel_neighbors);
    RadiusParams shape = default_shape(kind);
    rd.read("layout", "P", shape.P);
    rd.read("layout", "Q", shape.Q);
    rd.read("layout", "G", shape.G);
    rd.read("layout", "X1", shape.X1);
    rd.read("layout", "X2", shape.X2);
    cfg.layout.shape = shape;

    rd.read("oracle", "coarse_intervals", cfg.oracle.coarse_intervals);
    rd.read("oracle", "fine_intervals", cfg.oracle.fine_intervals);
    rd.read("oracle", "coarse_steps", cfg.oracle.coarse_steps);
    rd.read("oracle", "fine_steps", cfg.oracle.fine_steps);
    rd.read("oracle", "omega", cfg.oracle.omega);
    rd.read("oracle", "tol", cfg.oracle.tolerance);

    if (cfg.pricing.steps < 1) throw ConfigError("config: time.M must be at least 1");
    if (cfg.pricing.stencil_size < cfg.pricing.poly.size()) {
        throw ConfigError("config: rbf.n must be at least the number of monomials");
    }
    if (!(shape.P > 0.0 && shape.Q > 0.0)) throw ConfigError("config: layout.P and layout.Q must be positive");
    if (!(cfg.layout.H > 0.0)) throw ConfigError("config: layout.H must be positive");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    return parse_config(in);
}

}  // namespace mfp::cli
