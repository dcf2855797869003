#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mfp::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
}

std::size_t single_target(const RunConfig& cfg, const char* command) {
    if (cfg.N.size() != 1) {
        throw ConfigError(std::string(command) + ": run.N must hold a single value (use converge for sweeps)");
    }
    return cfg.N.front();
}

ExperimentOptions experiment_options(const RunConfig& cfg) {
    ExperimentOptions o;
    o.layout = cfg.layout;
    o.pricing = cfg.pricing;
    o.estimate_condition = cfg.estimate_condition;
    return o;
}

std::vector<double> values_of(const std::vector<ReferencePrice>& refs) {
    std::vector<double> v;
    for (const ReferencePrice& r : refs) v.push_back(r.value);
    return v;
}

std::vector<ReferencePrice> references(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    auto refs = reference_prices(cfg.problem, cfg.oracle);
    auto f = open_out(out, "references.csv");
    write_reference_table(f, std::string(problem_name(cfg.problem.kind)), refs);
    for (const ReferencePrice& r : refs) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "reference (%g, %g): %.10f  +- %.1e  [", r.point.x, r.point.y, r.value,
                      r.accuracy);
        log << buf << r.method << "]\n";
    }
    return refs;
}

}  // namespace

NodesReport cmd_nodes(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const std::size_t target = cfg.layout.nodes_per_axis ? 0 : single_target(cfg, "nodes");
    const ScaledProblem problem = scale_problem(cfg.problem);
    NodesReport r;
    r.layout = build_layout(problem, cfg.layout, target);
    r.spacing = spacing_stats(r.layout.nodes);
    auto f = open_out(out, "layout.txt");
    write_layout(f, r.layout);

    std::size_t counts[4] = {0, 0, 0, 0};
    for (NodeRole role : r.layout.roles) ++counts[static_cast<int>(role)];
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s layout, %zu nodes (I %zu, CF %zu, FF %zu, EV %zu)\n"
                  "spacing: min %.4e  mean nearest %.4e  max nearest %.4e\n",
                  std::string(layout_name(cfg.layout.kind)).c_str(), r.layout.size(), counts[0], counts[1],
                  counts[2], counts[3], r.spacing.min_distance, r.spacing.mean_nn_distance,
                  r.spacing.max_nn_distance);
    log << buf;
    return r;
}

PriceReport cmd_price(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const std::size_t target = cfg.layout.nodes_per_axis ? 0 : single_target(cfg, "price");
    const ScaledProblem problem = scale_problem(cfg.problem);
    PriceReport r;
    r.references = references(cfg, out, log);
    r.result = run_experiment(problem, experiment_options(cfg), target, values_of(r.references));
    const ExperimentResult& e = r.result;

    std::ostringstream rep;
    char buf[256];
    std::snprintf(buf, sizeof buf, "problem %s, layout %s, N = %zu, M = %zu\n",
                  std::string(problem_name(cfg.problem.kind)).c_str(),
                  std::string(layout_name(cfg.layout.kind)).c_str(), e.N, cfg.pricing.steps);
    rep << buf;
    const bool american = cfg.problem.kind == ProblemKind::basket_american_put;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        const Point2 s = cfg.problem.eval_points[k];
        std::snprintf(buf, sizeof buf, "  (%g, %g)  value %.10f  reference %.10f  error %.3e", s.x, s.y,
                      e.values[k], e.references[k], e.values[k] - e.references[k]);
        rep << buf;
        if (american) {
            std::snprintf(buf, sizeof buf, "  payoff %.10f", payoff(cfg.problem.kind, s, cfg.problem.strike()));
            rep << buf;
        }
        rep << '\n';
    }
    std::snprintf(buf, sizeof buf, "du_max %.6e\n", e.du_max);
    rep << buf;
    std::snprintf(buf, sizeof buf, "seconds: layout %.3f  weights %.3f  assembly %.3f  stepping %.3f  total %.3f\n",
                  e.t_layout, e.t_weights, e.t_assemble, e.t_step, e.t_total);
    rep << buf;
    if (cfg.estimate_condition) {
        std::snprintf(buf, sizeof buf, "cond1(C) %.6e\n", e.cond1);
        rep << buf;
    }
    std::size_t iterations = 0;
    for (const StepRecord& s : e.pricing.log) iterations = std::max(iterations, s.iterations);
    std::snprintf(buf, sizeof buf, "stencil condition max %.3e, max GMRES iterations per step %zu\n",
                  e.stats.max_condition, iterations);
    rep << buf;
    if (american) {
        std::snprintf(buf, sizeof buf, "min (u - g) %.3e, max |lambda (u - g)| %.3e\n",
                      e.pricing.min_obstacle_gap, e.pricing.max_complementarity);
        rep << buf;
    }
    log << rep.str();

    auto report = open_out(out, "report.txt");
    report << rep.str();
    auto layout = open_out(out, "layout.txt");
    write_layout(layout, e.layout);
    auto solution = open_out(out, "solution.txt");
    write_solution(solution, e.layout, e.pricing.u);
    auto steps = open_out(out, "steps.csv");
    write_step_log(steps, e.pricing.log);
    return r;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
    os << "N,du_max,t_weights,t_assemble,t_step,t_total,cond1\n";
    char buf[256];
    for (const ConvergenceRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.N, r.du_max, r.t_weights,
                      r.t_assemble, r.t_step, r.t_total, r.cond1);
        os << buf;
    }
}

ConvergeReport cmd_converge(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    if (cfg.layout.nodes_per_axis) throw ConfigError("converge: run.nodes_per_axis fixes the size; use run.N");
    const ScaledProblem problem = scale_problem(cfg.problem);
    const auto refs = references(cfg, out, log);
    const auto ref_values = values_of(refs);
    std::vector<std::size_t> targets = cfg.N;
    std::sort(targets.begin(), targets.end());

    ConvergeReport report;
    auto flush = [&] {
        std::stable_sort(report.records.begin(), report.records.end(),
                         [](const ConvergenceRecord& a, const ConvergenceRecord& b) { return a.N < b.N; });
        auto f = open_out(out, "convergence.csv");
        write_convergence_csv(f, report.records);
    };
    flush();
    for (std::size_t target : targets) {
        ExperimentResult e;
        try {
            e = run_experiment(problem, experiment_options(cfg), target, ref_values);
        } catch (const std::exception& ex) {
            throw std::runtime_error("converge: N = " + std::to_string(target) + " failed (" +
                                     std::to_string(report.records.size()) + " records kept): " + ex.what());
        }
        report.records.push_back({e.N, e.du_max, e.t_weights, e.t_assemble, e.t_step, e.t_total, e.cond1});
        flush();
        char buf[200];
        std::snprintf(buf, sizeof buf, "N %6zu  du_max %.4e  total %.2f s  cond1 %.4e\n", e.N, e.du_max, e.t_total,
                      e.cond1);
        log << buf;
    }

    auto summary = open_out(out, "order.txt");
    if (report.records.size() < 2) {
        log << "warning: a single-N sweep has no convergence order\n";
        summary << "order none\n";
        return report;
    }
    std::vector<std::size_t> ns;
    std::vector<double> errs;
    for (const ConvergenceRecord& r : report.records) {
        ns.push_back(r.N);
        errs.push_back(r.du_max);
    }
    report.slope = convergence_slope(ns, errs);
    char buf[64];
    std::snprintf(buf, sizeof buf, "order %.6f\n", *report.slope);
    log << "fitted " << buf;
    summary << buf;
    return report;
}

}  // namespace mfp::cli
