#pragma once

#include "config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace mfp::cli {

struct NodesReport {
    NodeLayout layout;
    SpacingStats spacing;
};

/// Writes `layout.txt` to `out`.
NodesReport cmd_nodes(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

struct PriceReport {
    ExperimentResult result;
    std::vector<ReferencePrice> references;
};

/// Writes `report.txt`, `references.csv`, `layout.txt`, `solution.txt` and
/// `steps.csv` to `out`.
PriceReport cmd_price(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

struct ConvergenceRecord {
    std::size_t N = 0;
    double du_max = 0.0;
    double t_weights = 0.0;
    double t_assemble = 0.0;
    double t_step = 0.0;
    double t_total = 0.0;
    double cond1 = 0.0;  // 0 when the estimate is switched off
};

struct ConvergeReport {
    std::vector<ConvergenceRecord> records;  // sorted by N
    std::optional<double> slope;             // absent for a single-N sweep
};

/// Runs the N list in increasing order. `convergence.csv` is rewritten after
/// every member so a failure leaves the finished records on disk.
ConvergeReport cmd_converge(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records);

}  // namespace mfp::cli
