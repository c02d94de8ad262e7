// hdist: exact and ANN-approximated Hausdorff distances between point sets,
// with bound-verification and benchmarking subcommands. Reports are emitted
// as one JSON object per line; reruns with identical flags and seed produce
// identical reports apart from wall-time fields.
//
// Exit codes: 0 success, 1 internal error, 2 usage/parse error,
// 3 verification failure.

#include "hdist/approx.hpp"
#include "hdist/datagen.hpp"
#include "hdist/error_analysis.hpp"
#include "hdist/exact.hpp"
#include "hdist/io.hpp"
#include "hdist/robustness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using hdist::Index;
using json = nlohmann::ordered_json;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Streams report lines to stdout and optionally mirrors them to a file.
class ReportSink {
public:
    explicit ReportSink(const std::string& out_path) {
        if (!out_path.empty()) {
            file_.open(out_path);
            if (!file_) throw hdist::UsageError("cannot open --out file: " + out_path);
        }
    }

    void emit(const json& obj) {
        const std::string line = obj.dump();
        std::cout << line << '\n';
        if (file_.is_open()) file_ << line << '\n';
    }

private:
    std::ofstream file_;
};

struct RunOptions {
    std::string mode = "cached";
    std::string backend = "exact";
    double eps = 0.1;
    std::string uncovered = "fallback";
    std::string swap = "smaller";
    std::uint64_t seed = 0;
    Index leaf_size = 16;
    Index max_degree = 16;
    Index build_beam = 100;
    Index query_beam = 32;
};

void add_run_options(CLI::App* cmd, RunOptions& run) {
    cmd->add_option("--mode", run.mode, "Approximation mode")
        ->check(CLI::IsMember({"cached", "dual"}));
    cmd->add_option("--backend", run.backend, "ANN backend")
        ->check(CLI::IsMember({"exact", "kdtree", "graph"}));
    cmd->add_option("--eps", run.eps, "ANN approximation factor epsilon");
    cmd->add_option("--uncovered", run.uncovered, "Policy for indexed points with no queries")
        ->check(CLI::IsMember({"fallback", "infinity"}));
    cmd->add_option("--swap", run.swap, "Which set gets indexed in cached mode")
        ->check(CLI::IsMember({"smaller", "second"}));
    cmd->add_option("--seed", run.seed, "Deterministic seed");
    cmd->add_option("--leaf-size", run.leaf_size, "kd-tree leaf size");
    cmd->add_option("--max-degree", run.max_degree, "Graph degree cap");
    cmd->add_option("--build-beam", run.build_beam, "Graph construction beam width");
    cmd->add_option("--query-beam", run.query_beam, "Graph query beam width");
}

hdist::ApproxConfig to_config(const RunOptions& run) {
    hdist::ApproxConfig cfg;
    cfg.mode = run.mode == "dual" ? hdist::ApproxMode::Dual : hdist::ApproxMode::Cached;
    if (run.backend == "exact") cfg.backend = hdist::AnnBackend::ExactScan;
    else if (run.backend == "kdtree") cfg.backend = hdist::AnnBackend::KdTreeEps;
    else cfg.backend = hdist::AnnBackend::NavigableGraph;
    if (run.eps < 0.0) throw hdist::UsageError("--eps must be nonnegative");
    cfg.params.epsilon = run.eps;
    cfg.params.leaf_size = run.leaf_size;
    cfg.params.max_degree = run.max_degree;
    cfg.params.build_beam = run.build_beam;
    cfg.params.query_beam = run.query_beam;
    cfg.uncovered_policy = run.uncovered == "infinity"
                               ? hdist::UncoveredPolicy::PaperInfinity
                               : hdist::UncoveredPolicy::BruteForceFallback;
    cfg.swap_policy = run.swap == "second" ? hdist::SwapPolicy::IndexSecondArg
                                           : hdist::SwapPolicy::IndexSmaller;
    return cfg;
}

const char* mode_name(hdist::ApproxMode mode) {
    return mode == hdist::ApproxMode::Dual ? "dual" : "cached";
}

hdist::PointSet load_set(const std::string& path, const std::string& format_name,
                         const std::string& entity) {
    hdist::DatasetFormat format;
    if (!format_name.empty()) {
        const auto parsed = hdist::parse_format_name(format_name);
        if (!parsed) throw hdist::UsageError("unknown --format: " + format_name);
        format = *parsed;
    } else {
        format = hdist::format_from_path(path);
    }
    return hdist::read_dataset(path, format, entity);
}

// ---------------------------------------------------------------------------
// compute / oracle

struct ComputeArgs {
    std::string path_a, path_b, format, entity_a, entity_b, out_path;
    RunOptions run;
    bool with_oracle = false;
    bool with_error_report = false;
};

json error_report_to_json(const hdist::ErrorBoundReport& r) {
    json obj;
    obj["command"] = "error-report";
    obj["epsilon_used"] = r.epsilon_used;
    obj["d_h_exact"] = r.d_h_exact;
    obj["d_h_approx"] = r.d_h_approx;
    obj["abs_error"] = r.abs_error;
    obj["worst_case_bound"] = r.worst_case_bound;
    obj["geometric_bound"] = r.geometric_bound;
    obj["n_eff"] = r.n_eff;
    obj["refined_bound"] = r.refined_bound;
    obj["intrinsic_dim"] = r.intrinsic_dim;
    obj["nn_dist_mean"] = r.nn_dist_mean;
    obj["nn_dist_std"] = r.nn_dist_std;
    obj["tail_fraction"] = r.tail_fraction;
    obj["tail_bound"] = r.tail_bound;
    obj["d_max"] = r.stats.d_max;
    obj["delta"] = r.stats.delta;
    obj["spread"] = r.stats.spread;
    return obj;
}

int cmd_compute(const ComputeArgs& args) {
    ReportSink sink(args.out_path);
    const hdist::PointSet a = load_set(args.path_a, args.format, args.entity_a);
    const hdist::PointSet b = load_set(args.path_b, args.format, args.entity_b);
    const hdist::ApproxConfig cfg = to_config(args.run);

    Timer timer;
    const hdist::ApproxResult result = hdist::approximate_hausdorff(a, b, cfg, args.run.seed);
    const double wall_ms = timer.ms();

    json report;
    report["command"] = "compute";
    report["value"] = result.value;
    report["forward_sup"] = result.forward_sup;
    report["backward_sup"] = result.backward_sup;
    report["mode"] = mode_name(cfg.mode);
    report["backend"] = hdist::backend_name(cfg.backend);
    report["epsilon"] = cfg.backend == hdist::AnnBackend::ExactScan ? 0.0 : cfg.params.epsilon;
    report["uncovered_policy"] =
        cfg.uncovered_policy == hdist::UncoveredPolicy::PaperInfinity ? "infinity" : "fallback";
    report["query_count"] = result.query_count;
    report["visit_count"] = result.visit_count;
    report["uncovered_count"] = result.uncovered_count;
    report["fallback_cost"] = result.fallback_cost;
    report["swapped"] = result.swapped;
    report["m"] = a.size();
    report["n"] = b.size();
    report["d"] = a.dim();
    report["seed"] = args.run.seed;
    if (args.with_oracle) {
        const hdist::HausdorffResult exact = hdist::hausdorff_exact(a, b);
        report["oracle_value"] = exact.value;
        report["abs_error"] = std::abs(exact.value - result.value);
    }
    report["wall_ms"] = wall_ms;
    sink.emit(report);
    if (args.with_error_report)
        sink.emit(error_report_to_json(hdist::error_report(a, b, cfg, args.run.seed)));
    return 0;
}

struct OracleArgs {
    std::string path_a, path_b, format, entity_a, entity_b, out_path;
};

int cmd_oracle(const OracleArgs& args) {
    ReportSink sink(args.out_path);
    const hdist::PointSet a = load_set(args.path_a, args.format, args.entity_a);
    const hdist::PointSet b = load_set(args.path_b, args.format, args.entity_b);

    Timer timer;
    const hdist::HausdorffResult result = hdist::hausdorff_exact(a, b);
    const double wall_ms = timer.ms();

    json report;
    report["command"] = "oracle";
    report["value"] = result.value;
    report["forward"] = {{"value", result.forward.value},
                         {"witness_src", result.forward.witness_src},
                         {"witness_dst", result.forward.witness_dst}};
    report["backward"] = {{"value", result.backward.value},
                          {"witness_src", result.backward.witness_src},
                          {"witness_dst", result.backward.witness_dst}};
    report["m"] = a.size();
    report["n"] = b.size();
    report["d"] = a.dim();
    report["wall_ms"] = wall_ms;
    sink.emit(report);
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite = "all";
    std::vector<Index> sizes = {16, 48};
    Index trials = 20;
    double tol_invariance = 0.05;  // approximate-backend invariance tolerance
    std::string rotation_file;
    std::string out_path;
    RunOptions run;
};

struct VerifyState {
    ReportSink& sink;
    std::string suite;
    Index checks = 0;
    Index failed = 0;
    Index hard_failed = 0;

    void record(const json& line, bool passed, bool hard) {
        ++checks;
        if (!passed) {
            ++failed;
            if (hard) ++hard_failed;
        }
        sink.emit(line);
    }

    void record_report(const hdist::RobustnessReport& report, Index trial, bool hard) {
        json line;
        line["suite"] = suite;
        line["check"] = report.check_name;
        line["trial"] = trial;
        line["predicted_bound"] = report.predicted_bound;
        line["measured"] = report.measured_value;
        line["tolerance"] = report.tolerance;
        if (report.approx_asserted || report.approx_bound > 0.0) {
            line["approx_measured"] = report.approx_measured;
            line["approx_bound"] = report.approx_bound;
            line["approx_asserted"] = report.approx_asserted;
        }
        line["passed"] = report.passed;
        line["hard"] = hard;
        record(line, report.passed, hard);
    }
};

hdist::GenSpec trial_spec(const VerifyArgs& args, Index trial, Index min_dim) {
    static constexpr hdist::GenFamily kFamilies[] = {hdist::GenFamily::UniformCube,
                                                     hdist::GenFamily::GaussianClusters,
                                                     hdist::GenFamily::SphereShell};
    hdist::detail::SampleStream stream(args.run.seed + 0x51ed2701ULL * static_cast<std::uint64_t>(trial));
    const Index cap = args.sizes[static_cast<std::size_t>(trial) % args.sizes.size()];
    static constexpr Index kDims[] = {2, 3, 4, 8};
    hdist::GenSpec spec;
    spec.family = kFamilies[trial % 3];
    spec.m = 1 + static_cast<Index>(stream.bits() % static_cast<std::uint64_t>(cap));
    spec.n = 1 + static_cast<Index>(stream.bits() % static_cast<std::uint64_t>(cap));
    spec.d = std::max(min_dim, kDims[trial % 4]);
    spec.seed = args.run.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
    if (spec.family == hdist::GenFamily::GaussianClusters)
        spec.clusters = std::min<Index>(4, std::min(spec.m, spec.n));
    return spec;
}

void verify_bounds(const VerifyArgs& args, VerifyState& state) {
    const hdist::ApproxConfig user_cfg = to_config(args.run);
    for (Index t = 0; t < args.trials; ++t) {
        const hdist::GenSpec spec = trial_spec(args, t, 1);
        const auto [a, b] = hdist::generate_pair(spec);
        const double exact = hdist::hausdorff_exact(a, b).value;

        // Dual mode over the exact scan must reproduce the oracle.
        hdist::ApproxConfig cfg = user_cfg;
        cfg.mode = hdist::ApproxMode::Dual;
        cfg.backend = hdist::AnnBackend::ExactScan;
        const double dual_exact = hdist::approximate_hausdorff(a, b, cfg, spec.seed).value;
        json line;
        line["suite"] = state.suite;
        line["check"] = "oracle-equivalence";
        line["trial"] = t;
        line["measured"] = std::abs(dual_exact - exact);
        line["tolerance"] = 1e-12;
        bool passed = std::abs(dual_exact - exact) <= 1e-12;
        line["passed"] = passed;
        line["hard"] = true;
        state.record(line, passed, true);

        // Sandwich bound for the guaranteed tree backend in dual mode.
        cfg.backend = hdist::AnnBackend::KdTreeEps;
        cfg.params = user_cfg.params;
        const double eps = cfg.params.epsilon;
        const double dual_tree = hdist::approximate_hausdorff(a, b, cfg, spec.seed).value;
        line = json{};
        line["suite"] = state.suite;
        line["check"] = "sandwich-bound";
        line["trial"] = t;
        line["epsilon"] = eps;
        line["d_h"] = exact;
        line["d_h_approx"] = dual_tree;
        passed = dual_tree >= exact - 1e-12 && dual_tree <= (1.0 + eps) * exact + 1e-9;
        line["passed"] = passed;
        line["hard"] = true;
        state.record(line, passed, true);

        // Cached mode with fallback never undershoots the oracle.
        cfg = user_cfg;
        cfg.mode = hdist::ApproxMode::Cached;
        cfg.uncovered_policy = hdist::UncoveredPolicy::BruteForceFallback;
        const double cached = hdist::approximate_hausdorff(a, b, cfg, spec.seed).value;
        line = json{};
        line["suite"] = state.suite;
        line["check"] = "cached-overestimate";
        line["trial"] = t;
        line["d_h"] = exact;
        line["d_h_approx"] = cached;
        passed = cached >= exact - 1e-12;
        line["passed"] = passed;
        line["hard"] = true;
        state.record(line, passed, true);

        // Realized error against the worst-case bound, dual + guaranteed.
        cfg.mode = hdist::ApproxMode::Dual;
        cfg.backend = hdist::AnnBackend::KdTreeEps;
        const hdist::ErrorBoundReport report = hdist::error_report(a, b, cfg, spec.seed);
        line = json{};
        line["suite"] = state.suite;
        line["check"] = "worst-case-bound";
        line["trial"] = t;
        line["abs_error"] = report.abs_error;
        line["worst_case_bound"] = report.worst_case_bound;
        line["refined_bound"] = report.refined_bound;
        line["refined_covered"] = report.abs_error <= report.refined_bound;
        passed = report.abs_error <= report.worst_case_bound + 1e-12;
        line["passed"] = passed;
        line["hard"] = true;
        state.record(line, passed, true);
    }
}

void verify_invariance(const VerifyArgs& args, VerifyState& state) {
    const hdist::ApproxConfig cfg = to_config(args.run);
    const bool exact_backend = cfg.backend == hdist::AnnBackend::ExactScan;
    hdist::Tolerances tol;
    tol.approx_invariance = args.tol_invariance;

    std::optional<hdist::Rotation> fixed_rotation;
    if (!args.rotation_file.empty()) {
        const hdist::PointSet rows = hdist::read_csv(args.rotation_file);
        if (rows.size() != rows.dim())
            throw hdist::UsageError("--rotation-file: matrix must be square");
        fixed_rotation.emplace(hdist::Matrix(rows.data().transpose()));
    }

    for (Index t = 0; t < args.trials; ++t) {
        hdist::GenSpec spec = trial_spec(args, t, 2);
        if (fixed_rotation) spec.d = fixed_rotation->matrix().rows();
        const auto [a, b] = hdist::generate_pair(spec);
        hdist::detail::SampleStream stream(spec.seed ^ 0xabcdef12345ULL);

        hdist::Vector t_vec(spec.d);
        for (Index i = 0; i < spec.d; ++i) t_vec(i) = stream.uniform(-10.0, 10.0);
        state.record_report(
            hdist::check_translation_invariance(a, b, t_vec, cfg, spec.seed, tol), t, true);

        const hdist::Rotation rotation =
            fixed_rotation ? *fixed_rotation
                           : hdist::random_rotation(spec.d, stream.bits());
        state.record_report(
            hdist::check_rotation_invariance(a, b, rotation, cfg, spec.seed, tol), t, true);

        const double lambda = std::exp(stream.uniform(std::log(0.1), std::log(10.0)));
        state.record_report(hdist::check_uniform_scaling(a, b, lambda, cfg, spec.seed, tol),
                            t, true);

        // Condition number in [1, 8]; factors normalized so min = 1, which
        // keeps the (kappa - 1) * D_max bound provable.
        const double kappa = stream.uniform(1.0, 8.0);
        hdist::Vector factors(spec.d);
        for (Index i = 0; i < spec.d; ++i) factors(i) = stream.uniform(1.0, kappa);
        factors(0) = 1.0;
        if (spec.d > 1) factors(1) = kappa;
        state.record_report(
            hdist::check_nonuniform_scaling(a, b, hdist::DiagonalScale(factors), cfg,
                                            spec.seed),
            t, exact_backend);
    }
}

void verify_stability(const VerifyArgs& args, VerifyState& state) {
    const hdist::ApproxConfig cfg = to_config(args.run);
    for (Index t = 0; t < args.trials; ++t) {
        hdist::GenSpec spec = trial_spec(args, t, 1);
        spec.m = std::max<Index>(spec.m, 2);
        const auto [a, b] = hdist::generate_pair(spec);
        hdist::detail::SampleStream stream(spec.seed ^ 0x5a5a5a5aULL);

        hdist::Vector inserted(spec.d);
        for (Index i = 0; i < spec.d; ++i) inserted(i) = stream.uniform(-1.0, 2.0);
        state.record_report(hdist::check_insertion_stability(a, b, inserted, cfg, spec.seed),
                            t, true);

        const Index del_idx = static_cast<Index>(stream.bits() %
                                                 static_cast<std::uint64_t>(a.size()));
        state.record_report(hdist::check_deletion_stability(a, b, del_idx, cfg, spec.seed), t,
                            true);

        const Index move_idx = static_cast<Index>(stream.bits() %
                                                  static_cast<std::uint64_t>(a.size()));
        const double d_max = hdist::geometry_stats(a, b).d_max;
        hdist::Vector moved = a.point(move_idx);
        for (Index i = 0; i < spec.d; ++i)
            moved(i) += stream.uniform(-1.0, 1.0) * 0.01 * std::max(d_max, 1e-3);
        state.record_report(hdist::check_move_stability(a, b, move_idx, moved, cfg, spec.seed),
                            t, true);
    }
}

int cmd_verify(const VerifyArgs& args) {
    ReportSink sink(args.out_path);
    if (args.sizes.empty() || args.trials < 1)
        throw hdist::UsageError("verify: needs at least one size and one trial");
    for (Index s : args.sizes)
        if (s < 1) throw hdist::UsageError("verify: sizes must be >= 1");

    Timer timer;
    VerifyState state{sink, args.suite};
    if (args.suite == "bounds" || args.suite == "all") {
        state.suite = "bounds";
        verify_bounds(args, state);
    }
    if (args.suite == "invariance" || args.suite == "all") {
        state.suite = "invariance";
        verify_invariance(args, state);
    }
    if (args.suite == "stability" || args.suite == "all") {
        state.suite = "stability";
        verify_stability(args, state);
    }

    json summary;
    summary["summary"] = true;
    summary["suite"] = args.suite;
    summary["checks"] = state.checks;
    summary["failed"] = state.failed;
    summary["hard_failed"] = state.hard_failed;
    summary["wall_ms"] = timer.ms();
    sink.emit(summary);
    return state.hard_failed > 0 ? 3 : 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::vector<Index> sizes = {1000, 2000, 5000};
    Index d = 8;
    std::uint64_t oracle_pair_cap = 25000000;  // skip oracle above m*n pairs
    std::string out_path;
    RunOptions run;
};

int cmd_bench(const BenchArgs& args) {
    ReportSink sink(args.out_path);
    if (args.sizes.empty()) throw hdist::UsageError("bench: needs at least one size");
    const hdist::ApproxConfig cfg = to_config(args.run);
    std::uint64_t instance = 0;
    for (Index size : args.sizes) {
        if (size < 1) throw hdist::UsageError("bench: sizes must be >= 1");
        hdist::GenSpec spec;
        spec.family = hdist::GenFamily::UniformCube;
        spec.m = size;
        spec.n = size;
        spec.d = args.d;
        spec.seed = args.run.seed + 0x9e3779b97f4a7c15ULL * ++instance;
        const auto [a, b] = hdist::generate_pair(spec);

        Timer approx_timer;
        const hdist::ApproxResult result = hdist::approximate_hausdorff(a, b, cfg, spec.seed);
        const double approx_ms = approx_timer.ms();

        json row;
        row["command"] = "bench";
        row["m"] = spec.m;
        row["n"] = spec.n;
        row["d"] = spec.d;
        row["mode"] = mode_name(cfg.mode);
        row["backend"] = hdist::backend_name(cfg.backend);
        row["value"] = result.value;
        row["query_count"] = result.query_count;
        row["visit_count"] = result.visit_count;
        row["approx_wall_ms"] = approx_ms;
        const auto pairs = static_cast<std::uint64_t>(spec.m) *
                           static_cast<std::uint64_t>(spec.n);
        if (pairs <= args.oracle_pair_cap) {
            Timer oracle_timer;
            const hdist::HausdorffResult exact = hdist::hausdorff_exact(a, b);
            row["oracle_value"] = exact.value;
            row["oracle_wall_ms"] = oracle_timer.ms();
        } else {
            row["oracle_value"] = nullptr;
            row["oracle_wall_ms"] = nullptr;
        }
        sink.emit(row);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string family = "uniform";
    Index m = 100, n = 100, d = 4;
    Index clusters = 4;
    double spread = 0.05;
    double gap = 0.0;  // > 0 selects the well-separated generator
    std::uint64_t seed = 0;
    std::string out_a, out_b, format;
};

int cmd_gen(const GenArgs& args) {
    std::pair<hdist::PointSet, hdist::PointSet> pair = [&] {
        if (args.gap > 0.0)
            return hdist::well_separated_pair(args.d, args.gap, args.m, args.n, args.seed);
        hdist::GenSpec spec;
        if (args.family == "uniform") spec.family = hdist::GenFamily::UniformCube;
        else if (args.family == "clusters") spec.family = hdist::GenFamily::GaussianClusters;
        else if (args.family == "shell") spec.family = hdist::GenFamily::SphereShell;
        else throw hdist::UsageError("unknown --family: " + args.family);
        spec.m = args.m;
        spec.n = args.n;
        spec.d = args.d;
        spec.seed = args.seed;
        spec.clusters = args.clusters;
        spec.cluster_spread = args.spread;
        return hdist::generate_pair(spec);
    }();

    auto resolve = [&](const std::string& path) {
        if (!args.format.empty()) {
            const auto parsed = hdist::parse_format_name(args.format);
            if (!parsed) throw hdist::UsageError("unknown --format: " + args.format);
            return *parsed;
        }
        return hdist::format_from_path(path);
    };
    hdist::write_dataset(args.out_a, resolve(args.out_a), pair.first);
    hdist::write_dataset(args.out_b, resolve(args.out_b), pair.second);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hausdorff distance engine: exact oracle, ANN approximation, "
                 "error bounds and robustness verification"};
    app.require_subcommand(1);

    ComputeArgs compute_args;
    CLI::App* compute = app.add_subcommand("compute", "Approximate Hausdorff distance");
    compute->add_option("setA", compute_args.path_a, "First dataset file")->required();
    compute->add_option("setB", compute_args.path_b, "Second dataset file")->required();
    compute->add_option("--format", compute_args.format, "Dataset format override")
        ->check(CLI::IsMember({"fvecs", "csv", "jsonl"}));
    compute->add_option("--entity-a", compute_args.entity_a, "jsonl entity for set A");
    compute->add_option("--entity-b", compute_args.entity_b, "jsonl entity for set B");
    compute->add_flag("--oracle", compute_args.with_oracle,
                      "Also run the exact oracle and report the error");
    compute->add_flag("--error-report", compute_args.with_error_report,
                      "Emit a second line with every error-bound quantity");
    compute->add_option("--out", compute_args.out_path, "Mirror the report to a file");
    add_run_options(compute, compute_args.run);

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "Exact Hausdorff distance with witnesses");
    oracle->add_option("setA", oracle_args.path_a, "First dataset file")->required();
    oracle->add_option("setB", oracle_args.path_b, "Second dataset file")->required();
    oracle->add_option("--format", oracle_args.format, "Dataset format override")
        ->check(CLI::IsMember({"fvecs", "csv", "jsonl"}));
    oracle->add_option("--entity-a", oracle_args.entity_a, "jsonl entity for set A");
    oracle->add_option("--entity-b", oracle_args.entity_b, "jsonl entity for set B");
    oracle->add_option("--out", oracle_args.out_path, "Mirror the report to a file");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run bound/invariance/stability suites");
    verify->add_option("--suite", verify_args.suite, "Which suite to run")
        ->check(CLI::IsMember({"bounds", "invariance", "stability", "all"}));
    verify->add_option("--sizes", verify_args.sizes, "Per-set size caps for generated trials")
        ->delimiter(',');
    verify->add_option("--trials", verify_args.trials, "Trials per suite");
    verify->add_option("--tol-invariance", verify_args.tol_invariance,
                       "Relative invariance tolerance for approximate backends");
    verify->add_option("--rotation-file", verify_args.rotation_file,
                       "CSV d x d orthogonal matrix to use for rotation trials");
    verify->add_option("--out", verify_args.out_path, "Mirror the report stream to a file");
    add_run_options(verify, verify_args.run);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Oracle vs approximation timings");
    bench->add_option("--sizes", bench_args.sizes, "Per-set sizes (m = n)")->delimiter(',');
    bench->add_option("--d", bench_args.d, "Dimension");
    bench->add_option("--oracle-pair-cap", bench_args.oracle_pair_cap,
                      "Skip the oracle when m*n exceeds this");
    bench->add_option("--out", bench_args.out_path, "Mirror rows to a file");
    add_run_options(bench, bench_args.run);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Emit a synthetic dataset pair");
    gen->add_option("--family", gen_args.family, "uniform | clusters | shell")
        ->check(CLI::IsMember({"uniform", "clusters", "shell"}));
    gen->add_option("--m", gen_args.m, "Size of set A");
    gen->add_option("--n", gen_args.n, "Size of set B");
    gen->add_option("--d", gen_args.d, "Dimension");
    gen->add_option("--clusters", gen_args.clusters, "Cluster count (clusters family)");
    gen->add_option("--spread", gen_args.spread, "Cluster spread (clusters family)");
    gen->add_option("--gap", gen_args.gap,
                    "Generate a well-separated pair with this cluster gap instead");
    gen->add_option("--seed", gen_args.seed, "Deterministic seed");
    gen->add_option("--out-a", gen_args.out_a, "Output file for set A")->required();
    gen->add_option("--out-b", gen_args.out_b, "Output file for set B")->required();
    gen->add_option("--format", gen_args.format, "Dataset format override")
        ->check(CLI::IsMember({"fvecs", "csv", "jsonl"}));

    try {
        app.parse(argc, argv);
        if (compute->parsed()) return cmd_compute(compute_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hdist::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const hdist::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
