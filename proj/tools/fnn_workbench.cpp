// Command-line surface for the full-network-nonlocality workbench.
//
// Subcommands: theory, sweep, sample, verify-bound, inflate-check, spacetime.
// Exit codes: 0 success, 1 verdict or runtime failure, 2 usage/config error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnn/born.hpp"
#include "fnn/config.hpp"
#include "fnn/finite_stats.hpp"
#include "fnn/ns_models.hpp"
#include "fnn/rng.hpp"
#include "fnn/spacetime.hpp"
#include "fnn/witness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Path to a JSON config file");
    cmd->add_option("--seed", opts.seed, "Override the configured seed");
    cmd->add_option("--out", opts.out_dir, "Directory for output files");
    cmd->add_option("--format", opts.format, "File output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

fnn::WorkbenchConfig resolve_config(const CommonOptions& opts) {
    fnn::WorkbenchConfig config = opts.config_path.empty()
                                      ? fnn::default_workbench_config()
                                      : fnn::load_workbench_config(opts.config_path);
    if (opts.seed) config.statistics.seed = *opts.seed;
    return config;
}

// Fixed-width scientific notation with nine significant digits keeps the CSV
// outputs diff-stable.
std::string num(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.8e", v);
    return buffer;
}

// Collects the files a command produces and finishes with the resolved config
// and a run report next to them.
class OutputWriter {
public:
    OutputWriter(const CommonOptions& opts, const fnn::WorkbenchConfig& config,
                 std::string command)
        : config_(config), command_(std::move(command)), start_(clock::now()) {
        if (!opts.out_dir.empty()) {
            dir_ = opts.out_dir;
            fs::create_directories(*dir_);
        }
    }

    bool enabled() const { return dir_.has_value(); }

    void write(const std::string& name, const std::string& content) {
        if (!dir_) return;
        std::ofstream out(*dir_ / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file: " + name);
        out << content;
        names_.push_back(name);
    }

    void finish() {
        if (!dir_) return;
        write("resolved_config.json", fnn::dump_resolved_config(config_));
        const double ms = std::chrono::duration<double, std::milli>(clock::now() - start_).count();
        char hash[32];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(fnn::config_hash(config_)));
        json report = {{"command", command_},
                       {"config_hash", hash},
                       {"outputs", names_},
                       {"wall_time_ms", ms}};
        std::ofstream out(*dir_ / "run_report.json", std::ios::binary);
        out << report.dump(2) << "\n";
    }

private:
    using clock = std::chrono::steady_clock;
    std::optional<fs::path> dir_;
    fnn::WorkbenchConfig config_;
    std::string command_;
    std::vector<std::string> names_;
    clock::time_point start_;
};

struct SweepOptions {
    std::string axis = "alpha1";
    int points = 9;
    std::string from = "0";
    std::string to = "0.5pi";
};

struct TheoryRow {
    double alpha1, alpha2, r_cns, r_nsc;
};

std::string theory_rows_csv(const std::vector<TheoryRow>& rows) {
    std::string text = "alpha1,alpha2,r_cns,r_nsc,violated_cns,violated_nsc,fnn_certified\n";
    for (const TheoryRow& r : rows) {
        const fnn::WitnessReport v = fnn::fnn_verdict(r.r_cns, r.r_nsc);
        text += num(r.alpha1) + "," + num(r.alpha2) + "," + num(r.r_cns) + "," +
                num(r.r_nsc) + "," + (v.violated_cns ? "1" : "0") + "," +
                (v.violated_nsc ? "1" : "0") + "," + (v.fnn_certified ? "1" : "0") + "\n";
    }
    return text;
}

json theory_rows_json(const std::vector<TheoryRow>& rows) {
    json out = json::array();
    for (const TheoryRow& r : rows) {
        const fnn::WitnessReport v = fnn::fnn_verdict(r.r_cns, r.r_nsc);
        out.push_back({{"alpha1", r.alpha1},
                       {"alpha2", r.alpha2},
                       {"r_cns", r.r_cns},
                       {"r_nsc", r.r_nsc},
                       {"violated_cns", v.violated_cns},
                       {"violated_nsc", v.violated_nsc},
                       {"fnn_certified", v.fnn_certified}});
    }
    return out;
}

int cmd_theory(const CommonOptions& opts) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "theory");

    const fnn::Scenario s = config.make_scenario();
    const fnn::CorrelatorSet cs = fnn::correlators(fnn::compute_distribution(s));
    const fnn::WitnessReport report = fnn::fnn_verdict(fnn::eval_r_cns(cs), fnn::eval_r_nsc(cs));

    std::printf("R_C-NS = %.6f\n", report.r_cns);
    std::printf("R_NS-C = %.6f\n", report.r_nsc);
    std::printf("violated: C-NS %s, NS-C %s\n", report.violated_cns ? "yes" : "no",
                report.violated_nsc ? "yes" : "no");
    std::printf("FNN certified: %s\n", report.fnn_certified ? "yes" : "no");

    const std::vector<TheoryRow> rows = {
        {config.scenario.alpha1, config.scenario.alpha2, report.r_cns, report.r_nsc}};
    if (opts.format == "json")
        out.write("theory.json", theory_rows_json(rows).dump(2) + "\n");
    else
        out.write("theory.csv", theory_rows_csv(rows));
    out.finish();
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const SweepOptions& sweep) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "sweep");

    const double from = fnn::parse_angle(json(sweep.from), "--from");
    const double to = fnn::parse_angle(json(sweep.to), "--to");
    if (sweep.points < 1) throw fnn::ConfigError("--points must be >= 1");
    if (to < from) throw fnn::ConfigError("grid bounds reversed: --from exceeds --to");
    if (sweep.axis != "alpha1" && sweep.axis != "alpha2")
        throw fnn::ConfigError("--axis must be alpha1 or alpha2");

    std::vector<double> grid(sweep.points);
    for (int i = 0; i < sweep.points; ++i)
        grid[i] = sweep.points == 1 ? from : from + (to - from) * i / (sweep.points - 1);

    std::vector<TheoryRow> rows(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
        fnn::Scenario s = config.make_scenario();
        if (sweep.axis == "alpha1")
            s.source1.amplitude_angle = grid[i];
        else
            s.source2.amplitude_angle = grid[i];
        const fnn::CorrelatorSet cs = fnn::correlators(fnn::compute_distribution(s));
        rows[i] = {s.source1.amplitude_angle, s.source2.amplitude_angle,
                   fnn::eval_r_cns(cs), fnn::eval_r_nsc(cs)};
    }

    const std::string csv = theory_rows_csv(rows);
    std::fputs(csv.c_str(), stdout);
    if (opts.format == "json")
        out.write("sweep.json", theory_rows_json(rows).dump(2) + "\n");
    else
        out.write("sweep.csv", csv);
    out.finish();
    return 0;
}

int cmd_sample(const CommonOptions& opts) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "sample");

    if (config.statistics.total < 48)
        std::fprintf(stderr,
                     "warning: only %llu events over 48 outcome cells; empty input "
                     "contexts are possible\n",
                     static_cast<unsigned long long>(config.statistics.total));

    const fnn::JointDistribution d = fnn::compute_distribution(config.make_scenario());
    const fnn::CountTable counts =
        fnn::sample_counts(d, config.statistics.total, config.statistics.seed);
    const fnn::EstimateReport est =
        fnn::estimate_witnesses(counts, config.statistics.bootstrap_resamples,
                                fnn::derive_subseed(config.statistics.seed, 1));

    std::printf("R_C-NS = %.4f +- %.4f (sigma above bound: %.2f)\n", est.r_cns_hat,
                est.se_cns, est.sigma_cns);
    std::printf("R_NS-C = %.4f +- %.4f (sigma above bound: %.2f)\n", est.r_nsc_hat,
                est.se_nsc, est.sigma_nsc);

    std::string csv = "x,z,a,b,c,count\n";
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        csv += std::to_string(x) + "," + std::to_string(z) + "," +
                               std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + "," +
                               std::to_string(counts.at(x, z, a, b, c)) + "\n";
    out.write("counts.csv", csv);

    json est_json = {{"r_cns_hat", est.r_cns_hat},
                     {"r_nsc_hat", est.r_nsc_hat},
                     {"se_cns", est.se_cns},
                     {"se_nsc", est.se_nsc},
                     {"sigma_cns", est.sigma_cns},
                     {"sigma_nsc", est.sigma_nsc},
                     {"total", est.total},
                     {"resamples_used", est.resamples_used},
                     {"resamples_skipped", est.resamples_skipped},
                     {"seed", config.statistics.seed}};
    out.write("estimate.json", est_json.dump(2) + "\n");
    out.finish();
    return 0;
}

int cmd_verify_bound(const CommonOptions& opts, const std::string& which) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "verify-bound");
    const fnn::OptimizationConfig& o = config.optimization;
    const double ceiling = 3.0 + 1e-7;

    bool exceeded = false;
    json dump;
    if (which == "both" || which == "cns") {
        const fnn::CnsSeesawResult r = fnn::maximize_witness_cns(
            o.n_lambda, o.restarts, o.iters, config.statistics.seed);
        std::printf("C-NS  max over hybrid models: %.12f (restart %d%s)\n",
                    r.outcome.best_value, r.outcome.best_restart,
                    r.outcome.best_converged ? "" : ", not converged");
        exceeded = exceeded || r.outcome.best_value > ceiling;
        dump["cns"] = {{"best_value", r.outcome.best_value},
                       {"best_restart", r.outcome.best_restart},
                       {"converged", r.outcome.best_converged},
                       {"model", fnn::cns_model_to_json(r.best_model)}};
    }
    if (which == "both" || which == "nsc") {
        const fnn::NscSeesawResult r = fnn::maximize_witness_nsc(
            o.n_lambda, o.restarts, o.iters, config.statistics.seed);
        std::printf("NS-C  max over hybrid models: %.12f (restart %d%s)\n",
                    r.outcome.best_value, r.outcome.best_restart,
                    r.outcome.best_converged ? "" : ", not converged");
        exceeded = exceeded || r.outcome.best_value > ceiling;
        dump["nsc"] = {{"best_value", r.outcome.best_value},
                       {"best_restart", r.outcome.best_restart},
                       {"converged", r.outcome.best_converged},
                       {"model", fnn::nsc_model_to_json(r.best_model)}};
    }
    std::printf("bound 3 respected: %s\n", exceeded ? "NO" : "yes");
    out.write("verify_bound.json", dump.dump(2) + "\n");
    out.finish();
    return exceeded ? 1 : 0;
}

int cmd_inflate_check(const CommonOptions& opts, int models) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "inflate-check");
    if (models < 1) throw fnn::ConfigError("--models must be >= 1");

    double max_identity = 0.0, max_factorization = 0.0, max_decomposition = 0.0;
    double min_slack = 1e300;
    for (int i = 0; i < models; ++i) {
        const fnn::CnsModel m = fnn::random_cns_model(
            config.optimization.n_lambda, fnn::derive_subseed(config.statistics.seed, i));
        const fnn::InflationReport r = fnn::inflation_identities(m);
        max_identity = std::max(max_identity, r.identity_residual);
        max_factorization = std::max(max_factorization, r.factorization_residual);
        max_decomposition = std::max(max_decomposition, r.decomposition_residual);
        for (int b = 0; b < 3; ++b)
            if (r.t_defined[b]) min_slack = std::min(min_slack, r.t_bound_slack[b]);
    }

    const bool pass =
        max_identity <= 1e-12 && max_factorization <= 1e-12 && max_decomposition <= 1e-10;
    std::printf("models checked: %d\n", models);
    std::printf("max |<A1(C1'-C1)>|            = %.3e\n", max_identity);
    std::printf("max factorization residual    = %.3e\n", max_factorization);
    std::printf("max decomposition residual    = %.3e\n", max_decomposition);
    std::printf("min per-outcome bound slack   = %.3e\n", min_slack);
    std::printf("identities hold: %s\n", pass ? "yes" : "NO");

    json report = {{"models", models},
                   {"max_identity_residual", max_identity},
                   {"max_factorization_residual", max_factorization},
                   {"max_decomposition_residual", max_decomposition},
                   {"min_bound_slack", min_slack},
                   {"pass", pass}};
    out.write("inflate_check.json", report.dump(2) + "\n");
    out.finish();
    return pass ? 0 : 1;
}

int cmd_spacetime(const CommonOptions& opts, std::optional<double> margin) {
    const fnn::WorkbenchConfig config = resolve_config(opts);
    OutputWriter out(opts, config, "spacetime");
    const fnn::SpacetimeConfig& st = config.spacetime;

    const fnn::AuditReport report =
        fnn::audit_all(st.geometry, st.delays, st.events, st.pairs, st.fiber_speed,
                       st.light_speed, margin.value_or(st.sigma_margin));

    std::printf("%-10s %-10s %10s %14s %16s %10s\n", "event", "event", "d (m)",
                "dt (ns)", "ds^2 (m^2)", "spacelike");
    std::string csv =
        "event_a,event_b,d_m,sigma_d_m,dt_ns,sigma_dt_ns,ds2_m2,sigma_ds2_m2,spacelike\n";
    for (const fnn::SeparationResult& r : report.results) {
        std::printf("%-10s %-10s %7.0f+-%.0f %9.2f+-%.2f %10.0f+-%.0f %10s\n",
                    r.event_a.c_str(), r.event_b.c_str(), r.distance.value,
                    r.distance.sigma, r.delta_t.value, r.delta_t.sigma, r.interval2.value,
                    r.interval2.sigma, r.spacelike ? "yes" : "NO");
        csv += r.event_a + "," + r.event_b + "," + num(r.distance.value) + "," +
               num(r.distance.sigma) + "," + num(r.delta_t.value) + "," +
               num(r.delta_t.sigma) + "," + num(r.interval2.value) + "," +
               num(r.interval2.sigma) + "," + (r.spacelike ? "1" : "0") + "\n";
    }
    std::printf("all pairs space-like separated: %s\n",
                report.all_spacelike ? "yes" : "NO");
    out.write("spacetime.csv", csv);
    out.finish();
    return report.all_spacelike ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and verification workbench for full network nonlocality in "
                 "the entanglement-swapping network"};
    app.require_subcommand(1);

    CommonOptions opts;
    SweepOptions sweep;
    std::string which = "both";
    int models = 100;
    std::optional<double> margin;

    CLI::App* theory = app.add_subcommand("theory", "Witness values for one scenario");
    add_common(theory, opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Witness curve over a source angle");
    add_common(sweep_cmd, opts);
    sweep_cmd->add_option("--axis", sweep.axis, "Swept angle: alpha1 or alpha2");
    sweep_cmd->add_option("--points", sweep.points, "Number of grid points");
    sweep_cmd->add_option("--from", sweep.from, "Grid start (radians or e.g. 0.25pi)");
    sweep_cmd->add_option("--to", sweep.to, "Grid end");

    CLI::App* sample = app.add_subcommand("sample", "Finite-statistics experiment");
    add_common(sample, opts);

    CLI::App* verify = app.add_subcommand("verify-bound",
                                          "Maximize the witnesses over hybrid models");
    add_common(verify, opts);
    verify->add_option("--which", which, "cns, nsc or both")
        ->check(CLI::IsMember({"cns", "nsc", "both"}));

    CLI::App* inflate = app.add_subcommand("inflate-check",
                                           "Duplicate-source identity checks");
    add_common(inflate, opts);
    inflate->add_option("--models", models, "Number of sampled models");

    CLI::App* spacetime = app.add_subcommand("spacetime", "Space-like separation audit");
    add_common(spacetime, opts);
    spacetime->add_option("--sigma-margin", margin,
                          "Require ds^2 - margin * sigma > 0 for the verdict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(theory)) return cmd_theory(opts);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(opts, sweep);
        if (app.got_subcommand(sample)) return cmd_sample(opts);
        if (app.got_subcommand(verify)) return cmd_verify_bound(opts, which);
        if (app.got_subcommand(inflate)) return cmd_inflate_check(opts, models);
        if (app.got_subcommand(spacetime)) return cmd_spacetime(opts, margin);
    } catch (const fnn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
