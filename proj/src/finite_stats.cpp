#include "fnn/finite_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnn/rng.hpp"
#include "fnn/witness.hpp"

namespace fnn {

namespace {

constexpr int kCells = JointDistribution::kCells;

// Draws `total` multinomial samples from the 48-cell weight vector.
std::array<std::uint64_t, kCells> multinomial(const std::array<double, kCells>& weights,
                                              std::uint64_t total, Xoshiro256pp& rng) {
    std::array<double, kCells> cumulative{};
    double running = 0.0;
    for (int i = 0; i < kCells; ++i) {
        running += weights[i];
        cumulative[i] = running;
    }
    const double norm = running;

    std::array<std::uint64_t, kCells> out{};
    for (std::uint64_t t = 0; t < total; ++t) {
        const double u = rng.uniform01() * norm;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        int cell = static_cast<int>(it - cumulative.begin());
        if (cell >= kCells) cell = kCells - 1;
        ++out[cell];
    }
    return out;
}

struct WitnessPair {
    double cns = 0.0;
    double nsc = 0.0;
};

// Frequencies -> correlators -> witnesses; throws on an empty context.
WitnessPair estimate_from_cells(const std::array<std::uint64_t, kCells>& cells) {
    JointDistribution d;
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            std::uint64_t ctx = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        ctx += cells[JointDistribution::index(x, z, a, b, c)];
            if (ctx == 0) throw std::runtime_error("empty input context in count table");
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        d.at(x, z, a, b, c) =
                            static_cast<double>(cells[JointDistribution::index(x, z, a, b, c)]) /
                            static_cast<double>(ctx);
        }
    }
    const CorrelatorSet cs = correlators(d);
    return WitnessPair{eval_r_cns(cs), eval_r_nsc(cs)};
}

double stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

EstimateReport estimate_impl(const CountTable& counts, int bootstrap_resamples,
                             std::uint64_t seed, bool parallel) {
    if (counts.total == 0) throw std::invalid_argument("count table is empty");
    if (bootstrap_resamples < 100)
        throw std::invalid_argument("bootstrap_resamples must be >= 100");

    const WitnessPair point = estimate_from_cells(counts.n);

    std::array<double, kCells> weights{};
    for (int i = 0; i < kCells; ++i)
        weights[i] = static_cast<double>(counts.n[i]) / static_cast<double>(counts.total);

    // nan marks resamples that emptied a context; they are dropped from the
    // spread. At experimental totals this never triggers.
    std::vector<double> cns(bootstrap_resamples), nsc(bootstrap_resamples);
    auto run_one = [&](int i) {
        Xoshiro256pp rng(derive_subseed(seed, static_cast<std::uint64_t>(i)));
        const auto cells = multinomial(weights, counts.total, rng);
        try {
            const WitnessPair w = estimate_from_cells(cells);
            cns[i] = w.cns;
            nsc[i] = w.nsc;
        } catch (const std::runtime_error&) {
            cns[i] = std::numeric_limits<double>::quiet_NaN();
            nsc[i] = std::numeric_limits<double>::quiet_NaN();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < bootstrap_resamples; ++i) run_one(i);
    } else {
        for (int i = 0; i < bootstrap_resamples; ++i) run_one(i);
    }

    std::vector<double> cns_ok, nsc_ok;
    cns_ok.reserve(cns.size());
    nsc_ok.reserve(nsc.size());
    int skipped = 0;
    for (int i = 0; i < bootstrap_resamples; ++i) {
        if (std::isnan(cns[i])) {
            ++skipped;
            continue;
        }
        cns_ok.push_back(cns[i]);
        nsc_ok.push_back(nsc[i]);
    }

    EstimateReport report;
    report.r_cns_hat = point.cns;
    report.r_nsc_hat = point.nsc;
    report.se_cns = stddev(cns_ok);
    report.se_nsc = stddev(nsc_ok);
    report.sigma_cns = sigma_distance(point.cns, report.se_cns);
    report.sigma_nsc = sigma_distance(point.nsc, report.se_nsc);
    report.total = counts.total;
    report.resamples_used = static_cast<int>(cns_ok.size());
    report.resamples_skipped = skipped;
    return report;
}

}  // namespace

std::uint64_t CountTable::context_total(int x, int z) const {
    std::uint64_t t = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c) t += at(x, z, a, b, c);
    return t;
}

CountTable sample_counts(const JointDistribution& d, std::uint64_t total,
                         std::uint64_t seed) {
    if (total == 0) throw std::invalid_argument("total must be >= 1");
    const NoSignalingReport ns = validate_no_signaling(d, 1e-6);
    if (ns.normalization_deviation > 1e-6 || ns.min_entry < -1e-6)
        throw std::invalid_argument("sample_counts: malformed distribution");

    std::array<double, kCells> weights{};
    for (int i = 0; i < kCells; ++i) weights[i] = d.p[i] * 0.25;  // uniform inputs

    Xoshiro256pp rng(seed);
    CountTable counts;
    counts.n = multinomial(weights, total, rng);
    counts.total = total;
    return counts;
}

JointDistribution empirical_distribution(const CountTable& counts) {
    JointDistribution d;
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            const std::uint64_t ctx = counts.context_total(x, z);
            if (ctx == 0) throw std::runtime_error("empty input context in count table");
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        d.at(x, z, a, b, c) = static_cast<double>(counts.at(x, z, a, b, c)) /
                                              static_cast<double>(ctx);
        }
    }
    return d;
}

double sigma_distance(double r_hat, double se) {
    if (se <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (r_hat - kWitnessBound) / se;
}

EstimateReport estimate_witnesses(const CountTable& counts, int bootstrap_resamples,
                                  std::uint64_t seed, bool parallel) {
    return estimate_impl(counts, bootstrap_resamples, seed, parallel);
}

EstimateReport estimate_witnesses_serial(const CountTable& counts, int bootstrap_resamples,
                                         std::uint64_t seed) {
    return estimate_impl(counts, bootstrap_resamples, seed, false);
}

std::vector<EstimateReport> sweep_experiment(const std::vector<Scenario>& scenarios,
                                             std::uint64_t total_per_point,
                                             int bootstrap_resamples, std::uint64_t seed,
                                             bool parallel) {
    if (scenarios.empty()) throw std::invalid_argument("sweep_experiment: empty grid");
    if (total_per_point == 0) throw std::invalid_argument("total must be >= 1");

    std::vector<EstimateReport> reports(scenarios.size());
    auto run_point = [&](long i) {
        const JointDistribution d = compute_distribution(scenarios[i]);
        const CountTable counts = sample_counts(
            d, total_per_point, derive_subseed(seed, 2 * static_cast<std::uint64_t>(i)));
        // Bootstrap stays serial here; the sweep already spreads across cores.
        reports[i] = estimate_witnesses_serial(
            counts, bootstrap_resamples, derive_subseed(seed, 2 * static_cast<std::uint64_t>(i) + 1));
    };
    const long n = static_cast<long>(scenarios.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) run_point(i);
    } else {
        for (long i = 0; i < n; ++i) run_point(i);
    }
    return reports;
}

}  // namespace fnn
