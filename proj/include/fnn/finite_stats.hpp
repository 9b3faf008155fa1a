#pragma once

#include <cstdint>
#include <vector>

#include "fnn/born.hpp"
#include "fnn/scenario.hpp"

namespace fnn {

// Four-photon coincidence counts, indexed like the distribution cells with
// uniform random inputs folded in: each trial lands in one of the 48
// (x,z,a,b,c) cells.
struct CountTable {
    std::array<std::uint64_t, JointDistribution::kCells> n{};
    std::uint64_t total = 0;

    std::uint64_t& at(int x, int z, int a, int b, int c) {
        return n[JointDistribution::index(x, z, a, b, c)];
    }
    std::uint64_t at(int x, int z, int a, int b, int c) const {
        return n[JointDistribution::index(x, z, a, b, c)];
    }
    std::uint64_t context_total(int x, int z) const;
};

struct EstimateReport {
    double r_cns_hat = 0.0;
    double r_nsc_hat = 0.0;
    double se_cns = 0.0;   // one bootstrap standard deviation
    double se_nsc = 0.0;
    double sigma_cns = 0.0;  // (r_hat - 3) / se; NaN when se == 0
    double sigma_nsc = 0.0;
    std::uint64_t total = 0;
    int resamples_used = 0;
    int resamples_skipped = 0;  // resamples that emptied an input context
};

// Multinomial draw of `total` trials from p(a,b,c|x,z)/4 (uniform inputs),
// bit-reproducible for a given seed.
CountTable sample_counts(const JointDistribution& d, std::uint64_t total,
                         std::uint64_t seed);

// Conditional relative frequencies per input context. Throws if a context has
// no events.
JointDistribution empirical_distribution(const CountTable& counts);

double sigma_distance(double r_hat, double se);

// Point estimates through the correlator/witness formulas on empirical
// frequencies; uncertainty from a nonparametric multinomial bootstrap with
// per-resample sub-seeds (resample i uses derive_subseed(seed, i)).
EstimateReport estimate_witnesses(const CountTable& counts, int bootstrap_resamples,
                                  std::uint64_t seed, bool parallel = true);
EstimateReport estimate_witnesses_serial(const CountTable& counts, int bootstrap_resamples,
                                         std::uint64_t seed);

// One simulated experiment per scenario: point i samples with
// derive_subseed(seed, 2i) and bootstraps with derive_subseed(seed, 2i+1).
std::vector<EstimateReport> sweep_experiment(const std::vector<Scenario>& scenarios,
                                             std::uint64_t total_per_point,
                                             int bootstrap_resamples, std::uint64_t seed,
                                             bool parallel = true);

}  // namespace fnn
