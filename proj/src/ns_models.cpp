#include "fnn/ns_models.hpp"

#include <cmath>
#include <stdexcept>

#include "fnn/rng.hpp"
#include "fnn/simplex.hpp"
#include "fnn/witness.hpp"

namespace fnn {

namespace {

// The four deterministic single-party responses input -> output.
constexpr int kResponses[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

void check_shapes(std::size_t weights, std::size_t responses, std::size_t boxes) {
    if (weights == 0 || weights != responses || weights != boxes)
        throw std::invalid_argument("model shape mismatch across weights/responses/boxes");
}

void record(ModelValidation& v, const char* name, double deviation, double tol) {
    if (deviation > v.max_violation) v.max_violation = deviation;
    if (deviation > tol) {
        v.pass = false;
        v.violations.push_back({name, deviation});
    }
}

// Cell weights of the witness with the quadratic term's scalar factor frozen:
// W(p) = sum_cells w[cell] p[cell] reproduces the witness once the model's
// own scalar equals `frozen`. Marginal correlators enter input-averaged.
std::array<double, JointDistribution::kCells> witness_cell_weights(WitnessKind kind,
                                                                   double frozen) {
    std::array<double, JointDistribution::kCells> w{};
    auto sgn = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };

    auto add_abc = [&](int x, int y, int z, double coef) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 2; ++c)
                    w[JointDistribution::index(x, z, a, b, c)] +=
                        coef * sgn(a + c) * b_sign_weight(y, b);
    };
    auto add_b = [&](int y, double coef) {
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 2; ++c)
                            w[JointDistribution::index(x, z, a, b, c)] +=
                                coef * b_sign_weight(y, b) / 4.0;
    };
    auto add_ab = [&](int x, int y, double coef) {
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        w[JointDistribution::index(x, z, a, b, c)] +=
                            coef * sgn(a) * b_sign_weight(y, b) / 2.0;
    };
    auto add_bc = [&](int y, int z, double coef) {
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        w[JointDistribution::index(x, z, a, b, c)] +=
                            coef * sgn(c) * b_sign_weight(y, b) / 2.0;
    };
    auto add_c = [&](int z, double coef) {
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        w[JointDistribution::index(x, z, a, b, c)] += coef * sgn(c) / 2.0;
    };
    auto add_a = [&](int x, double coef) {
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        w[JointDistribution::index(x, z, a, b, c)] += coef * sgn(a) / 2.0;
    };

    add_abc(0, 1, 0, 2.0);
    add_abc(0, 1, 1, -2.0);
    add_b(0, -1.0);
    if (kind == WitnessKind::cns) {
        add_abc(1, 0, 0, 2.0);
        add_abc(1, 0, 1, 1.0);
        add_ab(1, 0, frozen);
        add_bc(0, 0, frozen);
        add_c(0, -frozen);
    } else {
        add_abc(1, 0, 0, 1.0);
        add_abc(1, 0, 1, 2.0);
        add_ab(1, 0, frozen);
        add_bc(0, 1, frozen);
        add_c(0, frozen);
        add_c(1, -frozen);
        add_a(1, -frozen);
    }
    return w;
}

int cns_var(int lambda, int b, int c, int z) { return lambda * 12 + b * 4 + c * 2 + z; }
int nsc_var(int lambda, int a, int b, int x) { return lambda * 12 + (a * 3 + b) * 2 + x; }

// LP over all boxes of a CNS model with uniform weights and enumerated
// responses; the shared Charlie marginal is implicit (tied to lambda 0).
LinearProgram build_cns_seesaw_lp(int n, const std::array<double, 48>& w) {
    LinearProgram lp;
    lp.num_vars = 12 * n;
    lp.objective.assign(lp.num_vars, 0.0);
    const double weight = 1.0 / n;
    for (int l = 0; l < n; ++l) {
        const int* resp = kResponses[l % 4];
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z) {
                    double coef = 0.0;
                    for (int x = 0; x < 2; ++x)
                        coef += w[JointDistribution::index(x, z, resp[x], b, c)];
                    lp.objective[cns_var(l, b, c, z)] = weight * coef;
                }
    }
    for (int l = 0; l < n; ++l) {
        for (int z = 0; z < 2; ++z) {  // normalization per input
            std::vector<double> row(lp.num_vars, 0.0);
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 2; ++c) row[cns_var(l, b, c, z)] = 1.0;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(1.0);
        }
        for (int b = 0; b < 2; ++b) {  // Bob marginal independent of z
            std::vector<double> row(lp.num_vars, 0.0);
            for (int c = 0; c < 2; ++c) {
                row[cns_var(l, b, c, 0)] = 1.0;
                row[cns_var(l, b, c, 1)] = -1.0;
            }
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(0.0);
        }
        if (l > 0) {  // Charlie marginal shared with lambda 0
            for (int z = 0; z < 2; ++z) {
                std::vector<double> row(lp.num_vars, 0.0);
                for (int b = 0; b < 3; ++b) {
                    row[cns_var(l, b, 0, z)] = 1.0;
                    row[cns_var(0, b, 0, z)] -= 1.0;
                }
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(0.0);
            }
        }
    }
    return lp;
}

LinearProgram build_nsc_seesaw_lp(int n, const std::array<double, 48>& w) {
    LinearProgram lp;
    lp.num_vars = 12 * n;
    lp.objective.assign(lp.num_vars, 0.0);
    const double weight = 1.0 / n;
    for (int l = 0; l < n; ++l) {
        const int* resp = kResponses[l % 4];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x = 0; x < 2; ++x) {
                    double coef = 0.0;
                    for (int z = 0; z < 2; ++z)
                        coef += w[JointDistribution::index(x, z, a, b, resp[z])];
                    lp.objective[nsc_var(l, a, b, x)] = weight * coef;
                }
    }
    for (int l = 0; l < n; ++l) {
        for (int x = 0; x < 2; ++x) {
            std::vector<double> row(lp.num_vars, 0.0);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b) row[nsc_var(l, a, b, x)] = 1.0;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(1.0);
        }
        for (int b = 0; b < 2; ++b) {  // Bob marginal independent of x
            std::vector<double> row(lp.num_vars, 0.0);
            for (int a = 0; a < 2; ++a) {
                row[nsc_var(l, a, b, 0)] = 1.0;
                row[nsc_var(l, a, b, 1)] = -1.0;
            }
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(0.0);
        }
        if (l > 0) {  // Alice marginal shared with lambda 0
            for (int x = 0; x < 2; ++x) {
                std::vector<double> row(lp.num_vars, 0.0);
                for (int b = 0; b < 3; ++b) {
                    row[nsc_var(l, 0, b, x)] = 1.0;
                    row[nsc_var(0, 0, b, x)] -= 1.0;
                }
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(0.0);
            }
        }
    }
    return lp;
}

CnsModel extract_cns_model(int n, const std::vector<double>& x) {
    CnsModel m;
    m.weights.assign(n, 1.0 / n);
    m.alice_response.resize(n);
    m.boxes.resize(n);
    for (int l = 0; l < n; ++l) {
        m.alice_response[l] = {kResponses[l % 4][0], kResponses[l % 4][1]};
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z)
                    m.boxes[l].q[b][c][z] = clamp0(x[cns_var(l, b, c, z)]);
    }
    for (int c = 0; c < 2; ++c)
        for (int z = 0; z < 2; ++z) {
            double t = 0.0;
            for (int b = 0; b < 3; ++b) t += m.boxes[0].q[b][c][z];
            m.charlie_marginal[c][z] = t;
        }
    return m;
}

NscModel extract_nsc_model(int n, const std::vector<double>& x) {
    NscModel m;
    m.weights.assign(n, 1.0 / n);
    m.charlie_response.resize(n);
    m.boxes.resize(n);
    for (int l = 0; l < n; ++l) {
        m.charlie_response[l] = {kResponses[l % 4][0], kResponses[l % 4][1]};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x_in = 0; x_in < 2; ++x_in)
                    m.boxes[l].q[a][b][x_in] = clamp0(x[nsc_var(l, a, b, x_in)]);
    }
    for (int a = 0; a < 2; ++a)
        for (int x_in = 0; x_in < 2; ++x_in) {
            double t = 0.0;
            for (int b = 0; b < 3; ++b) t += m.boxes[0].q[a][b][x_in];
            m.alice_marginal[a][x_in] = t;
        }
    return m;
}

void check_seesaw_args(int n_lambda, int restarts, int iters) {
    if (n_lambda < 1) throw std::invalid_argument("n_lambda must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (iters < 1) throw std::invalid_argument("iters must be >= 1");
}

double initial_frozen(int restart, std::uint64_t seed) {
    Xoshiro256pp rng(derive_subseed(seed, static_cast<std::uint64_t>(restart)));
    return rng.uniform(-1.0, 1.0);
}

std::vector<double> dirichlet_flat(Xoshiro256pp& rng, int n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& v : w) {
        v = -std::log(1.0 - rng.uniform01());
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

}  // namespace

ModelValidation validate_model(const CnsModel& m, double tol) {
    check_shapes(m.weights.size(), m.alice_response.size(), m.boxes.size());
    ModelValidation v;

    double wsum = 0.0, wneg = 0.0;
    for (double w : m.weights) {
        wsum += w;
        if (w < 0.0) wneg = std::max(wneg, -w);
    }
    record(v, "weight-nonnegative", wneg, tol);
    record(v, "weight-normalization", std::abs(wsum - 1.0), tol);

    for (const auto& resp : m.alice_response)
        for (int x = 0; x < 2; ++x)
            if (resp[x] != 0 && resp[x] != 1)
                throw std::invalid_argument("model shape mismatch: response not binary");

    double neg = 0.0, norm = 0.0, bob = 0.0, shared = 0.0;
    for (const NsBox& box : m.boxes) {
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z)
                    if (box.q[b][c][z] < 0.0) neg = std::max(neg, -box.q[b][c][z]);
        for (int z = 0; z < 2; ++z) {
            double t = 0.0;
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 2; ++c) t += box.q[b][c][z];
            norm = std::max(norm, std::abs(t - 1.0));
        }
        for (int b = 0; b < 3; ++b) {
            const double m0 = box.q[b][0][0] + box.q[b][1][0];
            const double m1 = box.q[b][0][1] + box.q[b][1][1];
            bob = std::max(bob, std::abs(m0 - m1));
        }
        for (int c = 0; c < 2; ++c)
            for (int z = 0; z < 2; ++z) {
                double t = 0.0;
                for (int b = 0; b < 3; ++b) t += box.q[b][c][z];
                shared = std::max(shared, std::abs(t - m.charlie_marginal[c][z]));
            }
    }
    record(v, "box-nonnegative", neg, tol);
    record(v, "box-normalization", norm, tol);
    record(v, "bob-marginal-z-independence", bob, tol);
    record(v, "charlie-marginal-shared", shared, tol);
    return v;
}

ModelValidation validate_model(const NscModel& m, double tol) {
    check_shapes(m.weights.size(), m.charlie_response.size(), m.boxes.size());
    ModelValidation v;

    double wsum = 0.0, wneg = 0.0;
    for (double w : m.weights) {
        wsum += w;
        if (w < 0.0) wneg = std::max(wneg, -w);
    }
    record(v, "weight-nonnegative", wneg, tol);
    record(v, "weight-normalization", std::abs(wsum - 1.0), tol);

    for (const auto& resp : m.charlie_response)
        for (int z = 0; z < 2; ++z)
            if (resp[z] != 0 && resp[z] != 1)
                throw std::invalid_argument("model shape mismatch: response not binary");

    double neg = 0.0, norm = 0.0, bob = 0.0, shared = 0.0;
    for (const AbBox& box : m.boxes) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x = 0; x < 2; ++x)
                    if (box.q[a][b][x] < 0.0) neg = std::max(neg, -box.q[a][b][x]);
        for (int x = 0; x < 2; ++x) {
            double t = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b) t += box.q[a][b][x];
            norm = std::max(norm, std::abs(t - 1.0));
        }
        for (int b = 0; b < 3; ++b) {
            const double m0 = box.q[0][b][0] + box.q[1][b][0];
            const double m1 = box.q[0][b][1] + box.q[1][b][1];
            bob = std::max(bob, std::abs(m0 - m1));
        }
        for (int a = 0; a < 2; ++a)
            for (int x = 0; x < 2; ++x) {
                double t = 0.0;
                for (int b = 0; b < 3; ++b) t += box.q[a][b][x];
                shared = std::max(shared, std::abs(t - m.alice_marginal[a][x]));
            }
    }
    record(v, "box-nonnegative", neg, tol);
    record(v, "box-normalization", norm, tol);
    record(v, "bob-marginal-x-independence", bob, tol);
    record(v, "alice-marginal-shared", shared, tol);
    return v;
}

JointDistribution model_to_distribution(const CnsModel& m) {
    check_shapes(m.weights.size(), m.alice_response.size(), m.boxes.size());
    JointDistribution d;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (int x = 0; x < 2; ++x) {
            const int a = m.alice_response[l][x];
            for (int z = 0; z < 2; ++z)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c)
                        d.at(x, z, a, b, c) += m.weights[l] * m.boxes[l].q[b][c][z];
        }
    }
    return d;
}

JointDistribution model_to_distribution(const NscModel& m) {
    check_shapes(m.weights.size(), m.charlie_response.size(), m.boxes.size());
    JointDistribution d;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (int z = 0; z < 2; ++z) {
            const int c = m.charlie_response[l][z];
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 3; ++b)
                        d.at(x, z, a, b, c) += m.weights[l] * m.boxes[l].q[a][b][x];
        }
    }
    return d;
}

CnsModel random_cns_model(int n_lambda, std::uint64_t seed) {
    if (n_lambda < 1) throw std::invalid_argument("n_lambda must be >= 1");
    Xoshiro256pp rng(seed);

    CnsModel m;
    for (int z = 0; z < 2; ++z) {
        const double u = rng.uniform01();
        m.charlie_marginal[0][z] = u;
        m.charlie_marginal[1][z] = 1.0 - u;
    }
    m.weights = dirichlet_flat(rng, n_lambda);
    m.alice_response.resize(n_lambda);
    m.boxes.resize(n_lambda);

    LinearProgram lp;
    lp.num_vars = 12;  // q[b][c][z], lambda-local slice
    auto var = [](int b, int c, int z) { return b * 4 + c * 2 + z; };
    for (int c = 0; c < 2; ++c)
        for (int z = 0; z < 2; ++z) {
            std::vector<double> row(12, 0.0);
            for (int b = 0; b < 3; ++b) row[var(b, c, z)] = 1.0;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(m.charlie_marginal[c][z]);
        }
    for (int b = 0; b < 2; ++b) {
        std::vector<double> row(12, 0.0);
        for (int c = 0; c < 2; ++c) {
            row[var(b, c, 0)] = 1.0;
            row[var(b, c, 1)] = -1.0;
        }
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(0.0);
    }

    constexpr int kVertices = 6;
    for (int l = 0; l < n_lambda; ++l) {
        const int r = static_cast<int>(rng.uniform_int(4));
        m.alice_response[l] = {kResponses[r][0], kResponses[r][1]};

        std::vector<std::vector<double>> vertices;
        for (int k = 0; k < kVertices; ++k) {
            lp.objective.assign(12, 0.0);
            for (double& o : lp.objective) o = rng.uniform(-1.0, 1.0);
            const SimplexSolution sol = simplex_maximize(lp);
            if (sol.status != SimplexStatus::optimal)
                throw std::runtime_error("ns box slice unexpectedly infeasible");
            vertices.push_back(sol.x);
        }
        const std::vector<double> mix = dirichlet_flat(rng, kVertices);
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z) {
                    double q = 0.0;
                    for (int k = 0; k < kVertices; ++k)
                        q += mix[k] * vertices[k][var(b, c, z)];
                    m.boxes[l].q[b][c][z] = clamp0(q);
                }
    }
    return m;
}

NscModel random_nsc_model(int n_lambda, std::uint64_t seed) {
    if (n_lambda < 1) throw std::invalid_argument("n_lambda must be >= 1");
    Xoshiro256pp rng(seed);

    NscModel m;
    for (int x = 0; x < 2; ++x) {
        const double u = rng.uniform01();
        m.alice_marginal[0][x] = u;
        m.alice_marginal[1][x] = 1.0 - u;
    }
    m.weights = dirichlet_flat(rng, n_lambda);
    m.charlie_response.resize(n_lambda);
    m.boxes.resize(n_lambda);

    LinearProgram lp;
    lp.num_vars = 12;  // q[a][b][x]
    auto var = [](int a, int b, int x) { return (a * 3 + b) * 2 + x; };
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
            std::vector<double> row(12, 0.0);
            for (int b = 0; b < 3; ++b) row[var(a, b, x)] = 1.0;
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(m.alice_marginal[a][x]);
        }
    for (int b = 0; b < 2; ++b) {
        std::vector<double> row(12, 0.0);
        for (int a = 0; a < 2; ++a) {
            row[var(a, b, 0)] = 1.0;
            row[var(a, b, 1)] = -1.0;
        }
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(0.0);
    }

    constexpr int kVertices = 6;
    for (int l = 0; l < n_lambda; ++l) {
        const int r = static_cast<int>(rng.uniform_int(4));
        m.charlie_response[l] = {kResponses[r][0], kResponses[r][1]};

        std::vector<std::vector<double>> vertices;
        for (int k = 0; k < kVertices; ++k) {
            lp.objective.assign(12, 0.0);
            for (double& o : lp.objective) o = rng.uniform(-1.0, 1.0);
            const SimplexSolution sol = simplex_maximize(lp);
            if (sol.status != SimplexStatus::optimal)
                throw std::runtime_error("ns box slice unexpectedly infeasible");
            vertices.push_back(sol.x);
        }
        const std::vector<double> mix = dirichlet_flat(rng, kVertices);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x = 0; x < 2; ++x) {
                    double q = 0.0;
                    for (int k = 0; k < kVertices; ++k) q += mix[k] * vertices[k][var(a, b, x)];
                    m.boxes[l].q[a][b][x] = clamp0(q);
                }
    }
    return m;
}

namespace {

struct RestartRecord {
    double value = -1e300;
    bool converged = false;
};

template <typename Model, typename BuildLp, typename Extract, typename Evaluate>
RestartRecord run_restart(int n_lambda, int iters, double frozen, Model& best_model,
                          BuildLp build_lp, Extract extract, Evaluate evaluate,
                          WitnessKind kind) {
    RestartRecord rec;
    double prev = -1e300;
    for (int iter = 0; iter < iters; ++iter) {
        const auto weights = witness_cell_weights(kind, frozen);
        const LinearProgram lp = build_lp(n_lambda, weights);
        const SimplexSolution sol = simplex_maximize(lp);
        if (sol.status != SimplexStatus::optimal)
            throw std::runtime_error("seesaw LP did not reach an optimum");
        Model model = extract(n_lambda, sol.x);
        double next_frozen = 0.0;
        const double value = evaluate(model, next_frozen);
        if (value > rec.value) {
            rec.value = value;
            best_model = std::move(model);
        }
        if (iter > 0 && std::abs(value - prev) < 1e-10) {
            rec.converged = true;
            break;
        }
        prev = value;
        frozen = next_frozen;
    }
    return rec;
}

}  // namespace

CnsSeesawResult maximize_witness_cns(int n_lambda, int restarts, int iters,
                                     std::uint64_t seed, bool parallel) {
    check_seesaw_args(n_lambda, restarts, iters);

    std::vector<RestartRecord> records(restarts);
    std::vector<CnsModel> models(restarts);
    auto evaluate = [](const CnsModel& m, double& next_frozen) {
        const CorrelatorSet cs = correlators(model_to_distribution(m));
        next_frozen = cs.c[1];
        return eval_r_cns(cs);
    };
    auto run_one = [&](int r) {
        records[r] = run_restart<CnsModel>(n_lambda, iters, initial_frozen(r, seed),
                                           models[r], build_cns_seesaw_lp,
                                           extract_cns_model, evaluate, WitnessKind::cns);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < restarts; ++r) run_one(r);
    } else {
        for (int r = 0; r < restarts; ++r) run_one(r);
    }

    CnsSeesawResult result;
    result.outcome.restarts = restarts;
    for (int r = 0; r < restarts; ++r) {
        if (records[r].value > result.outcome.best_value || result.outcome.best_restart < 0) {
            result.outcome.best_value = records[r].value;
            result.outcome.best_restart = r;
            result.outcome.best_converged = records[r].converged;
            result.best_model = models[r];
        }
    }
    return result;
}

NscSeesawResult maximize_witness_nsc(int n_lambda, int restarts, int iters,
                                     std::uint64_t seed, bool parallel) {
    check_seesaw_args(n_lambda, restarts, iters);

    std::vector<RestartRecord> records(restarts);
    std::vector<NscModel> models(restarts);
    auto evaluate = [](const NscModel& m, double& next_frozen) {
        const CorrelatorSet cs = correlators(model_to_distribution(m));
        next_frozen = cs.a[1];
        return eval_r_nsc(cs);
    };
    auto run_one = [&](int r) {
        records[r] = run_restart<NscModel>(n_lambda, iters, initial_frozen(r, seed),
                                           models[r], build_nsc_seesaw_lp,
                                           extract_nsc_model, evaluate, WitnessKind::nsc);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < restarts; ++r) run_one(r);
    } else {
        for (int r = 0; r < restarts; ++r) run_one(r);
    }

    NscSeesawResult result;
    result.outcome.restarts = restarts;
    for (int r = 0; r < restarts; ++r) {
        if (records[r].value > result.outcome.best_value || result.outcome.best_restart < 0) {
            result.outcome.best_value = records[r].value;
            result.outcome.best_restart = r;
            result.outcome.best_converged = records[r].converged;
            result.best_model = models[r];
        }
    }
    return result;
}

InflationReport inflation_identities(const CnsModel& m) {
    const ModelValidation v = validate_model(m, 1e-8);
    if (!v.pass) throw std::invalid_argument("inflation_identities: invalid model");

    const int n = static_cast<int>(m.weights.size());

    // Q(a,b,b',c,c'|x,z,z'): hidden variable cloned, box duplicated.
    auto qidx = [](int x, int z, int zp, int a, int b, int bp, int c, int cp) {
        return ((((((x * 2 + z) * 2 + zp) * 2 + a) * 3 + b) * 3 + bp) * 2 + c) * 2 + cp;
    };
    std::vector<double> Q(1152, 0.0);
    for (int l = 0; l < n; ++l) {
        const double w = m.weights[l];
        for (int x = 0; x < 2; ++x) {
            const int a = m.alice_response[l][x];
            for (int z = 0; z < 2; ++z)
                for (int zp = 0; zp < 2; ++zp)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 2; ++c) {
                            const double first = w * m.boxes[l].q[b][c][z];
                            if (first == 0.0) continue;
                            for (int bp = 0; bp < 3; ++bp)
                                for (int cp = 0; cp < 2; ++cp)
                                    Q[qidx(x, z, zp, a, b, bp, c, cp)] +=
                                        first * m.boxes[l].q[bp][cp][zp];
                        }
        }
    }

    auto sgn = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };

    InflationReport report;

    // (i) <A1 C1'>_Q = <A1 C1>_Q, evaluated in the single context x=z=z'=1.
    {
        double v_sum = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int bp = 0; bp < 3; ++bp)
                    for (int c = 0; c < 2; ++c)
                        for (int cp = 0; cp < 2; ++cp)
                            v_sum += sgn(a) * (sgn(cp) - sgn(c)) *
                                     Q[qidx(1, 1, 1, a, b, bp, c, cp)];
        report.identity_residual = std::abs(v_sum);
    }

    const CorrelatorSet cs = correlators(model_to_distribution(m));

    // (ii) <A_x B_y C'_z>_Q factorizes into <A_x B_y><C_z>.
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                double v_sum = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int bp = 0; bp < 3; ++bp)
                            for (int c = 0; c < 2; ++c)
                                for (int cp = 0; cp < 2; ++cp)
                                    v_sum += sgn(a) * b_sign_weight(y, b) * sgn(cp) *
                                             Q[qidx(x, 0, z, a, b, bp, c, cp)];
                report.factorization_residual =
                    std::max(report.factorization_residual,
                             std::abs(v_sum - cs.ab[x][y] * cs.c[z]));
            }

    // (iii) Outcome decomposition of the witness. Conditional averages are
    // accumulated unnormalized so empty outcomes contribute zero exactly.
    double p_b[3] = {0.0, 0.0, 0.0};
    double a0c0[3] = {}, a0c1[3] = {}, a1c0[3] = {}, a1c1[3] = {}, a1c1p[3] = {}, c0c1p[3] = {};
    for (int b = 0; b < 3; ++b) {
        for (int a = 0; a < 2; ++a)
            for (int bp = 0; bp < 3; ++bp)
                for (int c = 0; c < 2; ++c)
                    for (int cp = 0; cp < 2; ++cp) {
                        p_b[b] += Q[qidx(0, 0, 0, a, b, bp, c, cp)];
                        a0c0[b] += sgn(a + c) * Q[qidx(0, 0, 0, a, b, bp, c, cp)];
                        a0c1[b] += sgn(a + c) * Q[qidx(0, 1, 0, a, b, bp, c, cp)];
                        a1c0[b] += sgn(a + c) * Q[qidx(1, 0, 0, a, b, bp, c, cp)];
                        a1c1[b] += sgn(a + c) * Q[qidx(1, 1, 0, a, b, bp, c, cp)];
                        a1c1p[b] += sgn(a + cp) * Q[qidx(1, 0, 1, a, b, bp, c, cp)];
                        c0c1p[b] += sgn(c + cp) * Q[qidx(0, 0, 1, a, b, bp, c, cp)];
                    }
    }

    double decomposition = 0.0;
    for (int b = 0; b < 3; ++b) {
        double pt;  // p_b * T_b, division-free
        if (b < 2) {
            pt = 2.0 * sgn(b) * (a0c0[b] - a0c1[b]) + 2.0 * a1c0[b] + a1c1[b] + a1c1p[b] -
                 p_b[b];
        } else {
            pt = p_b[2] - (2.0 * a1c0[2] + a1c1[2] + a1c1p[2] + 2.0 * c0c1p[2]);
        }
        decomposition += pt;

        report.outcome_probabilities[b] = p_b[b];
        if (p_b[b] > 1e-12) {
            report.t_defined[b] = true;
            report.t_values[b] = pt / p_b[b];
            const double drift = (a1c1p[b] - a1c1[b]) / p_b[b];
            report.t_bound_slack[b] = 3.0 + drift - report.t_values[b];
        }
    }
    report.decomposition_residual = std::abs(decomposition - eval_r_cns(cs));
    return report;
}

}  // namespace fnn
