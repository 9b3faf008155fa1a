#include "fnn/born.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fnn {

double JointDistribution::context_total(int x, int z) const {
    double t = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c) t += at(x, z, a, b, c);
    return t;
}

double b_sign_weight(int y, int b) {
    static constexpr double kWeights[2][3] = {{1.0, 1.0, -1.0}, {1.0, -1.0, 0.0}};
    return kWeights[y][b];
}

JointDistribution compute_distribution(const Scenario& s) {
    validate(s);

    const ComplexMatrix rho1 = build_source_state(s.source1);
    const ComplexMatrix rho2 = build_source_state(s.source2);
    const ComplexMatrix state = kron(rho1, rho2);

    const auto povm = build_bsm_povm(s.bsm);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);

    // Outcome projectors (I +- O)/2 per setting.
    std::array<std::array<ComplexMatrix, 2>, 2> alice_proj;
    std::array<std::array<ComplexMatrix, 2>, 2> charlie_proj;
    for (int x = 0; x < 2; ++x) {
        const ComplexMatrix obs = build_observable(s.alice_settings[x]);
        alice_proj[x][0] = scale(add(id2, obs), 0.5);
        alice_proj[x][1] = scale(subtract(id2, obs), 0.5);
    }
    for (int z = 0; z < 2; ++z) {
        const ComplexMatrix obs = build_observable(s.charlie_settings[z]);
        charlie_proj[z][0] = scale(add(id2, obs), 0.5);
        charlie_proj[z][1] = scale(subtract(id2, obs), 0.5);
    }

    JointDistribution d;
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 3; ++b) {
                    const ComplexMatrix left = kron(alice_proj[x][a], povm[b]);
                    for (int c = 0; c < 2; ++c) {
                        const ComplexMatrix op = kron(left, charlie_proj[z][c]);
                        const cdouble value = trace_product(op, state);
                        double prob = value.real();
                        if (std::abs(value.imag()) > 1e-10)
                            throw std::runtime_error("born probability has imaginary part");
                        if (prob < -1e-12)
                            throw std::runtime_error("born probability below -1e-12");
                        d.at(x, z, a, b, c) = std::max(prob, 0.0);
                    }
                }
            }
        }
    }
    return d;
}

NoSignalingReport validate_no_signaling(const JointDistribution& d, double tol) {
    NoSignalingReport r;

    r.min_entry = *std::min_element(d.p.begin(), d.p.end());
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            r.normalization_deviation =
                std::max(r.normalization_deviation, std::abs(d.context_total(x, z) - 1.0));

    // Alice's marginal must not depend on z.
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            double m[2] = {0.0, 0.0};
            for (int z = 0; z < 2; ++z)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 2; ++c) m[z] += d.at(x, z, a, b, c);
            r.alice_deviation = std::max(r.alice_deviation, std::abs(m[0] - m[1]));
        }
    }
    // The middle party's marginal must not depend on (x, z).
    for (int b = 0; b < 3; ++b) {
        double m[4];
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                double t = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int c = 0; c < 2; ++c) t += d.at(x, z, a, b, c);
                m[x * 2 + z] = t;
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                r.bob_deviation = std::max(r.bob_deviation, std::abs(m[i] - m[j]));
    }
    // Charlie's marginal must not depend on x.
    for (int z = 0; z < 2; ++z) {
        for (int c = 0; c < 2; ++c) {
            double m[2] = {0.0, 0.0};
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 3; ++b) m[x] += d.at(x, z, a, b, c);
            r.charlie_deviation = std::max(r.charlie_deviation, std::abs(m[0] - m[1]));
        }
    }

    r.pass = r.alice_deviation <= tol && r.bob_deviation <= tol &&
             r.charlie_deviation <= tol && r.normalization_deviation <= tol &&
             r.min_entry >= -tol;
    return r;
}

namespace {

double three_party(const JointDistribution& d, int x, int y, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                v += ((a + c) % 2 == 0 ? 1.0 : -1.0) * b_sign_weight(y, b) * d.at(x, z, a, b, c);
    return v;
}

double alice_charlie(const JointDistribution& d, int x, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                v += ((a + c) % 2 == 0 ? 1.0 : -1.0) * d.at(x, z, a, b, c);
    return v;
}

double alice_in_context(const JointDistribution& d, int x, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c) v += (a == 0 ? 1.0 : -1.0) * d.at(x, z, a, b, c);
    return v;
}

double charlie_in_context(const JointDistribution& d, int x, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c) v += (c == 0 ? 1.0 : -1.0) * d.at(x, z, a, b, c);
    return v;
}

double bob_in_context(const JointDistribution& d, int y, int x, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c) v += b_sign_weight(y, b) * d.at(x, z, a, b, c);
    return v;
}

double alice_bob_in_context(const JointDistribution& d, int x, int y, int z) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                v += (a == 0 ? 1.0 : -1.0) * b_sign_weight(y, b) * d.at(x, z, a, b, c);
    return v;
}

double bob_charlie_in_context(const JointDistribution& d, int y, int z, int x) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                v += (c == 0 ? 1.0 : -1.0) * b_sign_weight(y, b) * d.at(x, z, a, b, c);
    return v;
}

}  // namespace

CorrelatorSet correlators(const JointDistribution& d) {
    CorrelatorSet out;
    for (int x = 0; x < 2; ++x)
        out.a[x] = 0.5 * (alice_in_context(d, x, 0) + alice_in_context(d, x, 1));
    for (int z = 0; z < 2; ++z)
        out.c[z] = 0.5 * (charlie_in_context(d, 0, z) + charlie_in_context(d, 1, z));
    for (int y = 0; y < 2; ++y) {
        double v = 0.0;
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z) v += bob_in_context(d, y, x, z);
        out.b[y] = v / 4.0;
    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            out.ab[x][y] =
                0.5 * (alice_bob_in_context(d, x, y, 0) + alice_bob_in_context(d, x, y, 1));
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            out.bc[y][z] =
                0.5 * (bob_charlie_in_context(d, y, z, 0) + bob_charlie_in_context(d, y, z, 1));
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) out.ac[x][z] = alice_charlie(d, x, z);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) out.abc[x][y][z] = three_party(d, x, y, z);
    return out;
}

double correlator_context_spread(const JointDistribution& d) {
    double spread = 0.0;
    for (int x = 0; x < 2; ++x)
        spread = std::max(spread,
                          std::abs(alice_in_context(d, x, 0) - alice_in_context(d, x, 1)));
    for (int z = 0; z < 2; ++z)
        spread = std::max(spread,
                          std::abs(charlie_in_context(d, 0, z) - charlie_in_context(d, 1, z)));
    for (int y = 0; y < 2; ++y) {
        double values[4];
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z) values[x * 2 + z] = bob_in_context(d, y, x, z);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                spread = std::max(spread, std::abs(values[i] - values[j]));
    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            spread = std::max(spread, std::abs(alice_bob_in_context(d, x, y, 0) -
                                               alice_bob_in_context(d, x, y, 1)));
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            spread = std::max(spread, std::abs(bob_charlie_in_context(d, y, z, 0) -
                                               bob_charlie_in_context(d, y, z, 1)));
    return spread;
}

}  // namespace fnn
