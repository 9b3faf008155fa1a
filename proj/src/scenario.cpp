#include "fnn/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fnn {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

ComplexMatrix bell_vector(double c00, double c11, double c01, double c10) {
    return ComplexMatrix::column({c00, c01, c10, c11});
}

}  // namespace

void validate(const SourceSpec& s) {
    if (!(s.amplitude_angle >= 0.0 && s.amplitude_angle <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("source amplitude angle out of range [0, pi/2]");
    if (!(s.visibility >= 0.0 && s.visibility <= 1.0))
        throw std::invalid_argument("source visibility out of range [0, 1]");
}

void validate(const BsmSpec& b) {
    if (!(b.hom_visibility >= 0.0 && b.hom_visibility <= 1.0))
        throw std::invalid_argument("interference visibility out of range [0, 1]");
}

void validate(const ObservableSpec& o) {
    const double norm = std::sqrt(o.nx * o.nx + o.ny * o.ny + o.nz * o.nz);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("observable bloch vector must have unit norm");
}

void validate(const Scenario& s) {
    validate(s.source1);
    validate(s.source2);
    validate(s.bsm);
    for (const auto& o : s.alice_settings) validate(o);
    for (const auto& o : s.charlie_settings) validate(o);
}

ComplexMatrix ket_phi_plus() { return bell_vector(kInvSqrt2, kInvSqrt2, 0.0, 0.0); }
ComplexMatrix ket_phi_minus() { return bell_vector(kInvSqrt2, -kInvSqrt2, 0.0, 0.0); }
ComplexMatrix ket_psi_plus() { return bell_vector(0.0, 0.0, kInvSqrt2, kInvSqrt2); }
ComplexMatrix ket_psi_minus() { return bell_vector(0.0, 0.0, kInvSqrt2, -kInvSqrt2); }

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, 2, {0.0, cdouble(0.0, -1.0), cdouble(0.0, 1.0), 0.0});
}

ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix build_source_state(const SourceSpec& s) {
    validate(s);
    const ComplexMatrix target = ComplexMatrix::column(
        {std::cos(s.amplitude_angle), 0.0, 0.0, std::sin(s.amplitude_angle)});
    ComplexMatrix rho = scale(outer(target), s.visibility);
    return add(rho, scale(ComplexMatrix::identity(4), (1.0 - s.visibility) / 4.0));
}

std::array<ComplexMatrix, 3> build_bsm_povm(const BsmSpec& b) {
    validate(b);
    const double vh = b.hom_visibility;
    const ComplexMatrix phi_plus = outer(ket_phi_plus());
    const ComplexMatrix phi_minus = outer(ket_phi_minus());
    const ComplexMatrix blur = scale(add(phi_plus, phi_minus), (1.0 - vh) / 2.0);

    const ComplexMatrix p0 = add(scale(phi_plus, vh), blur);
    const ComplexMatrix p1 = add(scale(phi_minus, vh), blur);
    const ComplexMatrix p2 = subtract(subtract(ComplexMatrix::identity(4), p0), p1);
    return {p0, p1, p2};
}

ComplexMatrix build_observable(const ObservableSpec& o) {
    validate(o);
    return add(add(scale(pauli_x(), o.nx), scale(pauli_y(), o.ny)), scale(pauli_z(), o.nz));
}

Scenario reference_scenario(double v1, double v2, double vh,
                                double alpha1, double alpha2) {
    Scenario s;
    s.source1 = SourceSpec{alpha1, v1};
    s.source2 = SourceSpec{alpha2, v2};
    s.bsm = BsmSpec{vh};
    s.alice_settings = {ObservableSpec{1.0, 0.0, 0.0},    // X
                        ObservableSpec{0.0, 0.0, 1.0}};   // Z
    s.charlie_settings = {ObservableSpec{kInvSqrt2, 0.0, kInvSqrt2},
                          ObservableSpec{-kInvSqrt2, 0.0, kInvSqrt2}};
    validate(s);
    return s;
}

}  // namespace fnn
