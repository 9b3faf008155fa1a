#pragma once

#include <array>

#include "fnn/complex_matrix.hpp"

namespace fnn {

// Two-qubit source emitting cos(a)|HH> + sin(a)|VV> mixed with white noise.
// The state is parametrized by the amplitude angle directly; sweeps, config
// files and reported curves all use this angle.
struct SourceSpec {
    double amplitude_angle = 0.0;  // radians, [0, pi/2]
    double visibility = 1.0;       // [0, 1]
};

// Three-outcome joint measurement on the middle party's photon pair. The two
// sharp outcomes blur into each other as the interference visibility drops.
struct BsmSpec {
    double hom_visibility = 1.0;  // [0, 1]
};

// Dichotomic qubit observable n . (X, Y, Z) for a unit Bloch vector n.
struct ObservableSpec {
    double nx = 0.0;
    double ny = 0.0;
    double nz = 0.0;
};

struct Scenario {
    SourceSpec source1;  // feeds Alice and the left half of the joint measurement
    SourceSpec source2;  // feeds the right half and Charlie
    BsmSpec bsm;
    std::array<ObservableSpec, 2> alice_settings;    // A_0, A_1
    std::array<ObservableSpec, 2> charlie_settings;  // C_0, C_1
};

void validate(const SourceSpec& s);
void validate(const BsmSpec& b);
void validate(const ObservableSpec& o);
void validate(const Scenario& s);

// Computational basis |H> = (1,0), |V> = (0,1); Bell vectors in the fixed
// order {Phi+, Phi-, Psi+, Psi-}.
ComplexMatrix ket_phi_plus();
ComplexMatrix ket_phi_minus();
ComplexMatrix ket_psi_plus();
ComplexMatrix ket_psi_minus();

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// v |phi(a)><phi(a)| + (1-v)/4 * I on two qubits.
ComplexMatrix build_source_state(const SourceSpec& s);

// {P0, P1, P2 = I - P0 - P1}: P0/P1 project near Phi+/Phi-, mixed pairwise by
// the interference visibility; P2 absorbs the remainder. Sums to identity
// exactly for every visibility.
std::array<ComplexMatrix, 3> build_bsm_povm(const BsmSpec& b);

// n . sigma with eigenvalues +-1.
ComplexMatrix build_observable(const ObservableSpec& o);

// The workbench's reference network: sources at the given angles and
// visibilities, A_0 = X, A_1 = Z, C_0 = (Z+X)/sqrt2, C_1 = (Z-X)/sqrt2.
Scenario reference_scenario(double v1, double v2, double vh,
                                double alpha1, double alpha2);

}  // namespace fnn
