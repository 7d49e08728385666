#pragma once

#include "lgsim/core.hpp"

namespace lgsim::lgi {

// Two-time correlation data for the three-time scenario with the first
// measurement absorbed into preparation.
struct CorrelationSet {
    double m2;   // <M2>
    double m3;   // <M3>
    double m23;  // <M2 M3>
};

// The four two-time inequality values; each is >= 0 for a macrorealist.
struct KQuadruple {
    double k31, k32, k33, k34;
};

struct BoundPair {
    double lower;
    double upper;
    int n;
};

KQuadruple k3_from_correlations(const CorrelationSet& c);

// K3i from post-selection probabilities and weak values:
//   k31 = 2 p+ (1 - Re w+),  k32 = 2 p+ (1 + Re w+),
//   k33 = 2 p- (1 - Re w-),  k34 = 2 p- (1 + Re w-).
// A vanishing probability zeroes its product regardless of w (the 0*inf
// boundary is evaluated as a product, never factor by factor).
KQuadruple k3_from_weak(double p_plus, double p_minus, cdouble w_plus, cdouble w_minus);

// Closed-form quadruple for the path pre-selection cos(t)|U> + sin(t)|D>:
//   k31 = 2 sin t (cos t + sin t),  k32 = 2 cos t (cos t + sin t),
//   k33 = 2 sin t (sin t - cos t),  k34 = 2 cos t (cos t - sin t).
KQuadruple k3_closed_form(double theta);

// Macrorealist bounds of the n-time sum, by exhaustive enumeration of all
// 2^n deterministic sign assignments. n capped at 24.
BoundPair classical_bounds(int n);

// Maximum quantum value for a two-level system: n cos(pi/n).
double luders_bound(int n);

// K_n for a qubit precessing by phi between sigma_z measurements, computed
// from sequential projective measurements on the maximally-mixed-equivalent
// preparation (equal-weight average over the two basis preparations).
double quantum_kn_precession(int n, double phi);

// m2 and m3 as plain expectations in |pre>; m23 by projective measurement of
// obs2 with state update, then obs3. Both observables must be involutory
// Hermitian (eigenvalues +-1).
CorrelationSet sequential_correlators(const StateVector& pre, const LinearOp& obs2,
                                      const LinearOp& obs3);

}  // namespace lgsim::lgi
