#pragma once

#include <utility>

#include "lgsim/core.hpp"

namespace lgsim::weakmeas {

// Pre-/post-selection pair on the path space {U, D}; both normalized.
struct TwoStateVector {
    StateVector pre;
    StateVector post;
    double overlap_mag;  // |<post|pre>|, recorded at construction

    TwoStateVector(StateVector pre_, StateVector post_);
};

struct Coupling {
    double gamma;  // radians, |gamma| < pi/2

    explicit Coupling(double g);
};

// Pointer-observable expectation pair (<sigma_x>, <sigma_y>).
struct PointerReadout {
    double sx = 0.0;
    double sy = 0.0;
    bool clamped = false;  // set when a noisy intensity ratio was pulled into [-1,1]
};

// Simulated intensity readings for one acquisition: the two pointer ports of
// the x basis, the two of the y basis, and the reference arm.
struct DetectorRecord {
    double i_plus = 0.0;
    double i_minus = 0.0;
    double i_r = 0.0;
    double i_l = 0.0;
    double reference = 1.0;
    bool clamped = false;
};

// <post|obs|pre> / <post|pre>. Throws OrthogonalPostselection when the
// overlap magnitude falls below eps_overlap.
cdouble weak_value(const LinearOp& obs, const TwoStateVector& ctx,
                   double eps_overlap = tol().overlap);

// |<post|pre>|^2
double postselect_prob(const TwoStateVector& ctx);

// min(n*p, 1); comparison curves for probability magnification.
double amplified_prob(double p, int n_factor);

// Exact (non-perturbative) pointer relations:
//   <sigma_x> = sin(2g) Re w / (cos^2 g + sin^2 g |w|^2)
//   <sigma_y> = sin(2g) Im w / (cos^2 g + sin^2 g |w|^2)
PointerReadout pointer_expectations(cdouble w, Coupling c);

// (I+ - I-)/(I+ + I-) and (I_R - I_L)/(I_R + I_L), clamped to [-1,1].
PointerReadout expectations_from_intensities(const DetectorRecord& rec);

enum class Branch { weak, strong, both };

// Inverse of pointer_expectations. With r = sqrt(sx^2+sy^2), the modulus
// solves r sin^2 g |w|^2 - |sin 2g| |w| + r cos^2 g = 0:
//   |w| = |cot g| (1 -+ sqrt(1 - r^2)) / r
// The weak branch is the root with |w| <= |cot g|; the phase comes from
// (sx, sy) with the sign of sin 2g carried through.
cdouble invert_pointer(const PointerReadout& r, Coupling c, Branch branch = Branch::weak);
std::pair<cdouble, cdouble> invert_pointer_both(const PointerReadout& r, Coupling c);

}  // namespace lgsim::weakmeas
