#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lgsim/core.hpp"

namespace lgsim::optics {

enum class Arm { upper, lower, both };

std::string arm_name(Arm a);
Arm arm_from_name(const std::string& s);

// Jones matrix of a half-wave plate with fast axis at `axis_angle` from
// horizontal: [[cos2a, sin2a], [sin2a, -cos2a]]. Real, unitary, involutory.
// hwp(theta/2)|H> = cos(theta)|H> + sin(theta)|V>.
LinearOp hwp(double axis_angle);

// Jones matrix of a quarter-wave retarder at `axis_angle`:
// e^{-i pi/4} [[cos^2 a + i sin^2 a, (1-i) sin a cos a],
//              [(1-i) sin a cos a,  sin^2 a + i cos^2 a]].
LinearOp qwp(double axis_angle);

// Lift a 2x2 polarization element onto the composite {U,D}x{H,V} space,
// acting on one arm only: P_arm (x) element + P_other (x) I. Arm::both
// applies the element on both arms.
LinearOp on_arm(const LinearOp& element, Arm arm);

// Beam-displacer routing for a single input beam: the H component deflects
// into the upper path, the V component transmits into the lower path.
// Maps a polarization state to a composite path(x)pol state isometrically.
StateVector bd_split(const StateVector& pol);

// Recombining beam displacer: |U,H> and |D,V> merge into one output beam
// as |H> and |V>; the complementary components (|U,V>, |D,H>) leave through
// unused ports and their total probability is reported as `discarded`.
struct BdMerge {
    StateVector out;
    double discarded;
};
BdMerge bd_merge(const StateVector& composite);

// Polarizing beam splitter port amplitudes: (transmitted H, reflected V).
std::pair<cdouble, cdouble> pbs_split(const StateVector& pol);

struct WavePlate {
    enum class Kind { half, quarter };
    Kind kind;
    double axis_angle;  // radians, normalized to [0, pi)

    WavePlate(Kind k, double angle);
    LinearOp jones() const;
};

struct ElementPlacement {
    WavePlate plate;
    Arm arm;
};

// One entry of a bench description: either a wave plate on an arm or a
// structural element (PBS, BD, detector).
struct BenchItem {
    enum class Kind { plate, pbs, bd, detector };
    Kind kind;
    // plate fields
    WavePlate::Kind plate_kind = WavePlate::Kind::half;
    Arm arm = Arm::both;
    double angle_deg = 0.0;
    // detector field
    std::string name;

    static BenchItem plate(WavePlate::Kind k, Arm a, double angle_deg);
    static BenchItem pbs();
    static BenchItem bd();
    static BenchItem detector(std::string name);
};

struct BenchLayout {
    std::vector<BenchItem> items;
    double displacement_mm = 4.0;  // physical metadata only, no effect on numerics
};

// The fixed polarization-frame operator relating the H3/H4 plate pair to the
// ideal coupling exp(-i*gamma*M2(x)sigma_y): hwp(g/2) = exp(-i*g*sigma_y)*sigma_z,
// so the plate pair equals exp(-i*gamma*M2(x)sigma_y) * (I(x)sigma_z). The frame
// operator acts as identity on the |H> pointer sector.
LinearOp weak_stage(double gamma);          // on_arm(hwp(g/2),upper)*on_arm(hwp(-g/2),lower)
LinearOp weak_stage_frame();                // I (x) sigma_z on the composite space
LinearOp weak_stage_ideal(double gamma);    // exp_involution(M2 (x) sigma_y, gamma)

}  // namespace lgsim::optics
