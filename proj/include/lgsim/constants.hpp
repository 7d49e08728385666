#pragma once

namespace lgsim {

// Numeric tolerances used across the library. Dimensions never exceed 4,
// so double precision leaves a wide margin against these.
struct Tolerances {
    double op_identity = 1e-10;   // operator-level checks (unitarity, involution)
    double norm = 1e-12;          // state norms, probability sums
    double overlap = 1e-9;        // minimum |<post|pre>| for weak-value contexts
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace lgsim
