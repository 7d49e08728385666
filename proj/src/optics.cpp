#include "lgsim/optics.hpp"

#include <cmath>

namespace lgsim::optics {

std::string arm_name(Arm a) {
    switch (a) {
        case Arm::upper: return "upper";
        case Arm::lower: return "lower";
        case Arm::both: return "both";
    }
    return "?";
}

Arm arm_from_name(const std::string& s) {
    if (s == "upper") return Arm::upper;
    if (s == "lower") return Arm::lower;
    if (s == "both") return Arm::both;
    throw std::invalid_argument("unknown arm: " + s);
}

LinearOp hwp(double a) {
    double c = std::cos(2.0 * a), s = std::sin(2.0 * a);
    return LinearOp(basis::pol(), {c, s, s, -c});
}

LinearOp qwp(double a) {
    const cdouble i{0.0, 1.0};
    cdouble phase = std::exp(-i * (kPi / 4.0));
    double c = std::cos(a), s = std::sin(a);
    cdouble diag1 = c * c + i * s * s;
    cdouble diag2 = s * s + i * c * c;
    cdouble off = (1.0 - i) * s * c;
    return LinearOp(basis::pol(), {phase * diag1, phase * off, phase * off, phase * diag2});
}

LinearOp on_arm(const LinearOp& element, Arm arm) {
    if (element.dim() != 2) throw std::invalid_argument("on_arm: element must be 2x2");
    if (arm == Arm::both) {
        return tensor(LinearOp::identity(basis::path()), element);
    }
    LinearOp pu = projector(StateVector::basis(basis::path(), 0));
    LinearOp pd = projector(StateVector::basis(basis::path(), 1));
    LinearOp eye = LinearOp::identity(basis::pol());
    if (arm == Arm::upper) return tensor(pu, element) + tensor(pd, eye);
    return tensor(pu, eye) + tensor(pd, element);
}

StateVector bd_split(const StateVector& pol) {
    if (pol.labels() != basis::pol()) throw BasisMismatch("bd_split: expected {H,V} input");
    // |H> -> |U,H>, |V> -> |D,V>
    return StateVector(basis::composite(), {pol[0], 0.0, 0.0, pol[1]});
}

BdMerge bd_merge(const StateVector& composite) {
    if (composite.labels() != basis::composite())
        throw BasisMismatch("bd_merge: expected composite {U,D}x{H,V} input");
    // |U,H> -> |H>, |D,V> -> |V>; |U,V> and |D,H> are discarded ports.
    double discarded = std::norm(composite[1]) + std::norm(composite[2]);
    return BdMerge{StateVector(basis::pol(), {composite[0], composite[3]}), discarded};
}

std::pair<cdouble, cdouble> pbs_split(const StateVector& pol) {
    if (pol.labels() != basis::pol()) throw BasisMismatch("pbs_split: expected {H,V} input");
    return {pol[0], pol[1]};
}

WavePlate::WavePlate(Kind k, double angle) : kind(k), axis_angle(angle) {
    axis_angle = std::fmod(axis_angle, kPi);
    if (axis_angle < 0.0) axis_angle += kPi;
}

LinearOp WavePlate::jones() const {
    return kind == Kind::half ? hwp(axis_angle) : qwp(axis_angle);
}

BenchItem BenchItem::plate(WavePlate::Kind k, Arm a, double angle_deg) {
    BenchItem it;
    it.kind = Kind::plate;
    it.plate_kind = k;
    it.arm = a;
    it.angle_deg = angle_deg;
    return it;
}
BenchItem BenchItem::pbs() {
    BenchItem it;
    it.kind = Kind::pbs;
    return it;
}
BenchItem BenchItem::bd() {
    BenchItem it;
    it.kind = Kind::bd;
    return it;
}
BenchItem BenchItem::detector(std::string name) {
    BenchItem it;
    it.kind = Kind::detector;
    it.name = std::move(name);
    return it;
}

LinearOp weak_stage(double gamma) {
    return on_arm(hwp(gamma / 2.0), Arm::upper) * on_arm(hwp(-gamma / 2.0), Arm::lower);
}

LinearOp weak_stage_frame() {
    return tensor(LinearOp::identity(basis::path()), sigma_z(basis::pol()));
}

LinearOp weak_stage_ideal(double gamma) {
    return exp_involution(tensor(m2_op(), sigma_y(basis::pol())), gamma);
}

}  // namespace lgsim::optics
