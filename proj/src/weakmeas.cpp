#include "lgsim/weakmeas.hpp"

#include <cmath>

namespace lgsim::weakmeas {

TwoStateVector::TwoStateVector(StateVector pre_, StateVector post_)
    : pre(std::move(pre_)), post(std::move(post_)), overlap_mag(0.0) {
    if (!pre.is_normalized(1e-9) || !post.is_normalized(1e-9))
        throw std::invalid_argument("TwoStateVector: states must be normalized");
    overlap_mag = std::abs(inner(post, pre));
}

Coupling::Coupling(double g) : gamma(g) {
    if (!(std::abs(g) < kPi / 2.0))
        throw std::invalid_argument("Coupling: |gamma| must be < pi/2");
}

cdouble weak_value(const LinearOp& obs, const TwoStateVector& ctx, double eps_overlap) {
    cdouble overlap = inner(ctx.post, ctx.pre);
    if (std::abs(overlap) <= eps_overlap)
        throw OrthogonalPostselection("weak_value: post-selection orthogonal to pre-selection");
    return inner(ctx.post, apply(obs, ctx.pre)) / overlap;
}

double postselect_prob(const TwoStateVector& ctx) {
    return std::norm(inner(ctx.post, ctx.pre));
}

double amplified_prob(double p, int n_factor) {
    if (n_factor < 1) throw std::invalid_argument("amplified_prob: n_factor must be >= 1");
    return std::min(n_factor * p, 1.0);
}

PointerReadout pointer_expectations(cdouble w, Coupling c) {
    double g = c.gamma;
    double den = std::cos(g) * std::cos(g) + std::sin(g) * std::sin(g) * std::norm(w);
    double s2g = std::sin(2.0 * g);
    return PointerReadout{s2g * w.real() / den, s2g * w.imag() / den, false};
}

namespace {

double clamp_ratio(double num, double den, bool& clamped) {
    double r = num / den;
    if (r > 1.0) {
        clamped = true;
        return 1.0;
    }
    if (r < -1.0) {
        clamped = true;
        return -1.0;
    }
    return r;
}

}  // namespace

PointerReadout expectations_from_intensities(const DetectorRecord& rec) {
    double sx_den = rec.i_plus + rec.i_minus;
    double sy_den = rec.i_r + rec.i_l;
    if (sx_den <= 0.0 || sy_den <= 0.0)
        throw ZeroIntensity("expectations_from_intensities: vanishing port-pair intensity");
    PointerReadout out;
    out.sx = clamp_ratio(rec.i_plus - rec.i_minus, sx_den, out.clamped);
    out.sy = clamp_ratio(rec.i_r - rec.i_l, sy_den, out.clamped);
    return out;
}

std::pair<cdouble, cdouble> invert_pointer_both(const PointerReadout& ro, Coupling c) {
    if (c.gamma == 0.0) throw ZeroCoupling("invert_pointer: gamma must be nonzero");
    double r = std::hypot(ro.sx, ro.sy);
    double abs_cot = std::abs(std::cos(c.gamma) / std::sin(c.gamma));
    if (r > 1.0) {
        if (r > 1.0 + 1e-9) throw NoRealRoot("invert_pointer: readout magnitude exceeds 1");
        r = 1.0;
    }
    if (r == 0.0) return {cdouble{0.0, 0.0}, cdouble{0.0, 0.0}};

    // phase unit vector; sin(2g) carries its sign into the readout direction
    double sgn = std::sin(2.0 * c.gamma) > 0.0 ? 1.0 : -1.0;
    cdouble dir = cdouble{ro.sx, ro.sy} * (sgn / r);

    double disc = std::sqrt(std::max(0.0, 1.0 - r * r));
    double mod_weak = abs_cot * r / (1.0 + disc);  // = |cot g|(1 - disc)/r, cancellation-free
    double mod_strong = abs_cot * (1.0 + disc) / r;
    return {mod_weak * dir, mod_strong * dir};
}

cdouble invert_pointer(const PointerReadout& ro, Coupling c, Branch branch) {
    auto [w_weak, w_strong] = invert_pointer_both(ro, c);
    if (branch == Branch::strong) return w_strong;
    return w_weak;
}

}  // namespace lgsim::weakmeas
