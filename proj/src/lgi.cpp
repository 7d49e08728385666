#include "lgsim/lgi.hpp"

#include <cmath>
#include <limits>

namespace lgsim::lgi {

KQuadruple k3_from_correlations(const CorrelationSet& c) {
    return KQuadruple{1.0 - c.m2 - c.m23 + c.m3, 1.0 + c.m2 + c.m23 + c.m3,
                      1.0 - c.m2 + c.m23 - c.m3, 1.0 + c.m2 - c.m23 - c.m3};
}

namespace {

// p*(1 -+ Re w) evaluated as a product so the p -> 0 boundary stays finite
// even when w diverges (or is unavailable and passed as NaN).
double weak_term(double p, double re_w, double sign) {
    if (p <= 0.0 || !std::isfinite(re_w)) return std::max(2.0 * p, 0.0);
    return 2.0 * p * (1.0 + sign * re_w);
}

}  // namespace

KQuadruple k3_from_weak(double p_plus, double p_minus, cdouble w_plus, cdouble w_minus) {
    if (std::abs(p_plus + p_minus - 1.0) > 1e-9)
        throw std::invalid_argument("k3_from_weak: probabilities must sum to 1");
    return KQuadruple{weak_term(p_plus, w_plus.real(), -1.0),
                      weak_term(p_plus, w_plus.real(), +1.0),
                      weak_term(p_minus, w_minus.real(), -1.0),
                      weak_term(p_minus, w_minus.real(), +1.0)};
}

KQuadruple k3_closed_form(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return KQuadruple{2.0 * s * (c + s), 2.0 * c * (c + s), 2.0 * s * (s - c), 2.0 * c * (c - s)};
}

BoundPair classical_bounds(int n) {
    if (n < 3 || n > 24) throw std::invalid_argument("classical_bounds: n must be in [3, 24]");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        auto sign = [mask](int k) { return (mask >> k) & 1u ? -1 : 1; };
        int kn = 0;
        for (int k = 0; k + 1 < n; ++k) kn += sign(k) * sign(k + 1);
        kn -= sign(0) * sign(n - 1);
        lo = std::min(lo, double(kn));
        hi = std::max(hi, double(kn));
    }
    return BoundPair{lo, hi, n};
}

double luders_bound(int n) {
    if (n < 3) throw std::invalid_argument("luders_bound: n must be >= 3");
    return n * std::cos(kPi / n);
}

namespace {

const std::vector<std::string>& qubit_basis() {
    static const std::vector<std::string> b{"0", "1"};
    return b;
}

LinearOp precession_step(double phi) {
    // e^{-i phi sigma_y / 2}: real rotation by phi between sigma_z measurements
    double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
    return LinearOp(qubit_basis(), {c, -s, s, c});
}

// Two-point sigma_z correlator across `gap` precession steps, sequential
// projective measurement at both times, averaged over the two basis-state
// preparations (equal weights, the mixed-state-equivalent ensemble).
double two_point_correlator(int gap, double phi) {
    LinearOp step = precession_step(phi);
    LinearOp obs = sigma_z(qubit_basis());
    LinearOp p_up = projector(StateVector::basis(qubit_basis(), 0));
    LinearOp p_dn = projector(StateVector::basis(qubit_basis(), 1));

    double corr = 0.0;
    for (std::size_t init = 0; init < 2; ++init) {
        StateVector s0 = StateVector::basis(qubit_basis(), init);
        for (int a = 0; a < 2; ++a) {
            const LinearOp& pa = a == 0 ? p_up : p_dn;
            StateVector collapsed_unnorm = apply(pa, s0);
            double prob_a = collapsed_unnorm.norm() * collapsed_unnorm.norm();
            if (prob_a <= 0.0) continue;
            StateVector s = collapsed_unnorm.normalized();
            for (int k = 0; k < gap; ++k) s = apply(step, s);
            double expect_b = inner(s, apply(obs, s)).real();
            double ma = a == 0 ? 1.0 : -1.0;
            corr += 0.5 * prob_a * ma * expect_b;
        }
    }
    return corr;
}

}  // namespace

double quantum_kn_precession(int n, double phi) {
    if (n < 3) throw std::invalid_argument("quantum_kn_precession: n must be >= 3");
    double kn = 0.0;
    for (int k = 0; k + 1 < n; ++k) kn += two_point_correlator(1, phi);
    kn -= two_point_correlator(n - 1, phi);
    return kn;
}

CorrelationSet sequential_correlators(const StateVector& pre, const LinearOp& obs2,
                                      const LinearOp& obs3) {
    if (!obs2.is_hermitian() || !obs2.is_involutory() || !obs3.is_hermitian() ||
        !obs3.is_involutory())
        throw NotInvolutory("sequential_correlators: observables must be involutory Hermitian");
    if (!pre.is_normalized(1e-9))
        throw std::invalid_argument("sequential_correlators: state must be normalized");

    double m2 = inner(pre, apply(obs2, pre)).real();
    double m3 = inner(pre, apply(obs3, pre)).real();

    LinearOp eye = LinearOp::identity(pre.labels());
    LinearOp p_plus = cdouble{0.5, 0.0} * (eye + obs2);
    LinearOp p_minus = cdouble{0.5, 0.0} * (eye - obs2);

    double m23 = 0.0;
    for (int a = 0; a < 2; ++a) {
        const LinearOp& pa = a == 0 ? p_plus : p_minus;
        StateVector branch = apply(pa, pre);  // unnormalized Lueders branch
        double sign = a == 0 ? 1.0 : -1.0;
        m23 += sign * inner(branch, apply(obs3, branch)).real();
    }
    return CorrelationSet{m2, m3, m23};
}

}  // namespace lgsim::lgi
