#include "lgsim/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lgsim::expsim {

using optics::Arm;
using weakmeas::Branch;
using weakmeas::TwoStateVector;

void BenchConfig::validate() const {
    if (!(std::abs(gamma) < kPi / 2.0))
        throw std::invalid_argument("BenchConfig: |gamma| must be < pi/2");
    if (!(noise_rel >= 0.0 && noise_rel < 0.5))
        throw std::invalid_argument("BenchConfig: noise_rel must be in [0, 0.5)");
    if (shots < 1) throw std::invalid_argument("BenchConfig: shots must be >= 1");
    if (amplification_n < 1)
        throw std::invalid_argument("BenchConfig: amplification_n must be >= 1");
}

optics::BenchLayout build_network(const BenchConfig& cfg) {
    cfg.validate();
    using optics::BenchItem;
    using K = optics::WavePlate::Kind;
    optics::BenchLayout layout;
    auto& it = layout.items;
    it.push_back(BenchItem::pbs());                                      // source PBS, D1 reference
    it.push_back(BenchItem::plate(K::half, Arm::both, rad2deg(cfg.theta) / 2.0));   // H1
    it.push_back(BenchItem::bd());                                       // BD1 split
    it.push_back(BenchItem::plate(K::half, Arm::lower, 45.0));           // H2
    it.push_back(BenchItem::plate(K::half, Arm::upper, rad2deg(cfg.gamma) / 2.0));  // H3
    it.push_back(BenchItem::plate(K::half, Arm::lower, -rad2deg(cfg.gamma) / 2.0)); // H4
    if (cfg.pointer_basis == PointerBasis::y)
        it.push_back(BenchItem::plate(K::quarter, Arm::both, 45.0));     // Q1
    else
        it.push_back(BenchItem::plate(K::half, Arm::both, 22.5));        // H5
    it.push_back(BenchItem::pbs());                                      // pointer projection
    it.push_back(BenchItem::plate(K::half, Arm::lower, 45.0));           // H6/H7
    it.push_back(BenchItem::bd());                                       // BD2 merge
    it.push_back(BenchItem::plate(K::half, Arm::both, 22.5));            // H8
    it.push_back(BenchItem::pbs());                                      // post-selection PBS
    it.push_back(BenchItem::detector("D1"));
    it.push_back(BenchItem::detector("D2"));
    it.push_back(BenchItem::detector("D3"));
    layout.displacement_mm = 4.0;
    return layout;
}

namespace detail {

StateVector evolved_state(double theta, double gamma) {
    StateVector pol = pol_state(std::cos(theta), std::sin(theta));  // after PBS + H1
    StateVector composite = optics::bd_split(pol);
    composite = apply(optics::on_arm(optics::hwp(kPi / 4.0), Arm::lower), composite);  // H2
    composite = apply(optics::weak_stage(gamma), composite);                           // H3 + H4
    return composite;
}

double port_intensity(const StateVector& evolved, PointerBasis basis, int outcome,
                      PostPort port) {
    // pointer analysis: map the analysis basis onto {H, V}, then the pointer
    // PBS separates the two outcomes
    LinearOp analyzer = basis == PointerBasis::x ? optics::hwp(kPi / 8.0)
                                                 : optics::qwp(kPi / 4.0);
    StateVector analyzed = apply(optics::on_arm(analyzer, Arm::both), evolved);

    // outcome 0 lands in pol H, outcome 1 in pol V; take that branch's path amplitudes
    std::size_t off = outcome == 0 ? 0 : 1;
    StateVector branch(basis::composite(),
                       {analyzed[0 + off] * (off == 0 ? 1.0 : 0.0),
                        analyzed[0 + off] * (off == 1 ? 1.0 : 0.0),
                        analyzed[2 + off] * (off == 0 ? 1.0 : 0.0),
                        analyzed[2 + off] * (off == 1 ? 1.0 : 0.0)});
    // normalize branch pol to H before the path analyzer (the reflected branch
    // passes an extra half-wave plate after the pointer PBS)
    if (off == 1) branch = apply(optics::on_arm(optics::hwp(kPi / 4.0), Arm::both), branch);

    // path analyzer: H7 on the lower arm, BD2 merge, H8, post-selection PBS
    branch = apply(optics::on_arm(optics::hwp(kPi / 4.0), Arm::lower), branch);
    auto merged = optics::bd_merge(branch);
    StateVector out = apply(optics::hwp(kPi / 8.0), merged.out);
    auto [t, r] = optics::pbs_split(out);
    return port == PostPort::plus_m3 ? std::norm(t) : std::norm(r);
}

}  // namespace detail

DetectorRecord run_noiseless(const BenchConfig& cfg) {
    cfg.validate();
    StateVector evolved = detail::evolved_state(cfg.theta, cfg.gamma);
    DetectorRecord rec;
    rec.i_plus = detail::port_intensity(evolved, PointerBasis::x, 0, cfg.post_port);
    rec.i_minus = detail::port_intensity(evolved, PointerBasis::x, 1, cfg.post_port);
    rec.i_r = detail::port_intensity(evolved, PointerBasis::y, 0, cfg.post_port);
    rec.i_l = detail::port_intensity(evolved, PointerBasis::y, 1, cfg.post_port);
    rec.reference = 1.0;
    return rec;
}

std::vector<DetectorRecord> run_noisy(const BenchConfig& cfg) {
    cfg.validate();
    DetectorRecord clean = run_noiseless(cfg);
    std::vector<DetectorRecord> out;
    out.reserve(cfg.shots);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < cfg.shots; ++s) {
        if (cfg.noise_rel == 0.0) {
            out.push_back(clean);
            continue;
        }
        double common = 1.0 + cfg.noise_rel * gauss(rng);
        auto port = [&](double i0) {
            double v = i0 * common * (1.0 + cfg.noise_rel * gauss(rng));
            return std::max(v, 0.0);
        };
        DetectorRecord rec;
        rec.i_plus = port(clean.i_plus);
        rec.i_minus = port(clean.i_minus);
        rec.i_r = port(clean.i_r);
        rec.i_l = port(clean.i_l);
        rec.reference = std::max(common, 1e-12);
        out.push_back(rec);
    }
    return out;
}

namespace {

struct MeanSd {
    double mean = 0.0;
    double sem = 0.0;  // standard error of the mean
};

MeanSd mean_sem(const std::vector<double>& xs) {
    MeanSd r;
    if (xs.empty()) return r;
    for (double x : xs) r.mean += x;
    r.mean /= double(xs.size());
    if (xs.size() < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    double sd = std::sqrt(ss / double(xs.size() - 1));
    r.sem = sd / std::sqrt(double(xs.size()));
    return r;
}

}  // namespace

WeakEstimate estimate_weak_value(const std::vector<DetectorRecord>& records, Coupling c) {
    if (records.empty())
        throw std::invalid_argument("estimate_weak_value: no records");
    if (c.gamma == 0.0) throw ZeroCoupling("estimate_weak_value: gamma must be nonzero");

    WeakEstimate est;
    std::vector<double> res, ims;
    std::vector<double> ip, im_, ir, il;
    for (const auto& rec : records) {
        // reference-normalized intensities: the common-mode factor cancels in
        // the readout ratios, so it must not contribute to the error bars
        double ref = rec.reference > 0.0 ? rec.reference : 1.0;
        ip.push_back(rec.i_plus / ref);
        im_.push_back(rec.i_minus / ref);
        ir.push_back(rec.i_r / ref);
        il.push_back(rec.i_l / ref);
        try {
            PointerReadout ro = weakmeas::expectations_from_intensities(rec);
            cdouble w = weakmeas::invert_pointer(ro, c, Branch::weak);
            res.push_back(w.real());
            ims.push_back(w.imag());
        } catch (const ZeroIntensity&) {
            ++est.rejected_shots;
        } catch (const NoRealRoot&) {
            ++est.rejected_shots;
        }
    }
    if (res.empty())
        throw ZeroIntensity("estimate_weak_value: all shots rejected");

    est.re.value = mean_sem(res).mean;
    est.im.value = mean_sem(ims).mean;

    if (records.size() < 2) return est;

    // intensity standard errors through the readout ratios ...
    MeanSd mp = mean_sem(ip), mm = mean_sem(im_), mr = mean_sem(ir), ml = mean_sem(il);
    double sx_bar, sy_bar, sig_sx, sig_sy;
    {
        double s = mp.mean + mm.mean;
        sx_bar = (mp.mean - mm.mean) / s;
        sig_sx = std::hypot(2.0 * mm.mean / (s * s) * mp.sem, 2.0 * mp.mean / (s * s) * mm.sem);
        double sy_s = mr.mean + ml.mean;
        sy_bar = (mr.mean - ml.mean) / sy_s;
        sig_sy = std::hypot(2.0 * ml.mean / (sy_s * sy_s) * mr.sem,
                            2.0 * mr.mean / (sy_s * sy_s) * ml.sem);
    }

    // ... and through the inversion Jacobian at the mean readout
    auto invert_at = [&](double sx, double sy) {
        PointerReadout ro;
        ro.sx = sx;
        ro.sy = sy;
        // pull probe points just outside the unit disc back onto it so the
        // difference quotient stays defined near the |w| = cot(gamma) edge
        double r = std::hypot(sx, sy);
        if (r > 1.0) {
            ro.sx /= r;
            ro.sy /= r;
        }
        return weakmeas::invert_pointer(ro, c, Branch::weak);
    };
    const double h = 1e-6;
    cdouble dwx = (invert_at(sx_bar + h, sy_bar) - invert_at(sx_bar - h, sy_bar)) / (2.0 * h);
    cdouble dwy = (invert_at(sx_bar, sy_bar + h) - invert_at(sx_bar, sy_bar - h)) / (2.0 * h);
    est.re.sigma = std::hypot(dwx.real() * sig_sx, dwy.real() * sig_sy);
    est.im.sigma = std::hypot(dwx.imag() * sig_sx, dwy.imag() * sig_sy);
    return est;
}

EstimateWithError estimate_postselect_prob(const std::vector<DetectorRecord>& records) {
    std::vector<double> ps;
    ps.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.reference <= 0.0)
            throw ZeroIntensity("estimate_postselect_prob: non-positive reference");
        ps.push_back((rec.i_plus + rec.i_minus) / rec.reference);
    }
    MeanSd m = mean_sem(ps);
    return EstimateWithError{m.mean, m.sem};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over master xor a stride of the row index
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PortResult {
    EstimateWithError p, re_w, im_w;
};

std::vector<DetectorRecord> acquire(const BenchConfig& cfg) {
    return cfg.noise_rel == 0.0 ? std::vector<DetectorRecord>{run_noiseless(cfg)}
                                : run_noisy(cfg);
}

// Simulate one port of one row and extract (p, w) estimates. The weak value
// comes from a coupling-on acquisition; the post-selection probability from a
// separate coupling-off acquisition, where the port total equals p exactly
// (with the interaction on, the total picks up the cos^2 g + sin^2 g |w|^2
// factor of the pointer relations). Weak-value columns turn NaN when the port
// is dark or every shot is rejected (orthogonal post-selection).
PortResult simulate_port(const BenchConfig& cfg) {
    PortResult out;
    BenchConfig w_cfg = cfg;
    w_cfg.seed = derive_seed(cfg.seed, 1);
    BenchConfig p_cfg = cfg;
    p_cfg.gamma = 0.0;
    p_cfg.seed = derive_seed(cfg.seed, 2);

    out.p = estimate_postselect_prob(acquire(p_cfg));
    out.re_w = {kNaN, kNaN};
    out.im_w = {kNaN, kNaN};
    if (out.p.value < 1e-12 || cfg.gamma == 0.0) return out;
    try {
        WeakEstimate w = estimate_weak_value(acquire(w_cfg), Coupling(cfg.gamma));
        out.re_w = w.re;
        out.im_w = w.im;
    } catch (const ZeroIntensity&) {
    }
    return out;
}

void fill_norms(PortColumns& col) {
    double re = col.re_w.value, im = col.im_w.value;
    double mag = std::hypot(re, im);
    col.norm_w.value = mag;
    col.norm_w_sq.value = mag * mag;
    if (!std::isfinite(mag)) {
        col.norm_w.sigma = col.norm_w_sq.sigma = kNaN;
        return;
    }
    if (mag > 0.0) {
        col.norm_w.sigma = std::hypot(re / mag * col.re_w.sigma, im / mag * col.im_w.sigma);
    } else {
        col.norm_w.sigma = std::max(col.re_w.sigma, col.im_w.sigma);
    }
    col.norm_w_sq.sigma = 2.0 * std::hypot(re * col.re_w.sigma, im * col.im_w.sigma);
}

void fill_theory(PortColumns& col, double theta, PostPort port) {
    StateVector post = port == PostPort::plus_m3 ? plus_m3() : minus_m3();
    TwoStateVector ctx(psi_pre(theta), post);
    col.p_theory = weakmeas::postselect_prob(ctx);
    try {
        cdouble w = weakmeas::weak_value(m2_op(), ctx);
        col.re_w_theory = w.real();
        col.im_w_theory = w.imag();
    } catch (const OrthogonalPostselection&) {
        col.re_w_theory = kNaN;
        col.im_w_theory = kNaN;
    }
}

// 2p(1 +- Re w) with first-order error bars; the p -> 0 boundary is taken as
// a product (weak-value factor dropped when unavailable).
EstimateWithError k_estimate(const EstimateWithError& p, const EstimateWithError& re_w,
                             double sign) {
    if (!std::isfinite(re_w.value) || p.value <= 0.0) {
        return EstimateWithError{std::max(2.0 * p.value, 0.0), 2.0 * p.sigma};
    }
    double value = 2.0 * p.value * (1.0 + sign * re_w.value);
    double sigma = std::hypot(2.0 * (1.0 + sign * re_w.value) * p.sigma,
                              2.0 * p.value * re_w.sigma);
    return EstimateWithError{value, sigma};
}

SweepRow compute_theta_row(const BenchConfig& tmpl, double theta, double x_deg,
                           std::uint64_t row_seed) {
    SweepRow row;
    row.x_deg = x_deg;

    BenchConfig cfg = tmpl;
    cfg.theta = theta;

    cfg.post_port = PostPort::plus_m3;
    cfg.seed = derive_seed(row_seed, 1);
    PortResult plus = simulate_port(cfg);
    cfg.post_port = PostPort::minus_m3;
    cfg.seed = derive_seed(row_seed, 2);
    PortResult minus = simulate_port(cfg);

    row.plus.p = plus.p;
    row.plus.re_w = plus.re_w;
    row.plus.im_w = plus.im_w;
    row.minus.p = minus.p;
    row.minus.re_w = minus.re_w;
    row.minus.im_w = minus.im_w;
    fill_norms(row.plus);
    fill_norms(row.minus);
    fill_theory(row.plus, theta, PostPort::plus_m3);
    fill_theory(row.minus, theta, PostPort::minus_m3);

    row.p_plus_n2 = weakmeas::amplified_prob(row.plus.p_theory, 2);
    row.p_plus_n3 = weakmeas::amplified_prob(row.plus.p_theory, 3);

    row.k31 = k_estimate(plus.p, plus.re_w, -1.0);
    row.k32 = k_estimate(plus.p, plus.re_w, +1.0);
    row.k33 = k_estimate(minus.p, minus.re_w, -1.0);
    row.k34 = k_estimate(minus.p, minus.re_w, +1.0);
    row.k_theory = lgi::k3_from_correlations(
        lgi::sequential_correlators(psi_pre(theta), m2_op(), m3_op()));
    return row;
}

SweepRow compute_gamma_row(const BenchConfig& tmpl, double gamma, double x_deg,
                           std::uint64_t row_seed) {
    BenchConfig cfg = tmpl;
    cfg.gamma = gamma;
    SweepRow row = compute_theta_row(cfg, cfg.theta, x_deg, row_seed);
    row.x_deg = x_deg;
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_theta(const BenchConfig& tmpl, const std::vector<double>& thetas,
                                  Exec exec) {
    tmpl.validate();
    std::vector<SweepRow> rows(thetas.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)thetas.size(); ++i)
            rows[i] = compute_theta_row(tmpl, thetas[i], rad2deg(thetas[i]),
                                        derive_seed(tmpl.seed, i));
    } else {
        for (std::size_t i = 0; i < thetas.size(); ++i)
            rows[i] = compute_theta_row(tmpl, thetas[i], rad2deg(thetas[i]),
                                        derive_seed(tmpl.seed, i));
    }
    return rows;
}

std::vector<SweepRow> sweep_gamma(const BenchConfig& tmpl, const std::vector<double>& gammas,
                                  Exec exec) {
    tmpl.validate();
    for (double g : gammas)
        if (g == 0.0)
            throw std::invalid_argument("sweep_gamma: gamma = 0 has no defined inversion");
    std::vector<SweepRow> rows(gammas.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)gammas.size(); ++i)
            rows[i] = compute_gamma_row(tmpl, gammas[i], rad2deg(gammas[i]),
                                        derive_seed(tmpl.seed, i));
    } else {
        for (std::size_t i = 0; i < gammas.size(); ++i)
            rows[i] = compute_gamma_row(tmpl, gammas[i], rad2deg(gammas[i]),
                                        derive_seed(tmpl.seed, i));
    }
    return rows;
}

}  // namespace lgsim::expsim
