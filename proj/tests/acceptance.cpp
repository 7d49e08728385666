// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lgsim/expsim.hpp"
#include "lgsim/lgi.hpp"
#include "lgsim/sweep_io.hpp"
#include "lgsim/weakmeas.hpp"

namespace fs = std::filesystem;
using namespace lgsim;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("%s  %s%s%s\n", ok ? "PASS" : "FAIL", name,
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- 1. closed-form inequality values at reference angles (tol 1e-12) ------
void criterion_closed_form() {
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    double c30 = std::cos(deg2rad(30.0)), s30 = std::sin(deg2rad(30.0));
    lgi::KQuadruple k15 = lgi::k3_closed_form(deg2rad(15.0));
    lgi::KQuadruple k0 = lgi::k3_closed_form(0.0);
    lgi::KQuadruple k45 = lgi::k3_closed_form(kPi / 4.0);
    bool ok = near(k15.k31, 1.0 + s30 - c30) && near(k15.k32, 1.0 + c30 + s30) &&
              near(k15.k33, 1.0 - c30 - s30) && near(k15.k34, 1.0 + c30 - s30) &&
              near(k0.k31, 0.0) && near(k0.k32, 2.0) && near(k0.k33, 0.0) &&
              near(k0.k34, 2.0) && near(k45.k31, 2.0) && near(k45.k32, 2.0) &&
              near(k45.k33, 0.0) && near(k45.k34, 0.0);
    report("closed-form K31..K34 spot values (1e-12)", ok);
}

// --- 2. sequential / weak-value / closed-form agreement on a 1 deg grid ----
void criterion_triple_equivalence() {
    double worst = 0.0;
    for (int deg = 0; deg <= 90; ++deg) {
        double th = deg2rad(double(deg));
        lgi::KQuadruple a =
            lgi::k3_from_correlations(lgi::sequential_correlators(psi_pre(th), m2_op(), m3_op()));
        lgi::KQuadruple c = lgi::k3_closed_form(th);

        weakmeas::TwoStateVector cp(psi_pre(th), plus_m3());
        weakmeas::TwoStateVector cm(psi_pre(th), minus_m3());
        cdouble wp{std::nan(""), 0.0}, wm = wp;
        try {
            wp = weakmeas::weak_value(m2_op(), cp);
        } catch (const OrthogonalPostselection&) {
        }
        try {
            wm = weakmeas::weak_value(m2_op(), cm);
        } catch (const OrthogonalPostselection&) {
        }
        lgi::KQuadruple b = lgi::k3_from_weak(weakmeas::postselect_prob(cp),
                                              weakmeas::postselect_prob(cm), wp, wm);
        for (double d : {a.k31 - c.k31, a.k32 - c.k32, a.k33 - c.k33, a.k34 - c.k34,
                         b.k31 - c.k31, b.k32 - c.k32, b.k33 - c.k33, b.k34 - c.k34,
                         a.k31 + a.k32 + a.k33 + a.k34 - 4.0})
            worst = std::max(worst, std::abs(d));
    }
    report("three K3 routes agree on 1-deg grid (1e-10)", worst < 1e-10,
           "max deviation " + io::fmt(worst));
}

// --- 3. full network reproduces probabilities and pointer readouts ---------
void criterion_network() {
    double worst = 0.0;
    for (int td = 0; td <= 90; td += 5) {
        double th = deg2rad(double(td));
        for (int gd = -24; gd <= 24; gd += 4) {
            if (gd == 0) continue;
            double g = deg2rad(double(gd));
            for (expsim::PostPort port : {expsim::PostPort::plus_m3, expsim::PostPort::minus_m3}) {
                bool plus = port == expsim::PostPort::plus_m3;
                double s2 = std::sin(2.0 * th);
                double p_th = plus ? (1.0 + s2) / 2.0 : (1.0 - s2) / 2.0;

                // probability from the coupling-off acquisition
                expsim::BenchConfig p_cfg;
                p_cfg.theta = th;
                p_cfg.gamma = 0.0;
                p_cfg.post_port = port;
                weakmeas::DetectorRecord p_rec = expsim::run_noiseless(p_cfg);
                worst = std::max(worst, std::abs(p_rec.i_plus + p_rec.i_minus - p_th));
                worst = std::max(worst, std::abs(p_rec.i_r + p_rec.i_l - p_th));

                expsim::BenchConfig cfg;
                cfg.theta = th;
                cfg.gamma = g;
                cfg.post_port = port;
                weakmeas::DetectorRecord rec = expsim::run_noiseless(cfg);
                // coupling-on total carries the exact pointer-relation factor
                double t_th = std::pow(std::cos(g), 2) * p_th +
                              std::pow(std::sin(g), 2) * (1.0 - p_th);
                worst = std::max(worst, std::abs(rec.i_plus + rec.i_minus - t_th));
                if (p_th < 1e-12) continue;

                double c = std::cos(th), s = std::sin(th);
                cdouble w_th = plus ? cdouble{(c - s) / (c + s), 0.0}
                                    : cdouble{(c + s) / (c - s), 0.0};
                weakmeas::PointerReadout got = weakmeas::expectations_from_intensities(rec);
                weakmeas::PointerReadout want =
                    weakmeas::pointer_expectations(w_th, weakmeas::Coupling(g));
                worst = std::max(worst, std::abs(got.sx - want.sx));
                worst = std::max(worst, std::abs(got.sy - want.sy));
            }
        }
    }
    report("network probabilities and pointer readouts (1e-10)", worst < 1e-10,
           "max deviation " + io::fmt(worst));
}

// --- 4. inverted weak value is coupling-independent ------------------------
void criterion_gamma_independence() {
    double target = std::tan(deg2rad(30.0));
    double worst = 0.0;
    for (int gd : {-24, -20, -16, -12, -8, -4, 4, 8, 12, 16, 20, 24}) {
        expsim::BenchConfig cfg;
        cfg.theta = deg2rad(15.0);
        cfg.gamma = deg2rad(double(gd));
        weakmeas::Coupling c(cfg.gamma);
        cdouble w = weakmeas::invert_pointer(
            weakmeas::expectations_from_intensities(expsim::run_noiseless(cfg)), c,
            weakmeas::Branch::weak);
        worst = std::max(worst, std::abs(w - cdouble{target, 0.0}));
    }
    report("recovered weak value independent of coupling (1e-9)", worst < 1e-9,
           "max |w - tan30| " + io::fmt(worst));
}

// --- 5. destructive interference <=> anomalous weak value <=> violation ----
void criterion_anomaly_equivalence() {
    struct Entry {
        double total;
        double re_w;
        double k_min;
    };
    std::vector<Entry> entries;
    double max_total = 0.0;
    for (int td = 1; td <= 44; ++td) {
        double th = deg2rad(double(td));
        lgi::KQuadruple k = lgi::k3_closed_form(th);
        for (expsim::PostPort port : {expsim::PostPort::plus_m3, expsim::PostPort::minus_m3}) {
            bool plus = port == expsim::PostPort::plus_m3;
            expsim::BenchConfig cfg;
            cfg.theta = th;
            cfg.gamma = 0.0;  // probability measurement: coupling off
            cfg.post_port = port;
            weakmeas::DetectorRecord rec = expsim::run_noiseless(cfg);
            double w = weakmeas::weak_value(
                           m2_op(), weakmeas::TwoStateVector(psi_pre(th),
                                                             plus ? plus_m3() : minus_m3()))
                           .real();
            double k_min = plus ? std::min(k.k31, k.k32) : std::min(k.k33, k.k34);
            entries.push_back({rec.i_plus + rec.i_minus, w, k_min});
            max_total = std::max(max_total, rec.i_plus + rec.i_minus);
        }
    }
    int bad = 0;
    for (const Entry& e : entries) {
        bool dim = e.total < max_total / 2.0;
        bool anomalous = std::abs(e.re_w) > 1.0;
        bool violated = e.k_min < 0.0;
        if (dim != anomalous || anomalous != violated) ++bad;
    }
    report("dim port <=> |Re w|>1 <=> negative K term", bad == 0,
           std::to_string(bad) + " counterexamples of " + std::to_string(entries.size()));
}

// --- 6. classical bounds and precession maxima -----------------------------
void criterion_bounds() {
    bool ok = true;
    for (int n = 3; n <= 12; ++n) {
        lgi::BoundPair b = lgi::classical_bounds(n);
        if (b.upper != double(n - 2)) ok = false;
        if (b.lower != (n % 2 ? -double(n) : -double(n - 2))) ok = false;
    }
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n) {
        double best = -1e9;
        for (int i = 1; i < 200000; ++i)
            best = std::max(best, lgi::quantum_kn_precession(n, kPi * i / 200000.0));
        worst = std::max(worst, std::abs(best - lgi::luders_bound(n)));
    }
    report("classical bounds n=3..12 and precession maxima (1e-6)", ok && worst < 1e-6,
           "max |max K_n - n cos(pi/n)| " + io::fmt(worst));
}

// --- 7. pointer-relation inversion round trips -----------------------------
void criterion_inversion() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        weakmeas::Coupling c(deg2rad(2.0 + uni(rng) * 38.0));
        double cot = std::cos(c.gamma) / std::sin(c.gamma);
        double phase = uni(rng) * 2.0 * kPi;
        bool weak = t % 2 == 0;
        double mag = weak ? uni(rng) * 0.98 * cot : cot * (1.02 + uni(rng) * 5.0);
        cdouble w0 = mag * std::exp(cdouble{0.0, phase});
        cdouble back = weakmeas::invert_pointer(
            weakmeas::pointer_expectations(w0, c), c,
            weak ? weakmeas::Branch::weak : weakmeas::Branch::strong);
        if (std::abs(back - w0) / std::max(1.0, std::abs(w0)) >= 1e-9) ++bad;
    }
    report("10^4 randomized inversion round trips (1e-9)", bad == 0,
           std::to_string(bad) + " failures");
}

// --- 8. noisy-run error bars: coverage and detection power -----------------
void criterion_noise_statistics() {
    const int reps = 500;
    int covered = 0, detected = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : covered, detected)
#endif
    for (int rep = 0; rep < reps; ++rep) {
        expsim::BenchConfig cfg;
        cfg.theta = deg2rad(15.0);
        cfg.gamma = deg2rad(12.0);
        cfg.noise_rel = 0.01;
        cfg.shots = 100;
        cfg.seed = 40000 + std::uint64_t(rep);
        expsim::SweepRow row = expsim::sweep_theta(cfg, {cfg.theta})[0];
        if (std::abs(row.plus.re_w.value - row.plus.re_w_theory) <= row.plus.re_w.sigma)
            ++covered;
        if (row.k33.value + row.k33.sigma < 0.0) ++detected;
    }
    double cov = double(covered) / reps;
    double det = double(detected) / reps;
    report("noisy weak-value one-sigma coverage in [0.60, 0.75]", cov >= 0.60 && cov <= 0.75,
           "coverage " + io::fmt(cov));
    report("noisy K33 negative beyond one sigma in >= 95% of runs", det >= 0.95,
           "fraction " + io::fmt(det));
}

// --- 9. CLI determinism: identical seed, byte-identical artifacts ----------
void criterion_cli_determinism() {
    fs::path d1 = fs::temp_directory_path() / "lgsim_accept_a";
    fs::path d2 = fs::temp_directory_path() / "lgsim_accept_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    fs::create_directories(d1);
    fs::create_directories(d2);
    std::string base = std::string(LGSIM_CLI_PATH) +
                       " sweep-theta --start 0 --end 45 --step 5 --noise 0.01 --shots 50"
                       " --seed 123 --format both --out ";
    int r1 = std::system((base + d1.string() + " > /dev/null 2>&1").c_str());
    int r2 = std::system((base + d2.string() + " > /dev/null 2>&1").c_str());
    bool ran = r1 == 0 && r2 == 0;
    bool same = ran && slurp(d1 / "theta_sweep.csv") == slurp(d2 / "theta_sweep.csv") &&
                slurp(d1 / "theta_sweep.json") == slurp(d2 / "theta_sweep.json") &&
                !slurp(d1 / "theta_sweep.csv").empty();
    report("CLI reruns with one seed are byte-identical", same,
           ran ? "" : "CLI invocation failed");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("acceptance suite (%d OpenMP threads)\n", omp_get_max_threads());
#else
    std::printf("acceptance suite (serial build)\n");
#endif
    criterion_closed_form();
    criterion_triple_equivalence();
    criterion_network();
    criterion_gamma_independence();
    criterion_anomaly_equivalence();
    criterion_bounds();
    criterion_inversion();
    criterion_noise_statistics();
    criterion_cli_determinism();
    std::printf("%s (%d failing)\n", failures == 0 ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED",
                failures);
    return failures == 0 ? 0 : 1;
}
