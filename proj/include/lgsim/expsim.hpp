#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lgsim/lgi.hpp"
#include "lgsim/optics.hpp"
#include "lgsim/weakmeas.hpp"

namespace lgsim::expsim {

using weakmeas::Coupling;
using weakmeas::DetectorRecord;
using weakmeas::PointerReadout;

enum class PostPort { plus_m3, minus_m3 };
enum class PointerBasis { x, y };

struct BenchConfig {
    double theta = 0.0;              // radians; H1 sits at theta/2
    double gamma = deg2rad(12.0);    // radians; H3 at gamma/2, H4 at -gamma/2
    PostPort post_port = PostPort::plus_m3;
    PointerBasis pointer_basis = PointerBasis::x;
    double noise_rel = 0.0;          // relative intensity noise, < 0.5
    int shots = 100;
    std::uint64_t seed = 0;
    int amplification_n = 1;

    void validate() const;
};

struct EstimateWithError {
    double value = 0.0;
    double sigma = 0.0;
};

struct WeakEstimate {
    EstimateWithError re;
    EstimateWithError im;
    int rejected_shots = 0;
};

// Per-port sweep columns (one block for |+m3>, one for |-m3>).
struct PortColumns {
    EstimateWithError p;
    EstimateWithError re_w;
    EstimateWithError im_w;
    EstimateWithError norm_w;     // |w|
    EstimateWithError norm_w_sq;  // |w|^2
    // noiseless theory values
    double p_theory = 0.0;
    double re_w_theory = 0.0;
    double im_w_theory = 0.0;
};

struct SweepRow {
    double x_deg = 0.0;  // independent variable (theta or gamma), degrees
    PortColumns plus;
    PortColumns minus;
    double p_plus_n2 = 0.0;  // amplified comparison curves
    double p_plus_n3 = 0.0;
    EstimateWithError k31, k32, k33, k34;
    lgi::KQuadruple k_theory{0, 0, 0, 0};
};

// Canonical bench description for a configuration (the full interference
// network: preparation, weak stage, pointer analysis, post-selection).
optics::BenchLayout build_network(const BenchConfig& cfg);

// Exact quantum intensities: i_plus/i_minus from the x-basis pointer run,
// i_r/i_l from the y-basis run, all at the configured post-selection port;
// reference = 1.
DetectorRecord run_noiseless(const BenchConfig& cfg);

// Multiplicative Gaussian noise: one common-mode factor per shot shared by
// all ports (recorded by the reference arm) plus independent per-port
// detection noise of the same relative magnitude. Deterministic per seed.
std::vector<DetectorRecord> run_noisy(const BenchConfig& cfg);

// Per-shot readout extraction and weak-branch inversion; mean over accepted
// shots, sigma by first-order propagation of the intensity standard errors
// through the readout ratios and the inversion Jacobian.
WeakEstimate estimate_weak_value(const std::vector<DetectorRecord>& records, Coupling c);

// Post-selection probability estimate from reference-normalized port totals.
// With the interaction on, port totals carry the cos^2 g + sin^2 g |w|^2
// factor of the pointer relations, so sweeps measure p from a separate
// coupling-off acquisition where the total equals |<post|pre>|^2 exactly.
EstimateWithError estimate_postselect_prob(const std::vector<DetectorRecord>& records);

enum class Exec { serial, parallel };

std::vector<SweepRow> sweep_theta(const BenchConfig& cfg_template,
                                  const std::vector<double>& thetas,
                                  Exec exec = Exec::serial);
std::vector<SweepRow> sweep_gamma(const BenchConfig& cfg_template,
                                  const std::vector<double>& gammas,
                                  Exec exec = Exec::serial);

// Per-row RNG stream derivation (splitmix64 of master seed and row index),
// identical under serial and parallel execution.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

namespace detail {
// Composite state just before the analyzers, cos t |U,H> + sin t |D,H>
// evolved through the weak-interaction stage.
StateVector evolved_state(double theta, double gamma);
// Intensity at (pointer outcome, post-selection port) for one basis.
// outcome 0 = +/R, outcome 1 = -/L.
double port_intensity(const StateVector& evolved, PointerBasis basis, int outcome,
                      PostPort port);
}  // namespace detail

}  // namespace lgsim::expsim
