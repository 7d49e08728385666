// Command-line front end: theta/gamma sweeps, macrorealist bound tables, and
// single-configuration pipeline runs with CSV/JSON plot data.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lgsim/bench.hpp"
#include "lgsim/sweep_io.hpp"

namespace fs = std::filesystem;
using namespace lgsim;
using expsim::BenchConfig;
using expsim::PostPort;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSim = 3;
constexpr int kExitParse = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LGI_BENCH_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::vector<double> grid_deg(double start, double end, double step) {
    if (step <= 0.0) throw std::invalid_argument("step must be positive");
    std::vector<double> xs;
    for (double x = start; x <= end + 1e-9; x += step) xs.push_back(x);
    return xs;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

void write_manifest(const fs::path& dir, const std::string& stem, const std::string& command,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    std::vector<std::string> outputs) {
    io::RunManifest m;
    m.command = command;
    m.argv = argv;
    m.seed = seed;
    m.version = io::kArtifactVersion;
    m.outputs = std::move(outputs);
    write_file(dir / (stem + ".manifest.json"), io::to_json(m) + "\n");
}

struct CommonFlags {
    double noise = 0.0;
    int shots = 100;
    std::uint64_t seed = default_seed();
    std::string out_dir = ".";
    std::string format = "csv";
    bool parallel = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--noise", f.noise, "relative intensity noise (e.g. 0.01)");
    cmd->add_option("--shots", f.shots, "intensity readings per configuration");
    cmd->add_option("--seed", f.seed, "RNG seed (overrides LGI_BENCH_SEED)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--format", f.format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_flag("--parallel", f.parallel, "evaluate sweep rows in parallel");
}

void report_violations(const std::vector<expsim::SweepRow>& rows) {
    const char* names[4] = {"k31", "k32", "k33", "k34"};
    for (int i = 0; i < 4; ++i) {
        double best = 0.0, at = 0.0;
        for (const auto& r : rows) {
            double v = i == 0   ? r.k_theory.k31
                       : i == 1 ? r.k_theory.k32
                       : i == 2 ? r.k_theory.k33
                                : r.k_theory.k34;
            if (v < best) {
                best = v;
                at = r.x_deg;
            }
        }
        if (best < -1e-12)
            std::cout << "violated " << names[i] << ": min " << io::fmt(best) << " at "
                      << io::fmt(at) << " deg\n";
    }
}

int cmd_sweep_theta(const CommonFlags& f, double start, double end, double step,
                    double gamma_deg, int amplify, const std::vector<std::string>& argv) {
    BenchConfig cfg;
    cfg.gamma = deg2rad(gamma_deg);
    cfg.noise_rel = f.noise;
    cfg.shots = f.shots;
    cfg.seed = f.seed;
    cfg.amplification_n = amplify;

    std::vector<double> degs = grid_deg(start, end, step);
    std::vector<double> thetas;
    for (double d : degs) thetas.push_back(deg2rad(d));

    auto rows = expsim::sweep_theta(cfg, thetas,
                                    f.parallel ? expsim::Exec::parallel : expsim::Exec::serial);

    fs::create_directories(f.out_dir);
    fs::path dir(f.out_dir);
    std::vector<std::string> outputs;
    if (f.format == "csv" || f.format == "both") {
        std::ostringstream csv;
        io::write_theta_csv(rows, csv);
        write_file(dir / "theta_sweep.csv", csv.str());
        outputs.push_back((dir / "theta_sweep.csv").string());
    }
    if (f.format == "json" || f.format == "both") {
        write_file(dir / "theta_sweep.json", io::theta_rows_json(rows) + "\n");
        outputs.push_back((dir / "theta_sweep.json").string());
    }
    write_manifest(dir, "theta_sweep", "sweep-theta", argv, f.seed, outputs);
    report_violations(rows);
    return 0;
}

int cmd_sweep_gamma(const CommonFlags& f, double start, double end, double step,
                    double theta_deg, std::vector<double> gamma_list, const std::string& post,
                    const std::vector<std::string>& argv) {
    BenchConfig cfg;
    cfg.theta = deg2rad(theta_deg);
    cfg.post_port = post == "minus" ? PostPort::minus_m3 : PostPort::plus_m3;
    cfg.noise_rel = f.noise;
    cfg.shots = f.shots;
    cfg.seed = f.seed;

    std::vector<double> degs;
    if (!gamma_list.empty()) {
        degs = gamma_list;
    } else {
        for (double d : grid_deg(start, end, step)) degs.push_back(d);
    }
    std::vector<double> kept;
    for (double d : degs) {
        if (std::abs(d) < 1e-12) {
            std::cerr << "warning: gamma = 0 excluded (inversion undefined)\n";
            continue;
        }
        kept.push_back(d);
    }
    std::vector<double> gammas;
    for (double d : kept) gammas.push_back(deg2rad(d));

    auto rows = expsim::sweep_gamma(cfg, gammas,
                                    f.parallel ? expsim::Exec::parallel : expsim::Exec::serial);

    fs::create_directories(f.out_dir);
    fs::path dir(f.out_dir);
    std::vector<std::string> outputs;
    if (f.format == "csv" || f.format == "both") {
        std::ostringstream csv;
        io::write_gamma_csv(rows, cfg.post_port, csv);
        write_file(dir / "gamma_sweep.csv", csv.str());
        outputs.push_back((dir / "gamma_sweep.csv").string());
    }
    if (f.format == "json" || f.format == "both") {
        write_file(dir / "gamma_sweep.json", io::gamma_rows_json(rows, cfg.post_port) + "\n");
        outputs.push_back((dir / "gamma_sweep.json").string());
    }
    write_manifest(dir, "gamma_sweep", "sweep-gamma", argv, f.seed, outputs);
    return 0;
}

// Grid scan plus golden-section refinement of K_n over the precession angle.
std::pair<double, double> maximize_precession(int n) {
    double best_phi = 0.0, best = -1e30;
    const int grid = 720;
    for (int i = 1; i < grid; ++i) {
        double phi = kPi * i / grid;
        double v = lgi::quantum_kn_precession(n, phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    double a = best_phi - kPi / grid, b = best_phi + kPi / grid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (lgi::quantum_kn_precession(n, c) > lgi::quantum_kn_precession(n, d))
            b = d;
        else
            a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    double phi = 0.5 * (a + b);
    return {phi, lgi::quantum_kn_precession(n, phi)};
}

int cmd_bounds(const std::vector<int>& ns) {
    std::cout << "n,classical_min,classical_max,closed_form_ok,luders,kn_max,phi_max_deg\n";
    for (int n : ns) {
        if (n < 3 || n > 24) {
            std::cerr << "error: n must be in [3, 24]\n";
            return kExitUsage;
        }
        auto b = lgi::classical_bounds(n);
        double lo_cf = n % 2 ? -double(n) : -double(n - 2);
        double hi_cf = double(n - 2);
        bool ok = b.lower == lo_cf && b.upper == hi_cf;
        auto [phi, kn] = maximize_precession(n);
        std::cout << n << "," << io::fmt(b.lower) << "," << io::fmt(b.upper) << ","
                  << (ok ? "yes" : "NO") << "," << io::fmt(lgi::luders_bound(n)) << ","
                  << io::fmt(kn) << "," << io::fmt(rad2deg(phi)) << "\n";
    }
    return 0;
}

int cmd_pipeline(const CommonFlags& f, double theta_deg, double gamma_deg,
                 const std::string& post, const std::string& bench_path,
                 const std::vector<std::string>& argv) {
    BenchConfig cfg;
    cfg.theta = deg2rad(theta_deg);
    cfg.gamma = deg2rad(gamma_deg);
    if (!bench_path.empty()) {
        auto layout = bench::parse_file(bench_path);
        auto angles = bench::interpret(layout);
        cfg.theta = angles.theta;
        cfg.gamma = angles.gamma;
    }
    cfg.post_port = post == "minus" ? PostPort::minus_m3 : PostPort::plus_m3;
    cfg.noise_rel = f.noise;
    cfg.shots = f.shots;
    cfg.seed = f.seed;

    auto records = cfg.noise_rel == 0.0
                       ? std::vector<expsim::DetectorRecord>{expsim::run_noiseless(cfg)}
                       : expsim::run_noisy(cfg);

    fs::create_directories(f.out_dir);
    fs::path dir(f.out_dir);
    {
        std::ostringstream csv;
        csv << "i_plus,i_minus,i_r,i_l,reference\n";
        for (const auto& r : records)
            csv << io::fmt(r.i_plus) << "," << io::fmt(r.i_minus) << "," << io::fmt(r.i_r)
                << "," << io::fmt(r.i_l) << "," << io::fmt(r.reference) << "\n";
        write_file(dir / "detector_records.csv", csv.str());
    }

    // probabilities come from coupling-off acquisitions, where the port total
    // equals |<post|pre>|^2 exactly (with the interaction on it carries the
    // cos^2 g + sin^2 g |w|^2 factor of the pointer relations)
    auto acquire = [](const BenchConfig& c) {
        return c.noise_rel == 0.0 ? std::vector<expsim::DetectorRecord>{expsim::run_noiseless(c)}
                                  : expsim::run_noisy(c);
    };
    BenchConfig p_cfg = cfg;
    p_cfg.gamma = 0.0;
    p_cfg.seed = expsim::derive_seed(cfg.seed, 0xa0a0a0a0ULL);
    auto p_this = expsim::estimate_postselect_prob(acquire(p_cfg));

    // complementary port from its own runs
    BenchConfig other = cfg;
    other.post_port = cfg.post_port == PostPort::plus_m3 ? PostPort::minus_m3 : PostPort::plus_m3;
    other.seed = expsim::derive_seed(cfg.seed, 0x0f0f0f0fULL);
    auto other_records = acquire(other);
    BenchConfig other_p_cfg = other;
    other_p_cfg.gamma = 0.0;
    other_p_cfg.seed = expsim::derive_seed(cfg.seed, 0x0b0b0b0bULL);
    auto p_other = expsim::estimate_postselect_prob(acquire(other_p_cfg));

    expsim::EstimateWithError re_w{std::nan(""), std::nan("")}, im_w = re_w;
    if (p_this.value >= 1e-12) {
        try {
            auto w = expsim::estimate_weak_value(records, weakmeas::Coupling(cfg.gamma));
            re_w = w.re;
            im_w = w.im;
            if (w.rejected_shots > 0)
                std::cout << "rejected_shots: " << w.rejected_shots << "\n";
        } catch (const ZeroIntensity&) {
        }
    }
    if (std::isfinite(re_w.value))
        std::cout << "weak_value: " << io::fmt(re_w.value) << " +- " << io::fmt(re_w.sigma)
                  << "  (im " << io::fmt(im_w.value) << " +- " << io::fmt(im_w.sigma) << ")\n";
    else
        std::cout << "weak_value: undefined (orthogonal post-selection)\n";

    expsim::EstimateWithError re_other{std::nan(""), std::nan("")};
    if (p_other.value >= 1e-12) {
        try {
            auto w = expsim::estimate_weak_value(other_records, weakmeas::Coupling(cfg.gamma));
            re_other = w.re;
        } catch (const ZeroIntensity&) {
        }
    }

    bool this_is_plus = cfg.post_port == PostPort::plus_m3;
    const auto& p_plus = this_is_plus ? p_this : p_other;
    const auto& p_minus = this_is_plus ? p_other : p_this;
    const auto& w_plus = this_is_plus ? re_w : re_other;
    const auto& w_minus = this_is_plus ? re_other : re_w;

    auto term = [](const expsim::EstimateWithError& p, const expsim::EstimateWithError& w,
                   double sign) {
        if (!std::isfinite(w.value) || p.value <= 0.0)
            return expsim::EstimateWithError{std::max(2.0 * p.value, 0.0), 2.0 * p.sigma};
        return expsim::EstimateWithError{
            2.0 * p.value * (1.0 + sign * w.value),
            std::hypot(2.0 * (1.0 + sign * w.value) * p.sigma, 2.0 * p.value * w.sigma)};
    };
    expsim::EstimateWithError ks[4] = {term(p_plus, w_plus, -1.0), term(p_plus, w_plus, 1.0),
                                       term(p_minus, w_minus, -1.0), term(p_minus, w_minus, 1.0)};
    const char* names[4] = {"k31", "k32", "k33", "k34"};
    for (int i = 0; i < 4; ++i)
        std::cout << names[i] << ": " << io::fmt(ks[i].value) << " +- " << io::fmt(ks[i].sigma)
                  << "\n";
    for (int i = 0; i < 4; ++i)
        if (ks[i].value + ks[i].sigma < 0.0)
            std::cout << "LGI_VIOLATED " << names[i] << " (" << io::fmt(ks[i].value) << ")\n";

    write_manifest(dir, "pipeline", "pipeline", argv, f.seed,
                   {(dir / "detector_records.csv").string()});
    return 0;
}

int run(const std::vector<std::string>& args);

int cmd_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "error: cannot open manifest " << manifest_path << "\n";
        return kExitUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    io::RunManifest m = io::manifest_from_json(ss.str());
    return run(m.argv);
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Leggett-Garg weak-measurement interference simulator"};
    app.require_subcommand(1);

    // sweep-theta
    auto* st = app.add_subcommand("sweep-theta", "theta sweep of p, weak values and K3i");
    CommonFlags stf;
    double st_start = 0.0, st_end = 90.0, st_step = 1.0, st_gamma = 12.0;
    int st_amplify = 1;
    st->add_option("--start", st_start, "first theta, degrees");
    st->add_option("--end", st_end, "last theta, degrees");
    st->add_option("--step", st_step, "theta step, degrees");
    st->add_option("--gamma", st_gamma, "coupling angle, degrees");
    st->add_option("--amplify", st_amplify, "probability magnification factor");
    add_common(st, stf);

    // sweep-gamma
    auto* sg = app.add_subcommand("sweep-gamma", "coupling-strength sweep of the weak value");
    CommonFlags sgf;
    double sg_start = -24.0, sg_end = 24.0, sg_step = 4.0, sg_theta = 15.0;
    std::vector<double> sg_list;
    std::string sg_post = "plus";
    sg->add_option("--start", sg_start, "first gamma, degrees");
    sg->add_option("--end", sg_end, "last gamma, degrees");
    sg->add_option("--step", sg_step, "gamma step, degrees");
    sg->add_option("--theta", sg_theta, "preparation angle, degrees");
    sg->add_option("--gamma-list", sg_list, "explicit gamma values, degrees");
    sg->add_option("--post", sg_post, "post-selection port")
        ->check(CLI::IsMember({"plus", "minus"}));
    add_common(sg, sgf);

    // bounds
    auto* bo = app.add_subcommand("bounds", "classical and quantum K_n bounds");
    std::vector<int> bo_ns{3, 4, 5, 6};
    bo->add_option("--n", bo_ns, "measurement counts n (3..24)");

    // pipeline
    auto* pl = app.add_subcommand("pipeline", "single-configuration end-to-end run");
    CommonFlags plf;
    double pl_theta = 15.0, pl_gamma = 12.0;
    std::string pl_post = "plus", pl_bench;
    pl->add_option("--theta", pl_theta, "preparation angle, degrees");
    pl->add_option("--gamma", pl_gamma, "coupling angle, degrees");
    pl->add_option("--post", pl_post, "post-selection port")
        ->check(CLI::IsMember({"plus", "minus"}));
    pl->add_option("--bench", pl_bench, "bench description file");
    add_common(pl, plf);

    // rerun
    auto* rr = app.add_subcommand("rerun", "replay a run from its manifest");
    std::string rr_manifest;
    rr->add_option("manifest", rr_manifest, "manifest json path")->required();

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (st->parsed())
            return cmd_sweep_theta(stf, st_start, st_end, st_step, st_gamma, st_amplify,
                                   argv_copy);
        if (sg->parsed())
            return cmd_sweep_gamma(sgf, sg_start, sg_end, sg_step, sg_theta, sg_list, sg_post,
                                   argv_copy);
        if (bo->parsed()) return cmd_bounds(bo_ns);
        if (pl->parsed()) return cmd_pipeline(plf, pl_theta, pl_gamma, pl_post, pl_bench,
                                              argv_copy);
        if (rr->parsed()) return cmd_rerun(rr_manifest);
    } catch (const BenchParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSim;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}
