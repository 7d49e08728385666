#include "lgsim/sweep_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace lgsim::io {

using expsim::PostPort;
using expsim::SweepRow;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const std::vector<std::string> kThetaColumns = {
    "theta_deg",
    "p_plus", "p_plus_sigma", "p_plus_N2", "p_plus_N3",
    "p_minus", "p_minus_sigma",
    "re_w_plus", "re_w_plus_sigma", "im_w_plus", "im_w_plus_sigma",
    "re_w_minus", "re_w_minus_sigma", "im_w_minus", "im_w_minus_sigma",
    "k31", "k31_sigma", "k32", "k32_sigma", "k33", "k33_sigma", "k34", "k34_sigma",
    "p_plus_theory", "p_minus_theory",
    "re_w_plus_theory", "im_w_plus_theory", "re_w_minus_theory", "im_w_minus_theory",
    "k31_theory", "k32_theory", "k33_theory", "k34_theory",
};

const std::vector<std::string> kGammaColumns = {
    "gamma_deg",
    "re_w", "re_w_sigma", "im_w", "im_w_sigma",
    "norm_w", "norm_w_sigma", "norm_w_sq", "norm_w_sq_sigma",
    "re_w_theory", "im_w_theory", "norm_w_theory", "norm_w_sq_theory",
};

namespace {

std::vector<double> theta_row_values(const SweepRow& r) {
    return {
        r.x_deg,
        r.plus.p.value, r.plus.p.sigma, r.p_plus_n2, r.p_plus_n3,
        r.minus.p.value, r.minus.p.sigma,
        r.plus.re_w.value, r.plus.re_w.sigma, r.plus.im_w.value, r.plus.im_w.sigma,
        r.minus.re_w.value, r.minus.re_w.sigma, r.minus.im_w.value, r.minus.im_w.sigma,
        r.k31.value, r.k31.sigma, r.k32.value, r.k32.sigma,
        r.k33.value, r.k33.sigma, r.k34.value, r.k34.sigma,
        r.plus.p_theory, r.minus.p_theory,
        r.plus.re_w_theory, r.plus.im_w_theory, r.minus.re_w_theory, r.minus.im_w_theory,
        r.k_theory.k31, r.k_theory.k32, r.k_theory.k33, r.k_theory.k34,
    };
}

std::vector<double> gamma_row_values(const SweepRow& r, PostPort port) {
    const expsim::PortColumns& c = port == PostPort::plus_m3 ? r.plus : r.minus;
    double mag_th = std::hypot(c.re_w_theory, c.im_w_theory);
    return {
        r.x_deg,
        c.re_w.value, c.re_w.sigma, c.im_w.value, c.im_w.sigma,
        c.norm_w.value, c.norm_w.sigma, c.norm_w_sq.value, c.norm_w_sq.sigma,
        c.re_w_theory, c.im_w_theory, mag_th, mag_th * mag_th,
    };
}

void write_csv(const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows, std::ostream& out) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
}

std::string rows_json(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (std::isfinite(row[i]))
                obj[columns[i]] = row[i];
            else
                obj[columns[i]] = nullptr;
        }
        arr.push_back(obj);
    }
    return arr.dump(2);
}

}  // namespace

void write_theta_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    std::vector<std::vector<double>> vals;
    vals.reserve(rows.size());
    for (const auto& r : rows) vals.push_back(theta_row_values(r));
    write_csv(kThetaColumns, vals, out);
}

void write_gamma_csv(const std::vector<SweepRow>& rows, PostPort port, std::ostream& out) {
    std::vector<std::vector<double>> vals;
    vals.reserve(rows.size());
    for (const auto& r : rows) vals.push_back(gamma_row_values(r, port));
    write_csv(kGammaColumns, vals, out);
}

std::string theta_rows_json(const std::vector<SweepRow>& rows) {
    std::vector<std::vector<double>> vals;
    for (const auto& r : rows) vals.push_back(theta_row_values(r));
    return rows_json(kThetaColumns, vals);
}

std::string gamma_rows_json(const std::vector<SweepRow>& rows, PostPort port) {
    std::vector<std::vector<double>> vals;
    for (const auto& r : rows) vals.push_back(gamma_row_values(r, port));
    return rows_json(kGammaColumns, vals);
}

std::string to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["outputs"] = m.outputs;
    return j.dump(2);
}

RunManifest manifest_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

}  // namespace lgsim::io
