#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lgsim/expsim.hpp"

namespace lgsim::io {

// Fixed-format numeric text used by every emitter ("%.12g"); stable across
// runs so golden files and byte-identity checks hold.
std::string fmt(double v);

// Column order is part of the stable output contract; do not reorder.
extern const std::vector<std::string> kThetaColumns;
extern const std::vector<std::string> kGammaColumns;

void write_theta_csv(const std::vector<expsim::SweepRow>& rows, std::ostream& out);
void write_gamma_csv(const std::vector<expsim::SweepRow>& rows, expsim::PostPort port,
                     std::ostream& out);

std::string theta_rows_json(const std::vector<expsim::SweepRow>& rows);
std::string gamma_rows_json(const std::vector<expsim::SweepRow>& rows, expsim::PostPort port);

// Reproducibility sidecar written next to every output file. `argv` holds the
// fully resolved command line (seed included), so a run can be replayed
// exactly from the manifest alone.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::string> outputs;
};

std::string to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

inline const char* kArtifactVersion = "0.1.0";

}  // namespace lgsim::io
