#pragma once

#include <iosfwd>
#include <string>

#include "lgsim/optics.hpp"

namespace lgsim::bench {

// Text format, one element per line:
//   HWP <upper|lower|both> <angle_deg>
//   QWP <upper|lower|both> <angle_deg>
//   PBS
//   BD
//   DETECTOR <name>
// '#' starts a comment; blank lines are ignored. Unknown keywords are
// rejected with their line number (BenchParseError).
optics::BenchLayout parse(std::istream& in);
optics::BenchLayout parse_file(const std::string& path);
optics::BenchLayout parse_string(const std::string& text);

std::string serialize(const optics::BenchLayout& layout);

// Preparation and coupling angles implied by a canonical layout: theta is
// twice the first wave-plate angle after the source PBS, gamma twice the first
// upper-arm plate angle after the first BD. The H4 = -gamma/2 companion and
// the overall PBS/BD structure are validated.
struct BenchAngles {
    double theta;  // radians
    double gamma;  // radians
};
BenchAngles interpret(const optics::BenchLayout& layout);

}  // namespace lgsim::bench
