#include "lgsim/bench.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lgsim::bench {

using optics::Arm;
using optics::BenchItem;
using optics::BenchLayout;
using optics::WavePlate;

namespace {

BenchItem parse_line(int line_no, const std::string& line) {
    std::istringstream ss(line);
    std::string keyword;
    ss >> keyword;
    if (keyword == "HWP" || keyword == "QWP") {
        std::string arm_s;
        double angle;
        if (!(ss >> arm_s >> angle))
            throw BenchParseError(line_no, "expected '" + keyword + " arm angle_deg'");
        Arm arm;
        try {
            arm = optics::arm_from_name(arm_s);
        } catch (const std::invalid_argument&) {
            throw BenchParseError(line_no, "unknown arm '" + arm_s + "'");
        }
        auto kind = keyword == "HWP" ? WavePlate::Kind::half : WavePlate::Kind::quarter;
        return BenchItem::plate(kind, arm, angle);
    }
    if (keyword == "PBS") return BenchItem::pbs();
    if (keyword == "BD") return BenchItem::bd();
    if (keyword == "DETECTOR") {
        std::string name;
        if (!(ss >> name)) throw BenchParseError(line_no, "DETECTOR requires a name");
        return BenchItem::detector(name);
    }
    throw BenchParseError(line_no, "unknown element '" + keyword + "'");
}

}  // namespace

BenchLayout parse(std::istream& in) {
    BenchLayout layout;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        BenchItem item = parse_line(line_no, line);
        // reject trailing tokens
        std::istringstream ss(line);
        std::string tok;
        int tokens = 0;
        while (ss >> tok) ++tokens;
        int expected = item.kind == BenchItem::Kind::plate ? 3
                      : item.kind == BenchItem::Kind::detector ? 2 : 1;
        if (tokens != expected) throw BenchParseError(line_no, "trailing tokens");
        layout.items.push_back(item);
    }
    if (layout.items.empty()) throw BenchParseError(line_no, "empty bench description");
    return layout;
}

BenchLayout parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BenchParseError(0, "cannot open bench file '" + path + "'");
    return parse(in);
}

BenchLayout parse_string(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

std::string serialize(const BenchLayout& layout) {
    std::ostringstream out;
    out << "# displacement_mm " << layout.displacement_mm << "\n";
    for (const auto& it : layout.items) {
        switch (it.kind) {
            case BenchItem::Kind::plate:
                out << (it.plate_kind == WavePlate::Kind::half ? "HWP" : "QWP") << " "
                    << optics::arm_name(it.arm) << " " << it.angle_deg << "\n";
                break;
            case BenchItem::Kind::pbs:
                out << "PBS\n";
                break;
            case BenchItem::Kind::bd:
                out << "BD\n";
                break;
            case BenchItem::Kind::detector:
                out << "DETECTOR " << it.name << "\n";
                break;
        }
    }
    return out.str();
}

BenchAngles interpret(const BenchLayout& layout) {
    int pbs_count = 0, bd_count = 0;
    bool have_theta = false, have_gamma = false, have_companion = false;
    double theta = 0.0, gamma = 0.0;
    for (const auto& it : layout.items) {
        if (it.kind == BenchItem::Kind::pbs) ++pbs_count;
        if (it.kind == BenchItem::Kind::bd) ++bd_count;
        if (it.kind != BenchItem::Kind::plate || it.plate_kind != WavePlate::Kind::half)
            continue;
        if (!have_theta && pbs_count >= 1 && bd_count == 0 && it.arm == Arm::both) {
            theta = 2.0 * deg2rad(it.angle_deg);
            have_theta = true;
        } else if (!have_gamma && bd_count >= 1 && it.arm == Arm::upper) {
            gamma = 2.0 * deg2rad(it.angle_deg);
            have_gamma = true;
        } else if (have_gamma && !have_companion && it.arm == Arm::lower &&
                   std::abs(2.0 * deg2rad(it.angle_deg) + gamma) < 1e-9) {
            have_companion = true;
        }
    }
    if (pbs_count < 2 || bd_count < 2)
        throw BenchParseError(0, "layout must contain at least two PBS and two BD elements");
    if (!have_theta) throw BenchParseError(0, "no preparation wave plate (H1) found");
    if (!have_gamma) throw BenchParseError(0, "no upper-arm coupling plate (H3) found");
    if (!have_companion)
        throw BenchParseError(0, "no matching lower-arm plate (H4 at -gamma/2) found");
    return BenchAngles{theta, gamma};
}

}  // namespace lgsim::bench
