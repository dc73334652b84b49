#include "nmrqc/seq_ast.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

namespace nmrqc {

namespace {

std::string fmt_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct EventPrinter {
    std::ostringstream& out;

    void operator()(const PulseEvent& e) const {
        out << "pulse " << e.target << ' ' << axis_to_char(e.axis) << ' '
            << fmt_number(e.angle_deg) << '\n';
    }
    void operator()(const DelayEvent& e) const {
        out << "delay " << fmt_number(e.duration_s);
        if (e.refocus) {
            out << " refocus";
        }
        out << '\n';
    }
    void operator()(const ZCompositeEvent& e) const {
        out << "zpulse " << e.target << ' ' << fmt_number(e.angle_deg) << '\n';
    }
    void operator()(const CoupleEvent& e) const {
        out << "couple " << e.a << ' ' << e.b << ' ' << fmt_number(e.theta_deg) << '\n';
    }
};

} // namespace

double deg_to_rad(double degrees) {
    return degrees * std::numbers::pi / 180.0;
}

std::string print_sequence(const SequenceAST& seq) {
    std::ostringstream out;
    out << "sequence " << seq.name << " {\n";
    for (const Event& e : seq.events) {
        out << "    ";
        std::visit(EventPrinter{out}, e);
    }
    out << "}\n";
    return out.str();
}

std::string print(const ParseResult& file) {
    std::ostringstream out;
    const SpinSystem& sys = file.system;
    out << "system {\n";
    for (std::size_t k = 0; k < sys.nspins(); ++k) {
        out << "    spin " << sys.spin(k).label << " \"" << sys.spin(k).isotope << "\"\n";
    }
    for (std::size_t k = 0; k < sys.nspins(); ++k) {
        const double hz = sys.offset_rad_s(k) / (2.0 * std::numbers::pi);
        if (hz != 0.0) {
            out << "    offset " << sys.spin(k).label << ' ' << fmt_number(hz) << " Hz\n";
        }
    }
    for (const auto& [i, j] : sys.coupled_pairs()) {
        out << "    J " << sys.spin(i).label << ' ' << sys.spin(j).label << ' '
            << fmt_number(sys.coupling_hz(i, j)) << " Hz\n";
    }
    out << "}\n";
    for (const SequenceAST& seq : file.sequences) {
        out << '\n' << print_sequence(seq);
    }
    return out.str();
}

} // namespace nmrqc
