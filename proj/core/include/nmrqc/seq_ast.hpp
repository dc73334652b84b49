#pragma once

#include "nmrqc/spin_ops.hpp"
#include "nmrqc/spin_system.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace nmrqc {

/// Angles live in degrees throughout the AST (the DSL's unit); they are
/// converted to radians only when propagators are built.
struct PulseEvent {
    std::string target;
    Axis axis = Axis::X;
    double angle_deg = 0.0;
    bool operator==(const PulseEvent&) const = default;
};

struct DelayEvent {
    double duration_s = 0.0;
    bool refocus = false;
    bool operator==(const DelayEvent&) const = default;
};

struct ZCompositeEvent {
    std::string target;
    double angle_deg = 0.0;
    bool operator==(const ZCompositeEvent&) const = default;
};

/// Direct coupling-evolution event: exp(i 2 theta Iza Izb) with theta given in
/// degrees. Accepted alongside refocused delays as a way to spell the
/// two-spin entangling step.
struct CoupleEvent {
    std::string a;
    std::string b;
    double theta_deg = 0.0;
    bool operator==(const CoupleEvent&) const = default;
};

using Event = std::variant<PulseEvent, DelayEvent, ZCompositeEvent, CoupleEvent>;

struct SourcePos {
    std::size_t line = 0;
    std::size_t col = 0;
};

/// Events in temporal order: events[0] is applied first. Source positions
/// parallel the event list and are excluded from equality.
struct SequenceAST {
    std::string name;
    std::vector<Event> events;
    std::vector<SourcePos> positions;

    bool operator==(const SequenceAST& other) const {
        return name == other.name && events == other.events;
    }
};

/// A parsed file: one spin system plus any number of sequences.
struct ParseResult {
    SpinSystem system;
    std::vector<SequenceAST> sequences;
};

double deg_to_rad(double degrees);

/// Render back to DSL text. Numbers print with enough digits that reparsing
/// reproduces the same doubles bit for bit.
std::string print_sequence(const SequenceAST& seq);
std::string print(const ParseResult& file);

} // namespace nmrqc
