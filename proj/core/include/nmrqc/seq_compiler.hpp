#pragma once

#include "nmrqc/complex_matrix.hpp"
#include "nmrqc/seq_ast.hpp"
#include "nmrqc/spin_system.hpp"

#include <cstddef>

namespace nmrqc {

/// Product of the event propagators with the rightmost factor the first
/// event, i.e. U = U_n ... U_2 U_1. Duration counts delays only; pulses are
/// instantaneous in the hard-pulse idealization.
struct CompiledUnitary {
    ComplexMatrix matrix;
    std::size_t event_count = 0;
    double total_duration_s = 0.0;
};

CompiledUnitary compile(const SequenceAST& ast, const SpinSystem& sys);

/// Replace every zpulse(theta) by the exact three-pulse sandwich
/// [pulse y -90, pulse x theta, pulse y +90] on the same target. Equality is
/// entrywise, not merely up to phase; other events pass through untouched.
SequenceAST expand_composite_z(const SequenceAST& ast);

/// Peephole cleanup, applied to fixpoint: (a) cancel adjacent inverse pulses
/// (angles summing to 0 mod 720 degrees), (b) merge adjacent pulses on the
/// same target and axis, (c) drop 0-mod-720-degree pulses and zero-length
/// delays. The 720-degree period keeps every rewrite entrywise exact on the
/// spinor double cover. Never increases the event count.
SequenceAST optimize(const SequenceAST& ast, const SpinSystem& sys);

} // namespace nmrqc
