#pragma once

#include "nmrqc/complex_matrix.hpp"
#include "nmrqc/seq_compiler.hpp"

namespace nmrqc {

/// Canonical two-qubit CNOT with the control as the first tensor factor.
ComplexMatrix cnot_matrix();

/// True iff u = e^{i phi} v for a single phase phi: |tr(u+ v)|/dim reaches 1
/// within tol. Both arguments must be unitary.
bool equivalent_global_phase(const ComplexMatrix& u, const ComplexMatrix& v, double tol = 1e-9);
bool equivalent_global_phase(const CompiledUnitary& u, const CompiledUnitary& v, double tol = 1e-9);

/// True iff D1 u D2 = v for some diagonal unitaries D1 (row phases) and D2
/// (column phases). Magnitude patterns are compared first; phases are then
/// solved by propagation over the row/column graph and the witness is checked
/// entrywise. Entries below 1e-6 in magnitude are treated as structural zeros.
bool equivalent_up_to_diagonal_phases(const ComplexMatrix& u, const ComplexMatrix& v,
                                      double tol = 1e-9);
bool equivalent_up_to_diagonal_phases(const CompiledUnitary& u, const CompiledUnitary& v,
                                      double tol = 1e-9);

} // namespace nmrqc
