#pragma once

namespace nmrqc {

/// Sign conventions for pulse propagators. A rotation by angle theta about
/// axis a on spin k compiles to exp(sign * i * theta * I_a^{(k)}), where sign
/// is xy_sign for transverse pulses and z_sign for z pulses (native or
/// composite). Free evolution and coupling periods are not configurable: they
/// always use exp(+i H t), the form the coupling closed form is written in.
///
/// The frozen values below are the unique combination, together with
/// control-spin-first declaration order, under which the shipped CNOT
/// fixtures reproduce their reference matrices entrywise. The selection is
/// re-derived by the convention-search regression test; see CONVENTIONS.md.
struct RotationConvention {
    double xy_sign = +1.0;
    double z_sign = +1.0;
};

inline constexpr RotationConvention kFrozenConvention{};

} // namespace nmrqc
