#pragma once

namespace nmrqc {

/// Central numeric tolerances. Construction checks guard inputs we build
/// ourselves (hermiticity, trace normalization); equivalence checks compare
/// independently computed unitaries.
struct Tolerances {
    double construction = 1e-12;
    double equivalence = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

} // namespace nmrqc
