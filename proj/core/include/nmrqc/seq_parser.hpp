#pragma once

#include "nmrqc/seq_ast.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmrqc {

/// Syntax or resolution failure with 1-based source location.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::size_t col, const std::string& message);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t col() const noexcept { return col_; }

  private:
    std::size_t line_;
    std::size_t col_;
};

/// Parse a pulse-program file: one `system { ... }` block followed by any
/// number of `sequence NAME { ... }` blocks. All spin labels are resolved
/// against the system block; `#` starts a comment. Delay durations accept
/// arithmetic over the declared couplings, e.g. `delay 1/(2*J) refocus`
/// (bare J requires exactly one coupling; J(A,B) names a pair).
ParseResult parse(const std::string& text);

} // namespace nmrqc
