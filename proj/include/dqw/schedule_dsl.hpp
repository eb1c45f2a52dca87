#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dqw/evolution.hpp"

namespace dqw {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, std::string expected, std::string found);

    // Byte offset into the source, at most source.size().
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

  private:
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

/// Schedule grammar (whitespace allowed between tokens):
///
///   schedule := term (";" term)*
///   term     := kind ("^" positive-integer)?
///   kind     := "F(" angle ")" | "D" | "PF(" angle ")" | "PD" | "MIX(" angle ")"
///   angle    := decimal | "pi" | "pi/" positive-integer
///             | positive-integer "pi/" positive-integer
///
/// Terms are listed in time order, leftmost first: "PF(pi/30)^50 ; PD^50"
/// is fifty pawl steps followed by fifty disordered pawl steps. Angles are
/// folded into [0, 2pi).
Schedule parse_schedule(std::string_view text, std::uint64_t seed = 0, const PawlConfig& pawl = {});

double parse_angle(std::string_view text);

/// Canonical text; parse_schedule(format_schedule(s), s.seed, s.pawl) == s.
std::string format_schedule(const Schedule& schedule);

std::string format_angle(double theta);

}  // namespace dqw
