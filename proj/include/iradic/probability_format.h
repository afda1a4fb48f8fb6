/// @file
/// Text forms of probabilities and frequencies.
#pragma once

#include <optional>
#include <string>

namespace iradic {

/// Report form: uppercase E-notation, three fractional mantissa digits and an
/// exponent of at least two digits, e.g. "5.388E-07". Rounding follows the C
/// library, which rounds the exact binary value half-to-even.
/// Throws DomainError on negative or non-finite input.
std::string render_probability(double value);

/// Model-file form: the report form when it reads back to the same double,
/// otherwise the shortest longer mantissa that does.
std::string serialize_probability(double value);

/// Parses decimal or scientific notation ("0.001", "1E-3", "1.000e-03").
/// Returns nullopt on malformed text or overflow.
std::optional<double> parse_number(const std::string& text);

/// Signed percentage with two decimals ("-70.38%"). Zero renders as "0".
std::string render_percent(double fraction);

}  // namespace iradic
