// Deterministic numeric formatting and tiny CSV/digest helpers. All output
// paths funnel through these so repeated runs are byte-identical.
#pragma once

#include <cstdint>
#include <string>

namespace ssm {

/// Fixed 17-significant-digit decimal (scientific), locale-independent.
/// Round-trips any double exactly.
std::string format_sig17(double value);

/// FNV-1a 64-bit over a byte string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ssm
