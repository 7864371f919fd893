#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gssvm {

/// Shortest decimal that round-trips the exact double (std::to_chars);
/// locale-independent, decimal point only.
std::string format_double(double v);

/// Locale-independent parse (std::from_chars); accepts an optional leading
/// '+' and requires the whole token to be consumed.
std::optional<double> parse_double(std::string_view token);
std::optional<int> parse_int(std::string_view token);

/// Whitespace-separated tokens (space, tab, CR).
std::vector<std::string_view> split_tokens(std::string_view line);

/// Comma-separated fields, no quoting; empty fields preserved.
std::vector<std::string_view> split_csv(std::string_view line);

}  // namespace gssvm
