#pragma once

#include <string>
#include <string_view>

namespace lavrentiev {

/// Shortest decimal text that parses back to the identical double.
std::string format_roundtrip(double value);

/// printf-style "%.6e", the fixed format of all CSV outputs.
std::string format_sci(double value);

/// Parses a double, rejecting trailing garbage. Accepts fractional decimal
/// exponents such as "1e-3.5" (meaning 10^-3.5), which is how regularization
/// parameters are usually quoted.
double parse_real(std::string_view text);

}  // namespace lavrentiev
