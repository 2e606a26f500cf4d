#pragma once

#include <string>
#include <string_view>

namespace zfs {

/// Fixed textual form used in every output file: 12 significant digits, and
/// -0 printed as 0.
std::string format_number(double x);

/// Rounds to 12 significant digits, so JSON writers emit stable text.
double round_significant(double x);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

}  // namespace zfs
