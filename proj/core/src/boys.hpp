#pragma once

#include <span>

namespace zfs::detail {

/// F_n(T) = integral_0^1 t^(2n) exp(-T t^2) dt for n = 0 .. out.size()-1.
void boys(double T, std::span<double> out);

}  // namespace zfs::detail
