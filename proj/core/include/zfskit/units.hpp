#pragma once

#include <string_view>

namespace zfs {

enum class EnergyUnit { MHz, Hartree, InvCm, MicroEV };

/// CODATA 2018 values. Every unit conversion in the project goes through this table.
namespace constants {
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double hartree_in_mhz = 6.579683920502e9;
inline constexpr double inv_cm_in_mhz = 2.99792458e4;
inline constexpr double micro_ev_in_mhz = 241.7989242;
inline constexpr double bohr_in_angstrom = 0.529177210903;
}  // namespace constants

/// Size of one `unit` expressed in MHz.
double mhz_per(EnergyUnit unit);

double convert(double value, EnergyUnit from, EnergyUnit to);

std::string_view to_string(EnergyUnit unit);

/// Accepts "MHz", "Hartree"/"Eh", "cm-1", "ueV"/"µeV" (case-insensitive).
EnergyUnit parse_energy_unit(std::string_view text);

}  // namespace zfs
