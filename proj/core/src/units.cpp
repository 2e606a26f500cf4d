#include "zfskit/units.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "zfskit/error.hpp"

namespace zfs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Resource: return "resource limit";
    case ErrorKind::UnsupportedRepresentation: return "unsupported representation";
    case ErrorKind::PeriodicImage: return "periodic image error";
  }
  return "error";
}

double mhz_per(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::MHz: return 1.0;
    case EnergyUnit::Hartree: return constants::hartree_in_mhz;
    case EnergyUnit::InvCm: return constants::inv_cm_in_mhz;
    case EnergyUnit::MicroEV: return constants::micro_ev_in_mhz;
  }
  return 1.0;
}

double convert(double value, EnergyUnit from, EnergyUnit to) {
  if (from == to) return value;
  return value * (mhz_per(from) / mhz_per(to));
}

std::string_view to_string(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::MHz: return "MHz";
    case EnergyUnit::Hartree: return "Hartree";
    case EnergyUnit::InvCm: return "cm-1";
    case EnergyUnit::MicroEV: return "ueV";
  }
  return "MHz";
}

EnergyUnit parse_energy_unit(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "mhz") return EnergyUnit::MHz;
  if (s == "hartree" || s == "eh" || s == "ha") return EnergyUnit::Hartree;
  if (s == "cm-1" || s == "cm^-1" || s == "1/cm") return EnergyUnit::InvCm;
  if (s == "uev" || s == "µev" || s == "micro-ev") return EnergyUnit::MicroEV;
  fail(ErrorKind::Config, "unknown energy unit '" + std::string(text) + "' (expected MHz, cm-1, ueV or Hartree)");
}

}  // namespace zfs
