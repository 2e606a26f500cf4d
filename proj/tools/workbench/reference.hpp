#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace zfs::cli {

/// Published spin-spin D (and E where non-zero) for point defects, in MHz:
/// uncorrected and contamination-corrected all-electron DFT values next to
/// experiment. Shipped for comparison only; nothing computed here is meant to
/// reproduce them.
struct ReferenceRecord {
  std::string_view label;
  int twice_S;
  double D_uncorrected;
  double D_corrected;
  double D_expt;
  std::optional<double> E_uncorrected;
  std::optional<double> E_corrected;
  std::optional<double> E_expt;
  std::string_view source;
};

std::span<const ReferenceRecord> reference_records();

/// Exact label match, falling back to a case-insensitive one.
const ReferenceRecord* find_reference(std::string_view label);

}  // namespace zfs::cli
