#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zfskit/engine.hpp"
#include "zfskit/orbital_set.hpp"
#include "zfskit/spin_tensor.hpp"

namespace zfs {

struct DecontaminationReport {
  SpinQuantum S;
  SpinTensor d_high;                   // mS = S
  std::vector<SpinTensor> d_low_each;  // one per mS = S - 1 configuration
  std::vector<double> weights;         // normalized, same length as d_low_each
  SpinTensor d_low_mean;
  SpinTensor D_tilde;                  // (d_high - d_low_mean) / (2S - 1)
  SpinTensor D_uncorrected;            // d_high / (S (S - 1/2))
  ZfsParameters tilde_parameters;
  ZfsParameters uncorrected_parameters;
};

/// One mS = S - 1 set per occupied block-I spin-up orbital, each made by
/// flip_occupation. Throws InvalidInput unless mS == S >= 1.
std::vector<OrbitalSet> enumerate_low_configs(const OrbitalSet& set);

/// Symmetrized mean of broken-symmetry tensors (delegates to symmetry_average).
SpinTensor bs_symmetrize(std::span<const SpinTensor> d_lows, const SymmetryGroup& group,
                         std::span<const double> weights = {});

/// D_tilde = (d_high - mean(d_lows)) / (2S - 1). The mean is symmetrized with
/// `group` when given and uses `weights` (equal when empty).
DecontaminationReport decontaminate(const SpinTensor& d_high, std::span<const SpinTensor> d_lows,
                                    SpinQuantum S,
                                    const std::optional<SymmetryGroup>& group = std::nullopt,
                                    std::span<const double> weights = {});

/// Engine runs for an mS = S set and its auto-flipped mS = S - 1 configurations.
struct AutoFlipRun {
  CouplingResult high;
  std::vector<CouplingResult> lows;
  DecontaminationReport report;
};

AutoFlipRun decontaminate_auto_flip(const OrbitalSet& high, const EngineConfig& cfg = {},
                                    const std::optional<SymmetryGroup>& group = std::nullopt,
                                    std::span<const double> weights = {});

}  // namespace zfs
