#include "zfskit/decontamination.hpp"

#include <string>

#include "zfskit/error.hpp"

namespace zfs {

std::vector<OrbitalSet> enumerate_low_configs(const OrbitalSet& set) {
  if (set.mS() != set.S()) {
    fail(ErrorKind::InvalidInput, "correction starts from the maximal projection: mS = " + to_string(set.mS()) +
                                      " but S = " + to_string(set.S()));
  }
  if (set.S().twice() < 2) fail(ErrorKind::InvalidInput, "correction needs S >= 1, got S = " + to_string(set.S()));
  std::vector<OrbitalSet> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& e = set[i];
    if (e.block == Block::I && e.spin == SpinChannel::Up && e.occupied()) out.push_back(flip_occupation(set, i));
  }
  return out;
}

SpinTensor bs_symmetrize(std::span<const SpinTensor> d_lows, const SymmetryGroup& group,
                         std::span<const double> weights) {
  return symmetry_average(d_lows, group, weights);
}

DecontaminationReport decontaminate(const SpinTensor& d_high, std::span<const SpinTensor> d_lows, SpinQuantum S,
                                    const std::optional<SymmetryGroup>& group, std::span<const double> weights) {
  if (d_lows.empty()) fail(ErrorKind::InvalidInput, "decontaminate: no mS = S-1 tensors supplied");
  if (S.twice() < 2) fail(ErrorKind::InvalidInput, "decontaminate needs S >= 1, got S = " + to_string(S));
  for (const auto& t : d_lows) {
    if (t.unit() != d_high.unit()) fail(ErrorKind::InvalidInput, "decontaminate: unit mismatch between tensors");
  }

  DecontaminationReport r;
  r.S = S;
  r.d_high = d_high;
  r.d_low_each.assign(d_lows.begin(), d_lows.end());
  double wsum = 0.0;
  for (std::size_t i = 0; i < d_lows.size(); ++i) wsum += weights.empty() ? 1.0 : weights[i];
  for (std::size_t i = 0; i < d_lows.size(); ++i) r.weights.push_back((weights.empty() ? 1.0 : weights[i]) / wsum);

  r.d_low_mean = bs_symmetrize(d_lows, group.value_or(SymmetryGroup::identity()), weights);
  // 2S - 1 with S = twice/2
  r.D_tilde = (d_high - r.d_low_mean) / static_cast<double>(S.twice() - 1);
  r.D_uncorrected = d_to_D(d_high, S);
  r.tilde_parameters = extract_parameters(r.D_tilde);
  r.uncorrected_parameters = extract_parameters(r.D_uncorrected);
  return r;
}

AutoFlipRun decontaminate_auto_flip(const OrbitalSet& high, const EngineConfig& cfg,
                                    const std::optional<SymmetryGroup>& group, std::span<const double> weights) {
  const std::vector<OrbitalSet> lows = enumerate_low_configs(high);
  if (!weights.empty() && weights.size() != lows.size()) {
    fail(ErrorKind::Config, std::to_string(weights.size()) + " weights given for " + std::to_string(lows.size()) +
                                " mS = S-1 configurations");
  }
  AutoFlipRun run{assemble_d(high, cfg), {}, {}};
  std::vector<SpinTensor> d_lows;
  for (const auto& low : lows) {
    run.lows.push_back(assemble_d(low, cfg));
    d_lows.push_back(run.lows.back().d_total);
  }
  run.report = decontaminate(run.high.d_total, d_lows, high.S(), group, weights);
  return run;
}

}  // namespace zfs
