#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "zfskit/zfskit.hpp"

namespace zfs::cli {

using Json = nlohmann::ordered_json;

inline constexpr int results_schema_version = 1;

/// Numbers go through round_significant so repeated runs print identical text.
Json number(double x);
Json tensor_json(const SpinTensor& t);
Json parameters_json(const ZfsParameters& p);
Json engine_json(const CouplingResult& r, const EngineConfig& cfg);
Json blocks_json(const CouplingResult& r);

/// Reads a tensor object written by tensor_json, converted to `unit`.
SpinTensor tensor_from_json(const nlohmann::json& j, EnergyUnit unit = EnergyUnit::MHz);

void write_json(const Json& doc, std::ostream& out);

}  // namespace zfs::cli
