#include "serialize.hpp"

namespace zfs::cli {

Json number(double x) { return round_significant(x); }

Json tensor_json(const SpinTensor& t) {
  Json c = Json::array();
  for (double v : t.row_major()) c.push_back(number(v));
  return Json{{"components", c}, {"unit", std::string(to_string(t.unit()))}};
}

Json parameters_json(const ZfsParameters& p) {
  auto row = [&](int i) { return Json::array({number(p.axes(i, 0)), number(p.axes(i, 1)), number(p.axes(i, 2))}); };
  return Json{{"D", number(p.D)},
              {"E", number(p.E)},
              {"unit", std::string(to_string(p.unit))},
              {"axes", {{"x", row(0)}, {"y", row(1)}, {"z", row(2)}}},
              {"degenerate", p.degenerate}};
}

Json engine_json(const CouplingResult& r, const EngineConfig& cfg) {
  Json e{{"path", std::string(to_string(r.method))},
         {"exchange_scope", std::string(to_string(r.exchange_scope))},
         {"representation", r.grid ? "grid" : "analytic"}};
  if (r.grid) e["grid_shape"] = Json::array({r.grid->shape[0], r.grid->shape[1], r.grid->shape[2]});
  if (r.cutoff) e["cutoff_bohr"] = number(*r.cutoff);
  if (r.grid && r.method == KernelPath::Direct) e["screening"] = number(cfg.screening);
  return e;
}

Json blocks_json(const CouplingResult& r) {
  Json b;
  for (BlockPair p : {BlockPair::I_I, BlockPair::I_II, BlockPair::II_II}) {
    b[std::string(to_string(p))] = tensor_json(r.block(p));
  }
  return b;
}

SpinTensor tensor_from_json(const nlohmann::json& j, EnergyUnit unit) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array() || j["components"].size() != 9) {
    fail(ErrorKind::Parse, "tensor object needs a 9-element \"components\" array");
  }
  Matrix3 m;
  for (int i = 0; i < 9; ++i) {
    if (!j["components"][i].is_number()) fail(ErrorKind::Parse, "non-numeric tensor component");
    m(i / 3, i % 3) = j["components"][i].get<double>();
  }
  const EnergyUnit from = j.contains("unit") && j["unit"].is_string()
                              ? parse_energy_unit(j["unit"].get<std::string>())
                              : EnergyUnit::MHz;
  return traceless_project(m, from).in(unit);
}

void write_json(const Json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

}  // namespace zfs::cli
