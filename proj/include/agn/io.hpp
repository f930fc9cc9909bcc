#ifndef AGN_IO_HPP
#define AGN_IO_HPP

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "agn/constants.hpp"
#include "agn/errors.hpp"
#include "agn/grid.hpp"
#include "agn/inequalities.hpp"
#include "agn/minimize.hpp"
#include "agn/rearrangement.hpp"

namespace agn {

using json = nlohmann::json;

// Grid file: {"dim": n, "half_width": L, "points_per_axis": N,
//             "order": "row-major", "data": [N^n reals]}.
inline json grid_to_json(const GridFunction& f) {
  json j;
  j["dim"] = f.spec().dim;
  j["half_width"] = f.spec().half_width;
  j["points_per_axis"] = f.spec().points_per_axis;
  j["order"] = "row-major";
  j["data"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

inline GridFunction grid_from_json(const json& j) {
  try {
    if (!j.is_object()) throw io_error("malformed_grid_file", "not an object");
    for (const char* key : {"dim", "half_width", "points_per_axis", "data"})
      if (!j.contains(key))
        throw io_error("malformed_grid_file",
                       std::string("missing field '") + key + "'");
    if (j.contains("order") && j.at("order") != "row-major")
      throw io_error("malformed_grid_file", "unsupported data order");
    GridSpec spec;
    spec.dim = j.at("dim").get<int>();
    spec.half_width = j.at("half_width").get<double>();
    spec.points_per_axis = j.at("points_per_axis").get<int>();
    spec.validate();
    auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != spec.cell_count())
      throw io_error("malformed_grid_file",
                     "data length " + std::to_string(data.size()) +
                         " does not match grid shape (expected " +
                         std::to_string(spec.cell_count()) + ")");
    return GridFunction(spec, std::move(data));
  } catch (const json::exception& e) {
    throw io_error("malformed_grid_file", e.what());
  }
}

inline void write_grid_file(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("io_error", "cannot open for writing: " + path);
  out << grid_to_json(f).dump() << "\n";
}

inline GridFunction read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("io_error", "cannot open for reading: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error("malformed_grid_file", e.what());
  }
  return grid_from_json(j);
}

inline json profile_to_json(const RearrangementProfile& profile) {
  json j;
  j["breakpoints"] = profile.breakpoints;
  j["levels"] = profile.levels;
  return j;
}

inline RearrangementProfile profile_from_json(const json& j) {
  try {
    RearrangementProfile p;
    p.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    p.levels = j.at("levels").get<std::vector<double>>();
    if (p.breakpoints.size() != p.levels.size() + 1)
      throw io_error("malformed_profile",
                     "breakpoints must have one more entry than levels");
    return p;
  } catch (const json::exception& e) {
    throw io_error("malformed_profile", e.what());
  }
}

inline json report_to_json(const InequalityReport& rep) {
  json j;
  j["inequality_id"] = to_string(rep.inequality_id);
  j["parameters"] = rep.parameters;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["ratio"] = rep.ratio;
  j["slack"] = rep.slack;
  j["quadrature_directions"] = rep.quadrature_directions;
  j["passed"] = rep.passed;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

inline json minimize_result_to_json(const MinimizeResult& result) {
  json j;
  j["energy"] = result.energy;
  j["k_opt"] = result.k_opt;
  j["iterations"] = result.iterations_used;
  j["converged"] = result.converged;
  return j;
}

inline json constant_set_to_json(const SharpConstantSet& set) {
  json j;
  j["omega_n"] = set.omega_n;
  j["c_np"] = set.c_np;
  const auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("theta", set.theta);
  put("alpha", set.alpha);
  put("beta", set.beta);
  put("C_npqs", set.C_npqs);
  put("c2", set.c2);
  put("c3", set.c3);
  put("c4", set.c4);
  put("delta", set.delta);
  return j;
}

inline json error_to_json(const error& e) {
  json j;
  j["error"]["code"] = e.code();
  j["error"]["message"] = e.what();
  return j;
}

}  // namespace agn

#endif  // AGN_IO_HPP
