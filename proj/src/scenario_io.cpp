#include "sscr/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sscr {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
  }
}

const json& get_required(const json& obj, const std::string& key,
                         const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ValidationError("missing key '" + key + "' in " + where);
  return *it;
}

Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw ValidationError(where + " must be an array of 3 numbers");
  return Vec3(j[0].get<Real>(), j[1].get<Real>(), j[2].get<Real>());
}

Material parse_material(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"name", "reflection_loss_db", "diffuse_gain_scale"}, where);
  Material m;
  m.name = get_required(j, "name", where).get<std::string>();
  m.reflection_loss_db = get_required(j, "reflection_loss_db", where).get<Real>();
  m.diffuse_gain_scale = get_required(j, "diffuse_gain_scale", where).get<Real>();
  return m;
}

Facade parse_facade(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"corner", "edge_u", "edge_v", "material"}, where);
  Facade f;
  f.corner = parse_vec3(get_required(j, "corner", where), where + ".corner");
  f.edge_u = parse_vec3(get_required(j, "edge_u", where), where + ".edge_u");
  f.edge_v = parse_vec3(get_required(j, "edge_v", where), where + ".edge_v");
  f.material = parse_material(get_required(j, "material", where), where + ".material");
  return f;
}

Trajectory parse_trajectory(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"waypoints"}, where);
  const json& wps = get_required(j, "waypoints", where);
  if (!wps.is_array()) throw ValidationError(where + ".waypoints must be an array");
  Trajectory traj;
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const std::string wp_where = where + ".waypoints[" + std::to_string(i) + "]";
    reject_unknown_keys(wps[i], {"t", "position"}, wp_where);
    Waypoint wp;
    wp.t = get_required(wps[i], "t", wp_where).get<Real>();
    wp.position = parse_vec3(get_required(wps[i], "position", wp_where),
                             wp_where + ".position");
    traj.waypoints.push_back(wp);
  }
  return traj;
}

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json material_json(const Material& m) {
  return {{"name", m.name},
          {"reflection_loss_db", m.reflection_loss_db},
          {"diffuse_gain_scale", m.diffuse_gain_scale}};
}

json trajectory_json(const Trajectory& t) {
  json wps = json::array();
  for (const auto& wp : t.waypoints)
    wps.push_back({{"t", wp.t}, {"position", vec3_json(wp.position)}});
  return {{"waypoints", wps}};
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("scenario root must be an object");

  reject_unknown_keys(root,
                      {"grid", "facades", "boxes", "scatterers", "tx_trajectory",
                       "rx_trajectory", "scatter_config", "seed"},
                      "scenario");

  Scenario sc;

  const json& grid = get_required(root, "grid", "scenario");
  reject_unknown_keys(grid, {"M", "Q", "t_snap", "bandwidth_B", "carrier_fc"}, "grid");
  sc.grid.snapshots_m = get_required(grid, "M", "grid").get<int>();
  sc.grid.freq_samples_q = get_required(grid, "Q", "grid").get<int>();
  sc.grid.t_snap_s = get_required(grid, "t_snap", "grid").get<Real>();
  sc.grid.bandwidth_hz = get_required(grid, "bandwidth_B", "grid").get<Real>();
  sc.grid.carrier_hz = get_required(grid, "carrier_fc", "grid").get<Real>();

  if (root.contains("facades")) {
    const json& facades = root["facades"];
    for (std::size_t i = 0; i < facades.size(); ++i)
      sc.facades.push_back(parse_facade(facades[i], "facades[" + std::to_string(i) + "]"));
  }
  if (root.contains("boxes")) {
    const json& boxes = root["boxes"];
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const std::string where = "boxes[" + std::to_string(i) + "]";
      reject_unknown_keys(boxes[i], {"min", "max", "material"}, where);
      AxisAlignedBox box;
      box.min = parse_vec3(get_required(boxes[i], "min", where), where + ".min");
      box.max = parse_vec3(get_required(boxes[i], "max", where), where + ".max");
      box.material = parse_material(get_required(boxes[i], "material", where),
                                    where + ".material");
      if ((box.max - box.min).minCoeff() <= 0)
        throw ValidationError(where + ": box max must exceed min componentwise");
      for (const Facade& f : box_facades(box)) sc.facades.push_back(f);
    }
  }
  if (root.contains("scatterers")) {
    const json& scatterers = root["scatterers"];
    for (std::size_t i = 0; i < scatterers.size(); ++i) {
      const std::string where = "scatterers[" + std::to_string(i) + "]";
      reject_unknown_keys(scatterers[i], {"position", "velocity", "gain_dbsm", "kind"},
                          where);
      DiscreteScatterer s;
      s.position = parse_vec3(get_required(scatterers[i], "position", where),
                              where + ".position");
      if (scatterers[i].contains("velocity"))
        s.velocity = parse_vec3(scatterers[i]["velocity"], where + ".velocity");
      s.gain_dbsm = get_required(scatterers[i], "gain_dbsm", where).get<Real>();
      const std::string kind = get_required(scatterers[i], "kind", where).get<std::string>();
      if (kind == "static")
        s.kind = ScattererKind::kStatic;
      else if (kind == "mobile")
        s.kind = ScattererKind::kMobile;
      else
        throw ValidationError(where + ".kind must be 'static' or 'mobile'");
      sc.discrete_scatterers.push_back(s);
    }
  }

  sc.tx_trajectory = parse_trajectory(get_required(root, "tx_trajectory", "scenario"),
                                      "tx_trajectory");
  sc.rx_trajectory = parse_trajectory(get_required(root, "rx_trajectory", "scenario"),
                                      "rx_trajectory");

  if (root.contains("scatter_config")) {
    const json& cfg = root["scatter_config"];
    reject_unknown_keys(cfg, {"density_per_m2", "gain_mean_db", "gain_std_db",
                              "rng_stream_label"},
                        "scatter_config");
    sc.scatter_config.density_per_m2 =
        get_required(cfg, "density_per_m2", "scatter_config").get<Real>();
    sc.scatter_config.gain_mean_db =
        get_required(cfg, "gain_mean_db", "scatter_config").get<Real>();
    sc.scatter_config.gain_std_db =
        get_required(cfg, "gain_std_db", "scatter_config").get<Real>();
    if (cfg.contains("rng_stream_label"))
      sc.scatter_config.rng_stream_label = cfg["rng_stream_label"].get<std::string>();
  }

  sc.seed = get_required(root, "seed", "scenario").get<std::uint64_t>();

  validate(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_json(const Scenario& sc) {
  json root;
  root["grid"] = {{"M", sc.grid.snapshots_m},
                  {"Q", sc.grid.freq_samples_q},
                  {"t_snap", sc.grid.t_snap_s},
                  {"bandwidth_B", sc.grid.bandwidth_hz},
                  {"carrier_fc", sc.grid.carrier_hz}};
  json facades = json::array();
  for (const auto& f : sc.facades)
    facades.push_back({{"corner", vec3_json(f.corner)},
                       {"edge_u", vec3_json(f.edge_u)},
                       {"edge_v", vec3_json(f.edge_v)},
                       {"material", material_json(f.material)}});
  root["facades"] = facades;
  root["boxes"] = json::array();  // expanded into facades at load
  json scatterers = json::array();
  for (const auto& s : sc.discrete_scatterers)
    scatterers.push_back(
        {{"position", vec3_json(s.position)},
         {"velocity", vec3_json(s.velocity)},
         {"gain_dbsm", s.gain_dbsm},
         {"kind", s.kind == ScattererKind::kStatic ? "static" : "mobile"}});
  root["scatterers"] = scatterers;
  root["tx_trajectory"] = trajectory_json(sc.tx_trajectory);
  root["rx_trajectory"] = trajectory_json(sc.rx_trajectory);
  root["scatter_config"] = {{"density_per_m2", sc.scatter_config.density_per_m2},
                            {"gain_mean_db", sc.scatter_config.gain_mean_db},
                            {"gain_std_db", sc.scatter_config.gain_std_db},
                            {"rng_stream_label", sc.scatter_config.rng_stream_label}};
  root["seed"] = sc.seed;
  return root.dump(2) + "\n";
}

}  // namespace sscr
