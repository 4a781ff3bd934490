#include "dockbot/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dockbot/errors.hpp"
#include "json.hpp"

namespace dockbot {

namespace {

using json = nlohmann::json;

std::string escape_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Run a sub-type's own validation and re-raise its complaint at `where`.
template <class F>
void validated(const std::string& where, F&& check) {
  try {
    check();
  } catch (const InvalidInputError& e) {
    throw ConfigError(where.empty() ? "/" : where, e.what());
  } catch (const GeometryError& e) {
    throw ConfigError(where.empty() ? "/" : where, e.what());
  }
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw ConfigError(where, "expected a number");
  }
  return v.get<double>();
}

Vec2 as_vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(where, "expected [x, y]");
  }
  return {as_number(v[0], where + "/0"), as_number(v[1], where + "/1")};
}

Pose as_pose(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError(where, "expected [x, y, theta]");
  }
  return {as_number(v[0], where + "/0"), as_number(v[1], where + "/1"), as_number(v[2], where + "/2")};
}

/// One JSON object; tracks which keys were consumed so leftovers can be reported.
class Block {
 public:
  Block(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) {
      throw ConfigError(path(), "expected an object");
    }
  }

  std::string path() const { return where_.empty() ? "/" : where_; }
  std::string at(std::string_view key) const { return where_ + "/" + escape_token(key); }

  const json* find(const std::string& key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) {
      throw ConfigError(at(key), "missing required field '" + key + "'");
    }
    return *v;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      out = as_number(*v, at(key));
    }
  }

  void required_number(const std::string& key, double& out) { out = as_number(require(key), at(key)); }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) {
        throw ConfigError(at(key), "expected an integer");
      }
      out = v->get<int>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) {
        throw ConfigError(at(key), "expected true or false");
      }
      out = v->get<bool>();
    }
  }

  std::optional<std::string> string(const std::string& key) {
    if (const json* v = find(key)) {
      if (!v->is_string()) {
        throw ConfigError(at(key), "expected a string");
      }
      return v->get<std::string>();
    }
    return std::nullopt;
  }

  template <class T, class Parse>
  void enumeration(const std::string& key, T& out, Parse parse) {
    if (auto s = string(key)) {
      try {
        out = parse(*s);
      } catch (const InvalidInputError& e) {
        throw ConfigError(at(key), e.what());
      }
    }
  }

  Block child(const std::string& key) { return Block(require(key), at(key)); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (used_.count(item.key()) == 0) {
        throw ConfigError(at(item.key()), "unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

RobotGeometry read_geometry(Block b) {
  RobotGeometry g;
  b.required_number("wheel_radius", g.wheel_radius);
  b.required_number("center_offset", g.center_offset);
  b.required_number("mass", g.mass);
  b.required_number("inertia", g.body_inertia);
  if (const json* v = b.find("mount_angles")) {
    if (!v->is_array() || v->size() != 3) {
      throw ConfigError(b.at("mount_angles"), "expected three angles");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      g.mount_angles[i] = as_number((*v)[i], b.at("mount_angles") + "/" + std::to_string(i));
    }
  }
  b.integer("dock_wheel", g.dock_wheel_index);
  b.number("max_wheel_speed", g.max_wheel_speed);
  b.number("hub_protrusion", g.hub_protrusion);
  b.finish();
  validated(b.path(), [&] { g.validate(); });
  return g;
}

void read_robots(Block& root, Scenario& s) {
  const json& list = root.require("robots");
  const std::string where = root.at("robots");
  if (!list.is_array() || list.empty() || list.size() > 2) {
    throw ConfigError(where, "expected an array of one or two robot geometries");
  }
  s.robots[0] = read_geometry(Block(list[0], where + "/0"));
  s.robots[1] = list.size() == 2 ? read_geometry(Block(list[1], where + "/1")) : s.robots[0];
}

void read_camera(Block b, Scenario& s) {
  CameraModel c = CameraModel::over_dock_wheel(s.robots[0]);
  if (const json* v = b.find("mount")) {
    c.mount = as_pose(*v, b.at("mount"));
  }
  b.number("field_of_view", c.field_of_view);
  b.number("max_range", c.max_range);
  if (auto p = b.string("pitch")) {
    if (*p == "forward") {
      c.pitch = CameraPitch::forward;
    } else if (*p == "down") {
      c.pitch = CameraPitch::down;
    } else {
      throw ConfigError(b.at("pitch"), "expected \"forward\" or \"down\"");
    }
  }
  b.finish();
  validated(b.path(), [&] { c.validate(); });
  s.camera = c;
}

void read_lighting_table(Block b, Scenario& s) {
  for (Lighting l : {Lighting::bright, Lighting::moderate, Lighting::low, Lighting::dark}) {
    const std::string key(to_string(l));
    if (const json* v = b.find(key)) {
      Block level(*v, b.at(key));
      LightingProfile& p = s.lighting_table[l];
      level.number("detection_probability", p.detection_probability);
      level.number("offset_sigma", p.offset_sigma);
      level.number("yaw_sigma", p.yaw_sigma);
      level.finish();
    }
  }
  b.finish();
  validated(b.path(), [&] { s.lighting_table.validate(); });
}

void read_docking(Block b, DockingParams& d) {
  b.number("search_spin_rate", d.search_spin_rate);
  b.number("align_tolerance", d.align_tolerance);
  b.number("align_yaw_tolerance", d.align_yaw_tolerance);
  b.number("standoff", d.standoff);
  b.number("lock_forward_speed", d.lock_forward_speed);
  b.number("lock_hub_spin", d.lock_hub_spin);
  b.integer("required_turns", d.required_turns);
  b.number("capture_lateral", d.capture_lateral);
  b.number("capture_angular", d.capture_angular);
  b.number("capture_depth", d.capture_depth);
  b.number("phase_timeout", d.phase_timeout);
  b.enumeration("lock_law", d.lock_law, parse_lock_law);
  b.number("k_lateral", d.k_lateral);
  b.number("k_depth", d.k_depth);
  b.number("k_bearing", d.k_bearing);
  b.integer("lost_frames", d.lost_frames);
  b.number("filter_gain", d.filter_gain);
  b.integer("min_filter_frames", d.min_filter_frames);
  b.finish();
  validated(b.path(), [&] { d.validate(); });
}

void read_dock_setup(Block b, DockSetup& d) {
  if (const json* v = b.find("female_pose")) {
    d.female_pose = as_pose(*v, b.at("female_pose"));
  }
  b.number("distance", d.distance);
  b.number("distance_jitter", d.distance_jitter);
  b.number("deviation", d.deviation);
  if (const json* v = b.find("active_heading"); v != nullptr && !v->is_null()) {
    d.active_heading = as_number(*v, b.at("active_heading"));
  }
  if (const json* v = b.find("side"); v != nullptr && !v->is_null()) {
    if (!v->is_number_integer()) {
      throw ConfigError(b.at("side"), "expected 1 or -1");
    }
    d.side = v->get<int>();
  }
  b.finish();
  validated(b.path(), [&] { d.validate(); });
}

void read_path(Block b, PathSpec& p) {
  double forward_axis = 0.0;
  b.number("forward_axis", forward_axis);
  if (const json* v = b.find("waypoints")) {
    if (!v->is_array()) {
      throw ConfigError(b.at("waypoints"), "expected an array of [x, y]");
    }
    p.waypoints.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      p.waypoints.push_back(as_vec2((*v)[i], b.at("waypoints") + "/" + std::to_string(i)));
    }
    p.forward_axis = forward_axis;
    for (const char* k : {"start", "forward_leg", "lateral_leg"}) {
      if (b.find(k) != nullptr) {
        throw ConfigError(b.at(k), "only used to build the default L path; remove it or drop waypoints");
      }
    }
  } else {
    Vec2 start(0.0, 0.0);
    double forward_leg = 2.0;
    double lateral_leg = 1.2;
    if (const json* v = b.find("start")) {
      start = as_vec2(*v, b.at("start"));
    }
    b.number("forward_leg", forward_leg);
    b.number("lateral_leg", lateral_leg);
    const PathSpec shape = PathSpec::l_shape(start, forward_leg, lateral_leg, forward_axis);
    p.waypoints = shape.waypoints;
    p.forward_axis = shape.forward_axis;
  }
  b.boolean("hold_heading", p.hold_heading);
  b.number("forward_speed", p.forward_speed);
  b.number("lateral_speed", p.lateral_speed);
  b.finish();
  validated(b.path(), [&] { p.validate(); });
}

void read_tracking(Block b, TrackingGains& g) {
  b.number("k_along", g.k_along);
  b.number("k_cross", g.k_cross);
  b.number("k_heading", g.k_heading);
  b.number("max_turn_rate", g.max_turn_rate);
  b.number("waypoint_tolerance", g.waypoint_tolerance);
  b.number("max_accel", g.max_accel);
  b.number("max_angular_accel", g.max_angular_accel);
  b.finish();
  validated(b.path(), [&] { g.validate(); });
}

void read_coupling(Block b, ObjectCoupling& c) {
  if (const json* v = b.find("grasp_points")) {
    if (!v->is_array() || v->size() != 2) {
      throw ConfigError(b.at("grasp_points"), "expected two [x, y] points");
    }
    for (std::size_t i = 0; i < 2; ++i) {
      c.grasp_points[i] = as_vec2((*v)[i], b.at("grasp_points") + "/" + std::to_string(i));
    }
  }
  b.number("stiffness", c.stiffness);
  b.number("damping", c.damping);
  b.number("object_mass", c.object_mass);
  b.number("object_inertia", c.object_inertia);
  b.finish();
  validated(b.path(), [&] { c.validate(); });
}

void read_noise(Block b, NoiseConfig& n) {
  b.number("actuation_relative", n.actuation_relative);
  b.number("actuation_floor", n.actuation_floor);
  b.number("actuation_correlation_time", n.actuation_correlation_time);
  b.boolean("perception", n.perception);
  b.finish();
  validated(b.path(), [&] { n.validate(); });
}

Scenario read_scenario(const json& doc) {
  Scenario s;
  Block root(doc, "");

  root.enumeration("mode", s.mode, parse_mode);
  if (const json* v = root.find("seed")) {
    if (!v->is_number_unsigned()) {
      throw ConfigError(root.at("seed"), "expected a non-negative integer");
    }
    s.seed = v->get<std::uint64_t>();
  }
  root.number("dt", s.dt);
  root.number("max_time", s.max_time);
  read_robots(root, s);

  if (root.find("camera") != nullptr) {
    read_camera(root.child("camera"), s);
  }
  root.enumeration("lighting", s.lighting, parse_lighting);
  if (root.find("lighting_table") != nullptr) {
    read_lighting_table(root.child("lighting_table"), s);
  }
  if (root.find("perception") != nullptr) {
    Block b = root.child("perception");
    b.number("deviation_limit", s.perception.deviation_limit);
    b.finish();
  }
  if (root.find("docking") != nullptr) {
    read_docking(root.child("docking"), s.docking);
  }
  if (root.find("dock_setup") != nullptr) {
    read_dock_setup(root.child("dock_setup"), s.dock_setup);
  }
  if (root.find("contact") != nullptr) {
    Block b = root.child("contact");
    b.number("centering_rate", s.contact.centering_rate);
    b.number("compliance", s.contact.compliance);
    b.finish();
    validated(b.path(), [&] { s.contact.validate(); });
  }
  if (root.find("path") != nullptr) {
    read_path(root.child("path"), s.path);
  }
  if (root.find("tracking") != nullptr) {
    read_tracking(root.child("tracking"), s.tracking);
  }
  if (root.find("coupling") != nullptr) {
    read_coupling(root.child("coupling"), s.coupling);
  }
  if (root.find("cooperation") != nullptr) {
    Block b = root.child("cooperation");
    b.number("grasp_force_limit", s.cooperation.grasp_force_limit);
    b.number("force_filter_time", s.cooperation.force_filter_time);
    b.finish();
    validated(b.path(), [&] { s.cooperation.validate(); });
  }
  if (root.find("transport") != nullptr) {
    Block b = root.child("transport");
    b.number("object_forward_offset", s.transport.object_forward_offset);
    b.number("docked_stiffness_scale", s.transport.docked_stiffness_scale);
    b.finish();
    validated(b.path(), [&] { s.transport.validate(); });
  }
  if (root.find("noise") != nullptr) {
    read_noise(root.child("noise"), s.noise);
  }
  root.finish();
  validated("/", [&] { s.validate(); });
  return s;
}

json override_value(const std::string& text) {
  constexpr std::string_view suffix = "deg";
  if (text.size() > suffix.size() && text.ends_with(suffix)) {
    const std::string number = text.substr(0, text.size() - suffix.size());
    std::size_t used = 0;
    try {
      const double deg = std::stod(number, &used);
      if (used == number.size()) {
        return deg_to_rad(deg);
      }
    } catch (const std::exception&) {
      // not a number; fall through
    }
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("", "expected KEY=VALUE, got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

std::vector<Override> parse_sweep(std::string_view text) {
  const Override whole = parse_override(text);
  std::vector<Override> out;
  std::stringstream ss(whole.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      throw ConfigError("", "empty value in sweep '" + std::string(text) + "'");
    }
    out.push_back({whole.key, item});
  }
  if (out.empty()) {
    throw ConfigError("", "sweep '" + std::string(text) + "' has no values");
  }
  return out;
}

Scenario parse_scenario(std::string_view json_text, const std::vector<Override>& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  for (const auto& o : overrides) {
    std::string pointer;
    std::stringstream ss(o.key);
    std::string token;
    while (std::getline(ss, token, '.')) {
      pointer += "/" + escape_token(token);
    }
    try {
      doc[json::json_pointer(pointer)] = override_value(o.value);
    } catch (const json::exception& e) {
      throw ConfigError(pointer, std::string("cannot apply override: ") + e.what());
    }
  }
  return read_scenario(doc);
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot open scenario file '" + file.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load_scenario(const std::filesystem::path& file, const std::vector<Override>& overrides) {
  return parse_scenario(read_text_file(file), overrides);
}

}  // namespace dockbot
