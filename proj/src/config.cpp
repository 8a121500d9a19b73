#include "shipland/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace shipland {

namespace {

struct Field {
  std::string section;
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&, int line)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "not a number: '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "not a boolean: '" + v + "'");
}

std::string format_double(double d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

Field make_double(const char* section, const char* key, double ScenarioConfig::* ptr) {
  return {section, key,
          [ptr](ScenarioConfig& c, const std::string& v, int line) {
            c.*ptr = parse_double(v, line);
          },
          [ptr](const ScenarioConfig& c) { return format_double(c.*ptr); }};
}

template <typename Sub>
Field nested_double(const char* section, const char* key,
                    Sub ScenarioConfig::* sub, double Sub::* ptr) {
  return {section, key,
          [sub, ptr](ScenarioConfig& c, const std::string& v, int line) {
            c.*sub.*ptr = parse_double(v, line);
          },
          [sub, ptr](const ScenarioConfig& c) { return format_double(c.*sub.*ptr); }};
}

Field gain_field(const char* key, PidGains ControllerGains::* loop,
                 double PidGains::* term) {
  return {"gains", key,
          [loop, term](ScenarioConfig& c, const std::string& v, int line) {
            c.controller.gains.*loop.*term = parse_double(v, line);
          },
          [loop, term](const ScenarioConfig& c) {
            return format_double(c.controller.gains.*loop.*term);
          }};
}

std::vector<Field> make_fields() {
  std::vector<Field> f;

  f.push_back({"scenario", "kind",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 if (v == "hover") c.kind = ScenarioKind::Hover;
                 else if (v == "lissajous") c.kind = ScenarioKind::Lissajous;
                 else if (v == "spiral") c.kind = ScenarioKind::Spiral;
                 else if (v == "ship_landing") c.kind = ScenarioKind::ShipLanding;
                 else fail(line, "unknown scenario kind '" + v + "'");
               },
               [](const ScenarioConfig& c) { return std::string(to_string(c.kind)); }});
  f.push_back(make_double("scenario", "duration", &ScenarioConfig::duration));
  f.push_back(make_double("scenario", "dt", &ScenarioConfig::dt));
  f.push_back({"scenario", "seed",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 std::uint64_t value = 0;
                 auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
                 if (ec != std::errc{} || p != v.data() + v.size())
                   fail(line, "not an unsigned integer: '" + v + "'");
                 c.seed = value;
               },
               [](const ScenarioConfig& c) { return std::to_string(c.seed); }});
  f.push_back(make_double("scenario", "tail_fraction", &ScenarioConfig::tail_fraction));
  f.push_back(make_double("scenario", "divergence_bound", &ScenarioConfig::divergence_bound));
  f.push_back(nested_double("scenario", "initial_x", &ScenarioConfig::initial_position, &Vec3::x));
  f.push_back(nested_double("scenario", "initial_y", &ScenarioConfig::initial_position, &Vec3::y));
  f.push_back(nested_double("scenario", "initial_z", &ScenarioConfig::initial_position, &Vec3::z));

  f.push_back(nested_double("vehicle", "mass", &ScenarioConfig::vehicle, &VehicleParams::mass));
  f.push_back(nested_double("vehicle", "inertia_pitch", &ScenarioConfig::vehicle, &VehicleParams::inertia_pitch));
  f.push_back(nested_double("vehicle", "inertia_roll", &ScenarioConfig::vehicle, &VehicleParams::inertia_roll));
  f.push_back(nested_double("vehicle", "inertia_yaw", &ScenarioConfig::vehicle, &VehicleParams::inertia_yaw));
  f.push_back(nested_double("vehicle", "thrust_constant", &ScenarioConfig::vehicle, &VehicleParams::thrust_constant));
  f.push_back(nested_double("vehicle", "torque_constant", &ScenarioConfig::vehicle, &VehicleParams::torque_constant));
  f.push_back(nested_double("vehicle", "rudder_gain", &ScenarioConfig::vehicle, &VehicleParams::rudder_gain));
  f.push_back(nested_double("vehicle", "motor_speed_max", &ScenarioConfig::vehicle, &VehicleParams::motor_speed_max));
  f.push_back(nested_double("vehicle", "arm_length", &ScenarioConfig::vehicle, &VehicleParams::arm_length));
  f.push_back(nested_double("vehicle", "cross_section_area", &ScenarioConfig::vehicle, &VehicleParams::cross_section_area));
  f.push_back(nested_double("vehicle", "drag_coefficient", &ScenarioConfig::vehicle, &VehicleParams::drag_coefficient));
  f.push_back(nested_double("vehicle", "air_density", &ScenarioConfig::vehicle, &VehicleParams::air_density));
  f.push_back(nested_double("vehicle", "gravity", &ScenarioConfig::vehicle, &VehicleParams::gravity));

  f.push_back({"wind", "enabled",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.wind_enabled = parse_bool(v, line);
               },
               [](const ScenarioConfig& c) {
                 return std::string(c.wind_enabled ? "true" : "false");
               }});
  f.push_back(nested_double("wind", "wind_min", &ScenarioConfig::wind, &WindParams::wind_min));
  f.push_back(nested_double("wind", "wind_max", &ScenarioConfig::wind, &WindParams::wind_max));
  f.push_back(nested_double("wind", "gust_sample_time", &ScenarioConfig::wind, &WindParams::gust_sample_time));

  f.push_back(nested_double("noise", "translation_variance", &ScenarioConfig::translation_noise, &NoiseParams::variance));
  f.push_back(nested_double("noise", "translation_sample_time", &ScenarioConfig::translation_noise, &NoiseParams::sample_time));
  f.push_back(nested_double("noise", "rotation_variance", &ScenarioConfig::rotation_noise, &NoiseParams::variance));
  f.push_back(nested_double("noise", "rotation_sample_time", &ScenarioConfig::rotation_noise, &NoiseParams::sample_time));

  f.push_back(make_double("filter", "cutoff_translation", &ScenarioConfig::filter_cutoff_translation));
  f.push_back(make_double("filter", "cutoff_rotation", &ScenarioConfig::filter_cutoff_rotation));

  f.push_back(gain_field("altitude_p", &ControllerGains::altitude, &PidGains::kp));
  f.push_back(gain_field("altitude_i", &ControllerGains::altitude, &PidGains::ki));
  f.push_back(gain_field("altitude_d", &ControllerGains::altitude, &PidGains::kd));
  f.push_back(gain_field("position_x_p", &ControllerGains::position_x, &PidGains::kp));
  f.push_back(gain_field("position_x_i", &ControllerGains::position_x, &PidGains::ki));
  f.push_back(gain_field("position_x_d", &ControllerGains::position_x, &PidGains::kd));
  f.push_back(gain_field("position_y_p", &ControllerGains::position_y, &PidGains::kp));
  f.push_back(gain_field("position_y_i", &ControllerGains::position_y, &PidGains::ki));
  f.push_back(gain_field("position_y_d", &ControllerGains::position_y, &PidGains::kd));
  f.push_back(gain_field("pitch_p", &ControllerGains::pitch, &PidGains::kp));
  f.push_back(gain_field("pitch_i", &ControllerGains::pitch, &PidGains::ki));
  f.push_back(gain_field("pitch_d", &ControllerGains::pitch, &PidGains::kd));
  f.push_back(gain_field("roll_p", &ControllerGains::roll, &PidGains::kp));
  f.push_back(gain_field("roll_i", &ControllerGains::roll, &PidGains::ki));
  f.push_back(gain_field("roll_d", &ControllerGains::roll, &PidGains::kd));
  f.push_back(gain_field("yaw_p", &ControllerGains::yaw, &PidGains::kp));
  f.push_back(gain_field("yaw_i", &ControllerGains::yaw, &PidGains::ki));
  f.push_back(gain_field("yaw_d", &ControllerGains::yaw, &PidGains::kd));
  f.push_back({"gains", "invert_roll_mapping",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.controller.invert_roll_mapping = parse_bool(v, line);
               },
               [](const ScenarioConfig& c) {
                 return std::string(c.controller.invert_roll_mapping ? "true" : "false");
               }});
  f.push_back({"gains", "preload_hover_trim",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.controller.preload_hover_trim = parse_bool(v, line);
               },
               [](const ScenarioConfig& c) {
                 return std::string(c.controller.preload_hover_trim ? "true" : "false");
               }});

  f.push_back(nested_double("ship", "initial_x", &ScenarioConfig::ship, &ShipParams::initial_x));
  f.push_back(nested_double("ship", "initial_y", &ScenarioConfig::ship, &ShipParams::initial_y));
  f.push_back(nested_double("ship", "initial_heading_deg", &ScenarioConfig::ship, &ShipParams::initial_heading_deg));
  f.push_back(nested_double("ship", "turn_rate_deg", &ScenarioConfig::ship, &ShipParams::turn_rate_deg));
  f.push_back(nested_double("ship", "speed", &ScenarioConfig::ship, &ShipParams::speed));
  f.push_back(nested_double("ship", "wave_amplitude", &ScenarioConfig::ship, &ShipParams::wave_amplitude));
  f.push_back(nested_double("ship", "wave_frequency", &ScenarioConfig::ship, &ShipParams::wave_frequency));
  f.push_back(nested_double("ship", "wave_phase", &ScenarioConfig::ship, &ShipParams::wave_phase));

  f.push_back(nested_double("landing", "holding_altitude", &ScenarioConfig::landing, &LandingParams::holding_altitude));
  f.push_back(nested_double("landing", "position_tolerance", &ScenarioConfig::landing, &LandingParams::position_tolerance));
  f.push_back(nested_double("landing", "target_relative_velocity", &ScenarioConfig::landing, &LandingParams::target_relative_velocity));
  f.push_back(nested_double("landing", "timeout", &ScenarioConfig::landing, &LandingParams::timeout));

  f.push_back(nested_double("lissajous", "amplitude_x", &ScenarioConfig::lissajous, &LissajousConfig::amplitude_x));
  f.push_back(nested_double("lissajous", "amplitude_y", &ScenarioConfig::lissajous, &LissajousConfig::amplitude_y));
  f.push_back(nested_double("lissajous", "rate_x", &ScenarioConfig::lissajous, &LissajousConfig::rate_x));
  f.push_back(nested_double("lissajous", "rate_y", &ScenarioConfig::lissajous, &LissajousConfig::rate_y));
  f.push_back(nested_double("lissajous", "phase", &ScenarioConfig::lissajous, &LissajousConfig::phase));
  f.push_back(nested_double("lissajous", "altitude", &ScenarioConfig::lissajous, &LissajousConfig::altitude));

  f.push_back(nested_double("spiral", "radius", &ScenarioConfig::spiral, &SpiralConfig::radius));
  f.push_back(nested_double("spiral", "angular_rate", &ScenarioConfig::spiral, &SpiralConfig::angular_rate));
  f.push_back(nested_double("spiral", "base_altitude", &ScenarioConfig::spiral, &SpiralConfig::base_altitude));
  f.push_back(nested_double("spiral", "climb_rate", &ScenarioConfig::spiral, &SpiralConfig::climb_rate));

  f.push_back({"hover", "x",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.hover.point.x = parse_double(v, line);
               },
               [](const ScenarioConfig& c) { return format_double(c.hover.point.x); }});
  f.push_back({"hover", "y",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.hover.point.y = parse_double(v, line);
               },
               [](const ScenarioConfig& c) { return format_double(c.hover.point.y); }});
  f.push_back({"hover", "z",
               [](ScenarioConfig& c, const std::string& v, int line) {
                 c.hover.point.z = parse_double(v, line);
               },
               [](const ScenarioConfig& c) { return format_double(c.hover.point.z); }});

  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = make_fields();
  return f;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  std::map<std::string, const Field*> lookup;
  for (const Field& f : fields()) lookup[f.section + "." + f.key] = &f;

  ScenarioConfig config;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const Field& f : fields()) known = known || f.section == section;
      if (!known) fail(line_no, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key '" + key + "' before any section");
    const auto it = lookup.find(section + "." + key);
    if (it == lookup.end())
      fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
    it->second->set(config, value, line_no);
  }
  config.validate();
  return config;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ScenarioConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Field& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out << "\n";
      section = f.section;
      out << "[" << section << "]\n";
    }
    out << f.key << " = " << f.get(config) << "\n";
  }
  return out.str();
}

}  // namespace shipland
