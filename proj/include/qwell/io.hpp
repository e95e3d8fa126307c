#ifndef QWELL_IO_HPP
#define QWELL_IO_HPP

// Text formats: the well description and sweep description (JSON), and
// fixed-precision number formatting shared by the CLI outputs.
//
// Well:  {"v1": number|"inf", "v2": number|"inf", "d": number,
//         "elements": [{"type":"delta","x":..,"g":..} | {"type":"rect","a":..,"w":..,"u":..}]}
// Sweep: {"mode": "barrier_height"|"barrier_position"|"periodic_height", ...,
//         "param": {"from":..,"to":..,"steps":..}, "n_levels":..}

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qwell/errors.hpp"
#include "qwell/potential.hpp"

namespace qwell {

using json = nlohmann::json;

namespace detail {

inline void allow_only(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
  if (!obj.is_object()) throw ConfigError(what + " must be a JSON object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + what);
}

inline double number(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key)) throw ConfigError("missing field '" + std::string(key) + "' in " + what);
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + std::string(key) + "' in " + what + " must be a number");
  return v.get<double>();
}

inline std::optional<double> optional_number(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, key, what);
}

inline int integer(const json& obj, const char* key, const std::string& what) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("field '" + std::string(key) + "' in " + what + " must be an integer");
  return v.get<int>();
}

inline double wall(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError("missing field '" + std::string(key) + "' in well");
  const auto& v = obj.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return infinite_wall;
  if (!v.is_number()) throw ConfigError("field '" + std::string(key) + "' must be a number or \"inf\"");
  return v.get<double>();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

/// Parses and validates a well description.
inline WellSpec well_from_json(const json& j) {
  detail::allow_only(j, {"v1", "v2", "d", "elements"}, "well");
  WellSpec spec{detail::wall(j, "v1"), detail::wall(j, "v2"), detail::number(j, "d", "well"), {}};
  if (j.contains("elements")) {
    const auto& list = j.at("elements");
    if (!list.is_array()) throw ConfigError("'elements' must be an array");
    for (const auto& e : list) {
      if (!e.is_object() || !e.contains("type") || !e.at("type").is_string())
        throw ConfigError("every element needs a string 'type'");
      const auto type = e.at("type").get<std::string>();
      if (type == "delta") {
        detail::allow_only(e, {"type", "x", "g"}, "delta element");
        spec.elements.push_back(Delta{detail::number(e, "x", "delta element"), detail::number(e, "g", "delta element")});
      } else if (type == "rect") {
        detail::allow_only(e, {"type", "a", "w", "u"}, "rect element");
        spec.elements.push_back(Rect{detail::number(e, "a", "rect element"), detail::number(e, "w", "rect element"),
                                     detail::number(e, "u", "rect element")});
      } else {
        throw ConfigError("unknown element type '" + type + "'");
      }
    }
  }
  return validate(std::move(spec));
}

inline WellSpec well_from_string(const std::string& text) { return well_from_json(detail::parse_text(text)); }

inline json well_to_json(const WellSpec& spec) {
  auto wall = [](double v) { return is_infinite(v) ? json("inf") : json(v); };
  json elements = json::array();
  for (const auto& e : spec.elements) {
    if (const auto* dl = std::get_if<Delta>(&e))
      elements.push_back({{"type", "delta"}, {"x", dl->x}, {"g", dl->g}});
    else {
      const auto& r = std::get<Rect>(e);
      elements.push_back({{"type", "rect"}, {"a", r.a}, {"w", r.w}, {"u", r.u}});
    }
  }
  return {{"v1", wall(spec.v1)}, {"v2", wall(spec.v2)}, {"d", spec.d}, {"elements", elements}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepMode { barrier_height, barrier_position, periodic_height };

struct SweepSpec {
  SweepMode mode = SweepMode::barrier_height;
  // dimensionless single-barrier parameters
  double x = 0, y = 0, u = 0, v = 0;
  // layered infinite well
  int n_barriers = 0;
  double sub_width = 1.0;
  double barrier_width = 0.2;
  std::optional<double> e_max;
  // swept parameter
  double from = 0, to = 0;
  int steps = 0;
  int n_levels = 3;

  /// Value of the swept parameter at step i.
  double param(int i) const { return i == steps - 1 ? to : from + (to - from) * i / (steps - 1); }
};

inline SweepSpec sweep_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mode") || !j.at("mode").is_string())
    throw ConfigError("sweep needs a string 'mode'");
  const auto mode = j.at("mode").get<std::string>();
  SweepSpec s;
  const std::string what = "sweep (" + mode + ")";
  if (mode == "barrier_height") {
    detail::allow_only(j, {"mode", "x", "y", "v", "param", "n_levels"}, what);
    s.mode = SweepMode::barrier_height;
    s.x = detail::number(j, "x", what);
    s.y = detail::number(j, "y", what);
    s.v = detail::number(j, "v", what);
  } else if (mode == "barrier_position") {
    detail::allow_only(j, {"mode", "x", "u", "v", "param", "n_levels"}, what);
    s.mode = SweepMode::barrier_position;
    s.x = detail::number(j, "x", what);
    s.u = detail::number(j, "u", what);
    s.v = detail::number(j, "v", what);
  } else if (mode == "periodic_height") {
    detail::allow_only(j, {"mode", "N", "w", "l", "emax", "param", "n_levels"}, what);
    s.mode = SweepMode::periodic_height;
    if (!j.contains("N")) throw ConfigError("missing field 'N' in " + what);
    s.n_barriers = detail::integer(j, "N", what);
    if (s.n_barriers < 1) throw ConfigError("N must be at least 1");
    s.sub_width = detail::optional_number(j, "w", what).value_or(1.0);
    s.barrier_width = detail::optional_number(j, "l", what).value_or(0.2);
    s.e_max = detail::optional_number(j, "emax", what);
  } else {
    throw ConfigError("unknown sweep mode '" + mode + "'");
  }

  if (!j.contains("param")) throw ConfigError("missing field 'param' in " + what);
  const auto& p = j.at("param");
  detail::allow_only(p, {"from", "to", "steps"}, "param");
  s.from = detail::number(p, "from", "param");
  s.to = detail::number(p, "to", "param");
  if (!p.contains("steps")) throw ConfigError("missing field 'steps' in param");
  s.steps = detail::integer(p, "steps", "param");
  if (!(s.from < s.to)) throw ConfigError("param.from must be below param.to");
  if (s.steps < 2) throw ConfigError("param.steps must be at least 2");
  if (j.contains("n_levels")) s.n_levels = detail::integer(j, "n_levels", what);
  if (s.n_levels < 1) throw ConfigError("n_levels must be at least 1");
  return s;
}

inline SweepSpec sweep_from_string(const std::string& text) { return sweep_from_json(detail::parse_text(text)); }

// ---------------------------------------------------------------------------
// Number formatting

/// 12 significant digits, as used in CSV cells.
inline std::string format_sig12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

/// 12 digits after the decimal point, as used for energies printed by `solve`.
inline std::string format_fixed12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", value);
  return buf;
}

}  // namespace qwell

#endif  // QWELL_IO_HPP
