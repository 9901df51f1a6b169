#include "aontrace/design_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace aontrace {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& message) {
  throw Error(ErrorKind::Schema, message);
}

void reject_unknown_fields(const json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) schema_fail("unknown field '" + it.key() + "' in " + where);
  }
}

const json& require_field(const json& obj, const char* key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    schema_fail("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_string())
    schema_fail("field '" + std::string(key) + "' in " + where +
                " must be a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_number())
    schema_fail("field '" + std::string(key) + "' in " + where +
                " must be a number");
  return v.get<double>();
}

int get_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_number_integer())
    schema_fail("field '" + std::string(key) + "' in " + where +
                " must be an integer");
  return v.get<int>();
}

const json& require_array(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_array())
    schema_fail("field '" + std::string(key) + "' in " + where +
                " must be an array");
  return v;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann messages carry "at line L, column C" positions.
    throw Error(ErrorKind::Syntax, e.what());
  }
}

void check_units_block(const json& units) {
  if (!units.is_object()) schema_fail("'units' must be an object");
  reject_unknown_fields(units, "units",
                        {"distance", "resistance", "current", "voltage"});
  const struct {
    const char* key;
    const char* expected;
  } required[] = {{"distance", "um"},
                  {"resistance", "ohm"},
                  {"current", "mA"},
                  {"voltage", "V"}};
  for (const auto& unit : required) {
    std::string value = get_string(units, unit.key, "units");
    if (value != unit.expected)
      throw Error(ErrorKind::Unit, "unsupported " + std::string(unit.key) +
                                       " unit '" + value + "', expected '" +
                                       unit.expected + "'");
  }
}

}  // namespace

Design parse_design_text(const std::string& text) {
  json root = parse_json_text(text);
  if (!root.is_object()) schema_fail("design file must be a JSON object");
  reject_unknown_fields(
      root, "design",
      {"name", "units", "nodes", "segments", "taps", "pins"});

  check_units_block(require_field(root, "units", "design"));

  Design design;
  design.name = get_string(root, "name", "design");

  for (const json& n : require_array(root, "nodes", "design")) {
    if (!n.is_object()) schema_fail("node entries must be objects");
    std::string where = "node";
    if (n.contains("id") && n["id"].is_string())
      where += " '" + n["id"].get<std::string>() + "'";
    reject_unknown_fields(n, where, {"id", "x", "y", "layer"});
    Node node;
    node.id = get_string(n, "id", where);
    node.x = get_number(n, "x", where);
    node.y = get_number(n, "y", where);
    node.layer = get_string(n, "layer", where);
    design.nodes.push_back(std::move(node));
  }

  for (const json& s : require_array(root, "segments", "design")) {
    if (!s.is_object()) schema_fail("segment entries must be objects");
    std::string where = "segment";
    if (s.contains("id") && s["id"].is_string())
      where += " '" + s["id"].get<std::string>() + "'";
    reject_unknown_fields(s, where, {"id", "a", "b", "layer", "width",
                                     "length", "resistance_override"});
    Segment seg;
    seg.id = get_string(s, "id", where);
    seg.a = get_string(s, "a", where);
    seg.b = get_string(s, "b", where);
    seg.layer = get_string(s, "layer", where);
    seg.width = get_number(s, "width", where);
    if (s.contains("length")) seg.length = get_number(s, "length", where);
    if (s.contains("resistance_override"))
      seg.resistance_override = get_number(s, "resistance_override", where);
    design.segments.push_back(std::move(seg));
  }

  for (const json& t : require_array(root, "taps", "design")) {
    if (!t.is_object()) schema_fail("tap entries must be objects");
    std::string where = "tap";
    if (t.contains("node") && t["node"].is_string())
      where += " at '" + t["node"].get<std::string>() + "'";
    reject_unknown_fields(t, where, {"node", "voltage"});
    Tap tap;
    tap.node = get_string(t, "node", where);
    if (t.contains("voltage")) tap.voltage = get_number(t, "voltage", where);
    design.taps.push_back(std::move(tap));
  }

  for (const json& p : require_array(root, "pins", "design")) {
    if (!p.is_object()) schema_fail("pin entries must be objects");
    std::string where = "pin";
    if (p.contains("instance") && p["instance"].is_string())
      where += " '" + p["instance"].get<std::string>() + "'";
    reject_unknown_fields(p, where, {"instance", "node", "cell_size"});
    AonPin pin;
    pin.instance = get_string(p, "instance", where);
    pin.node = get_string(p, "node", where);
    pin.cell_size = get_number(p, "cell_size", where);
    design.pins.push_back(std::move(pin));
  }

  validate_design(design);
  return design;
}

TechFile parse_tech_text(const std::string& text) {
  json root = parse_json_text(text);
  if (!root.is_object()) schema_fail("tech file must be a JSON object");
  reject_unknown_fields(root, "tech",
                        {"layers", "unit_current", "fanout_limit",
                         "default_tap_voltage"});

  TechFile tech;
  for (const json& l : require_array(root, "layers", "tech")) {
    if (!l.is_object()) schema_fail("layer entries must be objects");
    std::string where = "layer";
    if (l.contains("name") && l["name"].is_string())
      where += " '" + l["name"].get<std::string>() + "'";
    reject_unknown_fields(l, where, {"name", "sheet_res", "em_limit"});
    LayerTech layer;
    layer.name = get_string(l, "name", where);
    layer.sheet_res = get_number(l, "sheet_res", where);
    layer.em_limit = get_number(l, "em_limit", where);
    tech.layers.push_back(std::move(layer));
  }
  tech.unit_current = get_number(root, "unit_current", "tech");
  tech.fanout_limit = get_integer(root, "fanout_limit", "tech");
  tech.default_tap_voltage = get_number(root, "default_tap_voltage", "tech");

  validate_tech(tech);
  return tech;
}

std::string serialize_design(const Design& design) {
  ordered_json root;
  root["name"] = design.name;
  root["units"] = {{"distance", "um"},
                   {"resistance", "ohm"},
                   {"current", "mA"},
                   {"voltage", "V"}};
  root["nodes"] = ordered_json::array();
  for (const auto& node : design.nodes) {
    ordered_json n;
    n["id"] = node.id;
    n["x"] = node.x;
    n["y"] = node.y;
    n["layer"] = node.layer;
    root["nodes"].push_back(std::move(n));
  }
  root["segments"] = ordered_json::array();
  for (const auto& seg : design.segments) {
    ordered_json s;
    s["id"] = seg.id;
    s["a"] = seg.a;
    s["b"] = seg.b;
    s["layer"] = seg.layer;
    s["width"] = seg.width;
    if (seg.length) s["length"] = *seg.length;
    if (seg.resistance_override)
      s["resistance_override"] = *seg.resistance_override;
    root["segments"].push_back(std::move(s));
  }
  root["taps"] = ordered_json::array();
  for (const auto& tap : design.taps) {
    ordered_json t;
    t["node"] = tap.node;
    if (tap.voltage) t["voltage"] = *tap.voltage;
    root["taps"].push_back(std::move(t));
  }
  root["pins"] = ordered_json::array();
  for (const auto& pin : design.pins) {
    ordered_json p;
    p["instance"] = pin.instance;
    p["node"] = pin.node;
    p["cell_size"] = pin.cell_size;
    root["pins"].push_back(std::move(p));
  }
  return root.dump(2) + "\n";
}

std::string serialize_tech(const TechFile& tech) {
  ordered_json root;
  root["layers"] = ordered_json::array();
  for (const auto& layer : tech.layers) {
    ordered_json l;
    l["name"] = layer.name;
    l["sheet_res"] = layer.sheet_res;
    l["em_limit"] = layer.em_limit;
    root["layers"].push_back(std::move(l));
  }
  root["unit_current"] = tech.unit_current;
  root["fanout_limit"] = tech.fanout_limit;
  root["default_tap_voltage"] = tech.default_tap_voltage;
  return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "read failed on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed on '" + path + "'");
}

Design parse_design(const std::string& path) {
  return parse_design_text(read_text_file(path));
}

TechFile parse_tech(const std::string& path) {
  return parse_tech_text(read_text_file(path));
}

}  // namespace aontrace
