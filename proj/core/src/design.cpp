#include "aontrace/design.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace aontrace {

const LayerTech* TechFile::find_layer(std::string_view name) const {
  for (const auto& layer : layers) {
    if (layer.name == name) return &layer;
  }
  return nullptr;
}

double manhattan_length(const Node& a, const Node& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double effective_length(const Segment& seg, const Node& a, const Node& b) {
  return seg.length ? *seg.length : manhattan_length(a, b);
}

double segment_resistance(const Segment& seg, const TechFile& tech,
                          const Node& a, const Node& b) {
  if (seg.resistance_override) return *seg.resistance_override;
  const LayerTech* layer = tech.find_layer(seg.layer);
  if (!layer) {
    throw Error(ErrorKind::UnknownLayer,
                "segment '" + seg.id + "' references layer '" + seg.layer +
                    "' not present in tech file");
  }
  return layer->sheet_res * effective_length(seg, a, b) / seg.width;
}

namespace {

[[noreturn]] void schema_fail(const std::string& message) {
  throw Error(ErrorKind::Schema, message);
}

}  // namespace

void validate_design(const Design& design) {
  if (design.name.empty()) schema_fail("design name must be nonempty");

  std::unordered_map<std::string, const Node*> node_by_id;
  node_by_id.reserve(design.nodes.size());
  for (const auto& node : design.nodes) {
    if (node.id.empty()) schema_fail("node id must be nonempty");
    if (!node_by_id.emplace(node.id, &node).second)
      schema_fail("duplicate node id '" + node.id + "'");
  }

  std::unordered_set<std::string> segment_ids;
  segment_ids.reserve(design.segments.size());
  for (const auto& seg : design.segments) {
    if (seg.id.empty()) schema_fail("segment id must be nonempty");
    if (!segment_ids.insert(seg.id).second)
      schema_fail("duplicate segment id '" + seg.id + "'");
    auto a = node_by_id.find(seg.a);
    if (a == node_by_id.end())
      schema_fail("segment '" + seg.id + "' references unknown node '" +
                  seg.a + "'");
    auto b = node_by_id.find(seg.b);
    if (b == node_by_id.end())
      schema_fail("segment '" + seg.id + "' references unknown node '" +
                  seg.b + "'");
    if (seg.a == seg.b)
      schema_fail("segment '" + seg.id + "' connects node '" + seg.a +
                  "' to itself");
    if (!(seg.width > 0))
      schema_fail("segment '" + seg.id + "' width must be > 0");
    if (seg.length && !(*seg.length > 0))
      schema_fail("segment '" + seg.id + "' length must be > 0");
    if (seg.resistance_override && !(*seg.resistance_override > 0))
      schema_fail("segment '" + seg.id + "' resistance_override must be > 0");
    if (!seg.length && !seg.resistance_override &&
        !(manhattan_length(*a->second, *b->second) > 0)) {
      schema_fail("segment '" + seg.id +
                  "' has zero-distance endpoints and no length or "
                  "resistance_override");
    }
  }

  if (design.taps.empty()) schema_fail("design must contain at least one tap");
  std::unordered_set<std::string> tap_nodes;
  for (const auto& tap : design.taps) {
    if (!node_by_id.count(tap.node))
      schema_fail("tap references unknown node '" + tap.node + "'");
    if (!tap_nodes.insert(tap.node).second)
      schema_fail("duplicate tap at node '" + tap.node + "'");
    if (tap.voltage && !(*tap.voltage > 0))
      schema_fail("tap at node '" + tap.node + "' voltage must be > 0");
  }

  if (design.pins.empty()) schema_fail("design must contain at least one pin");
  std::unordered_set<std::string> pin_instances;
  std::unordered_set<std::string> pin_nodes;
  for (const auto& pin : design.pins) {
    if (pin.instance.empty()) schema_fail("pin instance must be nonempty");
    if (!pin_instances.insert(pin.instance).second)
      schema_fail("duplicate pin instance '" + pin.instance + "'");
    if (!node_by_id.count(pin.node))
      schema_fail("pin '" + pin.instance + "' references unknown node '" +
                  pin.node + "'");
    if (!pin_nodes.insert(pin.node).second)
      schema_fail("node '" + pin.node + "' carries more than one pin");
    if (!(pin.cell_size > 0))
      schema_fail("pin '" + pin.instance + "' cell_size must be > 0");
  }
}

void validate_tech(const TechFile& tech) {
  std::unordered_set<std::string> names;
  for (const auto& layer : tech.layers) {
    if (layer.name.empty()) schema_fail("layer name must be nonempty");
    if (!names.insert(layer.name).second)
      schema_fail("duplicate layer '" + layer.name + "'");
    if (!(layer.sheet_res > 0))
      throw Error(ErrorKind::Domain,
                  "layer '" + layer.name + "' sheet_res must be > 0");
    if (!(layer.em_limit > 0))
      throw Error(ErrorKind::Domain,
                  "layer '" + layer.name + "' em_limit must be > 0");
  }
  if (!(tech.unit_current > 0))
    throw Error(ErrorKind::Domain, "unit_current must be > 0");
  if (tech.fanout_limit < 1)
    throw Error(ErrorKind::Domain, "fanout_limit must be >= 1");
  if (!(tech.default_tap_voltage > 0))
    throw Error(ErrorKind::Domain, "default_tap_voltage must be > 0");
}

}  // namespace aontrace
