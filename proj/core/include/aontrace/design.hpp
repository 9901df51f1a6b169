#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aontrace/errors.hpp"

namespace aontrace {

// Units are fixed across the tool: um, ohm, mA, V.

struct LayerTech {
  std::string name;
  double sheet_res = 0.0;  // ohm per square
  double em_limit = 0.0;   // mA per um of width

  bool operator==(const LayerTech&) const = default;
};

struct TechFile {
  std::vector<LayerTech> layers;
  double unit_current = 0.0;  // mA drawn per unit of cell size
  int fanout_limit = 0;       // max loads per tapping point
  double default_tap_voltage = 0.0;  // V

  const LayerTech* find_layer(std::string_view name) const;

  bool operator==(const TechFile&) const = default;
};

struct Node {
  std::string id;
  double x = 0.0;  // um
  double y = 0.0;  // um
  std::string layer;

  bool operator==(const Node&) const = default;
};

struct Segment {
  std::string id;
  std::string a;
  std::string b;
  std::string layer;
  double width = 0.0;                       // um
  std::optional<double> length;             // um; Manhattan distance when absent
  std::optional<double> resistance_override;  // ohm; used for vias

  bool operator==(const Segment&) const = default;
};

struct Tap {
  std::string node;
  std::optional<double> voltage;  // V; tech default when absent

  bool operator==(const Tap&) const = default;
};

struct AonPin {
  std::string instance;
  std::string node;
  double cell_size = 0.0;  // dimensionless load size D

  bool operator==(const AonPin&) const = default;
};

struct Design {
  std::string name;
  std::vector<Node> nodes;
  std::vector<Segment> segments;
  std::vector<Tap> taps;
  std::vector<AonPin> pins;

  bool operator==(const Design&) const = default;
};

double manhattan_length(const Node& a, const Node& b);

// Length used for resistance when the segment carries no explicit length.
double effective_length(const Segment& seg, const Node& a, const Node& b);

// resistance_override when present, else sheet_res(layer) * length / width.
// Throws UnknownLayer when the layer is missing from the tech file.
double segment_resistance(const Segment& seg, const TechFile& tech,
                          const Node& a, const Node& b);

// Structural + value invariants. Throw Schema/Domain errors naming the
// offending object. The parser calls these after decoding; generated
// designs go through them in tests.
void validate_design(const Design& design);
void validate_tech(const TechFile& tech);

}  // namespace aontrace
