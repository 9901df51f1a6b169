#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aontrace/design.hpp"

namespace aontrace {

struct GraphNode {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::string layer;
};

struct GraphSegment {
  std::string id;
  int a = -1;  // node index
  int b = -1;
  std::string layer;
  double width = 0.0;
  double resistance = 0.0;  // ohm, resolved at build time
};

struct GraphPin {
  std::string instance;
  int node = -1;
  double cell_size = 0.0;
};

// One connected component of the routing. Traceable components carry
// exactly one tap; tapless pinless islands are kept but never traced.
struct Component {
  int tap_node = -1;  // node index, -1 for inert islands
  double tap_voltage = 0.0;
  std::vector<int> nodes;
  std::vector<int> segments;
  std::vector<int> pins;

  bool traceable() const { return tap_node >= 0; }
};

// Immutable after build_graph; safe to share across concurrent traces.
// Nodes, segments and pins are re-sorted by id so indices are stable
// regardless of file order.
struct RoutingGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphSegment> segments;
  std::vector<GraphPin> pins;
  // node index -> (segment index, neighbor node index), sorted by segment id
  std::vector<std::vector<std::pair<int, int>>> adjacency;
  std::vector<Component> components;  // traceable first, sorted by tap id
  std::vector<int> node_component;    // node index -> component index
  std::vector<int> pin_at_node;       // node index -> pin index or -1

  int node_index(std::string_view id) const;
  int segment_index(std::string_view id) const;

  int other_end(int segment, int node) const {
    const GraphSegment& s = segments[segment];
    return s.a == node ? s.b : s.a;
  }
};

// Resolves resistances, partitions into components, validates the
// one-tap-per-component model. Throws MultiTapComponent, OrphanPin,
// UnknownLayer.
RoutingGraph build_graph(const Design& design, const TechFile& tech);

struct TopologyIssue {
  enum class Kind { CyclicTopology, FanoutExceeded };
  Kind kind;
  std::string component_tap;     // tap node id; empty for inert islands
  std::string witness_segment;   // a chord closing the cycle
  int direct_fanout = 0;         // segments incident to the tap
  int pin_count = 0;             // pins in the component
  int limit = 0;
  std::string message;
};

// Issues are data, not failures: cycles (one per independent cycle, named
// by a witness chord) and taps whose direct fanout or pin count exceeds
// the tech fanout limit.
std::vector<TopologyIssue> check_topology(const RoutingGraph& graph,
                                          const TechFile& tech);

}  // namespace aontrace
