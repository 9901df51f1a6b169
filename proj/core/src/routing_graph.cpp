#include "aontrace/routing_graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace aontrace {

namespace {

// Plain union-find; path halving keeps it near-linear without rank bookkeeping.
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int RoutingGraph::node_index(std::string_view id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const GraphNode& n, std::string_view v) { return n.id < v; });
  if (it == nodes.end() || it->id != id) return -1;
  return static_cast<int>(it - nodes.begin());
}

int RoutingGraph::segment_index(std::string_view id) const {
  auto it = std::lower_bound(
      segments.begin(), segments.end(), id,
      [](const GraphSegment& s, std::string_view v) { return s.id < v; });
  if (it == segments.end() || it->id != id) return -1;
  return static_cast<int>(it - segments.begin());
}

RoutingGraph build_graph(const Design& design, const TechFile& tech) {
  RoutingGraph graph;

  graph.nodes.reserve(design.nodes.size());
  for (const auto& node : design.nodes)
    graph.nodes.push_back({node.id, node.x, node.y, node.layer});
  std::sort(graph.nodes.begin(), graph.nodes.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });

  std::unordered_map<std::string, int> node_index;
  node_index.reserve(graph.nodes.size());
  for (int i = 0; i < static_cast<int>(graph.nodes.size()); ++i)
    node_index.emplace(graph.nodes[i].id, i);

  std::unordered_map<std::string, const Node*> design_nodes;
  design_nodes.reserve(design.nodes.size());
  for (const auto& node : design.nodes) design_nodes.emplace(node.id, &node);

  graph.segments.reserve(design.segments.size());
  for (const auto& seg : design.segments) {
    GraphSegment gs;
    gs.id = seg.id;
    gs.a = node_index.at(seg.a);
    gs.b = node_index.at(seg.b);
    gs.layer = seg.layer;
    gs.width = seg.width;
    gs.resistance = segment_resistance(seg, tech, *design_nodes.at(seg.a),
                                       *design_nodes.at(seg.b));
    graph.segments.push_back(std::move(gs));
  }
  std::sort(graph.segments.begin(), graph.segments.end(),
            [](const GraphSegment& a, const GraphSegment& b) {
              return a.id < b.id;
            });

  graph.pins.reserve(design.pins.size());
  for (const auto& pin : design.pins)
    graph.pins.push_back({pin.instance, node_index.at(pin.node),
                          pin.cell_size});
  std::sort(graph.pins.begin(), graph.pins.end(),
            [](const GraphPin& a, const GraphPin& b) {
              return a.instance < b.instance;
            });

  const int n = static_cast<int>(graph.nodes.size());
  graph.adjacency.assign(n, {});
  for (int s = 0; s < static_cast<int>(graph.segments.size()); ++s) {
    const GraphSegment& seg = graph.segments[s];
    graph.adjacency[seg.a].emplace_back(s, seg.b);
    graph.adjacency[seg.b].emplace_back(s, seg.a);
  }
  // Segment indices follow segment-id order, so this sorts by id.
  for (auto& edges : graph.adjacency) std::sort(edges.begin(), edges.end());

  graph.pin_at_node.assign(n, -1);
  for (int p = 0; p < static_cast<int>(graph.pins.size()); ++p)
    graph.pin_at_node[graph.pins[p].node] = p;

  UnionFind uf(n);
  for (const GraphSegment& seg : graph.segments) uf.unite(seg.a, seg.b);

  std::unordered_map<int, int> component_of_root;
  std::vector<Component> components;
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    auto [it, inserted] =
        component_of_root.emplace(root, static_cast<int>(components.size()));
    if (inserted) components.emplace_back();
    components[it->second].nodes.push_back(v);
  }
  std::vector<int> node_component(n, -1);
  for (int c = 0; c < static_cast<int>(components.size()); ++c)
    for (int v : components[c].nodes) node_component[v] = c;

  for (int s = 0; s < static_cast<int>(graph.segments.size()); ++s)
    components[node_component[graph.segments[s].a]].segments.push_back(s);
  for (int p = 0; p < static_cast<int>(graph.pins.size()); ++p)
    components[node_component[graph.pins[p].node]].pins.push_back(p);

  for (const auto& tap : design.taps) {
    int v = node_index.at(tap.node);
    Component& comp = components[node_component[v]];
    if (comp.tap_node >= 0) {
      throw Error(ErrorKind::MultiTapComponent,
                  "taps at nodes '" + graph.nodes[comp.tap_node].id +
                      "' and '" + tap.node +
                      "' share one connected component");
    }
    comp.tap_node = v;
    comp.tap_voltage = tap.voltage.value_or(tech.default_tap_voltage);
  }

  for (const Component& comp : components) {
    if (comp.tap_node < 0 && !comp.pins.empty()) {
      throw Error(ErrorKind::OrphanPin,
                  "pin '" + graph.pins[comp.pins.front()].instance +
                      "' is unreachable from any tap");
    }
  }

  // Traceable components first, ordered by tap node id; inert islands
  // trail, ordered by their smallest node id.
  std::sort(components.begin(), components.end(),
            [&graph](const Component& a, const Component& b) {
              if (a.traceable() != b.traceable()) return a.traceable();
              if (a.traceable())
                return graph.nodes[a.tap_node].id < graph.nodes[b.tap_node].id;
              return graph.nodes[a.nodes.front()].id <
                     graph.nodes[b.nodes.front()].id;
            });
  graph.components = std::move(components);
  graph.node_component.assign(n, -1);
  for (int c = 0; c < static_cast<int>(graph.components.size()); ++c)
    for (int v : graph.components[c].nodes) graph.node_component[v] = c;

  return graph;
}

std::vector<TopologyIssue> check_topology(const RoutingGraph& graph,
                                          const TechFile& tech) {
  std::vector<TopologyIssue> issues;

  for (const Component& comp : graph.components) {
    std::string tap_id =
        comp.traceable() ? graph.nodes[comp.tap_node].id : std::string();

    // DFS spanning tree; every non-tree segment is one independent cycle.
    std::vector<std::string> chords;
    std::vector<char> seen_node(graph.nodes.size(), 0);
    std::vector<char> seen_seg(graph.segments.size(), 0);
    int start = comp.traceable() ? comp.tap_node : comp.nodes.front();
    std::vector<int> stack{start};
    seen_node[start] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& [seg, nbr] : graph.adjacency[u]) {
        if (seen_seg[seg]) continue;
        seen_seg[seg] = 1;
        if (seen_node[nbr]) {
          chords.push_back(graph.segments[seg].id);
        } else {
          seen_node[nbr] = 1;
          stack.push_back(nbr);
        }
      }
    }
    std::sort(chords.begin(), chords.end());
    for (const std::string& chord : chords) {
      TopologyIssue issue;
      issue.kind = TopologyIssue::Kind::CyclicTopology;
      issue.component_tap = tap_id;
      issue.witness_segment = chord;
      issue.message = "segment '" + chord + "' closes a cycle" +
                      (tap_id.empty() ? "" : " in the domain of tap '" +
                                                 tap_id + "'");
      issues.push_back(std::move(issue));
    }

    if (!comp.traceable()) continue;
    int direct = static_cast<int>(graph.adjacency[comp.tap_node].size());
    int pin_count = static_cast<int>(comp.pins.size());
    if (direct > tech.fanout_limit || pin_count > tech.fanout_limit) {
      TopologyIssue issue;
      issue.kind = TopologyIssue::Kind::FanoutExceeded;
      issue.component_tap = tap_id;
      issue.direct_fanout = direct;
      issue.pin_count = pin_count;
      issue.limit = tech.fanout_limit;
      issue.message =
          "tap '" + tap_id + "' drives " + std::to_string(pin_count) +
          " pins with direct fanout " + std::to_string(direct) +
          ", limit " + std::to_string(tech.fanout_limit);
      issues.push_back(std::move(issue));
    }
  }

  return issues;
}

}  // namespace aontrace
