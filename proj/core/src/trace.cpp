#include "aontrace/trace.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <thread>

#include "aontrace/rng.hpp"

namespace aontrace {

std::string_view strategy_name(Strategy strategy) {
  return strategy == Strategy::Forward ? "forward" : "backward";
}

OrderingPolicy OrderingPolicy::parse(std::string_view text) {
  if (text == "lex") return lex();
  if (text == "adversarial") return adversarial();
  if (text.rfind("shuffle:", 0) == 0) {
    std::string_view digits = text.substr(8);
    uint64_t seed = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc() && ptr == digits.data() + digits.size())
      return shuffle(seed);
  }
  throw Error(ErrorKind::Schema,
              "unknown ordering policy '" + std::string(text) +
                  "', expected lex, shuffle:SEED or adversarial");
}

std::string OrderingPolicy::to_string() const {
  switch (kind) {
    case Kind::Lex:
      return "lex";
    case Kind::Shuffle:
      return "shuffle:" + std::to_string(seed);
    case Kind::Adversarial:
      return "adversarial";
  }
  return "lex";
}

namespace {

// Tree structure of one component rooted at its tap, plus the current
// weights. Shared by both strategies: forward IS this pass, backward
// reuses it for weights after its own searches so drops stay
// bit-identical between the two.
struct ComponentShape {
  std::vector<int> parent_node;        // node index -> parent, -1 at tap
  std::vector<int> parent_seg;         // node index -> segment to parent
  std::vector<double> weight;          // segment index -> accumulated w
  std::vector<long long> edges_below;  // node index -> subtree edge count
  long long edges = 0;
};

struct Frame {
  int node;
  int in_seg;  // segment this node was entered through, -1 at tap
  size_t pos;  // next adjacency entry to try
  double acc;  // sum of completed child edge weights
};

ComponentShape analyze_tree(const RoutingGraph& graph, const Component& comp) {
  ComponentShape shape;
  shape.parent_node.assign(graph.nodes.size(), -1);
  shape.parent_seg.assign(graph.nodes.size(), -1);
  shape.weight.assign(graph.segments.size(), 0.0);
  shape.edges_below.assign(graph.nodes.size(), 0);

  std::vector<char> visited(graph.nodes.size(), 0);
  std::vector<Frame> stack;
  stack.push_back({comp.tap_node, -1, 0, 0.0});
  visited[comp.tap_node] = 1;
  size_t reached = 1;

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const auto& adj = graph.adjacency[frame.node];
    if (frame.pos < adj.size()) {
      auto [seg, nbr] = adj[frame.pos++];
      if (seg == frame.in_seg) continue;
      if (visited[nbr]) {
        throw Error(ErrorKind::CyclicTopology,
                    "segment '" + graph.segments[seg].id +
                        "' closes a cycle in the domain of tap '" +
                        graph.nodes[comp.tap_node].id + "'");
      }
      visited[nbr] = 1;
      ++reached;
      ++shape.edges;
      shape.parent_node[nbr] = frame.node;
      shape.parent_seg[nbr] = seg;
      stack.push_back({nbr, seg, 0, 0.0});
    } else {
      double w = frame.acc;
      int pin = graph.pin_at_node[frame.node];
      if (pin >= 0) w += graph.pins[pin].cell_size;
      int in_seg = frame.in_seg;
      int node = frame.node;
      long long below = shape.edges_below[node];
      stack.pop_back();
      if (in_seg >= 0) {
        shape.weight[in_seg] = w;
        stack.back().acc += w;
        shape.edges_below[stack.back().node] += below + 1;
      }
    }
  }

  if (reached != comp.nodes.size()) {
    throw Error(ErrorKind::NotATree,
                "domain of tap '" + graph.nodes[comp.tap_node].id +
                    "' is not a connected tree");
  }
  return shape;
}

// tap-to-pin segment indices by climbing parent pointers
std::vector<int> path_from_shape(const ComponentShape& shape, int pin_node) {
  std::vector<int> path;
  for (int u = pin_node; shape.parent_seg[u] >= 0; u = shape.parent_node[u])
    path.push_back(shape.parent_seg[u]);
  std::reverse(path.begin(), path.end());
  return path;
}

// The one place drops are summed. Order is tap to pin for every strategy.
double path_drop(const RoutingGraph& graph, const std::vector<int>& path,
                 const std::vector<double>& weight, double unit_current_ma) {
  const double amps_per_size = unit_current_ma * 1e-3;
  double drop = 0.0;
  for (int seg : path)
    drop += graph.segments[seg].resistance * amps_per_size * weight[seg];
  return drop;
}

void fill_result(const RoutingGraph& graph, const Component& comp,
                 const TechFile& tech, const ComponentShape& shape,
                 TraceResult& result) {
  result.tap = graph.nodes[comp.tap_node].id;
  for (int seg : comp.segments) {
    if (shape.weight[seg] > 0)
      result.edge_weight.emplace(graph.segments[seg].id, shape.weight[seg]);
  }
  for (int p : comp.pins) {
    const GraphPin& pin = graph.pins[p];
    std::vector<int> path = path_from_shape(shape, pin.node);
    result.pin_drop.emplace(
        pin.instance, path_drop(graph, path, shape.weight, tech.unit_current));
    std::vector<std::string> ids;
    ids.reserve(path.size());
    for (int seg : path) ids.push_back(graph.segments[seg].id);
    result.pin_path.emplace(pin.instance, std::move(ids));
  }
}

using NeighborOrder = std::vector<std::vector<std::pair<int, int>>>;

NeighborOrder neighbor_order(const RoutingGraph& graph, const Component& comp,
                             const OrderingPolicy& policy,
                             const ComponentShape& shape) {
  NeighborOrder order(graph.nodes.size());
  for (int u : comp.nodes) {
    auto edges = graph.adjacency[u];
    switch (policy.kind) {
      case OrderingPolicy::Kind::Lex:
        break;
      case OrderingPolicy::Kind::Shuffle: {
        SplitMix64 rng(policy.seed ^ fnv1a64(graph.nodes[u].id));
        deterministic_shuffle(edges, rng);
        break;
      }
      case OrderingPolicy::Kind::Adversarial:
        // Wrong directions first, deepest wrong subtree first; the edge
        // toward the tap is tried last.
        std::sort(edges.begin(), edges.end(),
                  [&](const std::pair<int, int>& lhs,
                      const std::pair<int, int>& rhs) {
                    bool l_up = lhs.first == shape.parent_seg[u];
                    bool r_up = rhs.first == shape.parent_seg[u];
                    if (l_up != r_up) return r_up;
                    long long l_sz = shape.edges_below[lhs.second];
                    long long r_sz = shape.edges_below[rhs.second];
                    if (l_sz != r_sz) return l_sz > r_sz;
                    return lhs.first < rhs.first;
                  });
        break;
    }
    order[u] = std::move(edges);
  }
  return order;
}

// Instrumented search for one pin: DFS from the pin node until the tap
// appears, counting every traversal including dead ends.
long long search_to_tap(const RoutingGraph& graph, const NeighborOrder& order,
                        int pin_node, int tap_node, std::vector<int>& stamp,
                        int epoch, std::vector<int>& path_out) {
  path_out.clear();
  if (pin_node == tap_node) return 0;

  struct SearchFrame {
    int node;
    size_t pos;
  };
  long long visits = 0;
  std::vector<SearchFrame> stack{{pin_node, 0}};
  std::vector<int> via;  // segment used to enter stack[i], parallel to stack
  via.push_back(-1);
  stamp[pin_node] = epoch;

  while (!stack.empty()) {
    const auto& edges = order[stack.back().node];
    if (stack.back().pos >= edges.size()) {
      stack.pop_back();
      via.pop_back();
      continue;
    }
    auto [seg, nbr] = edges[stack.back().pos++];
    if (stamp[nbr] == epoch) continue;
    ++visits;
    if (nbr == tap_node) {
      // path so far runs pin -> ... -> current node; add the final hop
      for (size_t i = 1; i < stack.size(); ++i) path_out.push_back(via[i]);
      path_out.push_back(seg);
      std::reverse(path_out.begin(), path_out.end());  // tap to pin
      return visits;
    }
    stamp[nbr] = epoch;
    stack.push_back({nbr, 0});
    via.push_back(seg);
  }
  throw Error(ErrorKind::TapUnreachable,
              "no path from pin node '" + graph.nodes[pin_node].id +
                  "' to tap '" + graph.nodes[tap_node].id + "'");
}

}  // namespace

TraceResult forward_trace(const RoutingGraph& graph, int component,
                          const TechFile& tech) {
  const Component& comp = graph.components.at(component);
  ComponentShape shape = analyze_tree(graph, comp);
  TraceResult result;
  fill_result(graph, comp, tech, shape, result);
  result.visit_count = shape.edges;
  return result;
}

std::pair<TraceResult, SearchStats> backward_trace(
    const RoutingGraph& graph, int component, const TechFile& tech,
    const OrderingPolicy& order) {
  const Component& comp = graph.components.at(component);
  ComponentShape shape = analyze_tree(graph, comp);
  NeighborOrder neighbors = neighbor_order(graph, comp, order, shape);

  std::vector<int> stamp(graph.nodes.size(), -1);
  long long total_visits = 0;
  std::map<std::string, std::vector<int>> searched_paths;
  std::vector<int> path;
  int epoch = 0;
  for (int p : comp.pins) {
    const GraphPin& pin = graph.pins[p];
    total_visits += search_to_tap(graph, neighbors, pin.node, comp.tap_node,
                                  stamp, epoch++, path);
    searched_paths.emplace(pin.instance, path);
  }

  TraceResult result;
  result.tap = graph.nodes[comp.tap_node].id;
  for (int seg : comp.segments) {
    if (shape.weight[seg] > 0)
      result.edge_weight.emplace(graph.segments[seg].id, shape.weight[seg]);
  }
  for (auto& [instance, segs] : searched_paths) {
    result.pin_drop.emplace(
        instance, path_drop(graph, segs, shape.weight, tech.unit_current));
    std::vector<std::string> ids;
    ids.reserve(segs.size());
    for (int seg : segs) ids.push_back(graph.segments[seg].id);
    result.pin_path.emplace(instance, std::move(ids));
  }
  result.visit_count = total_visits;

  SearchStats stats;
  stats.strategy = Strategy::Backward;
  stats.edges_in_domain = static_cast<long long>(comp.segments.size());
  stats.visit_count = total_visits;
  stats.pins = static_cast<long long>(comp.pins.size());
  return {std::move(result), stats};
}

TraceRun trace_all(const RoutingGraph& graph, const TechFile& tech,
                   Strategy strategy, const OrderingPolicy& order, int jobs) {
  std::vector<int> traced;
  for (int c = 0; c < static_cast<int>(graph.components.size()); ++c) {
    if (graph.components[c].traceable()) traced.push_back(c);
  }

  TraceRun run;
  run.results.resize(traced.size());
  auto trace_one = [&](size_t i) {
    if (strategy == Strategy::Forward) {
      run.results[i] = forward_trace(graph, traced[i], tech);
    } else {
      run.results[i] = backward_trace(graph, traced[i], tech, order).first;
    }
  };

  int workers = std::max(1, jobs);
  workers = std::min<int>(workers, static_cast<int>(traced.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < traced.size(); ++i) trace_one(i);
  } else {
    // Results land in slots indexed by component, so scheduling order
    // cannot change the output.
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= traced.size()) return;
          try {
            trace_one(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& thread : threads) thread.join();
    if (failure) std::rethrow_exception(failure);
  }

  run.stats.strategy = strategy;
  for (size_t i = 0; i < traced.size(); ++i) {
    const Component& comp = graph.components[traced[i]];
    run.stats.edges_in_domain += static_cast<long long>(comp.segments.size());
    run.stats.pins += static_cast<long long>(comp.pins.size());
    run.stats.visit_count += run.results[i].visit_count;
  }
  return run;
}

}  // namespace aontrace
